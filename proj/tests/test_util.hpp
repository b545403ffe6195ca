#pragma once

// shared test helpers

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

// mixed absolute/relative comparison used for all frozen oracle values:
// |got - want| <= tol * max(1, |got|, |want|)
inline void check_close(double got, double want, double tol = 1e-9) {
    const double scale = std::max({1.0, std::abs(got), std::abs(want)});
    CHECK_MESSAGE(std::abs(got - want) <= tol * scale,
                  "got " << got << " want " << want << " tol " << tol);
}

// tiny deterministic RNG for property tests (reproducible across platforms)
struct TestRng {
    std::uint64_t s;
    explicit TestRng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed) {}
    std::uint64_t next_u64() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        const double u = (next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
};
