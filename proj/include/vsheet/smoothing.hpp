#pragma once

// Dyadic smoothing family S_theta and its bound verifier.
//
// S_theta multiplies the discrete spectrum by chi(|xi|/theta), where chi is
// the fixed C^2 bridge cutoff (1 on [0,1], 0 on [2,inf)). The transform is
// real-to-real: periodic in x and z, even ("Neumann") extension in y, so
// traces at y = 0 behave well and the boundary-difference bound is
// meaningful. Frequencies:
//     xi_x = 2 pi kx / (nx hx)  (kx halfcomplex-symmetric),
//     xi_y = pi  ky / ((ny-1) hy),
//     xi_z = 2 pi kz / (nz hz).
//
// The smoothing scale schedule is theta_n = sqrt(theta0^2 + n) with step
// Delta_n = theta_{n+1} - theta_n = 1/(theta_{n+1} + theta_n).
//
// Note: applications plan FFTW transforms on the fly; the FFTW planner is not
// thread-safe, so call these from one thread at a time.

#include "vsheet/grid.hpp"

#include <utility>
#include <vector>

namespace vsheet {

struct SmoothingSchedule {
    double theta0 = 1.0;
    std::vector<double> thetas; // theta_0 .. theta_N
    std::vector<double> deltas; // Delta_0 .. Delta_{N-1}
};

// theta0 >= 1 required (throws std::domain_error otherwise); N = step count
SmoothingSchedule make_schedule(double theta0, int n_steps);

// scale-theta smoothing of interior / boundary grid functions
Field3 apply_smoothing(const Field3& u, const Grid3& g, double theta);
Field2 apply_smoothing(const Field2& u, const Grid3& g, double theta);

// derivative in theta by centered difference (relative step 1e-3)
Field3 smoothing_dtheta(const Field3& u, const Grid3& g, double theta);
Field2 smoothing_dtheta(const Field2& u, const Grid3& g, double theta);

// componentwise conveniences
StateField apply_smoothing(const StateField& u, const Grid3& g, double theta);
TwoPhaseState apply_smoothing(const TwoPhaseState& u, const Grid3& g, double theta);
TwoPhaseScalar apply_smoothing(const TwoPhaseScalar& u, const Grid3& g, double theta);

// ---------------------------------------------------------------------------
// empirical verification of the four operator-bound families:
//   (1) ||S_t u||_s            <= C t^{(s-a)+}   ||u||_a        (all s, a)
//   (2) ||S_t u - u||_s        <= C t^{s-a}      ||u||_a        (s <= a)
//   (3) ||d/dt S_t u||_s       <= C t^{s-a-1}    ||u||_a        (all s, a)
//   (4) ||(S_t u+ - S_t u-)|y0||_s <= C t^{(s+1-a)+} ||(u+-u-)|y0||_a
// Each entry reports, for one (s, a, theta), the max ratio over the samples
// (the empirical constant). Family (2) entries with s > a are left at zero.
// ---------------------------------------------------------------------------
struct BoundSweepEntry {
    int s = 0, alpha = 0;
    double theta = 0.0;
    double c_smooth = 0.0;
    double c_error = 0.0;
    double c_dtheta = 0.0;
    double c_trace = 0.0;
};

std::vector<BoundSweepEntry> verify_bounds(
    const std::vector<TwoPhaseScalar>& samples, const Grid3& g,
    const std::vector<double>& thetas,
    const std::vector<std::pair<int, int>>& orders);

} // namespace vsheet
