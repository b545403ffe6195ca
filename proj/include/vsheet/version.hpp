#pragma once

namespace vsheet {

// Semantic version of the toolkit, embedded in CLI manifests.
inline constexpr const char* kVersion = "1.0.0";

} // namespace vsheet
