#pragma once

#include <stdexcept>
#include <string>

namespace rcons {

/// Invalid or inconsistent run configuration (bad file, mismatched sizes).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its iteration budget.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested robustness level is below the certifiable minimum.
struct InfeasibleGamma : std::runtime_error {
    double gamma;
    double gamma_min;
    InfeasibleGamma(double g, double g_min)
        : std::runtime_error("gamma " + std::to_string(g) +
                             " below minimal certifiable value " + std::to_string(g_min)),
          gamma(g), gamma_min(g_min) {}
};

/// The closed-form robustness bound has a non-positive denominator.
struct DegenerateBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A state matrix has an eigenvalue with non-negative real part.
struct UnstableSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The middle block of the Riccati cross term is numerically singular.
struct SingularMiddleBlock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rcons
