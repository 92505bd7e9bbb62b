#pragma once

#include <functional>
#include <span>

namespace bachvol {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over consecutive
/// breakpoints (at least two, non-decreasing, finite).
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol·|value|) or the subdivision budget
/// runs out. Panel contributions are summed in left-to-right order, so the
/// result does not depend on refinement history.
[[nodiscard]] QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                                  std::span<const double> breakpoints,
                                                  const QuadratureOptions& options);

/// ∫_a^b f(k) dk for 0 < a < b evaluated in u = ln k, i.e. ∫ f(e^u) e^u du.
/// Suited to integrands decaying like a power of k.
[[nodiscard]] QuadratureResult integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                                         const QuadratureOptions& options);

}  // namespace bachvol
