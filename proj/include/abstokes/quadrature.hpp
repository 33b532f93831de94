#pragma once

#include <functional>
#include <vector>

namespace abstokes {

/// Tolerances and limits for the adaptive integrators.  `breakpoints` lists
/// interior points where the integrand may be non-smooth (e.g. the solenoid
/// wall rho = R); the domain is pre-split there before any adaptivity runs.
/// Breakpoints outside the open integration interval are ignored.
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    std::vector<double> breakpoints;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// One axis of a 2-D integration domain, with its own breakpoints.
struct IntegrationRange {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> breakpoints;
};

/// Adaptive Gauss-Kronrod (7,15) integration of fn over [a, b].
/// a > b is permitted; the result is negated to keep orientation exact.
/// Non-convergence within cfg.max_subdivisions is reported through the
/// `converged` flag, not thrown.  A non-finite integrand value throws.
IntegralResult integrate_1d(const std::function<double(double)>& fn,
                            double a, double b,
                            const QuadratureConfig& cfg = {});

/// Iterated 2-D integration: inner 1-D pass over `x` (first argument of fn)
/// for each outer node over `y`.  Inner tolerances are tightened by a factor
/// of 10; the reported error estimate is the outer one.  Each range carries
/// its own breakpoints.
IntegralResult integrate_2d(const std::function<double(double, double)>& fn,
                            const IntegrationRange& x,
                            const IntegrationRange& y,
                            const QuadratureConfig& cfg = {});

/// As above, with extra inner breakpoints supplied per outer position; used
/// when the integrand is non-smooth along a curve x = x*(y) rather than at
/// fixed x.
IntegralResult integrate_2d(
    const std::function<double(double, double)>& fn, const IntegrationRange& x,
    const IntegrationRange& y, const QuadratureConfig& cfg,
    const std::function<std::vector<double>(double)>& inner_breakpoints_at);

/// Midpoint-rule sum with `panels` equal panels.  Deliberately naive and
/// fully independent of integrate_1d; used as a cross-check oracle.
/// Never evaluates the endpoints.
double riemann_oracle(const std::function<double(double)>& fn,
                      double a, double b, long panels);

}  // namespace abstokes
