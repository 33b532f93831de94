#pragma once

#include <string>
#include <vector>

#include "abstokes/em_fields.hpp"
#include "abstokes/geometry.hpp"
#include "abstokes/quadrature.hpp"

namespace abstokes {

enum class SurfacePart { electric, magnetic, both };

/// One 1-D integral, exposed so the same integrand can be handed to both the
/// adaptive integrator and the midpoint oracle.
struct OneDimIntegral {
    std::string label;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> breakpoints;
    std::function<double(double)> integrand;
};

/// Per-segment 1-D reductions of the closed line integral of A_mu dx^mu.
/// With metric (+,-,-,-) the pairing is A^0 dt - A . dx.  The supplied
/// radial breakpoints (typically the solenoid wall) are attached to radial
/// segments, whose integration variable is rho.  `time_breakpoints` lists
/// times where the potential is non-smooth (ramp ends); arc segments are
/// split where their schedule crosses them.
std::vector<OneDimIntegral> line_integral_pieces(
    const FourPotential& potential, const SpacetimePath& path,
    const std::vector<double>& radial_breakpoints = {},
    const std::vector<double>& time_breakpoints = {});

/// Line integral of A_mu dx^mu along the path (no charge factor).
/// cfg.breakpoints are interpreted as radial coordinates.
IntegralResult line_integral(const FourPotential& potential,
                             const SpacetimePath& path,
                             const QuadratureConfig& cfg = {},
                             const std::vector<double>& time_breakpoints = {});

/// 2-D numeric surface integral of (1/2) F_mu_nu dx^mu ^ dx^nu over the
/// patch, assembled pointwise from field_strength components and
/// wedge_measures coefficients (never from hand-expanded formulas).  The
/// solenoid wall is always a radial breakpoint, the sector seam an angular
/// one.
IntegralResult surface_integral(const SolenoidField& field,
                                const SurfacePatch& patch, SurfacePart part,
                                const QuadratureConfig& cfg = {});

/// Closed-form 1-D reductions of the surface integral, split by region:
/// the electric contribution over the four (sector x inside/outside-wall)
/// regions, the magnetic contribution per angular sector, and the boundary
/// reduction of the grand total.  Electric interior terms and magnetic
/// sectors integrate the same quantities with opposite iteration orders, so
/// their cancellation is a genuine numerical check.
struct SemiAnalyticSurface {
    IntegralResult electric_region_i;    // sector 1, rho in [0, R]
    IntegralResult electric_region_ii;   // sector 1, rho in [R, rho0]
    IntegralResult electric_region_iii;  // sector 2, rho in [0, R]
    IntegralResult electric_region_iv;   // sector 2, rho in [R, rho0]
    IntegralResult electric_interior_sector1;  // part of region i
    IntegralResult electric_interior_sector2;  // part of region iii
    IntegralResult magnetic_sector1;
    IntegralResult magnetic_sector2;
    IntegralResult total;  // boundary reduction of electric + magnetic

    double region_sum() const;
    /// Interior electric terms plus both magnetic sector totals; vanishes
    /// analytically.
    double interior_cancellation() const;
    bool all_converged() const;
    long evaluations() const;
};

SemiAnalyticSurface surface_integral_semianalytic(
    const SolenoidField& field, const SurfacePatch& patch,
    const QuadratureConfig& cfg = {});

/// The pure 1-D pieces of the semi-analytic route (wall terms, annulus
/// terms, boundary-reduction totals), for oracle cross-checks.
std::vector<OneDimIntegral> semianalytic_pieces(const SolenoidField& field,
                                                const SurfacePatch& patch);

struct StokesReport {
    IntegralResult line;
    IntegralResult surface_numeric;
    SemiAnalyticSurface semianalytic;
    double residual_line_vs_numeric = 0.0;
    double residual_line_vs_semianalytic = 0.0;
    double interior_cancellation_residual = 0.0;
    bool all_converged = false;
};

/// Evaluates both sides of the 4-dimensional Stokes identity for the
/// patch's boundary loop, by all three routes, and reports the residuals.
StokesReport stokes_check(const SolenoidField& field, const SurfacePatch& patch,
                          const QuadratureConfig& cfg = {});

/// Difference of the path-defined gauge functions Lambda(x; A) - Lambda(x; B)
/// for two paths sharing start and end events; equals the closed-loop
/// integral over A followed by reversed B.  Zero whenever the loop does not
/// encircle the solenoid.
double lambda_difference(const SolenoidField& field, const SpacetimePath& a,
                         const SpacetimePath& b,
                         const QuadratureConfig& cfg = {});

}  // namespace abstokes
