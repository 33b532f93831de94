#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "abstokes/em_fields.hpp"

namespace abstokes {

/// Monotone assignment of a time coordinate to angular position along an
/// arc: the particle's traversal schedule.  Strict monotonicity is enforced
/// where a map is attached to a path (worldline semantics); surfaces accept
/// constant maps as well.
class TimeMap {
public:
    /// t(phi) = t0 + sign * phi / omega, omega > 0, sign = +/-1.
    static TimeMap uniform_angular(double omega, double t0 = 0.0, int sign = 1);
    /// t(phi) = slope * phi + intercept.
    static TimeMap affine(double slope, double intercept);
    /// General map with its exact derivative, validated against central
    /// finite differences (and for strict monotonicity) on [phi_lo, phi_hi].
    static TimeMap custom(std::function<double(double)> map,
                          std::function<double(double)> derivative,
                          double phi_lo, double phi_hi);

    double time(double phi) const;
    double rate(double phi) const;  // dt/dphi

    /// The map phi -> time(phi + dphi); used to re-anchor a sector-2 map as
    /// a forward path parametrization.
    TimeMap shifted(double dphi) const;

private:
    struct UniformAngular {
        double omega;
        double t0;
        int sign;
    };
    struct Affine {
        double slope;
        double intercept;
    };
    struct Custom {
        std::function<double(double)> map;
        std::function<double(double)> derivative;
    };
    using Law = std::variant<UniformAngular, Affine, Custom>;

    explicit TimeMap(Law law) : law_(std::move(law)) {}
    Law law_;
};

/// Circular arc of radius rho about the z-axis, carried through time by a
/// TimeMap.  Angles are unwrapped (not reduced mod 2 pi).
struct ArcSegment {
    double rho;
    double phi_start;
    double phi_end;
    TimeMap tmap;
    double z = 0.0;

    Event at(double phi) const;
};

/// Straight radial leg at fixed angle, time and height.
struct RadialSegment {
    double phi;
    double rho_start;
    double rho_end;
    double t;
    double z = 0.0;

    Event at(double rho) const;
};

using PathSegment = std::variant<ArcSegment, RadialSegment>;

Event segment_start(const PathSegment& seg);
Event segment_end(const PathSegment& seg);
PathSegment reverse_segment(const PathSegment& seg);

/// Piecewise-smooth curve in Minkowski space.  Consecutive segments must
/// join continuously in all four coordinates.
class SpacetimePath {
public:
    SpacetimePath() = default;
    explicit SpacetimePath(std::vector<PathSegment> segments);

    const std::vector<PathSegment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    Event start() const;
    Event end() const;

    /// Concatenation; the junction must be continuous.
    SpacetimePath then(const SpacetimePath& next) const;

    /// Reverses by flipping each segment's own parametrization.
    SpacetimePath reversed() const;

    /// Signed turns about the z-axis, total delta phi / 2 pi.  Requires the
    /// path to be closed in x, y.  Exact for Arc/Radial segments.
    int winding_number() const;

private:
    std::vector<PathSegment> segments_;
};

SpacetimePath make_arc_path(double rho, double phi_start, double phi_end,
                            TimeMap tmap, double z = 0.0);
SpacetimePath make_radial_path(double phi, double rho_start, double rho_end,
                               double t, double z = 0.0);

/// Radial interpolation F(rho) of the boundary time into the surface
/// interior, with F(rho0) = 1.
class RadialProfile {
public:
    /// (rho / rho0)^exponent, exponent >= 0.
    static RadialProfile power_law(double rho0, double exponent);
    /// Identically 1.
    static RadialProfile flat(double rho0);
    /// 1 + amplitude (rho - rho1)(rho0 - rho); equals 1 at both rho1 and
    /// rho0, the annular-patch boundary condition.
    static RadialProfile bump(double rho0, double rho1, double amplitude);
    static RadialProfile custom(std::function<double(double)> map,
                                std::function<double(double)> derivative,
                                double rho0);

    double value(double rho) const;
    double slope(double rho) const;
    double outer_radius() const { return rho0_; }

private:
    struct Power {
        double exponent;
    };
    struct Flat {};
    struct Bump {
        double rho1;
        double amplitude;
    };
    struct Custom {
        std::function<double(double)> map;
        std::function<double(double)> derivative;
    };
    using Law = std::variant<Power, Flat, Bump, Custom>;

    RadialProfile(double rho0, Law law) : rho0_(rho0), law_(std::move(law)) {}
    double rho0_;
    Law law_;
};

/// Partial derivatives of the surface map (rho, phi) -> (t, x, y) at a point.
struct SurfaceJacobian {
    double dt_drho = 0.0;
    double dt_dphi = 0.0;
    double dx_drho = 0.0;
    double dx_dphi = 0.0;
    double dy_drho = 0.0;
    double dy_dphi = 0.0;
};

/// Coefficients of d rho ^ d phi for the three non-vanishing 2-forms on a
/// planar surface patch; dt^dz, dx^dz, dy^dz vanish identically.
struct WedgeMeasures {
    double c_tx = 0.0;
    double c_ty = 0.0;
    double c_xy = 0.0;
};

enum class ParamOrder { rho_phi, phi_rho };

/// (rho, phi)-parametrized planar 2-surface in the z = 0 slice.
///
/// Encircling form (rho1 = 0): two angular sectors share the full disk,
///   t = F(rho) f(phi) on [phi_i, phi_f], t = G(rho) g(phi) on
///   [phi_f, phi_i + 2 pi], with seam continuity enforced at construction.
///   Its boundary is the closed two-arc loop at rho0 (winding 1).
/// Annular form (rho1 > 0): a single sector over [phi_i, phi_f] and
///   rho in [rho1, rho0] with t = F(rho) f(phi); F must equal 1 at both
///   radii so the boundary arcs follow f.  Its boundary (winding 0) adds
///   two constant-time radial legs.
class SurfacePatch {
public:
    static SurfacePatch encircling(double rho0, double phi_i, double phi_f,
                                   TimeMap sector1_map, TimeMap sector2_map,
                                   RadialProfile sector1_profile,
                                   RadialProfile sector2_profile);
    static SurfacePatch annular(double rho0, double rho1, double phi_i,
                                double phi_f, TimeMap map,
                                RadialProfile profile);

    bool is_annular() const { return rho1_ > 0.0; }
    double rho0() const { return rho0_; }
    double rho1() const { return rho1_; }
    double phi_i() const { return phi_i_; }
    double phi_f() const { return phi_f_; }
    /// Upper end of the angular domain: phi_i + 2 pi (encircling) or phi_f.
    double phi_end() const;

    /// 1 for phi <= phi_f, 2 beyond; throws outside the angular domain.
    int sector_of(double phi) const;
    const TimeMap& time_map(int sector) const;
    const RadialProfile& radial_profile(int sector) const;

    /// Surface time t(rho, phi) per the sector's product law.
    double time_at(double rho, double phi) const;
    Event event(double rho, double phi) const;
    SurfaceJacobian jacobian(double rho, double phi) const;

    /// The closed boundary loop as a SpacetimePath.
    SpacetimePath boundary() const;

private:
    SurfacePatch(double rho0, double rho1, double phi_i, double phi_f,
                 TimeMap f, TimeMap g, RadialProfile F, RadialProfile G);
    void require_inside(double rho, double phi) const;

    double rho0_;
    double rho1_;
    double phi_i_;
    double phi_f_;
    TimeMap f_;
    TimeMap g_;
    RadialProfile F_;
    RadialProfile G_;
};

/// Wedge coefficients at (rho, phi), computed as 2x2 Jacobian determinants
/// so that swapping the parameter order flips every sign.
WedgeMeasures wedge_measures(const SurfacePatch& patch, double rho, double phi,
                             ParamOrder order = ParamOrder::rho_phi);

}  // namespace abstokes
