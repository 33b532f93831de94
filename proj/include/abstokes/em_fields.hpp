#pragma once

#include <functional>

#include "abstokes/flux.hpp"

namespace abstokes {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
};

/// A point of Minkowski space in natural units (hbar = c = 1).
struct Event {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double rho() const;
    /// Azimuth in (-pi, pi].
    double phi() const;
};

/// Antisymmetric field-strength components packaged as the two 3-vectors.
/// Accessors follow F_{0i} = E_i and F_{xy} = -B_z (metric +,-,-,-).
struct FieldStrength {
    Vec3 E;
    Vec3 B;

    double f_0x() const { return E.x; }
    double f_0y() const { return E.y; }
    double f_0z() const { return E.z; }
    double f_xy() const { return -B.z; }
    double f_yz() const { return -B.x; }
    double f_zx() const { return -B.y; }
};

/// A 4-potential as an evaluable map: A^0 (scalar) and A (3-vector).
struct FourPotential {
    std::function<double(const Event&)> scalar;
    std::function<Vec3(const Event&)> vector;
};

/// Infinitely long solenoid of radius R along the z-axis through the origin,
/// carrying the uniform interior field B(t) of a FluxProfile.  The potential
/// is the Lorenz-gauge solution for an azimuthal sheet current on the wall
/// (zero charge density), with retardation neglected: A^0 vanishes
/// identically, A is azimuthal and continuous at rho = R.  The wall rho = R
/// itself is assigned to the exterior branch.
class SolenoidField {
public:
    SolenoidField(double radius, FluxProfile profile);

    double radius() const { return radius_; }
    const FluxProfile& profile() const { return profile_; }

    Vec3 vector_potential(const Event& ev) const;
    /// Induced field E = -dA/dt; nonzero outside the solenoid whenever the
    /// flux varies in time.
    Vec3 electric_field(const Event& ev) const;
    Vec3 magnetic_field(const Event& ev) const;
    FieldStrength field_strength(const Event& ev) const;

    /// The solenoid potential as a generic 4-potential map (A^0 = 0).
    FourPotential potential() const;

private:
    double radius_;
    FluxProfile profile_;
};

/// Single-valued gauge scalar chi together with its exact 4-gradient.
/// The pair is validated against central finite differences on a sample
/// grid at construction; a mismatch beyond 1e-6 relative throws.
class GaugeFunction {
public:
    struct Gradient {
        double dt = 0.0;
        Vec3 spatial;
    };

    GaugeFunction(std::function<double(const Event&)> chi,
                  std::function<Gradient(const Event&)> gradient);

    double value(const Event& ev) const { return chi_(ev); }
    Gradient gradient(const Event& ev) const { return gradient_(ev); }

private:
    std::function<double(const Event&)> chi_;
    std::function<Gradient(const Event&)> gradient_;
};

/// Gauge transformation A_mu -> A_mu - d_mu chi.  With metric (+,-,-,-) the
/// component maps are A'^0 = A^0 - dchi/dt and A' = A + grad chi.
FourPotential apply_gauge(const FourPotential& potential,
                          const GaugeFunction& chi);

}  // namespace abstokes
