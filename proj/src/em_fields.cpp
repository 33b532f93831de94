#include "abstokes/em_fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace abstokes {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double Event::rho() const { return std::sqrt(x * x + y * y); }

double Event::phi() const {
    const double a = std::atan2(y, x);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

SolenoidField::SolenoidField(double radius, FluxProfile profile)
    : radius_(radius), profile_(std::move(profile)) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("solenoid radius must be positive");
    }
}

Vec3 SolenoidField::vector_potential(const Event& ev) const {
    const double r2 = ev.x * ev.x + ev.y * ev.y;
    if (r2 == 0.0) return {};
    const double B = profile_.value(ev.t);
    const double R2 = radius_ * radius_;
    // Azimuthal coefficient divided by rho: rho B/2 inside, R^2 B/(2 rho)
    // outside; both written against Cartesian (-y, x) to avoid the axis.
    const double k = (r2 < R2) ? 0.5 * B : 0.5 * B * R2 / r2;
    return {-k * ev.y, k * ev.x, 0.0};
}

Vec3 SolenoidField::electric_field(const Event& ev) const {
    const double r2 = ev.x * ev.x + ev.y * ev.y;
    if (r2 == 0.0) return {};
    const double Bdot = profile_.derivative(ev.t);
    const double R2 = radius_ * radius_;
    const double k = (r2 < R2) ? -0.5 * Bdot : -0.5 * Bdot * R2 / r2;
    return {-k * ev.y, k * ev.x, 0.0};
}

Vec3 SolenoidField::magnetic_field(const Event& ev) const {
    const double r2 = ev.x * ev.x + ev.y * ev.y;
    if (r2 >= radius_ * radius_) return {};
    return {0.0, 0.0, profile_.value(ev.t)};
}

FieldStrength SolenoidField::field_strength(const Event& ev) const {
    return FieldStrength{electric_field(ev), magnetic_field(ev)};
}

FourPotential SolenoidField::potential() const {
    SolenoidField self = *this;
    return FourPotential{
        [](const Event&) { return 0.0; },
        [self](const Event& ev) { return self.vector_potential(ev); }};
}

namespace {

// Central finite-difference 4-gradient used to validate GaugeFunction pairs.
GaugeFunction::Gradient numeric_gradient(
    const std::function<double(const Event&)>& chi, const Event& ev, double h) {
    auto shift = [&ev](int axis, double d) {
        Event e = ev;
        switch (axis) {
            case 0: e.t += d; break;
            case 1: e.x += d; break;
            case 2: e.y += d; break;
            default: e.z += d; break;
        }
        return e;
    };
    auto central = [&](int axis) {
        return (chi(shift(axis, h)) - chi(shift(axis, -h))) / (2.0 * h);
    };
    return GaugeFunction::Gradient{central(0),
                                   {central(1), central(2), central(3)}};
}

}  // namespace

GaugeFunction::GaugeFunction(std::function<double(const Event&)> chi,
                             std::function<Gradient(const Event&)> gradient)
    : chi_(std::move(chi)), gradient_(std::move(gradient)) {
    constexpr double samples[4] = {-1.2, -0.4, 0.3, 1.1};
    constexpr double h = 1e-5;
    for (double t : samples) {
        for (double x : samples) {
            for (double y : samples) {
                for (double z : samples) {
                    const Event ev{t, x, y, z};
                    const Gradient stated = gradient_(ev);
                    const Gradient fd = numeric_gradient(chi_, ev, h);
                    auto ok = [](double got, double want) {
                        return std::abs(got - want) <=
                               1e-6 * (1.0 + std::abs(want));
                    };
                    if (!ok(fd.dt, stated.dt) ||
                        !ok(fd.spatial.x, stated.spatial.x) ||
                        !ok(fd.spatial.y, stated.spatial.y) ||
                        !ok(fd.spatial.z, stated.spatial.z)) {
                        throw std::invalid_argument(
                            "gauge function gradient does not match its "
                            "scalar on the validation grid");
                    }
                }
            }
        }
    }
}

FourPotential apply_gauge(const FourPotential& potential,
                          const GaugeFunction& chi) {
    auto scalar = potential.scalar;
    auto vector = potential.vector;
    return FourPotential{
        [scalar, chi](const Event& ev) {
            return scalar(ev) - chi.gradient(ev).dt;
        },
        [vector, chi](const Event& ev) {
            return vector(ev) + chi.gradient(ev).spatial;
        }};
}

}  // namespace abstokes
