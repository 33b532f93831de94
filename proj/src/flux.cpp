#include "abstokes/flux.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace abstokes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double ramp_slope(const FluxProfile::PiecewiseRamp& r) {
    return (r.Bf - r.Bi) / (r.tf - r.ti);
}

// Indefinite antiderivative of the piecewise ramp, continuous across kinks.
double ramp_antiderivative(const FluxProfile::PiecewiseRamp& r, double t) {
    if (t <= r.ti) return r.Bi * t;
    const double slope = ramp_slope(r);
    if (t <= r.tf) {
        const double dt = t - r.ti;
        return r.Bi * t + 0.5 * slope * dt * dt;
    }
    const double mid = r.tf - r.ti;
    return r.Bi * r.tf + 0.5 * slope * mid * mid + r.Bf * (t - r.tf);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

FluxProfile FluxProfile::constant(double B0) {
    return FluxProfile(Constant{B0});
}

FluxProfile FluxProfile::linear_ramp(double B0, double B1) {
    return FluxProfile(LinearRamp{B0, B1});
}

FluxProfile FluxProfile::piecewise_ramp(double Bi, double Bf, double ti,
                                        double tf) {
    if (!(ti < tf)) {
        throw std::invalid_argument("piecewise ramp requires ti < tf");
    }
    return FluxProfile(PiecewiseRamp{Bi, Bf, ti, tf});
}

FluxProfile FluxProfile::sinusoidal(double B0, double Omega) {
    return FluxProfile(Sinusoidal{B0, Omega});
}

double FluxProfile::value(double t) const {
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.B0; },
            [t](const LinearRamp& r) { return r.B0 + r.B1 * t; },
            [t](const PiecewiseRamp& r) {
                if (t <= r.ti) return r.Bi;
                if (t >= r.tf) return r.Bf;
                return r.Bi + ramp_slope(r) * (t - r.ti);
            },
            [t](const Sinusoidal& s) { return s.B0 * std::cos(s.Omega * t); }},
        law_);
}

double FluxProfile::derivative(double t) const {
    return std::visit(
        overloaded{
            [](const Constant&) { return 0.0; },
            [](const LinearRamp& r) { return r.B1; },
            [t](const PiecewiseRamp& r) {
                if (t < r.ti || t > r.tf) return 0.0;
                return ramp_slope(r);
            },
            [t](const Sinusoidal& s) {
                return -s.B0 * s.Omega * std::sin(s.Omega * t);
            }},
        law_);
}

double FluxProfile::integral(double t) const {
    return std::visit(
        overloaded{
            [t](const Constant& c) { return c.B0 * t; },
            [t](const LinearRamp& r) { return r.B0 * t + 0.5 * r.B1 * t * t; },
            [t](const PiecewiseRamp& r) {
                return ramp_antiderivative(r, t) - ramp_antiderivative(r, 0.0);
            },
            [t](const Sinusoidal& s) {
                if (s.Omega == 0.0) return s.B0 * t;
                return s.B0 * std::sin(s.Omega * t) / s.Omega;
            }},
        law_);
}

double FluxProfile::average(double t_f) const {
    if (!(t_f > 0.0)) {
        throw std::domain_error("flux average requires t_f > 0");
    }
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.B0; },
            [t_f](const LinearRamp& r) { return r.B0 + 0.5 * r.B1 * t_f; },
            [this, t_f](const PiecewiseRamp&) { return integral(t_f) / t_f; },
            [t_f](const Sinusoidal& s) {
                if (s.Omega == 0.0) return s.B0;
                return s.B0 * std::sin(s.Omega * t_f) / (s.Omega * t_f);
            }},
        law_);
}

std::vector<double> FluxProfile::kink_times() const {
    if (const auto* ramp = std::get_if<PiecewiseRamp>(&law_)) {
        return {ramp->ti, ramp->tf};
    }
    return {};
}

std::string FluxProfile::describe() const {
    return std::visit(
        overloaded{
            [](const Constant& c) { return "Constant{B0=" + fmt(c.B0) + "}"; },
            [](const LinearRamp& r) {
                return "LinearRamp{B0=" + fmt(r.B0) + ",B1=" + fmt(r.B1) + "}";
            },
            [](const PiecewiseRamp& r) {
                return "PiecewiseRamp{Bi=" + fmt(r.Bi) + ",Bf=" + fmt(r.Bf) +
                       ",ti=" + fmt(r.ti) + ",tf=" + fmt(r.tf) + "}";
            },
            [](const Sinusoidal& s) {
                return "Sinusoidal{B0=" + fmt(s.B0) + ",Omega=" + fmt(s.Omega) +
                       "}";
            }},
        law_);
}

}  // namespace abstokes
