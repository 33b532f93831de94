#include "abstokes/abphase.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "abstokes/stokes.hpp"

namespace abstokes {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

const char* to_string(PhaseMethod method) {
    switch (method) {
        case PhaseMethod::two_path_line_integral:
            return "two_path_line_integral";
        case PhaseMethod::averaged_formula:
            return "averaged_formula";
        case PhaseMethod::sinusoidal_formula:
            return "sinusoidal_formula";
    }
    return "unknown";
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

PhasePrediction ab_phase_two_path(const SolenoidField& field,
                                  const SpacetimePath& c1,
                                  const SpacetimePath& c2, double e,
                                  const QuadratureConfig& cfg) {
    auto matches = [](const Event& lhs, const Event& rhs) {
        return std::abs(lhs.t - rhs.t) <= 1e-10 &&
               std::abs(lhs.x - rhs.x) <= 1e-10 &&
               std::abs(lhs.y - rhs.y) <= 1e-10 &&
               std::abs(lhs.z - rhs.z) <= 1e-10;
    };
    if (!matches(c1.start(), c2.start()) || !matches(c1.end(), c2.end())) {
        throw std::domain_error(
            "two-path phase requires both paths to share the source and "
            "detection events");
    }

    const FourPotential potential = field.potential();
    QuadratureConfig line_cfg = cfg;
    line_cfg.breakpoints.push_back(field.radius());
    const std::vector<double> kinks = field.profile().kink_times();
    const IntegralResult i1 = line_integral(potential, c1, line_cfg, kinks);
    const IntegralResult i2 = line_integral(potential, c2, line_cfg, kinks);

    PhasePrediction out;
    out.method = PhaseMethod::two_path_line_integral;
    out.phase = -e * (i1.value - i2.value);
    out.error_estimate =
        std::abs(e) * (i1.error_estimate + i2.error_estimate);
    out.converged = i1.converged && i2.converged;
    out.charge = e;
    out.profile = field.profile().describe();
    out.geometry = "two paths, R=" + fmt(field.radius()) +
                   ", segments=" + std::to_string(c1.segments().size()) + "+" +
                   std::to_string(c2.segments().size());
    return out;
}

PhasePrediction ab_phase_averaged(const FluxProfile& profile, double R,
                                  double t_f, double e) {
    if (!(t_f > 0.0)) {
        throw std::domain_error("averaged phase requires t_f > 0");
    }
    PhasePrediction out;
    out.method = PhaseMethod::averaged_formula;
    out.phase = e * std::numbers::pi * R * R * profile.average(t_f);
    out.charge = e;
    out.profile = profile.describe();
    out.geometry = "R=" + fmt(R) + ", t_f=" + fmt(t_f);
    return out;
}

PhasePrediction ab_phase_sinusoidal(double Phi0, double Omega, double t_f,
                                    double e) {
    if (!(t_f > 0.0)) {
        throw std::domain_error("sinusoidal phase requires t_f > 0");
    }
    PhasePrediction out;
    out.method = PhaseMethod::sinusoidal_formula;
    out.phase = e * Phi0 * sinc(Omega * t_f);
    out.charge = e;
    out.profile = "Sinusoidal{Phi0=" + fmt(Phi0) + ",Omega=" + fmt(Omega) + "}";
    out.geometry = "Omega*t_f=" + fmt(Omega * t_f);
    return out;
}

}  // namespace abstokes
