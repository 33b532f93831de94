#pragma once

#include <string>

#include "abstokes/em_fields.hpp"
#include "abstokes/geometry.hpp"
#include "abstokes/quadrature.hpp"

namespace abstokes {

enum class PhaseMethod {
    two_path_line_integral,
    averaged_formula,
    sinusoidal_formula,
};

const char* to_string(PhaseMethod method);

/// An observable phase-shift prediction, with enough of an input echo to be
/// reproduced.  Phases are reported unreduced (not folded mod 2 pi).
struct PhasePrediction {
    double phase = 0.0;
    PhaseMethod method = PhaseMethod::two_path_line_integral;
    double error_estimate = 0.0;
    bool converged = true;
    double charge = 0.0;
    std::string profile;
    std::string geometry;
};

/// sin(x)/x, with a series expansion below |x| = 1e-4.
double sinc(double x);

/// Interferometric phase difference -e (int_c1 - int_c2) A_mu dx^mu between
/// two paths sharing source and detection events.  e is the (positive)
/// charge magnitude; the electron carries charge -e.
PhasePrediction ab_phase_two_path(const SolenoidField& field,
                                  const SpacetimePath& c1,
                                  const SpacetimePath& c2, double e,
                                  const QuadratureConfig& cfg = {});

/// Closed-form prediction e pi R^2 avg(B over [0, t_f]) for a particle that
/// circles the solenoid at uniform angular speed, arriving at t_f > 0.
PhasePrediction ab_phase_averaged(const FluxProfile& profile, double R,
                                  double t_f, double e);

/// Closed-form prediction e Phi0 sin(Omega t_f) / (Omega t_f) for a
/// sinusoidally driven flux Phi(t) = Phi0 cos(Omega t); t_f > 0.
PhasePrediction ab_phase_sinusoidal(double Phi0, double Omega, double t_f,
                                    double e);

}  // namespace abstokes
