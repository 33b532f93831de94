#pragma once

#include <string>
#include <variant>
#include <vector>

namespace abstokes {

/// Time law B(t) of the uniform field inside the solenoid.  Every variant
/// carries closed forms for the value, the first derivative and the running
/// integral from t = 0; nothing in this class touches numerical quadrature,
/// so averages computed here can serve as analytic cross-checks elsewhere.
class FluxProfile {
public:
    struct Constant {
        double B0;
    };
    struct LinearRamp {
        double B0;  // value at t = 0
        double B1;  // slope
    };
    // Constant Bi before ti, linear between ti and tf, constant Bf after.
    struct PiecewiseRamp {
        double Bi;
        double Bf;
        double ti;
        double tf;
    };
    struct Sinusoidal {
        double B0;
        double Omega;  // B(t) = B0 cos(Omega t)
    };
    using Law = std::variant<Constant, LinearRamp, PiecewiseRamp, Sinusoidal>;

    static FluxProfile constant(double B0);
    static FluxProfile linear_ramp(double B0, double B1);
    static FluxProfile piecewise_ramp(double Bi, double Bf, double ti, double tf);
    static FluxProfile sinusoidal(double B0, double Omega);

    /// B(t).  Total function; the piecewise ramp clamps outside [ti, tf].
    double value(double t) const;

    /// dB/dt.  At the ramp kinks t = ti and t = tf this returns the
    /// interior ramp slope, keeping the derivative integrable.
    double derivative(double t) const;

    /// Running integral of B from 0 to t, in closed form per variant.
    double integral(double t) const;

    /// Time average of B over [0, t_f]; requires t_f > 0.
    double average(double t_f) const;

    /// Times where B is non-smooth (the ramp ends); integrands composed
    /// with this law should be split there.
    std::vector<double> kink_times() const;

    const Law& law() const { return law_; }
    std::string describe() const;

private:
    explicit FluxProfile(Law law) : law_(law) {}
    Law law_;
};

}  // namespace abstokes
