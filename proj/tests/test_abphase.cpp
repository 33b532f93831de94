#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "abstokes/abphase.hpp"

using namespace abstokes;

namespace {
constexpr double kPi = std::numbers::pi;

QuadratureConfig tight_cfg() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-11;
    cfg.max_subdivisions = 4000;
    return cfg;
}

// Upper semicircle 0 -> pi and lower semicircle 0 -> -pi at radius rho0,
// both launched at t = 0 and arriving at t = pi / omega.
SpacetimePath upper_path(double rho0, double omega) {
    return make_arc_path(rho0, 0.0, kPi, TimeMap::uniform_angular(omega));
}
SpacetimePath lower_path(double rho0, double omega) {
    return make_arc_path(rho0, 0.0, -kPi,
                         TimeMap::uniform_angular(omega, 0.0, -1));
}
}  // namespace

TEST_CASE("constant flux reproduces the static phase") {
    const SolenoidField field(1.0, FluxProfile::constant(2.0));
    const auto p = ab_phase_two_path(field, upper_path(2.0, 1.0),
                                     lower_path(2.0, 1.0), 1.0, tight_cfg());
    CHECK(p.phase == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(p.converged);
    CHECK(p.method == PhaseMethod::two_path_line_integral);
}

TEST_CASE("identical paths interfere trivially") {
    const SolenoidField field(1.0, FluxProfile::sinusoidal(1.0, 5.0));
    const auto c = upper_path(2.0, 1.0);
    CHECK(ab_phase_two_path(field, c, c, 1.0).phase == 0.0);
}

TEST_CASE("same-side paths see no phase") {
    const SolenoidField field(1.0, FluxProfile::linear_ramp(1.0, 0.5));
    const TimeMap f = TimeMap::uniform_angular(1.0);
    const auto direct = make_arc_path(2.0, 0.0, kPi / 2.0, f);
    const auto detour = make_radial_path(0.0, 2.0, 3.0, 0.0)
                            .then(make_arc_path(3.0, 0.0, kPi / 2.0, f))
                            .then(make_radial_path(kPi / 2.0, 3.0, 2.0,
                                                   kPi / 2.0));
    const auto p = ab_phase_two_path(field, direct, detour, 1.0, tight_cfg());
    CHECK(std::abs(p.phase) <= 1e-9);
}

TEST_CASE("endpoint mismatch is rejected") {
    const SolenoidField field(1.0, FluxProfile::constant(2.0));
    CHECK_THROWS_AS(ab_phase_two_path(field, upper_path(2.0, 1.0),
                                      lower_path(2.0, 2.0), 1.0),
                    std::domain_error);
}

TEST_CASE("averaged formula closed forms") {
    CHECK(ab_phase_averaged(FluxProfile::constant(2.0), 1.0, 5.0, 1.0).phase ==
          doctest::Approx(2.0 * kPi).epsilon(1e-14));
    const double t_f = 3.0;
    CHECK(ab_phase_averaged(FluxProfile::linear_ramp(1.0, 0.5), 1.0, t_f, 1.0)
              .phase ==
          doctest::Approx(kPi * (1.0 + 0.5 * t_f / 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(
        ab_phase_averaged(FluxProfile::constant(1.0), 1.0, 0.0, 1.0),
        std::domain_error);
}

TEST_CASE("averaged formula is continuous across the ramp end") {
    const auto ramp = FluxProfile::piecewise_ramp(1.0, 3.0, 0.5, 2.0);
    const double before = ab_phase_averaged(ramp, 1.0, 2.0 - 5e-7, 1.0).phase;
    const double after = ab_phase_averaged(ramp, 1.0, 2.0 + 5e-7, 1.0).phase;
    const double phi_f = kPi * 3.0;  // e Phi_f
    CHECK(std::abs(after - before) <= 1e-5 * phi_f);
}

TEST_CASE("sinusoidal formula") {
    CHECK(std::abs(ab_phase_sinusoidal(1.0, 1.0, kPi, 1.0).phase) <= 1e-15);
    CHECK(ab_phase_sinusoidal(1.0, 1e-9, 1.0, 1.0).phase ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab_phase_sinusoidal(1.0, 1.0, kPi / 2.0, 1.0).phase ==
          doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(ab_phase_sinusoidal(1.0, 1.0, kPi / 2.0, 1.0).phase ==
          doctest::Approx(0.636619772).epsilon(1e-8));
    CHECK_THROWS_AS(ab_phase_sinusoidal(1.0, 1.0, -1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-5) == doctest::Approx(1.0 - 1e-10 / 6.0).epsilon(1e-15));
    CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("two-path and averaged routes coincide for uniform schedules") {
    const std::vector<FluxProfile> profiles = {
        FluxProfile::constant(2.0), FluxProfile::linear_ramp(1.0, 0.5),
        FluxProfile::piecewise_ramp(1.0, 3.0, 0.5, 2.0),
        FluxProfile::sinusoidal(1.0, 5.0)};
    const double omega = 1.3;
    const double t_f = kPi / omega;
    for (const auto& profile : profiles) {
        const SolenoidField field(1.0, profile);
        const auto two_path =
            ab_phase_two_path(field, upper_path(2.0, omega),
                              lower_path(2.0, omega), 1.0, tight_cfg());
        const auto averaged = ab_phase_averaged(profile, 1.0, t_f, 1.0);
        CHECK(std::abs(two_path.phase - averaged.phase) <=
              1e-9 * (1.0 + std::abs(averaged.phase)));
    }
}

TEST_CASE("averaged specializes to the sinusoidal formula") {
    const double B0 = 1.7;
    const double Omega = 4.0;
    const double R = 1.2;
    for (double t_f : {0.3, 0.92, 2.5}) {
        const auto averaged = ab_phase_averaged(
            FluxProfile::sinusoidal(B0, Omega), R, t_f, 1.0);
        const auto closed =
            ab_phase_sinusoidal(kPi * R * R * B0, Omega, t_f, 1.0);
        CHECK(std::abs(averaged.phase - closed.phase) <=
              1e-12 * (1.0 + std::abs(closed.phase)));
    }
}

TEST_CASE("constant flux is schedule independent") {
    const SolenoidField field(1.0, FluxProfile::constant(2.0));
    const double t_f = kPi;  // omega = 1 equivalent arrival time
    const TimeMap wobble = TimeMap::custom(
        [t_f](double phi) { return t_f * (phi - 0.3 * std::sin(2.0 * phi)) / kPi; },
        [t_f](double phi) {
            return t_f * (1.0 - 0.6 * std::cos(2.0 * phi)) / kPi;
        },
        0.0, kPi);
    const auto c1 = make_arc_path(2.0, 0.0, kPi, wobble);
    const auto p = ab_phase_two_path(field, c1, lower_path(2.0, 1.0), 1.0,
                                     tight_cfg());
    CHECK(p.phase == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("swapping the paths negates the phase exactly") {
    const SolenoidField field(1.0, FluxProfile::sinusoidal(1.0, 5.0));
    const auto c1 = upper_path(2.0, 1.0);
    const auto c2 = lower_path(2.0, 1.0);
    const auto forward = ab_phase_two_path(field, c1, c2, 1.0);
    const auto swapped = ab_phase_two_path(field, c2, c1, 1.0);
    CHECK(forward.phase == -swapped.phase);
}
