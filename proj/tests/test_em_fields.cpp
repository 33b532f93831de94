#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "abstokes/em_fields.hpp"

using namespace abstokes;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(const Vec3& a, const Vec3& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
           std::abs(a.z - b.z) <= tol;
}
}  // namespace

TEST_CASE("vector potential branches") {
    const SolenoidField field(1.0, FluxProfile::constant(2.0));
    CHECK(close(field.vector_potential({0.0, 2.0, 0.0, 0.0}), {0.0, 0.5, 0.0},
                1e-15));
    const Vec3 axis = field.vector_potential({3.0, 0.0, 0.0, 0.0});
    CHECK(axis.x == 0.0);
    CHECK(axis.y == 0.0);
    CHECK(axis.z == 0.0);
    // Both branch formulas coincide at the wall.
    CHECK(close(field.vector_potential({0.0, 1.0, 0.0, 0.0}), {0.0, 1.0, 0.0},
                1e-15));
}

TEST_CASE("wall continuity") {
    const SolenoidField field(1.0, FluxProfile::linear_ramp(0.7, 0.3));
    const double eps = 1e-8;
    for (double phi : {0.0, 0.9, 2.4, -1.3}) {
        const Event in{1.3, (1.0 - eps) * std::cos(phi),
                       (1.0 - eps) * std::sin(phi), 0.0};
        const Event out{1.3, (1.0 + eps) * std::cos(phi),
                        (1.0 + eps) * std::sin(phi), 0.0};
        const Vec3 a = field.vector_potential(in);
        const Vec3 b = field.vector_potential(out);
        CHECK((a - b).norm() <= 1e-6 * a.norm());
    }
}

TEST_CASE("induced electric field") {
    const SolenoidField constant(1.0, FluxProfile::constant(4.0));
    CHECK(close(constant.electric_field({0.3, 1.7, -0.2, 0.0}), {}, 0.0));

    const SolenoidField ramp(1.0, FluxProfile::linear_ramp(0.0, 1.0));
    CHECK(close(ramp.electric_field({5.0, 0.5, 0.0, 0.0}), {0.0, -0.25, 0.0},
                1e-15));
    CHECK(close(ramp.electric_field({5.0, 2.0, 0.0, 0.0}), {0.0, -0.25, 0.0},
                1e-15));
}

TEST_CASE("magnetic field branches") {
    const SolenoidField field(1.0, FluxProfile::constant(2.0));
    CHECK(close(field.magnetic_field({0.0, 0.5, 0.0, 0.0}), {0.0, 0.0, 2.0},
                0.0));
    CHECK(close(field.magnetic_field({0.0, 3.0, 0.0, 0.0}), {}, 0.0));
    // The wall itself belongs to the exterior.
    CHECK(close(field.magnetic_field({0.0, 1.0, 0.0, 0.0}), {}, 0.0));

    const SolenoidField osc(1.0, FluxProfile::sinusoidal(1.0, kPi));
    CHECK(close(osc.magnetic_field({1.0, 0.1, 0.0, 0.0}), {0.0, 0.0, -1.0},
                1e-15));
}

TEST_CASE("field strength accessors") {
    const SolenoidField ramp(1.0, FluxProfile::linear_ramp(0.0, 1.0));
    const FieldStrength fs = ramp.field_strength({0.0, 0.0, 0.5, 0.0});
    CHECK(fs.f_0x() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(fs.f_0y()) <= 1e-15);
    CHECK(fs.f_0z() == 0.0);

    const SolenoidField constant(1.0, FluxProfile::constant(1.5));
    const FieldStrength inside = constant.field_strength({0.0, 0.2, 0.1, 0.0});
    CHECK(inside.f_xy() == -1.5);
    CHECK(inside.f_0x() == 0.0);
    CHECK(inside.f_0y() == 0.0);
    const FieldStrength outside = constant.field_strength({0.0, 2.0, 1.0, 0.0});
    CHECK(outside.f_xy() == 0.0);
    CHECK(outside.f_yz() == 0.0);
    CHECK(outside.f_zx() == 0.0);
    CHECK(outside.f_0x() == 0.0);
}

TEST_CASE("E equals minus the time derivative of A") {
    const SolenoidField field(1.0, FluxProfile::sinusoidal(1.3, 2.0));
    const double h = 1e-6;
    for (const Event ev : {Event{0.4, 0.3, 0.2, 0.0}, Event{1.1, 1.8, -0.7, 0.0}}) {
        Event plus = ev;
        plus.t += h;
        Event minus = ev;
        minus.t -= h;
        const Vec3 dA =
            (field.vector_potential(plus) - field.vector_potential(minus)) *
            (1.0 / (2.0 * h));
        const Vec3 expect = field.electric_field(ev) * -1.0;
        CHECK((dA - expect).norm() <= 1e-6 * (1.0 + expect.norm()));
    }
}

TEST_CASE("curl of A: zero outside, B inside; Faraday inside") {
    const SolenoidField field(1.0, FluxProfile::linear_ramp(0.8, 0.4));
    const double h = 1e-5;
    auto curl_z = [h](auto&& fn, const Event& ev) {
        Event xp = ev, xm = ev, yp = ev, ym = ev;
        xp.x += h;
        xm.x -= h;
        yp.y += h;
        ym.y -= h;
        return (fn(xp).y - fn(xm).y) / (2.0 * h) -
               (fn(yp).x - fn(ym).x) / (2.0 * h);
    };
    auto A = [&field](const Event& ev) { return field.vector_potential(ev); };
    auto E = [&field](const Event& ev) { return field.electric_field(ev); };

    const Event outside{0.7, 1.5, 0.9, 0.0};
    CHECK(std::abs(curl_z(A, outside)) <= 1e-5);

    const Event inside{0.7, 0.3, -0.2, 0.0};
    const double B = field.profile().value(inside.t);
    CHECK(std::abs(curl_z(A, inside) - B) <= 1e-5);
    const double Bdot = field.profile().derivative(inside.t);
    CHECK(std::abs(curl_z(E, inside) + Bdot) <= 1e-5);
}

TEST_CASE("gauge function validation and transformation") {
    const GaugeFunction zero([](const Event&) { return 0.0; },
                             [](const Event&) { return GaugeFunction::Gradient{}; });
    const SolenoidField field(1.0, FluxProfile::linear_ramp(1.0, 0.5));
    const FourPotential base = field.potential();
    const FourPotential same = apply_gauge(base, zero);
    const Event ev{0.8, 1.2, -0.4, 0.0};
    CHECK(close(same.vector(ev), base.vector(ev), 0.0));
    CHECK(same.scalar(ev) == base.scalar(ev));

    const double alpha = 0.7;
    const GaugeFunction drift(
        [alpha](const Event& e) { return alpha * e.t; },
        [alpha](const Event&) {
            return GaugeFunction::Gradient{alpha, {}};
        });
    const FourPotential shifted = apply_gauge(base, drift);
    CHECK(shifted.scalar(ev) == -alpha);
    CHECK(close(shifted.vector(ev), base.vector(ev), 0.0));

    CHECK_THROWS_AS(
        GaugeFunction([](const Event& e) { return e.x * e.y; },
                      [](const Event& e) {
                          return GaugeFunction::Gradient{0.0, {e.y, 2.0 * e.x, 0.0}};
                      }),
        std::invalid_argument);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(SolenoidField(0.0, FluxProfile::constant(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SolenoidField(-2.0, FluxProfile::constant(1.0)),
                    std::invalid_argument);
}

TEST_CASE("event accessors") {
    const Event ev{0.0, -1.0, 0.0, 0.0};
    CHECK(ev.phi() == doctest::Approx(kPi));
    CHECK(ev.rho() == 1.0);
    CHECK(Event{0.0, 0.0, 0.0, 0.0}.phi() == 0.0);
}
