#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "abstokes/geometry.hpp"

using namespace abstokes;

namespace {
constexpr double kPi = std::numbers::pi;

// The standard two-sector encircling surface: forward uniform schedule on
// [0, pi], mirrored return schedule on [pi, 2 pi], t_i = 0.
SurfacePatch standard_patch(double rho0, double omega, double exponent = 1.0) {
    const TimeMap f = TimeMap::uniform_angular(omega);
    const TimeMap g = TimeMap::uniform_angular(omega, 2.0 * kPi / omega, -1);
    const RadialProfile profile = RadialProfile::power_law(rho0, exponent);
    return SurfacePatch::encircling(rho0, 0.0, kPi, f, g, profile, profile);
}
}  // namespace

TEST_CASE("uniform angular time map") {
    const TimeMap map = TimeMap::uniform_angular(2.0, 0.0, -1);
    CHECK(map.time(-kPi) == doctest::Approx(kPi / 2.0));
    CHECK(map.rate(0.3) == -0.5);
    CHECK_THROWS_AS(TimeMap::uniform_angular(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TimeMap::uniform_angular(1.0, 0.0, 2),
                    std::invalid_argument);
}

TEST_CASE("shifted maps re-anchor the angle") {
    const TimeMap g = TimeMap::uniform_angular(1.0, 2.0 * kPi, -1);
    const TimeMap c2 = g.shifted(2.0 * kPi);
    CHECK(c2.time(0.0) == doctest::Approx(0.0));
    CHECK(c2.time(-kPi) == doctest::Approx(kPi));
    const TimeMap affine = TimeMap::affine(2.0, 1.0).shifted(3.0);
    CHECK(affine.time(0.0) == doctest::Approx(7.0));
}

TEST_CASE("custom maps are validated") {
    CHECK_THROWS_AS(
        TimeMap::custom([](double p) { return std::sin(p); },
                        [](double p) { return std::cos(p); }, 0.0, kPi),
        std::invalid_argument);  // not monotone on [0, pi]
    CHECK_THROWS_AS(
        TimeMap::custom([](double p) { return p * p + 2.0 * p + 5.0; },
                        [](double p) { return p + 2.0; }, 0.0, 1.0),
        std::invalid_argument);  // derivative does not match
    const TimeMap ok = TimeMap::custom(
        [](double p) { return p + 0.1 * std::sin(p); },
        [](double p) { return 1.0 + 0.1 * std::cos(p); }, 0.0, kPi);
    CHECK(ok.time(1.0) == doctest::Approx(1.0 + 0.1 * std::sin(1.0)));
}

TEST_CASE("arc path endpoints") {
    const auto path = make_arc_path(2.0, 0.0, kPi, TimeMap::uniform_angular(1.0));
    const Event a = path.start();
    const Event b = path.end();
    CHECK(a.t == doctest::Approx(0.0));
    CHECK(a.x == doctest::Approx(2.0));
    CHECK(a.y == doctest::Approx(0.0));
    CHECK(b.t == doctest::Approx(kPi));
    CHECK(b.x == doctest::Approx(-2.0));
    CHECK(std::abs(b.y) <= 1e-15);

    const auto backward =
        make_arc_path(1.0, 0.0, -kPi, TimeMap::uniform_angular(2.0, 0.0, -1));
    CHECK(backward.end().t == doctest::Approx(kPi / 2.0));
}

TEST_CASE("arc path guards") {
    CHECK_THROWS_AS(make_arc_path(0.0, 0.0, 1.0, TimeMap::affine(1.0, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(make_arc_path(-1.0, 0.0, 1.0, TimeMap::affine(1.0, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(make_arc_path(1.0, 0.0, 1.0, TimeMap::affine(0.0, 2.0)),
                    std::invalid_argument);
    // Degenerate arc of zero angular extent is allowed.
    const auto degenerate =
        make_arc_path(2.0, 0.0, 0.0, TimeMap::affine(0.0, 2.0));
    CHECK(degenerate.segments().size() == 1);
}

TEST_CASE("paths must join continuously") {
    const auto upper = make_arc_path(2.0, 0.0, kPi, TimeMap::uniform_angular(1.0));
    CHECK_THROWS_AS(
        upper.then(make_arc_path(2.0, 0.0, kPi, TimeMap::uniform_angular(1.0))),
        std::invalid_argument);
    const auto loop = upper.then(make_arc_path(
        2.0, kPi, 2.0 * kPi, TimeMap::uniform_angular(1.0, 2.0 * kPi, -1)));
    CHECK(loop.segments().size() == 2);
    CHECK(loop.winding_number() == 1);
}

TEST_CASE("reversal flips segment parametrizations") {
    const auto path = make_arc_path(2.0, 0.0, kPi, TimeMap::uniform_angular(1.0))
                          .then(make_radial_path(kPi, 2.0, 3.0, kPi));
    const auto rev = path.reversed();
    CHECK(rev.segments().size() == 2);
    CHECK(rev.start().x == doctest::Approx(path.end().x));
    CHECK(rev.end().t == doctest::Approx(path.start().t));
}

TEST_CASE("winding numbers") {
    // One positive turn: the standard two-arc loop.
    const auto loop =
        make_arc_path(2.0, 0.0, kPi, TimeMap::uniform_angular(1.0))
            .then(make_arc_path(2.0, kPi, 2.0 * kPi,
                                TimeMap::uniform_angular(1.0, 2.0 * kPi, -1)));
    CHECK(loop.winding_number() == 1);

    // The non-encircling out-around-back rectangle in (rho, phi).
    const TimeMap f = TimeMap::uniform_angular(1.0);
    const auto annulus_loop =
        make_arc_path(2.0, 0.0, kPi, f)
            .then(make_radial_path(kPi, 2.0, 1.2, kPi))
            .then(make_arc_path(1.2, kPi, 0.0, f))
            .then(make_radial_path(0.0, 1.2, 2.0, 0.0));
    CHECK(annulus_loop.winding_number() == 0);

    // Two full turns.
    const auto doubly = make_arc_path(1.0, 0.0, 4.0 * kPi,
                                      TimeMap::uniform_angular(1.0));
    CHECK(doubly.winding_number() == 2);

    // Open paths have no winding number.
    const auto open = make_arc_path(1.0, 0.0, kPi, TimeMap::uniform_angular(1.0));
    CHECK_THROWS_AS(open.winding_number(), std::domain_error);
}

TEST_CASE("radial profiles") {
    const RadialProfile linear = RadialProfile::power_law(2.0, 1.0);
    CHECK(linear.value(1.0) == 0.5);
    CHECK(linear.slope(1.7) == 0.5);
    const RadialProfile quad = RadialProfile::power_law(2.0, 2.0);
    CHECK(quad.value(1.0) == 0.25);
    CHECK(quad.slope(1.0) == 0.5);
    CHECK(RadialProfile::flat(2.0).value(0.3) == 1.0);
    const RadialProfile bump = RadialProfile::bump(2.0, 1.2, 0.5);
    CHECK(bump.value(1.2) == 1.0);
    CHECK(bump.value(2.0) == 1.0);
    CHECK(bump.value(1.6) == doctest::Approx(1.0 + 0.5 * 0.4 * 0.4));

    CHECK_THROWS_AS(
        RadialProfile::custom([](double r) { return r; },
                              [](double) { return 1.0; }, 2.0),
        std::invalid_argument);  // F(rho0) != 1
    CHECK_THROWS_AS(
        RadialProfile::custom([](double r) { return r / 2.0; },
                              [](double) { return 1.0; }, 2.0),
        std::invalid_argument);  // derivative mismatch
}

TEST_CASE("seam continuity is enforced at construction") {
    const TimeMap f = TimeMap::uniform_angular(1.0);
    const TimeMap bad_g = TimeMap::uniform_angular(2.0, 2.0 * kPi, -1);
    const RadialProfile p = RadialProfile::power_law(2.0, 1.0);
    CHECK_THROWS_AS(SurfacePatch::encircling(2.0, 0.0, kPi, f, bad_g, p, p),
                    std::invalid_argument);
}

TEST_CASE("wedge measure coefficients") {
    const SurfacePatch patch = standard_patch(2.0, 1.0);
    const WedgeMeasures wm = wedge_measures(patch, 1.0, 0.0);
    CHECK(wm.c_tx == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::abs(wm.c_ty) <= 1e-15);
    CHECK(wm.c_xy == doctest::Approx(1.0).epsilon(1e-14));

    for (double rho : {0.2, 0.9, 1.7}) {
        for (double phi : {0.3, 2.0, 4.5}) {
            CHECK(wedge_measures(patch, rho, phi).c_xy ==
                  doctest::Approx(rho).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(wedge_measures(patch, 2.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(wedge_measures(patch, 1.0, -0.5), std::domain_error);
}

TEST_CASE("static surfaces have no time wedge") {
    const TimeMap still = TimeMap::affine(0.0, 5.0);
    const RadialProfile flat = RadialProfile::flat(2.0);
    const SurfacePatch patch =
        SurfacePatch::encircling(2.0, 0.0, kPi, still, still, flat, flat);
    const WedgeMeasures wm = wedge_measures(patch, 1.3, 2.2);
    CHECK(wm.c_tx == 0.0);
    CHECK(wm.c_ty == 0.0);
    CHECK(wm.c_xy == doctest::Approx(1.3));
}

TEST_CASE("wedge measures flip sign under parameter swap") {
    const SurfacePatch patch = standard_patch(2.0, 0.7, 2.0);
    for (double rho : {0.1, 1.0, 1.9}) {
        for (double phi : {0.2, 1.5, 3.3, 5.9}) {
            const WedgeMeasures a = wedge_measures(patch, rho, phi);
            const WedgeMeasures b =
                wedge_measures(patch, rho, phi, ParamOrder::phi_rho);
            CHECK(a.c_tx == -b.c_tx);
            CHECK(a.c_ty == -b.c_ty);
            CHECK(a.c_xy == -b.c_xy);
        }
    }
}

TEST_CASE("patch boundary reproduces the surface at rho0") {
    const SurfacePatch patch = standard_patch(2.0, 0.5, 2.0);
    const SpacetimePath boundary = patch.boundary();
    REQUIRE(boundary.segments().size() == 2);
    for (int i = 0; i < 100; ++i) {
        const double phi = 2.0 * kPi * i / 99.0;
        const Event on_surface = patch.event(2.0, phi);
        const int seg = phi <= kPi ? 0 : 1;
        const auto& arc = std::get<ArcSegment>(boundary.segments()[seg]);
        const Event on_path = arc.at(phi);
        CHECK(std::abs(on_surface.t - on_path.t) <= 1e-12);
        CHECK(std::abs(on_surface.x - on_path.x) <= 1e-12);
        CHECK(std::abs(on_surface.y - on_path.y) <= 1e-12);
        CHECK(std::abs(on_surface.z - on_path.z) <= 1e-12);
    }
}

TEST_CASE("seam continuity on both seams") {
    const SurfacePatch patch = standard_patch(2.0, 2.0, 2.0);
    const TimeMap& f = patch.time_map(1);
    const TimeMap& g = patch.time_map(2);
    for (int i = 0; i < 100; ++i) {
        const double rho = 2.0 * i / 99.0;
        const double F = patch.radial_profile(1).value(rho);
        const double G = patch.radial_profile(2).value(rho);
        CHECK(std::abs(F * f.time(kPi) - G * g.time(kPi)) <= 1e-12);
        CHECK(std::abs(F * f.time(0.0) - G * g.time(2.0 * kPi)) <= 1e-12);
    }
}

TEST_CASE("annular patches") {
    const TimeMap f = TimeMap::uniform_angular(1.0);
    CHECK_THROWS_AS(SurfacePatch::annular(2.0, 1.2, 0.0, kPi, f,
                                          RadialProfile::power_law(2.0, 1.0)),
                    std::invalid_argument);  // F(rho1) != 1

    const SurfacePatch patch = SurfacePatch::annular(
        2.0, 1.2, 0.0, kPi, f, RadialProfile::bump(2.0, 1.2, 0.5));
    CHECK(patch.is_annular());
    CHECK(patch.phi_end() == kPi);
    const SpacetimePath boundary = patch.boundary();
    CHECK(boundary.segments().size() == 4);
    CHECK(boundary.winding_number() == 0);
    CHECK_THROWS_AS(patch.event(1.0, 0.5), std::domain_error);
    CHECK(patch.event(1.2, 0.5).t == doctest::Approx(0.5));
}
