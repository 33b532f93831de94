#include "abstokes/stokes.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace abstokes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Roots of h on [lo, hi] by sampled sign changes plus bisection.  Used to
// locate the curves where a ramped flux makes the integrand non-smooth, so
// that quadrature panels never straddle them.
void append_roots(const std::function<double(double)>& h, double lo, double hi,
                  std::vector<double>& out) {
    if (!(hi > lo)) std::swap(lo, hi);
    if (!(hi > lo)) return;
    constexpr int cells = 64;
    double prev_x = lo;
    double prev_v = h(lo);
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double v = h(x);
        if (prev_v == 0.0) {
            out.push_back(prev_x);
        } else if (v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            double a = prev_x;
            double b = x;
            double fa = prev_v;
            for (int iter = 0; iter < 60; ++iter) {
                const double mid = 0.5 * (a + b);
                const double fm = h(mid);
                if (fm == 0.0) {
                    a = mid;
                    b = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
}

// Angles at which an arc's schedule crosses any of the given times.
std::vector<double> arc_time_breakpoints(const ArcSegment& arc,
                                         const std::vector<double>& times) {
    std::vector<double> out;
    const double lo = std::min(arc.phi_start, arc.phi_end);
    const double hi = std::max(arc.phi_start, arc.phi_end);
    for (double t : times) {
        append_roots([&arc, t](double phi) { return arc.tmap.time(phi) - t; },
                     lo, hi, out);
    }
    return out;
}

void accumulate(IntegralResult& into, const IntegralResult& piece) {
    into.value += piece.value;
    into.error_estimate += piece.error_estimate;
    into.evaluations += piece.evaluations;
    into.converged = into.converged && piece.converged;
}

IntegralResult integrate_piece(const OneDimIntegral& piece,
                               const QuadratureConfig& cfg) {
    QuadratureConfig piece_cfg = cfg;
    piece_cfg.breakpoints = piece.breakpoints;
    return integrate_1d(piece.integrand, piece.a, piece.b, piece_cfg);
}

// Outer integral over rho of rho * (inner integral over phi) -- the
// iteration order of the magnetic sector reduction, deliberately opposite
// to the electric interior terms.
IntegralResult iterated_outer_rho(
    const std::function<double(double, double)>& fn, double rho_lo,
    double rho_hi, double phi_lo, double phi_hi, const QuadratureConfig& cfg,
    const std::function<std::vector<double>(double)>& phi_breakpoints_at) {
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol /= 10.0;
    inner_cfg.rel_tol /= 10.0;
    QuadratureConfig outer_cfg = cfg;
    outer_cfg.breakpoints.clear();

    long inner_evaluations = 0;
    bool inner_converged = true;
    auto outer_integrand = [&](double rho) {
        auto slice = [&fn, rho](double phi) { return fn(rho, phi); };
        inner_cfg.breakpoints =
            phi_breakpoints_at ? phi_breakpoints_at(rho) : std::vector<double>{};
        IntegralResult inner = integrate_1d(slice, phi_lo, phi_hi, inner_cfg);
        inner_evaluations += inner.evaluations;
        inner_converged = inner_converged && inner.converged;
        return rho * inner.value;
    };
    IntegralResult outer = integrate_1d(outer_integrand, rho_lo, rho_hi,
                                        outer_cfg);
    outer.evaluations = inner_evaluations;
    outer.converged = outer.converged && inner_converged;
    return outer;
}

// Radii at which the surface time crosses a flux kink time along the slice
// at fixed phi, within [rho_lo, rho_hi] of the given sector.
std::vector<double> slice_kink_radii(const SurfacePatch& patch, int sector,
                                     double phi, double rho_lo, double rho_hi,
                                     const std::vector<double>& kink_times) {
    std::vector<double> out;
    if (kink_times.empty()) return out;
    const double tau = patch.time_map(sector).time(phi);
    const RadialProfile& radial = patch.radial_profile(sector);
    for (double t : kink_times) {
        append_roots(
            [&radial, tau, t](double rho) { return radial.value(rho) * tau - t; },
            rho_lo, rho_hi, out);
    }
    return out;
}

// Angles at which the surface time at fixed rho crosses a flux kink time,
// within the sector's angular span.
std::vector<double> sector_kink_angles(const SurfacePatch& patch, int sector,
                                       double rho,
                                       const std::vector<double>& kink_times) {
    std::vector<double> out;
    if (kink_times.empty()) return out;
    const double lo = sector == 1 ? patch.phi_i() : patch.phi_f();
    const double hi = sector == 1 ? patch.phi_f() : patch.phi_end();
    const double scale = patch.radial_profile(sector).value(rho);
    const TimeMap& tmap = patch.time_map(sector);
    for (double t : kink_times) {
        append_roots(
            [&tmap, scale, t](double phi) { return scale * tmap.time(phi) - t; },
            lo, hi, out);
    }
    return out;
}

void require_patch_outside_wall(const SolenoidField& field,
                                const SurfacePatch& patch) {
    const double R = field.radius();
    if (!(patch.rho0() > R)) {
        throw std::domain_error(
            "the boundary loop must lie outside the solenoid (rho0 > R)");
    }
    if (patch.is_annular() && !(patch.rho1() > R)) {
        throw std::domain_error(
            "annular reductions assume R < rho1 < rho0");
    }
}

}  // namespace

std::vector<OneDimIntegral> line_integral_pieces(
    const FourPotential& potential, const SpacetimePath& path,
    const std::vector<double>& radial_breakpoints,
    const std::vector<double>& time_breakpoints) {
    std::vector<OneDimIntegral> pieces;
    int index = 0;
    for (const PathSegment& seg : path.segments()) {
        std::visit(
            overloaded{
                [&](const ArcSegment& arc) {
                    OneDimIntegral piece;
                    piece.label = "segment " + std::to_string(index) +
                                  ": arc rho=" + std::to_string(arc.rho);
                    piece.a = arc.phi_start;
                    piece.b = arc.phi_end;
                    piece.breakpoints =
                        arc_time_breakpoints(arc, time_breakpoints);
                    piece.integrand = [potential, arc](double phi) {
                        const Event ev = arc.at(phi);
                        const Vec3 A = potential.vector(ev);
                        const double A0 = potential.scalar(ev);
                        const double dx = -arc.rho * std::sin(phi);
                        const double dy = arc.rho * std::cos(phi);
                        return A0 * arc.tmap.rate(phi) - (A.x * dx + A.y * dy);
                    };
                    pieces.push_back(std::move(piece));
                },
                [&](const RadialSegment& rad) {
                    OneDimIntegral piece;
                    piece.label = "segment " + std::to_string(index) +
                                  ": radial phi=" + std::to_string(rad.phi);
                    piece.a = rad.rho_start;
                    piece.b = rad.rho_end;
                    piece.breakpoints = radial_breakpoints;
                    const double cp = std::cos(rad.phi);
                    const double sp = std::sin(rad.phi);
                    piece.integrand = [potential, rad, cp, sp](double rho) {
                        const Event ev = rad.at(rho);
                        const Vec3 A = potential.vector(ev);
                        return -(A.x * cp + A.y * sp);
                    };
                    pieces.push_back(std::move(piece));
                }},
            seg);
        ++index;
    }
    return pieces;
}

IntegralResult line_integral(const FourPotential& potential,
                             const SpacetimePath& path,
                             const QuadratureConfig& cfg,
                             const std::vector<double>& time_breakpoints) {
    IntegralResult sum;
    sum.converged = true;
    for (const OneDimIntegral& piece : line_integral_pieces(
             potential, path, cfg.breakpoints, time_breakpoints)) {
        accumulate(sum, integrate_piece(piece, cfg));
    }
    return sum;
}

IntegralResult surface_integral(const SolenoidField& field,
                                const SurfacePatch& patch, SurfacePart part,
                                const QuadratureConfig& cfg) {
    auto integrand = [&field, &patch, part](double rho, double phi) {
        const WedgeMeasures wm = wedge_measures(patch, rho, phi);
        const FieldStrength fs = field.field_strength(patch.event(rho, phi));
        double value = 0.0;
        if (part != SurfacePart::magnetic) {
            value += fs.f_0x() * wm.c_tx + fs.f_0y() * wm.c_ty;
        }
        if (part != SurfacePart::electric) {
            value += fs.f_xy() * wm.c_xy;
        }
        return value;
    };

    IntegrationRange rho_range{patch.rho1(), patch.rho0(), cfg.breakpoints};
    rho_range.breakpoints.push_back(field.radius());
    IntegrationRange phi_range{patch.phi_i(), patch.phi_end(),
                               {patch.phi_f()}};
    QuadratureConfig base_cfg = cfg;
    base_cfg.breakpoints.clear();
    const std::vector<double> kinks = field.profile().kink_times();
    auto kink_radii_at = [&patch, kinks](double phi) {
        return slice_kink_radii(patch, patch.sector_of(phi), phi, patch.rho1(),
                                patch.rho0(), kinks);
    };
    return integrate_2d(integrand, rho_range, phi_range, base_cfg,
                        kink_radii_at);
}

std::vector<OneDimIntegral> semianalytic_pieces(const SolenoidField& field,
                                                const SurfacePatch& patch) {
    require_patch_outside_wall(field, patch);
    const double R = field.radius();
    const double half_R2 = 0.5 * R * R;
    const FluxProfile profile = field.profile();
    const std::vector<double> kinks = profile.kink_times();
    auto angles = [&patch, &kinks](int sector, double rho) {
        return sector_kink_angles(patch, sector, rho, kinks);
    };
    auto merged_angles = [&angles](int sector, double rho_a, double rho_b) {
        std::vector<double> out = angles(sector, rho_a);
        const std::vector<double> more = angles(sector, rho_b);
        out.insert(out.end(), more.begin(), more.end());
        return out;
    };

    // B evaluated at the surface's interior time of each sector.
    auto sector_B = [profile, &patch](int sector, double rho) {
        const RadialProfile radial = patch.radial_profile(sector);
        const TimeMap tmap = patch.time_map(sector);
        return [profile, radial, tmap, rho](double phi) {
            return profile.value(radial.value(rho) * tmap.time(phi));
        };
    };
    // B on the boundary arcs themselves (no radial profile involved).
    auto boundary_B = [profile, &patch](int sector) {
        const TimeMap tmap = patch.time_map(sector);
        return [profile, tmap](double phi) {
            return profile.value(tmap.time(phi));
        };
    };

    std::vector<OneDimIntegral> pieces;
    if (!patch.is_annular()) {
        auto B_wall_1 = sector_B(1, R);
        auto B_outer_1 = sector_B(1, patch.rho0());
        auto B_wall_2 = sector_B(2, R);
        auto B_outer_2 = sector_B(2, patch.rho0());
        pieces.push_back(
            {"electric wall term, sector 1", patch.phi_i(), patch.phi_f(),
             angles(1, R),
             [B_wall_1, half_R2](double phi) {
                 return -half_R2 * B_wall_1(phi);
             }});
        pieces.push_back(
            {"electric region ii", patch.phi_i(), patch.phi_f(),
             merged_angles(1, R, patch.rho0()),
             [B_wall_1, B_outer_1, half_R2](double phi) {
                 return half_R2 * (B_wall_1(phi) - B_outer_1(phi));
             }});
        pieces.push_back(
            {"electric wall term, sector 2", patch.phi_f(), patch.phi_end(),
             angles(2, R),
             [B_wall_2, half_R2](double phi) {
                 return -half_R2 * B_wall_2(phi);
             }});
        pieces.push_back(
            {"electric region iv", patch.phi_f(), patch.phi_end(),
             merged_angles(2, R, patch.rho0()),
             [B_wall_2, B_outer_2, half_R2](double phi) {
                 return half_R2 * (B_wall_2(phi) - B_outer_2(phi));
             }});
        auto B_arc_1 = boundary_B(1);
        auto B_arc_2 = boundary_B(2);
        pieces.push_back({"boundary reduction, sector 1", patch.phi_i(),
                          patch.phi_f(), angles(1, patch.rho0()),
                          [B_arc_1, half_R2](double phi) {
                              return -half_R2 * B_arc_1(phi);
                          }});
        pieces.push_back({"boundary reduction, sector 2", patch.phi_f(),
                          patch.phi_end(), angles(2, patch.rho0()),
                          [B_arc_2, half_R2](double phi) {
                              return -half_R2 * B_arc_2(phi);
                          }});
    } else {
        auto B_inner = sector_B(1, patch.rho1());
        auto B_outer = sector_B(1, patch.rho0());
        pieces.push_back(
            {"electric annulus term", patch.phi_i(), patch.phi_f(),
             merged_angles(1, patch.rho1(), patch.rho0()),
             [B_inner, B_outer, half_R2](double phi) {
                 return half_R2 * (B_inner(phi) - B_outer(phi));
             }});
        auto B_arc = boundary_B(1);
        pieces.push_back({"boundary reduction, outer arc", patch.phi_i(),
                          patch.phi_f(), angles(1, patch.rho0()),
                          [B_arc, half_R2](double phi) {
                              return -half_R2 * B_arc(phi);
                          }});
        pieces.push_back({"boundary reduction, inner arc", patch.phi_f(),
                          patch.phi_i(), angles(1, patch.rho1()),
                          [B_arc, half_R2](double phi) {
                              return -half_R2 * B_arc(phi);
                          }});
    }
    return pieces;
}

SemiAnalyticSurface surface_integral_semianalytic(const SolenoidField& field,
                                                  const SurfacePatch& patch,
                                                  const QuadratureConfig& cfg) {
    require_patch_outside_wall(field, patch);
    const double R = field.radius();
    const FluxProfile profile = field.profile();
    const std::vector<OneDimIntegral> pieces = semianalytic_pieces(field, patch);

    SemiAnalyticSurface out;
    auto exact_zero = [] {
        IntegralResult r;
        r.converged = true;
        return r;
    };
    out.electric_region_i = exact_zero();
    out.electric_region_ii = exact_zero();
    out.electric_region_iii = exact_zero();
    out.electric_region_iv = exact_zero();
    out.electric_interior_sector1 = exact_zero();
    out.electric_interior_sector2 = exact_zero();
    out.magnetic_sector1 = exact_zero();
    out.magnetic_sector2 = exact_zero();
    out.total = exact_zero();

    QuadratureConfig clean_cfg = cfg;
    clean_cfg.breakpoints.clear();

    auto interior_density = [profile, &patch](int sector) {
        const RadialProfile radial = patch.radial_profile(sector);
        const TimeMap tmap = patch.time_map(sector);
        return [profile, radial, tmap](double rho, double phi) {
            return rho * profile.value(radial.value(rho) * tmap.time(phi));
        };
    };

    const std::vector<double> kinks = profile.kink_times();
    if (!patch.is_annular()) {
        // Electric interior terms: outer phi, inner rho.
        auto interior_radii = [&patch, kinks, R](int sector) {
            return [&patch, kinks, R, sector](double phi) {
                return slice_kink_radii(patch, sector, phi, 0.0, R, kinks);
            };
        };
        out.electric_interior_sector1 = integrate_2d(
            interior_density(1), IntegrationRange{0.0, R, {}},
            IntegrationRange{patch.phi_i(), patch.phi_f(), {}}, clean_cfg,
            interior_radii(1));
        out.electric_interior_sector2 = integrate_2d(
            interior_density(2), IntegrationRange{0.0, R, {}},
            IntegrationRange{patch.phi_f(), patch.phi_end(), {}}, clean_cfg,
            interior_radii(2));

        // Magnetic sectors: outer rho, inner phi, opposite iteration order.
        auto density1 = [profile, &patch](double rho, double phi) {
            return profile.value(patch.radial_profile(1).value(rho) *
                                 patch.time_map(1).time(phi));
        };
        auto density2 = [profile, &patch](double rho, double phi) {
            return profile.value(patch.radial_profile(2).value(rho) *
                                 patch.time_map(2).time(phi));
        };
        auto sector_angles = [&patch, kinks](int sector) {
            return [&patch, kinks, sector](double rho) {
                return sector_kink_angles(patch, sector, rho, kinks);
            };
        };
        out.magnetic_sector1 =
            iterated_outer_rho(density1, 0.0, R, patch.phi_i(), patch.phi_f(),
                               clean_cfg, sector_angles(1));
        out.magnetic_sector1.value = -out.magnetic_sector1.value;
        out.magnetic_sector2 =
            iterated_outer_rho(density2, 0.0, R, patch.phi_f(),
                               patch.phi_end(), clean_cfg, sector_angles(2));
        out.magnetic_sector2.value = -out.magnetic_sector2.value;

        for (const OneDimIntegral& piece : pieces) {
            const IntegralResult r = integrate_piece(piece, clean_cfg);
            if (piece.label == "electric wall term, sector 1") {
                accumulate(out.electric_region_i, r);
            } else if (piece.label == "electric region ii") {
                accumulate(out.electric_region_ii, r);
            } else if (piece.label == "electric wall term, sector 2") {
                accumulate(out.electric_region_iii, r);
            } else if (piece.label == "electric region iv") {
                accumulate(out.electric_region_iv, r);
            } else {
                accumulate(out.total, r);
            }
        }
        accumulate(out.electric_region_i, out.electric_interior_sector1);
        accumulate(out.electric_region_iii, out.electric_interior_sector2);
    } else {
        // Only annulus-type terms survive: no interior, no magnetic field.
        for (const OneDimIntegral& piece : pieces) {
            const IntegralResult r = integrate_piece(piece, clean_cfg);
            if (piece.label == "electric annulus term") {
                accumulate(out.electric_region_ii, r);
            } else {
                accumulate(out.total, r);
            }
        }
    }
    return out;
}

double SemiAnalyticSurface::region_sum() const {
    return electric_region_i.value + electric_region_ii.value +
           electric_region_iii.value + electric_region_iv.value +
           magnetic_sector1.value + magnetic_sector2.value;
}

double SemiAnalyticSurface::interior_cancellation() const {
    return electric_interior_sector1.value + electric_interior_sector2.value +
           magnetic_sector1.value + magnetic_sector2.value;
}

bool SemiAnalyticSurface::all_converged() const {
    return electric_region_i.converged && electric_region_ii.converged &&
           electric_region_iii.converged && electric_region_iv.converged &&
           magnetic_sector1.converged && magnetic_sector2.converged &&
           total.converged;
}

long SemiAnalyticSurface::evaluations() const {
    return electric_region_i.evaluations + electric_region_ii.evaluations +
           electric_region_iii.evaluations + electric_region_iv.evaluations +
           magnetic_sector1.evaluations + magnetic_sector2.evaluations +
           total.evaluations;
}

StokesReport stokes_check(const SolenoidField& field, const SurfacePatch& patch,
                          const QuadratureConfig& cfg) {
    require_patch_outside_wall(field, patch);
    StokesReport report;

    QuadratureConfig line_cfg = cfg;
    line_cfg.breakpoints.push_back(field.radius());
    report.line = line_integral(field.potential(), patch.boundary(), line_cfg,
                                field.profile().kink_times());

    report.surface_numeric = surface_integral(field, patch, SurfacePart::both,
                                              cfg);
    report.semianalytic = surface_integral_semianalytic(field, patch, cfg);

    report.residual_line_vs_numeric =
        std::abs(report.line.value - report.surface_numeric.value);
    report.residual_line_vs_semianalytic =
        std::abs(report.line.value - report.semianalytic.total.value);
    report.interior_cancellation_residual =
        std::abs(report.semianalytic.interior_cancellation());
    report.all_converged = report.line.converged &&
                           report.surface_numeric.converged &&
                           report.semianalytic.all_converged();
    return report;
}

double lambda_difference(const SolenoidField& field, const SpacetimePath& a,
                         const SpacetimePath& b, const QuadratureConfig& cfg) {
    auto matches = [](const Event& lhs, const Event& rhs) {
        return std::abs(lhs.t - rhs.t) <= 1e-10 &&
               std::abs(lhs.x - rhs.x) <= 1e-10 &&
               std::abs(lhs.y - rhs.y) <= 1e-10 &&
               std::abs(lhs.z - rhs.z) <= 1e-10;
    };
    if (!matches(a.start(), b.start()) || !matches(a.end(), b.end())) {
        throw std::domain_error(
            "lambda_difference requires paths sharing start and end events");
    }
    const FourPotential potential = field.potential();
    QuadratureConfig line_cfg = cfg;
    line_cfg.breakpoints.push_back(field.radius());
    const std::vector<double> kinks = field.profile().kink_times();
    return line_integral(potential, a, line_cfg, kinks).value -
           line_integral(potential, b, line_cfg, kinks).value;
}

}  // namespace abstokes
