#include "abstokes/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace abstokes {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool events_close(const Event& a, const Event& b) {
    const double scale =
        1.0 + std::max({std::abs(a.t), std::abs(a.x), std::abs(a.y),
                        std::abs(a.z), std::abs(b.t), std::abs(b.x),
                        std::abs(b.y), std::abs(b.z)});
    const double tol = 1e-9 * scale;
    return std::abs(a.t - b.t) <= tol && std::abs(a.x - b.x) <= tol &&
           std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

}  // namespace

TimeMap TimeMap::uniform_angular(double omega, double t0, int sign) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("uniform_angular requires omega > 0");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("uniform_angular sign must be +1 or -1");
    }
    return TimeMap(UniformAngular{omega, t0, sign});
}

TimeMap TimeMap::affine(double slope, double intercept) {
    return TimeMap(Affine{slope, intercept});
}

TimeMap TimeMap::custom(std::function<double(double)> map,
                        std::function<double(double)> derivative,
                        double phi_lo, double phi_hi) {
    if (!(phi_lo < phi_hi)) {
        throw std::invalid_argument("custom time map needs phi_lo < phi_hi");
    }
    const int n = 33;
    const double span = phi_hi - phi_lo;
    const double h = 1e-6 * span;
    double first_rate = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stay clear of the domain edges so central differences fit.
        const double phi =
            phi_lo + h + (span - 2.0 * h) * static_cast<double>(i) / (n - 1);
        const double stated = derivative(phi);
        const double fd = (map(phi + h) - map(phi - h)) / (2.0 * h);
        if (std::abs(fd - stated) > 1e-6 * (1.0 + std::abs(stated))) {
            throw std::invalid_argument(
                "custom time map derivative does not match the map");
        }
        if (stated == 0.0 || (i > 0 && stated * first_rate < 0.0)) {
            throw std::invalid_argument(
                "custom time map must be strictly monotone on its domain");
        }
        if (i == 0) first_rate = stated;
    }
    return TimeMap(Custom{std::move(map), std::move(derivative)});
}

double TimeMap::time(double phi) const {
    return std::visit(
        overloaded{[phi](const UniformAngular& u) {
                       return u.t0 + u.sign * phi / u.omega;
                   },
                   [phi](const Affine& a) {
                       return a.slope * phi + a.intercept;
                   },
                   [phi](const Custom& c) { return c.map(phi); }},
        law_);
}

double TimeMap::rate(double phi) const {
    return std::visit(
        overloaded{[](const UniformAngular& u) { return u.sign / u.omega; },
                   [](const Affine& a) { return a.slope; },
                   [phi](const Custom& c) { return c.derivative(phi); }},
        law_);
}

TimeMap TimeMap::shifted(double dphi) const {
    return std::visit(
        overloaded{
            [dphi](const UniformAngular& u) {
                return TimeMap(UniformAngular{
                    u.omega, u.t0 + u.sign * dphi / u.omega, u.sign});
            },
            [dphi](const Affine& a) {
                return TimeMap(
                    Affine{a.slope, a.intercept + a.slope * dphi});
            },
            [dphi](const Custom& c) {
                auto map = c.map;
                auto derivative = c.derivative;
                return TimeMap(Custom{
                    [map, dphi](double phi) { return map(phi + dphi); },
                    [derivative, dphi](double phi) {
                        return derivative(phi + dphi);
                    }});
            }},
        law_);
}

Event ArcSegment::at(double phi) const {
    return Event{tmap.time(phi), rho * std::cos(phi), rho * std::sin(phi), z};
}

Event RadialSegment::at(double r) const {
    return Event{t, r * std::cos(phi), r * std::sin(phi), z};
}

Event segment_start(const PathSegment& seg) {
    return std::visit(
        overloaded{[](const ArcSegment& a) { return a.at(a.phi_start); },
                   [](const RadialSegment& r) { return r.at(r.rho_start); }},
        seg);
}

Event segment_end(const PathSegment& seg) {
    return std::visit(
        overloaded{[](const ArcSegment& a) { return a.at(a.phi_end); },
                   [](const RadialSegment& r) { return r.at(r.rho_end); }},
        seg);
}

PathSegment reverse_segment(const PathSegment& seg) {
    return std::visit(
        overloaded{[](const ArcSegment& a) -> PathSegment {
                       return ArcSegment{a.rho, a.phi_end, a.phi_start, a.tmap,
                                         a.z};
                   },
                   [](const RadialSegment& r) -> PathSegment {
                       return RadialSegment{r.phi, r.rho_end, r.rho_start, r.t,
                                            r.z};
                   }},
        seg);
}

SpacetimePath::SpacetimePath(std::vector<PathSegment> segments)
    : segments_(std::move(segments)) {
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        if (!events_close(segment_end(segments_[i]),
                          segment_start(segments_[i + 1]))) {
            throw std::invalid_argument(
                "path segments do not join continuously");
        }
    }
}

Event SpacetimePath::start() const {
    if (segments_.empty()) throw std::domain_error("empty path has no start");
    return segment_start(segments_.front());
}

Event SpacetimePath::end() const {
    if (segments_.empty()) throw std::domain_error("empty path has no end");
    return segment_end(segments_.back());
}

SpacetimePath SpacetimePath::then(const SpacetimePath& next) const {
    std::vector<PathSegment> joined = segments_;
    joined.insert(joined.end(), next.segments_.begin(), next.segments_.end());
    return SpacetimePath(std::move(joined));
}

SpacetimePath SpacetimePath::reversed() const {
    std::vector<PathSegment> rev;
    rev.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        rev.push_back(reverse_segment(*it));
    }
    return SpacetimePath(std::move(rev));
}

int SpacetimePath::winding_number() const {
    if (segments_.empty()) return 0;
    const Event a = start();
    const Event b = end();
    const double tol = 1e-9 * (1.0 + std::max(a.rho(), b.rho()));
    if (std::abs(a.x - b.x) > tol || std::abs(a.y - b.y) > tol) {
        throw std::domain_error(
            "winding number requires a spatially closed path");
    }
    double total_dphi = 0.0;
    for (const PathSegment& seg : segments_) {
        if (const auto* arc = std::get_if<ArcSegment>(&seg)) {
            total_dphi += arc->phi_end - arc->phi_start;
        }
    }
    return static_cast<int>(std::llround(total_dphi / kTwoPi));
}

SpacetimePath make_arc_path(double rho, double phi_start, double phi_end,
                            TimeMap tmap, double z) {
    if (!(rho > 0.0)) {
        throw std::domain_error("arc radius must be positive");
    }
    if (phi_start != phi_end) {
        // Worldline semantics: the schedule must be strictly monotone in phi
        // over the traversed span.
        const int n = 65;
        const double lo = std::min(phi_start, phi_end);
        const double hi = std::max(phi_start, phi_end);
        double first_rate = 0.0;
        for (int i = 0; i < n; ++i) {
            const double phi = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
            const double r = tmap.rate(phi);
            if (r == 0.0 || (i > 0 && r * first_rate < 0.0)) {
                throw std::invalid_argument(
                    "arc time map must be strictly monotone over the arc");
            }
            if (i == 0) first_rate = r;
        }
    }
    return SpacetimePath({ArcSegment{rho, phi_start, phi_end, tmap, z}});
}

SpacetimePath make_radial_path(double phi, double rho_start, double rho_end,
                               double t, double z) {
    if (rho_start < 0.0 || rho_end < 0.0) {
        throw std::domain_error("radial path radii must be nonnegative");
    }
    return SpacetimePath({RadialSegment{phi, rho_start, rho_end, t, z}});
}

RadialProfile RadialProfile::power_law(double rho0, double exponent) {
    if (!(rho0 > 0.0)) {
        throw std::invalid_argument("radial profile needs rho0 > 0");
    }
    if (exponent < 0.0) {
        throw std::invalid_argument("power-law exponent must be nonnegative");
    }
    return RadialProfile(rho0, Power{exponent});
}

RadialProfile RadialProfile::flat(double rho0) {
    if (!(rho0 > 0.0)) {
        throw std::invalid_argument("radial profile needs rho0 > 0");
    }
    return RadialProfile(rho0, Flat{});
}

RadialProfile RadialProfile::bump(double rho0, double rho1, double amplitude) {
    if (!(rho0 > 0.0) || rho1 < 0.0 || !(rho1 < rho0)) {
        throw std::invalid_argument("bump profile needs 0 <= rho1 < rho0");
    }
    return RadialProfile(rho0, Bump{rho1, amplitude});
}

RadialProfile RadialProfile::custom(std::function<double(double)> map,
                                    std::function<double(double)> derivative,
                                    double rho0) {
    if (!(rho0 > 0.0)) {
        throw std::invalid_argument("radial profile needs rho0 > 0");
    }
    if (std::abs(map(rho0) - 1.0) > 1e-12) {
        throw std::invalid_argument("radial profile must satisfy F(rho0) = 1");
    }
    const int n = 33;
    const double h = 1e-6 * rho0;
    for (int i = 0; i < n; ++i) {
        const double rho =
            h + (rho0 - 2.0 * h) * static_cast<double>(i) / (n - 1);
        const double stated = derivative(rho);
        const double fd = (map(rho + h) - map(rho - h)) / (2.0 * h);
        if (std::abs(fd - stated) > 1e-6 * (1.0 + std::abs(stated))) {
            throw std::invalid_argument(
                "radial profile derivative does not match the map");
        }
    }
    return RadialProfile(rho0, Custom{std::move(map), std::move(derivative)});
}

double RadialProfile::value(double rho) const {
    return std::visit(
        overloaded{[this, rho](const Power& p) {
                       return std::pow(rho / rho0_, p.exponent);
                   },
                   [](const Flat&) { return 1.0; },
                   [this, rho](const Bump& b) {
                       return 1.0 + b.amplitude * (rho - b.rho1) * (rho0_ - rho);
                   },
                   [rho](const Custom& c) { return c.map(rho); }},
        law_);
}

double RadialProfile::slope(double rho) const {
    return std::visit(
        overloaded{[this, rho](const Power& p) {
                       if (p.exponent == 0.0) return 0.0;
                       return p.exponent *
                              std::pow(rho / rho0_, p.exponent - 1.0) / rho0_;
                   },
                   [](const Flat&) { return 0.0; },
                   [this, rho](const Bump& b) {
                       return b.amplitude * (rho0_ + b.rho1 - 2.0 * rho);
                   },
                   [rho](const Custom& c) { return c.derivative(rho); }},
        law_);
}

SurfacePatch::SurfacePatch(double rho0, double rho1, double phi_i,
                           double phi_f, TimeMap f, TimeMap g, RadialProfile F,
                           RadialProfile G)
    : rho0_(rho0),
      rho1_(rho1),
      phi_i_(phi_i),
      phi_f_(phi_f),
      f_(std::move(f)),
      g_(std::move(g)),
      F_(std::move(F)),
      G_(std::move(G)) {
    if (!(rho0 > 0.0)) {
        throw std::invalid_argument("surface patch needs rho0 > 0");
    }
    if (rho1 < 0.0 || !(rho1 < rho0)) {
        throw std::invalid_argument("surface patch needs 0 <= rho1 < rho0");
    }
    if (!(phi_i < phi_f) || !(phi_f < phi_i + kTwoPi)) {
        throw std::invalid_argument(
            "surface patch needs phi_i < phi_f < phi_i + 2 pi");
    }
    if (std::abs(F_.outer_radius() - rho0) > 1e-12 * rho0 ||
        std::abs(G_.outer_radius() - rho0) > 1e-12 * rho0) {
        throw std::invalid_argument(
            "radial profile outer radius does not match the patch rho0");
    }
}

SurfacePatch SurfacePatch::encircling(double rho0, double phi_i, double phi_f,
                                      TimeMap sector1_map, TimeMap sector2_map,
                                      RadialProfile sector1_profile,
                                      RadialProfile sector2_profile) {
    SurfacePatch patch(rho0, 0.0, phi_i, phi_f, std::move(sector1_map),
                       std::move(sector2_map), std::move(sector1_profile),
                       std::move(sector2_profile));
    // The surface time must be continuous across both angular seams for the
    // Stokes identity to make sense; sample rather than trust.
    const double tf1 = patch.f_.time(phi_f);
    const double tf2 = patch.g_.time(phi_f);
    const double ti1 = patch.f_.time(phi_i);
    const double ti2 = patch.g_.time(phi_i + kTwoPi);
    for (int i = 0; i < 100; ++i) {
        const double rho = rho0 * static_cast<double>(i) / 99.0;
        const double a = patch.F_.value(rho) * tf1;
        const double b = patch.G_.value(rho) * tf2;
        if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
            throw std::invalid_argument(
                "surface seam discontinuous at phi = phi_f");
        }
        const double c = patch.F_.value(rho) * ti1;
        const double d = patch.G_.value(rho) * ti2;
        if (std::abs(c - d) > 1e-12 * (1.0 + std::abs(c) + std::abs(d))) {
            throw std::invalid_argument(
                "surface seam discontinuous at phi = phi_i");
        }
    }
    return patch;
}

SurfacePatch SurfacePatch::annular(double rho0, double rho1, double phi_i,
                                   double phi_f, TimeMap map,
                                   RadialProfile profile) {
    if (!(rho1 > 0.0)) {
        throw std::invalid_argument("annular patch needs rho1 > 0");
    }
    TimeMap map_copy = map;
    RadialProfile profile_copy = profile;
    SurfacePatch patch(rho0, rho1, phi_i, phi_f, std::move(map_copy),
                       std::move(map), std::move(profile_copy),
                       std::move(profile));
    if (std::abs(patch.F_.value(rho1) - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "annular patch needs F(rho1) = 1 so the inner boundary follows "
            "the arc schedule");
    }
    return patch;
}

double SurfacePatch::phi_end() const {
    return is_annular() ? phi_f_ : phi_i_ + kTwoPi;
}

int SurfacePatch::sector_of(double phi) const {
    const double eps = 1e-12 * (1.0 + std::abs(phi_i_) + kTwoPi);
    if (phi < phi_i_ - eps || phi > phi_end() + eps) {
        throw std::domain_error("phi outside the surface patch domain");
    }
    return phi <= phi_f_ ? 1 : 2;
}

const TimeMap& SurfacePatch::time_map(int sector) const {
    return sector == 1 ? f_ : g_;
}

const RadialProfile& SurfacePatch::radial_profile(int sector) const {
    return sector == 1 ? F_ : G_;
}

void SurfacePatch::require_inside(double rho, double phi) const {
    const double eps = 1e-12 * (1.0 + rho0_);
    if (rho < rho1_ - eps || rho > rho0_ + eps) {
        throw std::domain_error("rho outside the surface patch domain");
    }
    sector_of(phi);
}

double SurfacePatch::time_at(double rho, double phi) const {
    const int sector = sector_of(phi);
    return radial_profile(sector).value(rho) * time_map(sector).time(phi);
}

Event SurfacePatch::event(double rho, double phi) const {
    require_inside(rho, phi);
    return Event{time_at(rho, phi), rho * std::cos(phi), rho * std::sin(phi),
                 0.0};
}

SurfaceJacobian SurfacePatch::jacobian(double rho, double phi) const {
    require_inside(rho, phi);
    const int sector = sector_of(phi);
    const RadialProfile& radial = radial_profile(sector);
    const TimeMap& tmap = time_map(sector);
    SurfaceJacobian j;
    j.dt_drho = radial.slope(rho) * tmap.time(phi);
    j.dt_dphi = radial.value(rho) * tmap.rate(phi);
    j.dx_drho = std::cos(phi);
    j.dx_dphi = -rho * std::sin(phi);
    j.dy_drho = std::sin(phi);
    j.dy_dphi = rho * std::cos(phi);
    return j;
}

SpacetimePath SurfacePatch::boundary() const {
    if (!is_annular()) {
        return make_arc_path(rho0_, phi_i_, phi_f_, f_)
            .then(make_arc_path(rho0_, phi_f_, phi_i_ + kTwoPi, g_));
    }
    const double t_i = f_.time(phi_i_);
    const double t_f = f_.time(phi_f_);
    return make_arc_path(rho0_, phi_i_, phi_f_, f_)
        .then(make_radial_path(phi_f_, rho0_, rho1_, t_f))
        .then(make_arc_path(rho1_, phi_f_, phi_i_, f_))
        .then(make_radial_path(phi_i_, rho1_, rho0_, t_i));
}

WedgeMeasures wedge_measures(const SurfacePatch& patch, double rho, double phi,
                             ParamOrder order) {
    const SurfaceJacobian j = patch.jacobian(rho, phi);
    const double t[2] = {j.dt_drho, j.dt_dphi};
    const double x[2] = {j.dx_drho, j.dx_dphi};
    const double y[2] = {j.dy_drho, j.dy_dphi};
    const int u = order == ParamOrder::rho_phi ? 0 : 1;
    const int v = 1 - u;
    auto det = [u, v](const double a[2], const double b[2]) {
        return a[u] * b[v] - a[v] * b[u];
    };
    return WedgeMeasures{det(t, x), det(t, y), det(x, y)};
}

}  // namespace abstokes
