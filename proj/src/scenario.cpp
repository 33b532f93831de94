#include "abstokes/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "abstokes/abphase.hpp"
#include "abstokes/version.hpp"

namespace abstokes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kOraclePanels = 200000;

[[noreturn]] void fail(const std::string& message) {
    throw ScenarioError(message);
}

const json& require_object(const json& parent, const std::string& key,
                           const std::string& path) {
    if (!parent.contains(key)) fail("missing section: " + path);
    const json& value = parent.at(key);
    if (!value.is_object()) fail(path + " must be an object");
    return value;
}

double require_number(const json& obj, const std::string& key,
                      const std::string& path) {
    if (!obj.contains(key)) fail("missing field: " + path);
    const json& value = obj.at(key);
    if (!value.is_number()) fail(path + " must be a number");
    return value.get<double>();
}

double optional_number(const json& obj, const std::string& key,
                       const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) fail(path + " must be a number");
    return obj.at(key).get<double>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& path) {
    if (!obj.contains(key)) fail("missing field: " + path);
    const json& value = obj.at(key);
    if (!value.is_string()) fail(path + " must be a string");
    return value.get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& path) {
    for (const auto& item : obj.items()) {
        bool found = false;
        for (const char* key : known) {
            if (item.key() == key) {
                found = true;
                break;
            }
        }
        if (!found) fail("unknown field: " + path + "." + item.key());
    }
}

FluxProfile parse_profile(const json& obj, const std::string& path) {
    const std::string type = require_string(obj, "type", path + ".type");
    if (type == "constant") {
        reject_unknown(obj, {"type", "B0"}, path);
        return FluxProfile::constant(require_number(obj, "B0", path + ".B0"));
    }
    if (type == "linear_ramp") {
        reject_unknown(obj, {"type", "B0", "B1"}, path);
        return FluxProfile::linear_ramp(
            require_number(obj, "B0", path + ".B0"),
            require_number(obj, "B1", path + ".B1"));
    }
    if (type == "piecewise_ramp") {
        reject_unknown(obj, {"type", "Bi", "Bf", "ti", "tf"}, path);
        const double ti = require_number(obj, "ti", path + ".ti");
        const double tf = require_number(obj, "tf", path + ".tf");
        if (!(ti < tf)) fail(path + ": ti must be smaller than tf");
        return FluxProfile::piecewise_ramp(
            require_number(obj, "Bi", path + ".Bi"),
            require_number(obj, "Bf", path + ".Bf"), ti, tf);
    }
    if (type == "sinusoidal") {
        reject_unknown(obj, {"type", "B0", "Omega"}, path);
        return FluxProfile::sinusoidal(
            require_number(obj, "B0", path + ".B0"),
            require_number(obj, "Omega", path + ".Omega"));
    }
    fail(path + ".type: unknown profile type '" + type + "'");
}

TimeMap parse_time_map(const json& obj, const std::string& path) {
    const std::string type = require_string(obj, "type", path + ".type");
    if (type == "uniform_angular") {
        reject_unknown(obj, {"type", "omega", "t0", "sign"}, path);
        const double omega = require_number(obj, "omega", path + ".omega");
        const double t0 = optional_number(obj, "t0", path + ".t0", 0.0);
        const double sign = optional_number(obj, "sign", path + ".sign", 1.0);
        if (sign != 1.0 && sign != -1.0) fail(path + ".sign must be 1 or -1");
        if (!(omega > 0.0)) fail(path + ".omega must be positive");
        return TimeMap::uniform_angular(omega, t0, static_cast<int>(sign));
    }
    if (type == "affine") {
        reject_unknown(obj, {"type", "slope", "intercept"}, path);
        return TimeMap::affine(
            require_number(obj, "slope", path + ".slope"),
            require_number(obj, "intercept", path + ".intercept"));
    }
    fail(path + ".type: unknown time map type '" + type + "'");
}

RadialSpec parse_radial(const json& obj, const std::string& path) {
    RadialSpec spec;
    const std::string type = require_string(obj, "type", path + ".type");
    if (type == "power") {
        reject_unknown(obj, {"type", "exponent"}, path);
        spec.kind = RadialSpec::Kind::power;
        spec.exponent = optional_number(obj, "exponent", path + ".exponent",
                                        1.0);
        if (spec.exponent < 0.0) fail(path + ".exponent must be nonnegative");
    } else if (type == "flat") {
        reject_unknown(obj, {"type"}, path);
        spec.kind = RadialSpec::Kind::flat;
    } else if (type == "bump") {
        reject_unknown(obj, {"type", "amplitude"}, path);
        spec.kind = RadialSpec::Kind::bump;
        spec.amplitude = optional_number(obj, "amplitude", path + ".amplitude",
                                         0.5);
    } else {
        fail(path + ".type: unknown radial profile type '" + type + "'");
    }
    return spec;
}

json to_json(const IntegralResult& r) {
    return json{{"value", r.value},
                {"error_estimate", r.error_estimate},
                {"evaluations", r.evaluations},
                {"converged", r.converged}};
}

json to_json(const SemiAnalyticSurface& s) {
    return json{{"electric_region_i", to_json(s.electric_region_i)},
                {"electric_region_ii", to_json(s.electric_region_ii)},
                {"electric_region_iii", to_json(s.electric_region_iii)},
                {"electric_region_iv", to_json(s.electric_region_iv)},
                {"electric_interior_sector1",
                 to_json(s.electric_interior_sector1)},
                {"electric_interior_sector2",
                 to_json(s.electric_interior_sector2)},
                {"magnetic_sector1", to_json(s.magnetic_sector1)},
                {"magnetic_sector2", to_json(s.magnetic_sector2)},
                {"total", to_json(s.total)},
                {"region_sum", s.region_sum()},
                {"interior_cancellation", s.interior_cancellation()}};
}

json to_json(const StokesReport& r) {
    return json{
        {"line", to_json(r.line)},
        {"surface_numeric", to_json(r.surface_numeric)},
        {"semianalytic", to_json(r.semianalytic)},
        {"residual_line_vs_numeric", r.residual_line_vs_numeric},
        {"residual_line_vs_semianalytic", r.residual_line_vs_semianalytic},
        {"interior_cancellation_residual", r.interior_cancellation_residual},
        {"all_converged", r.all_converged}};
}

json to_json(const PhasePrediction& p) {
    return json{{"phase", p.phase},
                {"method", to_string(p.method)},
                {"error_estimate", p.error_estimate},
                {"converged", p.converged},
                {"charge", p.charge},
                {"profile", p.profile},
                {"geometry", p.geometry}};
}

json oracle_check(const std::vector<OneDimIntegral>& pieces,
                  const QuadratureConfig& cfg) {
    json checks = json::array();
    double max_diff = 0.0;
    for (const OneDimIntegral& piece : pieces) {
        QuadratureConfig piece_cfg = cfg;
        piece_cfg.breakpoints = piece.breakpoints;
        const IntegralResult adaptive =
            integrate_1d(piece.integrand, piece.a, piece.b, piece_cfg);
        const double oracle =
            riemann_oracle(piece.integrand, piece.a, piece.b, kOraclePanels);
        const double diff = std::abs(adaptive.value - oracle);
        max_diff = std::max(max_diff, diff);
        checks.push_back(json{{"label", piece.label},
                              {"adaptive", adaptive.value},
                              {"oracle", oracle},
                              {"abs_diff", diff}});
    }
    return json{{"panels", kOraclePanels},
                {"max_abs_diff", max_diff},
                {"integrals", checks}};
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                        c == '-';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? std::string("scenario") : out;
}

void write_atomic(const std::filesystem::path& path,
                  const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        stream << content;
    }
    std::filesystem::rename(tmp, path);
}

std::vector<double> sweep_grid(const SweepSpec& spec, bool insert_pi) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(spec.steps) + 4);
    for (int i = 0; i < spec.steps; ++i) {
        xs.push_back(spec.from + (spec.to - spec.from) * i / (spec.steps - 1));
    }
    xs.back() = spec.to;
    if (insert_pi) {
        // The sinc zeros at multiples of pi are the headline prediction;
        // force them onto the grid.
        for (long k = std::max(1L, static_cast<long>(std::ceil(spec.from / kPi)));
             k * kPi <= spec.to; ++k) {
            const double x = k * kPi;
            if (x < spec.from) continue;
            bool present = false;
            for (double existing : xs) {
                if (std::abs(existing - x) <= 1e-12 * (1.0 + std::abs(x))) {
                    present = true;
                    break;
                }
            }
            if (!present) xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
    }
    return xs;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, 8);
    if (workers <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, n, w, workers] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace

Scenario Scenario::from_json(const json& config) {
    if (!config.is_object()) fail("configuration root must be an object");
    reject_unknown(config,
                   {"name", "task", "solenoid", "geometry", "charge",
                    "quadrature", "sweep"},
                   "config");

    Scenario s;
    s.echo = config;
    s.name = require_string(config, "name", "config.name");
    s.task = require_string(config, "task", "config.task");
    if (s.task != "stokes_check" && s.task != "ab_phase" &&
        s.task != "loop_check" && s.task != "sweep") {
        fail("config.task must be one of stokes_check, ab_phase, loop_check, "
             "sweep");
    }

    const json& solenoid = require_object(config, "solenoid", "config.solenoid");
    reject_unknown(solenoid, {"R", "profile"}, "config.solenoid");
    s.radius = require_number(solenoid, "R", "config.solenoid.R");
    if (!(s.radius > 0.0)) fail("config.solenoid.R must be positive");
    s.profile = parse_profile(
        require_object(solenoid, "profile", "config.solenoid.profile"),
        "config.solenoid.profile");

    if (config.contains("charge")) {
        s.charge = require_number(config, "charge", "config.charge");
    }

    if (config.contains("quadrature")) {
        const json& quad = require_object(config, "quadrature",
                                          "config.quadrature");
        reject_unknown(quad, {"abs_tol", "rel_tol", "max_subdivisions"},
                       "config.quadrature");
        s.quadrature.abs_tol = optional_number(quad, "abs_tol",
                                               "config.quadrature.abs_tol",
                                               s.quadrature.abs_tol);
        s.quadrature.rel_tol = optional_number(quad, "rel_tol",
                                               "config.quadrature.rel_tol",
                                               s.quadrature.rel_tol);
        const double max_sub = optional_number(
            quad, "max_subdivisions", "config.quadrature.max_subdivisions",
            s.quadrature.max_subdivisions);
        if (max_sub < 1.0) fail("config.quadrature.max_subdivisions must be >= 1");
        s.quadrature.max_subdivisions = static_cast<int>(max_sub);
        if (!(s.quadrature.abs_tol > 0.0) || !(s.quadrature.rel_tol > 0.0)) {
            fail("config.quadrature tolerances must be positive");
        }
    }

    const bool needs_geometry = s.task != "sweep";
    if (config.contains("geometry")) {
        const json& geom = require_object(config, "geometry", "config.geometry");
        reject_unknown(geom,
                       {"rho0", "rho1", "phi_i", "phi_f", "sector1", "sector2",
                        "radial_profile"},
                       "config.geometry");
        s.has_geometry = true;
        s.rho0 = require_number(geom, "rho0", "config.geometry.rho0");
        if (!(s.rho0 > 0.0)) fail("config.geometry.rho0 must be positive");
        s.rho1 = optional_number(geom, "rho1", "config.geometry.rho1", 0.0);
        if (s.rho1 < 0.0 || (s.rho1 != 0.0 && s.rho1 >= s.rho0)) {
            fail("config.geometry.rho1 must satisfy 0 < rho1 < rho0");
        }
        s.phi_i = optional_number(geom, "phi_i", "config.geometry.phi_i", 0.0);
        s.phi_f = optional_number(geom, "phi_f", "config.geometry.phi_f",
                                  s.phi_i + kPi);
        if (!(s.phi_i < s.phi_f) || !(s.phi_f < s.phi_i + 2.0 * kPi)) {
            fail("config.geometry: need phi_i < phi_f < phi_i + 2 pi");
        }
        const json& sector1 = require_object(geom, "sector1",
                                             "config.geometry.sector1");
        s.sector1 = parse_time_map(sector1, "config.geometry.sector1");
        if (geom.contains("sector2")) {
            s.sector2 = parse_time_map(
                require_object(geom, "sector2", "config.geometry.sector2"),
                "config.geometry.sector2");
        } else {
            // Mirror schedule: only derivable for a forward uniform sector 1
            // spanning exactly pi.
            const bool uniform =
                sector1.contains("type") && sector1.at("type") == "uniform_angular";
            const double span = s.phi_f - s.phi_i;
            if (!uniform || std::abs(span - kPi) > 1e-12 ||
                optional_number(sector1, "sign", "", 1.0) != 1.0) {
                fail("config.geometry.sector2 is required unless sector1 is a "
                     "forward uniform_angular map over a pi span");
            }
            const double omega = require_number(sector1, "omega",
                                                "config.geometry.sector1.omega");
            const double t_f = s.sector1.time(s.phi_f);
            s.sector2 = TimeMap::uniform_angular(omega, t_f + s.phi_f / omega,
                                                 -1);
        }
        if (geom.contains("radial_profile")) {
            s.radial = parse_radial(
                require_object(geom, "radial_profile",
                               "config.geometry.radial_profile"),
                "config.geometry.radial_profile");
        }
    } else if (needs_geometry) {
        fail("missing section: config.geometry");
    }

    if (s.task == "sweep") {
        const json& sweep = require_object(config, "sweep", "config.sweep");
        reject_unknown(sweep, {"parameter", "from", "to", "steps"},
                       "config.sweep");
        SweepSpec spec;
        spec.parameter = require_string(sweep, "parameter",
                                        "config.sweep.parameter");
        if (spec.parameter != "omega_tf" && spec.parameter != "t_f") {
            fail("config.sweep.parameter must be omega_tf or t_f");
        }
        spec.from = require_number(sweep, "from", "config.sweep.from");
        spec.to = require_number(sweep, "to", "config.sweep.to");
        const double steps = require_number(sweep, "steps",
                                            "config.sweep.steps");
        if (steps < 2.0 || steps != std::floor(steps)) {
            fail("config.sweep.steps must be an integer >= 2");
        }
        spec.steps = static_cast<int>(steps);
        if (!(spec.from > 0.0)) fail("config.sweep.from must be positive");
        if (!(spec.from < spec.to)) fail("config.sweep requires from < to");
        if (spec.parameter == "omega_tf" &&
            !std::holds_alternative<FluxProfile::Sinusoidal>(s.profile.law())) {
            fail("config.sweep: omega_tf sweeps need a sinusoidal profile");
        }
        s.sweep = spec;
    } else if (config.contains("sweep")) {
        fail("config.sweep is only valid when task is sweep");
    }

    if (s.task == "loop_check" && s.rho1 <= 0.0) {
        fail("config.geometry.rho1 is required for loop_check");
    }
    return s;
}

SolenoidField Scenario::field() const {
    return SolenoidField(radius, profile);
}

RadialProfile Scenario::make_radial_profile() const {
    switch (radial.kind) {
        case RadialSpec::Kind::power:
            if (rho1 > 0.0) {
                fail("config.geometry.radial_profile: annular patches need "
                     "type flat or bump");
            }
            return RadialProfile::power_law(rho0, radial.exponent);
        case RadialSpec::Kind::flat:
            return RadialProfile::flat(rho0);
        case RadialSpec::Kind::bump:
            if (rho1 <= 0.0) {
                fail("config.geometry.radial_profile: bump requires rho1");
            }
            return RadialProfile::bump(rho0, rho1, radial.amplitude);
    }
    fail("config.geometry.radial_profile: unreachable kind");
}

SurfacePatch Scenario::patch() const {
    if (!has_geometry) fail("missing section: config.geometry");
    RadialProfile rp = make_radial_profile();
    if (rho1 > 0.0) {
        return SurfacePatch::annular(rho0, rho1, phi_i, phi_f, sector1, rp);
    }
    return SurfacePatch::encircling(rho0, phi_i, phi_f, sector1, sector2, rp,
                                    rp);
}

SpacetimePath Scenario::path_c1() const {
    if (!has_geometry) fail("missing section: config.geometry");
    return make_arc_path(rho0, phi_i, phi_f, sector1);
}

SpacetimePath Scenario::path_c2() const {
    if (!has_geometry) fail("missing section: config.geometry");
    return make_arc_path(rho0, phi_i, phi_f - 2.0 * kPi,
                         sector2.shifted(2.0 * kPi));
}

std::string sweep_csv(const std::vector<std::array<double, 3>>& rows) {
    std::string csv = "param,phase,error_estimate\n";
    for (const auto& row : rows) {
        csv += format_number(row[0]);
        csv += ',';
        csv += format_number(row[1]);
        csv += ',';
        csv += format_number(row[2]);
        csv += '\n';
    }
    return csv;
}

RunOutcome run_scenario(const Scenario& scenario, bool with_oracle) {
    RunOutcome outcome;
    json result;
    json oracle;

    const SolenoidField field = scenario.field();

    if (scenario.task == "stokes_check") {
        const SurfacePatch patch = scenario.patch();
        const StokesReport report =
            stokes_check(field, patch, scenario.quadrature);
        result = to_json(report);
        outcome.all_converged = report.all_converged;
        if (with_oracle) {
            std::vector<OneDimIntegral> pieces = line_integral_pieces(
                field.potential(), patch.boundary(), {field.radius()},
                field.profile().kink_times());
            const std::vector<OneDimIntegral> semi =
                semianalytic_pieces(field, patch);
            pieces.insert(pieces.end(), semi.begin(), semi.end());
            oracle = oracle_check(pieces, scenario.quadrature);
        }
    } else if (scenario.task == "ab_phase") {
        const SpacetimePath c1 = scenario.path_c1();
        const SpacetimePath c2 = scenario.path_c2();
        const PhasePrediction prediction = ab_phase_two_path(
            field, c1, c2, scenario.charge, scenario.quadrature);
        result = to_json(prediction);
        outcome.all_converged = prediction.converged;
        if (with_oracle) {
            std::vector<OneDimIntegral> pieces = line_integral_pieces(
                field.potential(), c1, {field.radius()},
                field.profile().kink_times());
            const std::vector<OneDimIntegral> lower = line_integral_pieces(
                field.potential(), c2, {field.radius()},
                field.profile().kink_times());
            pieces.insert(pieces.end(), lower.begin(), lower.end());
            oracle = oracle_check(pieces, scenario.quadrature);
        }
    } else if (scenario.task == "loop_check") {
        const SurfacePatch patch = scenario.patch();
        const SpacetimePath loop = patch.boundary();
        QuadratureConfig line_cfg = scenario.quadrature;
        line_cfg.breakpoints.push_back(field.radius());
        const IntegralResult line = line_integral(
            field.potential(), loop, line_cfg, field.profile().kink_times());
        const IntegralResult electric = surface_integral(
            field, patch, SurfacePart::electric, scenario.quadrature);
        const IntegralResult magnetic = surface_integral(
            field, patch, SurfacePart::magnetic, scenario.quadrature);
        result = json{{"loop_integral", to_json(line)},
                      {"surface_electric", to_json(electric)},
                      {"surface_magnetic", to_json(magnetic)},
                      {"winding", loop.winding_number()}};
        outcome.all_converged =
            line.converged && electric.converged && magnetic.converged;
        if (with_oracle) {
            std::vector<OneDimIntegral> pieces = line_integral_pieces(
                field.potential(), loop, {field.radius()},
                field.profile().kink_times());
            const std::vector<OneDimIntegral> semi =
                semianalytic_pieces(field, patch);
            pieces.insert(pieces.end(), semi.begin(), semi.end());
            oracle = oracle_check(pieces, scenario.quadrature);
        }
    } else if (scenario.task == "sweep") {
        const SweepSpec& spec = *scenario.sweep;
        const bool is_omega_tf = spec.parameter == "omega_tf";
        const std::vector<double> xs = sweep_grid(spec, is_omega_tf);
        outcome.sweep_rows.resize(xs.size());
        const double R = scenario.radius;
        const double e = scenario.charge;
        const FluxProfile profile = scenario.profile;
        parallel_for(xs.size(), [&](std::size_t i) {
            const double x = xs[i];
            PhasePrediction p;
            if (is_omega_tf) {
                const auto& law =
                    std::get<FluxProfile::Sinusoidal>(profile.law());
                p = ab_phase_sinusoidal(kPi * R * R * law.B0, 1.0, x, e);
            } else {
                p = ab_phase_averaged(profile, R, x, e);
            }
            outcome.sweep_rows[i] = {x, p.phase, p.error_estimate};
        });
        result = json{{"parameter", spec.parameter},
                      {"from", spec.from},
                      {"to", spec.to},
                      {"steps", spec.steps},
                      {"points_emitted", outcome.sweep_rows.size()},
                      {"csv", sanitize_name(scenario.name) + ".sweep.csv"}};
        if (with_oracle) {
            // Cross-check each point's closed form against a midpoint-rule
            // time average of B.
            double max_diff = 0.0;
            for (const auto& row : outcome.sweep_rows) {
                const double t_f = row[0];
                auto B = [&profile, is_omega_tf](double t) {
                    if (is_omega_tf) {
                        const auto& law = std::get<FluxProfile::Sinusoidal>(
                            profile.law());
                        return law.B0 * std::cos(t);
                    }
                    return profile.value(t);
                };
                const double averaged =
                    riemann_oracle(B, 0.0, t_f, kOraclePanels) / t_f;
                const double expect = e * kPi * R * R * averaged;
                max_diff = std::max(max_diff, std::abs(expect - row[1]));
            }
            oracle = json{{"panels", kOraclePanels},
                          {"max_abs_diff", max_diff}};
        }
    } else {
        fail("config.task must be one of stokes_check, ab_phase, loop_check, "
             "sweep");
    }

    json report{{"tool", "abstokes"},
                {"version", kVersion},
                {"timestamp", utc_timestamp()},
                {"scenario", scenario.echo},
                {"task", scenario.task},
                {"result", result}};
    if (with_oracle) report["oracle"] = oracle;
    outcome.report = std::move(report);
    return outcome;
}

int run_scenario_file(const std::filesystem::path& config_path,
                      const RunOptions& opts, std::ostream& out,
                      std::ostream& err) {
    json config;
    try {
        std::ifstream stream(config_path);
        if (!stream) {
            err << "error: cannot open config file " << config_path << "\n";
            return 1;
        }
        config = json::parse(stream);
    } catch (const json::parse_error& e) {
        err << "error: config is not valid JSON: " << e.what() << "\n";
        return 1;
    }

    Scenario scenario;
    RunOutcome outcome;
    try {
        scenario = Scenario::from_json(config);
        outcome = run_scenario(scenario, opts.oracle);
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 2;
    }

    try {
        std::filesystem::create_directories(opts.out_dir);
        const std::string base = sanitize_name(scenario.name);
        const std::filesystem::path report_path =
            opts.out_dir / (base + ".report.json");
        write_atomic(report_path, outcome.report.dump(2) + "\n");
        if (!outcome.sweep_rows.empty()) {
            write_atomic(opts.out_dir / (base + ".sweep.csv"),
                         sweep_csv(outcome.sweep_rows));
        }
        if (!opts.quiet) {
            out << "task " << scenario.task << " (" << scenario.name
                << "): " << (outcome.all_converged ? "converged" : "NOT converged")
                << ", report written to " << report_path.string() << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return outcome.all_converged ? 0 : 2;
}

}  // namespace abstokes
