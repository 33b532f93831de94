#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "abstokes/flux.hpp"
#include "abstokes/geometry.hpp"
#include "abstokes/quadrature.hpp"
#include "abstokes/stokes.hpp"

namespace abstokes {

using json = nlohmann::ordered_json;

/// Configuration problem: reported with exit status 1, naming the field.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string parameter;  // "omega_tf" or "t_f"
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
};

struct RadialSpec {
    enum class Kind { power, flat, bump };
    Kind kind = Kind::power;
    double exponent = 1.0;
    double amplitude = 0.5;
};

/// A fully parsed scenario: one solenoid, one geometry, one task.
/// Unknown configuration fields are rejected at parse time.
struct Scenario {
    std::string name;
    std::string task;
    double radius = 1.0;
    FluxProfile profile = FluxProfile::constant(0.0);
    double rho0 = 2.0;
    double rho1 = 0.0;  // 0 means no inner radius
    double phi_i = 0.0;
    double phi_f = 0.0;
    TimeMap sector1 = TimeMap::affine(1.0, 0.0);
    TimeMap sector2 = TimeMap::affine(-1.0, 0.0);
    bool has_geometry = false;
    RadialSpec radial;
    double charge = 1.0;
    QuadratureConfig quadrature;
    std::optional<SweepSpec> sweep;
    json echo;

    static Scenario from_json(const json& config);

    SolenoidField field() const;
    RadialProfile make_radial_profile() const;
    SurfacePatch patch() const;
    /// Upper interferometer path: arc at rho0 over [phi_i, phi_f].
    SpacetimePath path_c1() const;
    /// Lower path: arc at rho0 over [phi_i, phi_f - 2 pi], following the
    /// sector-2 schedule re-anchored by 2 pi.
    SpacetimePath path_c2() const;
};

struct RunOptions {
    std::filesystem::path out_dir = "./out";
    bool oracle = false;
    bool quiet = false;
};

struct RunOutcome {
    json report;
    std::vector<std::array<double, 3>> sweep_rows;  // param, phase, error
    bool all_converged = true;
};

/// Executes the scenario's task and assembles the report document.
/// `with_oracle` adds midpoint-rule cross-checks of every 1-D integral.
RunOutcome run_scenario(const Scenario& scenario, bool with_oracle);

/// CSV serialization of sweep rows: header `param,phase,error_estimate`,
/// LF line endings, 17-significant-digit numbers.
std::string sweep_csv(const std::vector<std::array<double, 3>>& rows);

/// Loads a configuration file, runs it and writes report files under
/// opts.out_dir (atomically, write-then-rename).  Returns the process exit
/// status: 0 success, 1 configuration error, 2 numeric non-convergence.
int run_scenario_file(const std::filesystem::path& config_path,
                      const RunOptions& opts, std::ostream& out,
                      std::ostream& err);

}  // namespace abstokes
