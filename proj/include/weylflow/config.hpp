#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylflow/billiards.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/scenario.hpp"

namespace weylflow {

enum class Task { Simulate, Lyapunov, CurvatureScan, Billiard, OrbitStability, Verify };

const char* task_name(Task t);
std::optional<Task> parse_task(const std::string& name);

struct Numerics {
    double dt = 1e-3;
    double T = 100.0;
    int renorm_every = 10;
    std::uint64_t seed = 0;
    int n_collisions = 10000;
};

struct OutputOptions {
    std::string directory = "out";
    bool csv = true;
    bool json = true;
    int every = 10;  // trajectory rows are written every `every` steps
};

struct ScanOptions {
    int points = 100;
    int planes = 100;
};

struct FlowOptions {
    FlowKind kind = FlowKind::Isokinetic;
    std::optional<IsoenergeticSpec> isoenergetic;
};

struct BilliardOptions {
    Vec2 periods{1.0, 1.0};
    std::vector<Scatterer> scatterers;
    Vec2 field{0.0, 0.0};
    BilliardState initial{Vec2(0.5, 0.1), Vec2(1.0, 0.0), 0.0};
    bool with_tangent = true;
    /// Values of r_min |E| to rerun at, field direction kept. Empty: no sweep.
    std::vector<double> sweep;
};

struct OrbitOptions {
    double radius = 0.2;
    std::vector<double> r_times_E;
    std::vector<double> gaps;
    std::vector<double> tilts;
    int chord_samples = 360;
};

struct RunConfig {
    Task task = Task::Simulate;
    std::string preset;  // empty when the scenario was given explicitly
    std::optional<WeylScenario> scenario;
    FlowOptions flow;
    std::optional<PhaseState> initial;  // v is normalized to unit speed on use
    Numerics numerics;
    ScanOptions scan;
    std::optional<BilliardOptions> billiard;
    std::optional<OrbitOptions> orbit;
    OutputOptions output;
    /// The document with every default filled in, echoed into outputs.
    nlohmann::ordered_json echo;
};

/// Either a config or every problem found, each naming its key path.
struct ConfigResult {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;
};

/// Strict parse: unknown keys, wrong types, out-of-range values and
/// mutually exclusive fields are all collected. Syntax errors report
/// line and column.
ConfigResult parse_config(const std::string& text);

/// Reads and parses a file; throws ConfigError listing all errors.
RunConfig load_config(const std::string& path);

/// Config document for a shipped preset, or nullopt for an unknown name.
std::optional<nlohmann::ordered_json> preset_document(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace weylflow
