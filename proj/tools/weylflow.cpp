// weylflow <task> --config <path> --out <dir>
// weylflow verify --out <dir>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weylflow/config.hpp"
#include "weylflow/dispatch.hpp"
#include "weylflow/errors.hpp"

namespace {

constexpr int kConfigFailure = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw weylflow::ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The subcommand names the task. A config without "task" gets it injected;
// a config naming a different task is rejected.
weylflow::ConfigResult read_config(const std::string& path, const std::string& task) {
    std::string text = slurp(path);
    auto doc = nlohmann::ordered_json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object()) {
        if (!doc.contains("task")) {
            doc["task"] = task;
            text = doc.dump();
        } else if (doc["task"].is_string() && doc["task"].get<std::string>() != task) {
            return {std::nullopt, {"task: config says '" + doc["task"].get<std::string>() + "' but the subcommand is '" +
                                   task + "'"}};
        }
    }
    return weylflow::parse_config(text);
}

int report(const weylflow::DispatchResult& r, const std::string& out) {
    if (!r.error_class.empty()) {
        std::cerr << "error [" << r.error_class << "]: " << r.manifest["error"]["message"].get<std::string>() << "\n";
    } else if (r.status != 0) {
        std::cerr << "acceptance criteria failed, see " << out << "/acceptance.csv\n";
    }
    std::cout << "wrote " << r.manifest["files"].size() << " files and manifest.json to " << out << "\n";
    return r.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian thermostats and Weyl flows"};
    app.set_version_flag("--version", std::string(WEYLFLOW_VERSION));
    app.require_subcommand(1);

    std::string config_path, out_dir;
    for (const char* task : {"simulate", "lyapunov", "curvature-scan", "billiard", "orbit-stability"}) {
        CLI::App* sub = app.add_subcommand(task, std::string("run the ") + task + " task");
        sub->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default: output.directory)");
    }
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--out", out_dir, "output directory");
    std::string preset;
    CLI::App* presets = app.add_subcommand("presets", "list presets, or print one as a config");
    presets->add_option("name", preset);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "presets") {
        if (preset.empty()) {
            for (const std::string& p : weylflow::preset_names()) std::cout << p << "\n";
            return 0;
        }
        const auto doc = weylflow::preset_document(preset);
        if (!doc) {
            std::cerr << "unknown preset '" << preset << "'\n";
            return kConfigFailure;
        }
        std::cout << doc->dump(2) << "\n";
        return 0;
    }

    if (name == "verify" && out_dir.empty()) out_dir = "out";
    if (name == "verify") return report(weylflow::dispatch_verify(out_dir), out_dir);

    weylflow::ConfigResult parsed;
    try {
        parsed = read_config(config_path, name);
    } catch (const weylflow::Error& e) {
        std::cerr << "error [" << e.kind() << "]: " << e.what() << "\n";
        return kConfigFailure;
    }
    if (!parsed.config) {
        std::cerr << "error [config]: " << parsed.errors.size() << " problem(s) in " << config_path << "\n";
        for (const std::string& e : parsed.errors) std::cerr << "  " << e << "\n";
        return kConfigFailure;
    }
    if (out_dir.empty()) out_dir = parsed.config->output.directory;
    return report(weylflow::dispatch(*parsed.config, out_dir), out_dir);
}
