#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wallcross/config.hpp"
#include "wallcross/wallcross.hpp"

using namespace wallcross;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;
constexpr int kExitInternal = 4;

struct Options {
    std::string config_path;
    std::string preset_name;
    std::string diagram_path;
    std::string output_path;
    std::string format;
    int order = 0;
    int workers = 0;
    bool initial_only = false;
};

RunConfig resolve(const Options& o) {
    if (!o.config_path.empty() && !o.preset_name.empty()) fail("ConfigError", "give either a config file or --preset");
    if (o.config_path.empty() && o.preset_name.empty()) fail("ConfigError", "no config file or --preset given");
    RunConfig cfg = o.preset_name.empty() ? load_config(o.config_path) : preset(o.preset_name);
    if (o.order != 0) cfg.order = o.order;
    if (o.workers != 0) cfg.workers = o.workers;
    if (cfg.order < 1) fail("ConfigError", "order must be at least 1");
    if (cfg.spec)
        for (const auto& w : validate_fan(cfg.spec->fan, cfg.spec->blowup_rays()).warnings) std::cerr << "warning: " << w << "\n";
    return cfg;
}

ScatteringDiagram run_scatter(const RunConfig& cfg) {
    ScatterOptions opts;
    opts.workers = cfg.workers;
    return minimalize(scatter(cfg.initial_diagram(), cfg.order, opts));
}

void emit(const Options& o, const std::string& text) {
    std::cout << text;
    if (!o.output_path.empty()) {
        std::ofstream out(o.output_path);
        if (!out) fail("ConfigError", "cannot write " + o.output_path);
        out << text;
    }
}

const BlowupSpec& require_spec(const RunConfig& cfg) {
    if (!cfg.spec) fail("ConfigError", "this command needs a fan with blowups, not an explicit diagram");
    return *cfg.spec;
}

int cmd_scatter(const Options& o) {
    auto cfg = resolve(o);
    auto d = run_scatter(cfg);
    auto names = cfg.variable_names();
    emit(o, o.format == "table" ? diagram_table(d, names) : diagram_to_string(d, names));
    return 0;
}

int cmd_verify(const Options& o) {
    ScatteringDiagram d;
    VariableNames names;
    if (!o.diagram_path.empty()) {
        std::ifstream in(o.diagram_path);
        if (!in) fail("ConfigError", "cannot read " + o.diagram_path);
        d = read_diagram(in);
        names = VariableNames::defaults(d.monoid);
    } else {
        auto cfg = resolve(o);
        d = o.initial_only ? cfg.initial_diagram() : run_scatter(cfg);
        names = cfg.variable_names();
    }
    auto report = is_consistent(d);
    emit(o, consistency_lines(report, names));
    return report.consistent() ? 0 : kExitConsistency;
}

int cmd_canonical(const Options& o) {
    auto cfg = resolve(o);
    const auto& spec = require_spec(cfg);
    auto walls = upsilon(run_scatter(cfg), spec);
    emit(o, canonical_table(walls, spec, cfg.variable_names()));
    return 0;
}

int cmd_invariants(const Options& o) {
    auto cfg = resolve(o);
    const auto& spec = require_spec(cfg);
    auto walls = upsilon(run_scatter(cfg), spec);
    emit(o, invariants_table(walls, spec, cfg.order));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering diagrams from toric fans and tropical hypersurfaces"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", o.config_path, "YAML run configuration");
        sub->add_option("--preset", o.preset_name, "built-in configuration: p3-two-lines, 2d-basic");
        sub->add_option("--order", o.order, "truncation order k (terms of t-order > k are dropped)")->check(CLI::PositiveNumber);
        sub->add_option("--workers", o.workers, "threads for the per-joint phase of scatter")->check(CLI::PositiveNumber);
        sub->add_option("--output", o.output_path, "also write the output to this file");
    };
    auto* scatter_cmd = app.add_subcommand("scatter", "complete the initial diagram and print its minimal form");
    add_common(scatter_cmd);
    scatter_cmd->add_option("--format", o.format, "table or serialized")->check(CLI::IsMember({"table", "serialized"}))->default_val("serialized");
    auto* verify_cmd = app.add_subcommand("verify", "check consistency around every joint");
    add_common(verify_cmd);
    verify_cmd->add_option("--diagram", o.diagram_path, "saved diagram in the serialized format");
    verify_cmd->add_flag("--initial", o.initial_only, "verify the initial diagram instead of the completed one");
    auto* canonical_cmd = app.add_subcommand("canonical", "walls with curve classes");
    add_common(canonical_cmd);
    auto* invariants_cmd = app.add_subcommand("invariants", "(beta, u, N) for every canonical wall term");
    add_common(invariants_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*scatter_cmd) return cmd_scatter(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*canonical_cmd) return cmd_canonical(o);
        if (*invariants_cmd) return cmd_invariants(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::config: return kExitConfig;
            case ErrorKind::consistency: return kExitConsistency;
            default: return kExitInternal;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
