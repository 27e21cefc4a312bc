// ============================================================================
// cli.cpp: Subcommand dispatch over the library
// ============================================================================

#include "mcl/cli.hpp"

#include "mcl/decide.hpp"
#include "mcl/formula.hpp"
#include "mcl/model.hpp"
#include "mcl/normalform.hpp"
#include "mcl/oracle.hpp"
#include "mcl/semantics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mcl::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> agents;
    std::string formula;
    std::string formula_file;
    std::string model;
    std::string state;
    std::string out_path;
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::size_t max_depth = 2;
    std::size_t max_states = 2;
    std::size_t max_actions = 2;
    std::size_t samples = 200;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream outf(path);
    if (!outf) throw UsageError("cannot write " + path);
    outf << text;
}

std::string formula_text(const Options& o) {
    if (!o.formula.empty() && !o.formula_file.empty()) throw UsageError("give --formula or --formula-file, not both");
    if (!o.formula_file.empty()) return read_file(o.formula_file);
    if (o.formula.empty()) throw UsageError("a formula is required (--formula or --formula-file)");
    return o.formula;
}

AgentUniverse universe_for(const Options& o, const std::string& text) {
    if (!o.agents.empty()) return AgentUniverse(o.agents);
    auto names = scan_agent_names(text);
    if (names.empty()) names = {"a"};
    return AgentUniverse(names);
}

LoadedModel load_model(const Options& o) {
    if (o.model.empty()) throw UsageError("a model is required (--model)");
    if (auto pm = fixture(o.model)) return LoadedModel{pm->model, pm->state};
    if (!std::filesystem::exists(o.model)) throw UsageError("no such model file or fixture: " + o.model);
    return load_model_file(o.model);
}

StateId pick_state(const Options& o, const LoadedModel& lm) {
    if (!o.state.empty()) return lm.model.state(o.state);
    if (lm.designated) return *lm.designated;
    throw UsageError("--state is required when the model designates no state");
}

nlohmann::json trace_json(const std::vector<TraceEntry>& trace) {
    auto arr = nlohmann::json::array();
    for (const auto& t : trace) arr.push_back({{"clause", t.clause}, {"outcome", t.outcome}});
    return arr;
}

void print_trace(std::ostream& out, const std::vector<TraceEntry>& trace) {
    for (const auto& t : trace) out << "  " << t.clause << "\n    " << t.outcome << "\n";
}

int cmd_parse(const Options& o, std::ostream& out) {
    const auto text = formula_text(o);
    const auto u = universe_for(o, text);
    out << print(parse(text, u), u) << "\n";
    return kExitOk;
}

int cmd_depth(const Options& o, std::ostream& out) {
    const auto text = formula_text(o);
    out << modal_depth(parse(text, universe_for(o, text))) << "\n";
    return kExitOk;
}

int cmd_nf(const Options& o, std::ostream& out) {
    const auto text = formula_text(o);
    const auto u = universe_for(o, text);
    const auto clauses = to_standard_conjunction(parse(text, u), u);
    if (o.json) {
        auto arr = nlohmann::json::array();
        for (const auto& c : clauses) arr.push_back(c.to_string(u));
        out << nlohmann::json{{"clauses", arr}}.dump(2) << "\n";
    } else {
        for (const auto& c : clauses) out << c.to_string(u) << "\n";
    }
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const auto lm = load_model(o);
    const auto c = classify(lm.model);
    if (o.json) {
        out << nlohmann::json{{"cgm", c.is_cgm},
                              {"serial", c.serial},
                              {"independent", c.independent},
                              {"deterministic", c.deterministic},
                              {"witnesses", c.witnesses}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    if (c.is_cgm) {
        out << "CGM: serial, independent, deterministic\n";
        return kExitOk;
    }
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << "GCGM: serial=" << flag(c.serial) << ", independent=" << flag(c.independent)
        << ", deterministic=" << flag(c.deterministic) << "\n";
    for (const auto& w : c.witnesses) out << "  " << w << "\n";
    return kExitOk;
}

int cmd_mc(const Options& o, std::ostream& out) {
    const auto lm = load_model(o);
    const StateId s = pick_state(o, lm);
    const auto f = parse(formula_text(o), lm.model.universe());
    const bool value = eval(lm.model, s, f);
    if (o.json) {
        out << nlohmann::json{{"state", lm.model.states()[s]}, {"value", value}}.dump(2) << "\n";
    } else {
        out << (value ? "true" : "false") << "\n";
    }
    return kExitOk;
}

int report_verdict(const Options& o, std::ostream& out, const std::string& verdict,
                   const std::optional<PointedModel>& model, const std::vector<TraceEntry>& trace) {
    if (model && !o.out_path.empty()) write_file(o.out_path, serialize_pointed(*model));
    if (o.json) {
        nlohmann::json doc{{"verdict", verdict}};
        if (model && !o.out_path.empty()) doc["countermodel_path"] = o.out_path;
        if (o.trace) doc["trace"] = trace_json(trace);
        out << doc.dump(2) << "\n";
        return kExitOk;
    }
    out << verdict << "\n";
    if (o.trace) print_trace(out, trace);
    return kExitOk;
}

int cmd_valid(const Options& o, std::ostream& out) {
    const auto text = formula_text(o);
    const auto u = universe_for(o, text);
    const auto v = decide_valid(parse(text, u), u);
    return report_verdict(o, out, v.valid ? "VALID" : "INVALID", v.countermodel, v.trace);
}

int cmd_sat(const Options& o, std::ostream& out) {
    const auto text = formula_text(o);
    const auto u = universe_for(o, text);
    const auto r = decide_sat(parse(text, u), u);
    return report_verdict(o, out, r.satisfiable ? "SAT" : "UNSAT", r.witness, r.trace);
}

int cmd_countermodel(const Options& o, std::ostream& out, std::ostream& err) {
    const auto text = formula_text(o);
    const auto u = universe_for(o, text);
    const auto f = parse(text, u);
    Decider decider(u);
    if (decider.is_valid(f)) {
        err << "formula is valid; it has no countermodel\n";
        return kExitSemantic;
    }
    const auto pm = decider.countermodel(f);
    if (o.out_path.empty()) {
        out << serialize_pointed(pm);
    } else {
        write_file(o.out_path, serialize_pointed(pm));
        out << "wrote " << o.out_path << "\n";
    }
    return kExitOk;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
    DifferentialConfig cfg;
    cfg.universe = AgentUniverse(o.agents.empty() ? std::vector<std::string>{"a", "b"} : o.agents);
    cfg.atoms = {"p", "q"};
    cfg.seed = o.seed;
    cfg.generators = {
        Generator{Generator::Kind::RandomFormulas, o.count, o.max_depth, 8},
        Generator{Generator::Kind::Seriality, o.count},
        Generator{Generator::Kind::Independence, o.count},
        Generator{Generator::Kind::Determinism, o.count},
    };
    cfg.bounds.universe = cfg.universe;
    cfg.bounds.mode = SearchBounds::Mode::Sampled;
    cfg.bounds.max_states = o.max_states;
    cfg.bounds.max_actions = o.max_actions;
    cfg.bounds.samples = o.samples;
    cfg.extra_models = {two_masks(), one_mask()};
    const auto report = differential_run(cfg);
    out << (o.json ? report.to_json() : report.to_text());
    return report.ok() ? kExitOk : kExitSemantic;
}

void add_formula_options(CLI::App* sub, Options& o) {
    sub->add_option("--formula,-f", o.formula, "formula text");
    sub->add_option("--formula-file", o.formula_file, "file holding the formula")->check(CLI::ExistingFile);
    sub->add_option("--agents,-a", o.agents, "agent names in canonical order")->delimiter(',');
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal coalition logic toolkit", "mcl"};
    app.require_subcommand(1);
    Options o;

    auto* parse_cmd = app.add_subcommand("parse", "print the lowered formula");
    auto* depth_cmd = app.add_subcommand("depth", "print the modal depth");
    auto* nf_cmd = app.add_subcommand("nf", "print the standard clauses");
    auto* valid_cmd = app.add_subcommand("valid", "decide validity");
    auto* sat_cmd = app.add_subcommand("sat", "decide satisfiability");
    auto* cm_cmd = app.add_subcommand("countermodel", "emit a countermodel file");
    auto* classify_cmd = app.add_subcommand("classify", "report seriality, independence, determinism");
    auto* mc_cmd = app.add_subcommand("mc", "evaluate a formula at a state");
    auto* fuzz_cmd = app.add_subcommand("fuzz", "differential run of decider against the oracle");

    for (auto* sub : {parse_cmd, depth_cmd, nf_cmd, valid_cmd, sat_cmd, cm_cmd, mc_cmd}) add_formula_options(sub, o);
    for (auto* sub : {nf_cmd, valid_cmd, sat_cmd, classify_cmd, mc_cmd, fuzz_cmd}) {
        sub->add_flag("--json", o.json, "machine-readable output");
    }
    for (auto* sub : {valid_cmd, sat_cmd}) {
        sub->add_option("--out,-o", o.out_path, "write the countermodel or witness here");
        sub->add_flag("--trace", o.trace, "include the per-clause trace");
    }
    cm_cmd->add_option("--out,-o", o.out_path, "output model file");
    for (auto* sub : {classify_cmd, mc_cmd}) sub->add_option("--model,-m", o.model, "model file or fixture name");
    mc_cmd->add_option("--state,-s", o.state, "state name");
    fuzz_cmd->add_option("--agents,-a", o.agents, "agent names")->delimiter(',');
    fuzz_cmd->add_option("--seed", o.seed, "random seed");
    fuzz_cmd->add_option("--count,-n", o.count, "formulas and models per generator");
    fuzz_cmd->add_option("--max-depth", o.max_depth, "modal depth of random formulas");
    fuzz_cmd->add_option("--max-states", o.max_states, "oracle state bound")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--max-actions", o.max_actions, "oracle action bound")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--samples", o.samples, "oracle samples per formula");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "mcl: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(o, out);
        if (depth_cmd->parsed()) return cmd_depth(o, out);
        if (nf_cmd->parsed()) return cmd_nf(o, out);
        if (valid_cmd->parsed()) return cmd_valid(o, out);
        if (sat_cmd->parsed()) return cmd_sat(o, out);
        if (cm_cmd->parsed()) return cmd_countermodel(o, out, err);
        if (classify_cmd->parsed()) return cmd_classify(o, out);
        if (mc_cmd->parsed()) return cmd_mc(o, out);
        if (fuzz_cmd->parsed()) return cmd_fuzz(o, out);
    } catch (const UsageError& e) {
        err << "mcl: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "mcl: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const std::exception& e) {
        err << "mcl: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitUsage;
}

}  // namespace mcl::cli
