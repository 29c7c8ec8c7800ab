#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "qepi/channels.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/gates.hpp"
#include "qepi/json_io.hpp"
#include "qepi/perspective.hpp"
#include "qepi/semantics.hpp"
#include "qepi/suite.hpp"

namespace qepi::cli {

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string csv_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Inline JSON, or @path to read it from a file.
json json_arg(const std::string& arg, const std::string& what) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw DomainError("cannot read " + what + " file '" + arg.substr(1) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_json_text(ss.str(), what);
    }
    return parse_json_text(arg, what);
}

std::vector<double> parse_vector(const std::string& text, std::size_t n, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tok.size()) throw DomainError(what + ": bad number '" + tok + "'");
        out.push_back(v);
    }
    if (out.size() != n) throw DomainError(what + " needs " + std::to_string(n) + " comma-separated numbers");
    return out;
}

struct Common {
    std::string config_path;
    std::optional<CliConfig> cfg;

    const CliConfig& config() {
        if (!cfg) cfg = config_path.empty() ? config_from_json(json::object()) : load_config(config_path);
        return *cfg;
    }
    const TruthPerspective& perspective(const std::string& name) { return config().registry.perspective(name); }
    KrausChannel channel(const std::string& spec) {
        if (const auto* c = config().registry.find_channel(spec)) return *c;
        return parse_channel(spec);
    }
};

json result_json(const DensityOperator& rho, const TruthPerspective& t) {
    return {{"state", state_to_json(rho)}, {"prob", prob(t, rho)}};
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qepi: truth-perspectives, epistemic operations and sentence semantics", "qepi"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "JSON config with perspectives, channels, model, defaults");

    std::string state_arg, perspective_name = "I";
    auto* prob_cmd = app.add_subcommand("prob", "probability of truth of a state at a perspective");
    prob_cmd->add_option("--state", state_arg, "state JSON or @file")->required();
    prob_cmd->add_option("--perspective", perspective_name, "perspective name");

    std::string t1 = "I", t2 = "I";
    auto* dist_cmd = app.add_subcommand("distance", "epistemic distance between two perspectives");
    dist_cmd->add_option("--t1", t1)->required();
    dist_cmd->add_option("--t2", t2)->required();

    std::string gate_spec;
    auto* gate_cmd = app.add_subcommand("gate", "apply the twin of a gate to a state");
    gate_cmd->add_option("spec", gate_spec, "e.g. not:1, xor:1,1, toffoli:1,1,1")->required();
    gate_cmd->add_option("--state", state_arg, "state JSON or @file")->required();
    gate_cmd->add_option("--perspective", perspective_name);

    std::string channel_spec;
    bool show_map = false;
    auto* chan_cmd = app.add_subcommand("channel", "apply the twin of a channel, or print its Bloch map");
    chan_cmd->add_option("spec", channel_spec, "config channel name or e.g. ad:0.5,1, bitflip:0.3")->required();
    chan_cmd->add_option("--state", state_arg, "state JSON or @file");
    chan_cmd->add_flag("--map", show_map, "print the affine Bloch map instead");
    chan_cmd->add_option("--perspective", perspective_name);

    std::string start = "0,0,1";
    int steps = 10;
    auto* traj_cmd = app.add_subcommand("bloch-traj", "CSV Bloch trajectory under repeated channel application");
    traj_cmd->add_option("spec", channel_spec)->required();
    traj_cmd->add_option("--start", start, "x,y,z");
    traj_cmd->add_option("--steps", steps)->check(CLI::PositiveNumber);
    traj_cmd->add_option("--perspective", perspective_name);

    std::string sentence_text;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence in the config model");
    eval_cmd->add_option("sentence", sentence_text)->required();
    eval_cmd->add_option("--perspective", perspective_name);

    std::string alpha_text, beta_text;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    auto* cons_cmd = app.add_subcommand("consequence", "search for a model where alpha is not ⪯ beta");
    cons_cmd->add_option("alpha", alpha_text)->required();
    cons_cmd->add_option("beta", beta_text)->required();
    cons_cmd->add_option("--trials", trials);
    cons_cmd->add_option("--seed", seed);

    std::string suite = "all";
    std::optional<int> samples;
    auto* check_cmd = app.add_subcommand("check", "run the theorem suite");
    check_cmd->add_option("--suite", suite, "all or one suite name");
    check_cmd->add_option("--seed", seed);
    check_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (prob_cmd->parsed()) {
            const DensityOperator rho = state_from_json(json_arg(state_arg, "state"));
            out << format_number(prob(common.perspective(perspective_name), rho)) << "\n";
        } else if (dist_cmd->parsed()) {
            out << format_number(epistemic_distance(common.perspective(t1), common.perspective(t2))) << "\n";
        } else if (gate_cmd->parsed()) {
            const TruthPerspective& t = common.perspective(perspective_name);
            const DensityOperator rho = state_from_json(json_arg(state_arg, "state"));
            const DensityOperator r = apply_unitary(twin_gate(t, parse_gate(gate_spec)), rho);
            out << result_json(r, t).dump() << "\n";
        } else if (chan_cmd->parsed()) {
            const TruthPerspective& t = common.perspective(perspective_name);
            const KrausChannel twin = twin_channel(t, common.channel(channel_spec));
            if (show_map) {
                const AffineBlochMap m = bloch_map(twin, t);
                json lin = json::array();
                for (int r = 0; r < 3; ++r) lin.push_back({m.linear(r, 0), m.linear(r, 1), m.linear(r, 2)});
                out << json{{"linear", lin}, {"offset", {m.offset.x(), m.offset.y(), m.offset.z()}}}.dump() << "\n";
            } else {
                if (state_arg.empty()) throw DomainError("channel needs --state or --map");
                const DensityOperator rho = state_from_json(json_arg(state_arg, "state"));
                const DensityOperator r =
                    twin.qubits() == 1 ? apply_lifted(twin, rho) : apply_channel(twin, rho);
                out << result_json(r, t).dump() << "\n";
            }
        } else if (traj_cmd->parsed()) {
            const TruthPerspective& t = common.perspective(perspective_name);
            const KrausChannel twin = twin_channel(t, common.channel(channel_spec));
            if (twin.qubits() != 1) throw DomainError("bloch-traj needs a 1-qubit channel");
            const auto v = parse_vector(start, 3, "--start");
            DensityOperator rho = from_bloch({v[0], v[1], v[2]}, t);
            out << "step,x,y,z,prob\n";
            for (int k = 0; k <= steps; ++k) {
                if (k > 0) rho = apply_channel(twin, rho);
                const BlochVector b = bloch_coords(rho, t);
                out << k << "," << csv_number(b.x) << "," << csv_number(b.y) << "," << csv_number(b.z) << ","
                    << csv_number(prob(t, rho)) << "\n";
            }
        } else if (eval_cmd->parsed()) {
            const CliConfig& cfg = common.config();
            if (!cfg.model) throw DomainError("eval needs a config with a \"model\"");
            const TruthPerspective& t = cfg.registry.perspective(perspective_name);
            const SentencePtr s = parse(sentence_text);
            const double p = prob(t, evaluate(*cfg.model, t, *s));
            out << format_number(p) << " " << (p >= 1.0 - kTol ? "true" : "false") << "\n";
        } else if (cons_cmd->parsed()) {
            const CliConfig& cfg = common.config();
            ConsequenceTemplate tpl;
            if (cfg.model) {
                tpl.structure = cfg.model->structure;
                for (const auto& [name, rho] : cfg.model->atoms) tpl.atom_qubits[name] = rho.qubits();
            }
            const SentencePtr a = parse(alpha_text), b = parse(beta_text);
            const ConsequenceOptions co{trials.value_or(cfg.defaults.samples), seed.value_or(cfg.defaults.seed)};
            out << check_consequence(*a, *b, tpl, co).summary() << "\n";
        } else if (check_cmd->parsed()) {
            const CliConfig& cfg = common.config();
            const SuiteOptions so{seed.value_or(cfg.defaults.seed),
                                  samples.value_or(cfg.defaults.samples)};
            const auto rows = run_suite(suite, so);
            out << format_rows(rows);
            int failed = 0;
            for (const auto& r : rows) failed += r.pass ? 0 : 1;
            out << (failed == 0 ? "all " + std::to_string(rows.size()) + " claims passed"
                                : std::to_string(failed) + " of " + std::to_string(rows.size()) + " claims failed")
                << " (seed " << so.seed << ", samples " << so.samples << ")\n";
            return failed == 0 ? kOk : kCheckFailed;
        }
    } catch (const ParseError& e) {
        err << "error: sentence: " << e.what() << "\n";
        return kDomainError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kOk;
}

}  // namespace qepi::cli
