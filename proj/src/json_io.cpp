#include "qepi/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qepi {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "; " : "") + items[i];
    return out;
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw DomainError(what + " must be a number");
    return j.get<double>();
}

Complex complex_from_json(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw DomainError(what + " must be a number or [re, im]");
}

// Flattens nested rows (or a flat list) of `d*d` real numbers.
std::vector<double> real_entries(const json& j, Eigen::Index d, const std::string& what) {
    std::vector<double> out;
    if (!j.is_array()) throw DomainError(what + " must be an array");
    for (const auto& row : j) {
        if (row.is_array()) {
            for (const auto& v : row) out.push_back(number(v, what));
        } else {
            out.push_back(number(row, what));
        }
    }
    if (static_cast<Eigen::Index>(out.size()) != d * d) {
        throw DimensionError(what + " has " + std::to_string(out.size()) + " entries, expected " +
                             std::to_string(d * d));
    }
    return out;
}

double get_number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) throw DomainError(ctx + ": missing \"" + key + "\"");
    return number(j.at(key), ctx + "." + key);
}

std::string get_string(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_string()) throw DomainError(ctx + ": \"" + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

// Name resolution that records misses instead of throwing, so a single
// ConfigError can list every dangling reference.
struct Resolver {
    const Registry& reg;
    std::vector<std::string> problems;

    std::optional<TruthPerspective> perspective(const json& j, const std::string& where) {
        if (j.is_string()) {
            if (const auto* t = reg.find_perspective(j.get<std::string>())) return *t;
            problems.push_back(where + ": unknown perspective '" + j.get<std::string>() + "'");
            return std::nullopt;
        }
        return perspective_from_json(j, reg);
    }

    std::optional<KrausChannel> channel(const json& j, const std::string& where) {
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            if (const auto* c = reg.find_channel(s)) return *c;
            try {
                return parse_channel(s);
            } catch (const DomainError&) {
                problems.push_back(where + ": unknown channel '" + s + "'");
                return std::nullopt;
            }
        }
        return channel_from_json(j, reg);
    }
};

EpistemicDomain domain_from_json(const json& j, const TruthPerspective& t, Resolver& r, const std::string& where) {
    const std::string type = get_string(j, "type", where);
    if (type == "all") return EpistemicDomain::all();
    if (type == "prob_at_least") {
        TruthPerspective at = t;
        if (j.contains("at")) {
            if (auto p = r.perspective(j.at("at"), where + ".at")) at = *p;
        }
        return EpistemicDomain::prob_at_least(get_number(j, "theta", where), at);
    }
    if (type == "explicit") {
        if (!j.contains("states") || !j.at("states").is_array()) {
            throw DomainError(where + ": explicit domain needs a \"states\" array");
        }
        std::vector<DensityOperator> members;
        for (const auto& s : j.at("states")) members.push_back(state_from_json(s));
        const double tol = j.contains("tolerance") ? number(j.at("tolerance"), where + ".tolerance")
                                                   : kExplicitMatchTol;
        return EpistemicDomain::explicit_set(std::move(members), tol);
    }
    throw DomainError(where + ": unknown domain type '" + type + "'");
}

Fallback fallback_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "max_mixed") return Fallback::max_mixed();
        if (s == "t_falsity") return Fallback::t_falsity();
        throw DomainError(where + ": unknown fallback '" + s + "'");
    }
    if (j.is_object() && j.contains("state")) return Fallback::explicit_state(state_from_json(j.at("state")));
    throw DomainError(where + ": fallback must be \"max_mixed\", \"t_falsity\" or {\"state\": ...}");
}

std::optional<EpistemicOperation> operation(const json& j, Resolver& r, const TruthPerspective& agent_t,
                                            const std::string& where) {
    if (!j.is_object()) throw DomainError(where + ": operation must be an object");
    const std::string kind = get_string(j, "kind", where);
    TruthPerspective t = agent_t;
    if (j.contains("perspective")) {
        auto p = r.perspective(j.at("perspective"), where + ".perspective");
        if (!p) return std::nullopt;
        t = *p;
    }
    const Fallback fb = j.contains("fallback") ? fallback_from_json(j.at("fallback"), where + ".fallback")
                                               : Fallback::max_mixed();
    if (kind == "channel") {
        if (!j.contains("channel")) throw DomainError(where + ": missing \"channel\"");
        auto c = r.channel(j.at("channel"), where + ".channel");
        const EpistemicDomain d = j.contains("domain") ? domain_from_json(j.at("domain"), t, r, where + ".domain")
                                                       : EpistemicDomain::all();
        if (!c) return std::nullopt;
        const std::string label = j.contains("label") ? get_string(j, "label", where) : c->label();
        return EpistemicOperation(label, t, twin_channel(t, *c), d, fb);
    }
    NamedSpec spec{};
    if (kind == "kbf") spec = NamedSpec::kbf(get_number(j, "alpha", where));
    else if (kind == "kpf") spec = NamedSpec::kpf(get_number(j, "gamma", where));
    else if (kind == "kbpf") spec = NamedSpec::kbpf(get_number(j, "beta", where));
    else if (kind == "kd") spec = NamedSpec::kd(get_number(j, "p", where));
    else if (kind == "kad") spec = NamedSpec::kad(get_number(j, "p", where), get_number(j, "lambda", where));
    else throw DomainError(where + ": unknown operation kind '" + kind + "'");
    spec.param = std::abs(spec.param);
    const EpistemicDomain d = j.contains("domain") ? domain_from_json(j.at("domain"), t, r, where + ".domain")
                                                   : maximal_domain(spec, t);
    return make_named(spec, t, d, fb);
}

RolesByQubits roles_from_json(const json& j, Resolver& r, const TruthPerspective& t, const std::string& where) {
    RolesByQubits out;
    if (!j.is_object()) throw DomainError(where + " must be an object");
    for (const auto& [key, roles] : j.items()) {
        if (key != "*") {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || n < 1) throw DomainError(where + ": qubit key '" + key + "' is not a count or \"*\"");
        }
        RoleSet rs;
        for (const auto& [rname, op] : roles.items()) {
            const auto role = parse_role(rname);
            if (!role) throw DomainError(where + "." + key + ": unknown role '" + rname + "'");
            rs.get(*role) = operation(op, r, t, where + "." + key + "." + rname);
        }
        out.emplace(key, std::move(rs));
    }
    return out;
}

EpistemicStructure structure(const json& j, Resolver& r) {
    EpistemicStructure s;
    if (j.contains("times")) {
        for (const auto& t : j.at("times")) {
            if (!t.is_string()) throw DomainError("structure.times entries must be strings");
            s.times.push_back(t.get<std::string>());
        }
    }
    if (!j.contains("agents")) return s;
    for (const auto& [name, a] : j.at("agents").items()) {
        const std::string where = "agent '" + name + "'";
        Agent agent;
        if (a.contains("perspective")) {
            if (auto p = r.perspective(a.at("perspective"), where + ".perspective")) agent.perspective = *p;
        }
        if (a.contains("ops")) agent.ops = roles_from_json(a.at("ops"), r, agent.perspective, where + ".ops");
        if (a.contains("at")) {
            for (const auto& [time, roles] : a.at("at").items()) {
                if (std::find(s.times.begin(), s.times.end(), time) == s.times.end()) {
                    r.problems.push_back(where + ".at: unknown time '" + time + "'");
                    continue;
                }
                agent.at.emplace(time, roles_from_json(roles, r, agent.perspective, where + ".at." + time));
            }
        }
        s.agents.emplace(name, std::move(agent));
    }
    return s;
}

Model model(const json& j, Resolver& r) {
    Model m;
    if (j.contains("atoms")) {
        for (const auto& [name, st] : j.at("atoms").items()) {
            try {
                m.atoms.emplace(name, state_from_json(st));
            } catch (const Error& e) {
                throw DomainError("atom '" + name + "': " + e.what());
            }
        }
    }
    if (j.contains("structure")) m.structure = structure(j.at("structure"), r);
    return m;
}

void finish(const Resolver& r) {
    if (!r.problems.empty()) throw ConfigError(r.problems);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : DomainError(join(problems)), problems_(std::move(problems)) {}

ComplexMatrix matrix_from_json(const json& j) {
    if (j.is_object()) {
        if (!j.contains("re")) throw DomainError("matrix needs \"re\"");
        Eigen::Index d = 0;
        if (j.contains("dim")) {
            d = static_cast<Eigen::Index>(number(j.at("dim"), "matrix.dim"));
        } else {
            d = static_cast<Eigen::Index>(j.at("re").size());
        }
        if (d < 1) throw DimensionError("matrix dim must be positive");
        const std::vector<double> re = real_entries(j.at("re"), d, "matrix.re");
        const std::vector<double> im =
            j.contains("im") ? real_entries(j.at("im"), d, "matrix.im") : std::vector<double>(re.size(), 0.0);
        ComplexMatrix m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                const auto k = static_cast<std::size_t>(r * d + c);
                m(r, c) = Complex(re[k], im[k]);
            }
        }
        return m;
    }
    if (j.is_array()) {
        const auto d = static_cast<Eigen::Index>(j.size());
        if (d < 1) throw DimensionError("empty matrix");
        ComplexMatrix m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const json& row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
                throw DimensionError("matrix rows must all have length " + std::to_string(d));
            }
            for (Eigen::Index c = 0; c < d; ++c) {
                m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], "matrix entry");
            }
        }
        return m;
    }
    throw DomainError("matrix must be an object or a nested array");
}

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ir = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityOperator state_from_json(const json& j) {
    if (j.is_object() && j.contains("ket")) {
        const json& k = j.at("ket");
        if (!k.is_array() || k.empty()) throw DomainError("ket must be a non-empty array");
        ComplexVector v(static_cast<Eigen::Index>(k.size()));
        for (std::size_t i = 0; i < k.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = complex_from_json(k[i], "ket amplitude");
        }
        qubits_for_dim(v.size());
        return DensityOperator::pure(Quregister(std::move(v)));
    }
    return DensityOperator::from_matrix(matrix_from_json(j));
}

json state_to_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }

Registry::Registry() {
    add_perspective("I", TruthPerspective::identity());
    add_perspective("hadamard", TruthPerspective::hadamard());
    add_perspective("x", TruthPerspective::pauli_x());
}

void Registry::add_perspective(const std::string& name, TruthPerspective t) {
    if (!perspectives_.emplace(name, std::move(t)).second) {
        throw DomainError("perspective '" + name + "' is already defined");
    }
}

void Registry::add_channel(const std::string& name, KrausChannel c) {
    if (!channels_.emplace(name, std::move(c)).second) throw DomainError("channel '" + name + "' is already defined");
}

const TruthPerspective* Registry::find_perspective(const std::string& name) const {
    const auto it = perspectives_.find(name);
    return it == perspectives_.end() ? nullptr : &it->second;
}

const KrausChannel* Registry::find_channel(const std::string& name) const {
    const auto it = channels_.find(name);
    return it == channels_.end() ? nullptr : &it->second;
}

const TruthPerspective& Registry::perspective(const std::string& name) const {
    if (const auto* t = find_perspective(name)) return *t;
    throw DomainError("unknown perspective '" + name + "'");
}

const KrausChannel& Registry::channel(const std::string& name) const {
    if (const auto* c = find_channel(name)) return *c;
    throw DomainError("unknown channel '" + name + "'");
}

TruthPerspective perspective_from_json(const json& j, const Registry& reg, const std::string& name) {
    if (j.is_string()) return reg.perspective(j.get<std::string>());
    std::string label = name;
    if (j.is_object() && j.contains("name") && j.at("name").is_string()) label = j.at("name").get<std::string>();
    return TruthPerspective(matrix_from_json(j), label.empty() ? "T" : label);
}

KrausChannel channel_from_json(const json& j, const Registry& reg, double kraus_tol) {
    if (j.is_string()) {
        if (const auto* c = reg.find_channel(j.get<std::string>())) return *c;
        return parse_channel(j.get<std::string>());
    }
    if (!j.is_object()) throw DomainError("channel must be a string or an object");
    const std::string type = get_string(j, "type", "channel");
    auto cnum = [&](const char* key) {
        return j.contains(key) ? complex_from_json(j.at(key), std::string("channel.") + key) : Complex(0.0);
    };
    if (type == "pauli") return pauli_channel({cnum("alpha"), cnum("beta"), cnum("gamma")});
    if (type == "bitflip") return bit_flip(cnum("param"));
    if (type == "phaseflip") return phase_flip(cnum("param"));
    if (type == "bitphaseflip") return bit_phase_flip(cnum("param"));
    if (type == "depolarizing") return depolarizing(get_number(j, "p", "channel"));
    if (type == "amplitude_damping") {
        return amplitude_damping({get_number(j, "p", "channel"), get_number(j, "lambda", "channel")});
    }
    if (type == "identity") return identity_channel();
    if (type == "kraus") {
        if (!j.contains("ops") || !j.at("ops").is_array()) throw DomainError("kraus channel needs an \"ops\" array");
        std::vector<ComplexMatrix> ops;
        for (const auto& m : j.at("ops")) ops.push_back(matrix_from_json(m));
        const std::string label = j.contains("label") ? get_string(j, "label", "channel") : "kraus";
        return KrausChannel(std::move(ops), label, kraus_tol);
    }
    throw DomainError("unknown channel type '" + type + "'");
}

EpistemicOperation operation_from_json(const json& j, const Registry& reg, const TruthPerspective& agent_t) {
    Resolver r{reg, {}};
    auto op = operation(j, r, agent_t, "operation");
    finish(r);
    return *op;
}

EpistemicStructure structure_from_json(const json& j, const Registry& reg) {
    Resolver r{reg, {}};
    EpistemicStructure s = structure(j, r);
    finish(r);
    return s;
}

Model model_from_json(const json& j, const Registry& reg) {
    Resolver r{reg, {}};
    Model m = model(j, r);
    finish(r);
    return m;
}

CliConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError({"config must be a JSON object"});
    CliConfig cfg;
    if (j.contains("defaults")) {
        const json& d = j.at("defaults");
        if (d.contains("seed")) cfg.defaults.seed = d.at("seed").get<std::uint64_t>();
        if (d.contains("samples")) cfg.defaults.samples = d.at("samples").get<int>();
        if (d.contains("tolerance")) cfg.defaults.tolerance = number(d.at("tolerance"), "defaults.tolerance");
    }
    if (j.contains("perspectives")) {
        for (const auto& [name, m] : j.at("perspectives").items()) {
            cfg.registry.add_perspective(name, perspective_from_json(m, cfg.registry, name));
        }
    }
    if (j.contains("channels")) {
        for (const auto& [name, c] : j.at("channels").items()) {
            try {
                cfg.registry.add_channel(name, channel_from_json(c, cfg.registry, cfg.defaults.tolerance));
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& e) {
                throw DomainError("channel '" + name + "': " + e.what());
            }
        }
    }
    if (j.contains("model")) {
        Resolver r{cfg.registry, {}};
        cfg.model = model(j.at("model"), r);
        finish(r);
    }
    return cfg;
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({what + ": malformed JSON: " + e.what()});
    }
}

CliConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(parse_json_text(ss.str(), path));
}

}  // namespace qepi
