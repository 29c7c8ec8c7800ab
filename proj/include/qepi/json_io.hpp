// json_io.hpp
// JSON forms of matrices, states, perspectives, channels, epistemic
// operations, structures, models and the CLI configuration file.
//
//   matrix       {"dim": d, "re": rows, "im": rows}   rows nested or flat row-major
//                or a nested array whose entries are numbers or [re, im]
//   state        matrix | {"ket": [amplitude...]}
//   perspective  name | matrix (+ optional "name")
//   channel      spec string ("ad:0.5,1") | {"type": "pauli", "alpha", "beta", "gamma"}
//                | {"type": "amplitude_damping", "p", "lambda"} | {"type": "kraus", "ops": [matrix...]}
//                | {"type": "bitflip"|"phaseflip"|"bitphaseflip", "param"} | {"type": "depolarizing", "p"}
//   operation    {"kind": "kbf"|"kpf"|"kbpf"|"kd"|"kad"|"channel", parameters, "perspective",
//                 "domain", "fallback"}
//   structure    {"times": [...], "agents": {name: {"perspective", "ops": {qubits|"*": roles},
//                 "at": {time: {qubits|"*": roles}}}}}   roles = {"inf"|"u"|"b"|"k": operation}
//   model        {"atoms": {name: state}, "structure": structure}
//   config       {"perspectives": {name: matrix}, "channels": {name: channel}, "model": model,
//                 "defaults": {"seed", "samples", "tolerance"}}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qepi/channels.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/perspective.hpp"
#include "qepi/qstate.hpp"
#include "qepi/semantics.hpp"

namespace qepi {

using nlohmann::json;

/// Malformed or unresolvable configuration. `problems` lists every issue.
class ConfigError : public DomainError {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

DensityOperator state_from_json(const json& j);
json state_to_json(const DensityOperator& rho);

/// Named perspectives and channels. Starts with the built-in perspectives
/// "I", "hadamard" and "x".
class Registry {
public:
    Registry();

    void add_perspective(const std::string& name, TruthPerspective t);
    void add_channel(const std::string& name, KrausChannel c);

    const TruthPerspective* find_perspective(const std::string& name) const;
    const KrausChannel* find_channel(const std::string& name) const;
    /// Throws DomainError naming the missing entry.
    const TruthPerspective& perspective(const std::string& name) const;
    const KrausChannel& channel(const std::string& name) const;

    const std::map<std::string, TruthPerspective>& perspectives() const noexcept { return perspectives_; }
    const std::map<std::string, KrausChannel>& channels() const noexcept { return channels_; }

private:
    std::map<std::string, TruthPerspective> perspectives_;
    std::map<std::string, KrausChannel> channels_;
};

TruthPerspective perspective_from_json(const json& j, const Registry& reg, const std::string& name = {});
/// `kraus_tol` is the completeness tolerance for explicit operator lists.
KrausChannel channel_from_json(const json& j, const Registry& reg, double kraus_tol = kUserKrausTol);
EpistemicOperation operation_from_json(const json& j, const Registry& reg, const TruthPerspective& agent_t);
EpistemicStructure structure_from_json(const json& j, const Registry& reg);
Model model_from_json(const json& j, const Registry& reg);

struct CliDefaults {
    std::uint64_t seed = 1;
    int samples = 1000;
    double tolerance = kUserKrausTol;  // completeness tolerance for config Kraus lists
};

struct CliConfig {
    Registry registry;
    std::optional<Model> model;
    CliDefaults defaults;
};

/// Resolves the whole document; every dangling name is reported in one ConfigError.
CliConfig config_from_json(const json& j);
/// Reads and parses a file; JSON syntax errors become ConfigError.
CliConfig load_config(const std::string& path);

/// Parses JSON text, mapping syntax errors to ConfigError.
json parse_json_text(const std::string& text, const std::string& what);

}  // namespace qepi
