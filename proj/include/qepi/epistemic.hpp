// epistemic.hpp
// Epistemic operations: a channel restricted to an epistemic domain, with a
// fixed fallback state outside it, plus seeded property checkers for the
// strongness, triviality, consistency, monotonicity, introspection and
// closure conditions, and epistemic structures (agents x times x roles).
//
// The checkers are falsifiers: "holds" means no counterexample was found in
// the sampled states. Exact statements are covered by closed_form_prob.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qepi/channels.hpp"
#include "qepi/gates.hpp"
#include "qepi/perspective.hpp"
#include "qepi/qstate.hpp"

namespace qepi {

/// Trace-norm radius for explicit-set membership.
inline constexpr double kExplicitMatchTol = 1e-6;

// ---------------------------------------------------------------------------
// Domains and fallbacks

class EpistemicDomain {
public:
    struct All {};
    struct ProbAtLeast {
        double theta;
        TruthPerspective at;
    };
    struct Explicit {
        std::vector<DensityOperator> members;
        double tolerance = kExplicitMatchTol;
    };
    using Variant = std::variant<All, ProbAtLeast, Explicit>;

    static EpistemicDomain all();
    /// Throws DomainError unless theta is in [0, 1].
    static EpistemicDomain prob_at_least(double theta, TruthPerspective at);
    static EpistemicDomain explicit_set(std::vector<DensityOperator> members,
                                        double tolerance = kExplicitMatchTol);

    bool contains(const DensityOperator& rho) const;
    const Variant& variant() const noexcept { return v_; }
    std::string describe() const;

private:
    explicit EpistemicDomain(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

enum class FallbackKind { MaxMixed, TFalsity, Explicit };

std::string_view to_string(FallbackKind kind);

/// The fixed state returned outside the domain, instantiated per dimension.
class Fallback {
public:
    static Fallback max_mixed() { return Fallback(FallbackKind::MaxMixed, std::nullopt); }
    static Fallback t_falsity() { return Fallback(FallbackKind::TFalsity, std::nullopt); }
    static Fallback explicit_state(DensityOperator rho) { return Fallback(FallbackKind::Explicit, std::move(rho)); }

    FallbackKind kind() const noexcept { return kind_; }
    /// Throws DimensionError when an explicit state has the wrong size.
    DensityOperator instantiate(int qubits, const TruthPerspective& t) const;

private:
    Fallback(FallbackKind k, std::optional<DensityOperator> s) : kind_(k), state_(std::move(s)) {}
    FallbackKind kind_;
    std::optional<DensityOperator> state_;
};

// ---------------------------------------------------------------------------
// Named operations

enum class NamedKind { KBF, KPF, KBPF, KD, KAD };

std::string_view to_string(NamedKind kind);

/// Parameters of one of the five named operations. `param` is |α|, |γ|, |β|
/// for KBF, KPF, KBPF and p for KD and KAD; `lambda` is used by KAD only.
struct NamedSpec {
    NamedKind kind;
    double param = 0.0;
    double lambda = 0.0;

    static NamedSpec kbf(double alpha) { return {NamedKind::KBF, alpha, 0.0}; }
    static NamedSpec kpf(double gamma) { return {NamedKind::KPF, gamma, 0.0}; }
    static NamedSpec kbpf(double beta) { return {NamedKind::KBPF, beta, 0.0}; }
    static NamedSpec kd(double p) { return {NamedKind::KD, p, 0.0}; }
    static NamedSpec kad(double p, double lambda) { return {NamedKind::KAD, p, lambda}; }

    /// The canonical-perspective channel.
    KrausChannel channel() const;
    /// Lower probability bound of the maximal strong domain (½, 1-λ, or 0 for KPF).
    double threshold() const;
    std::string label() const;
};

class EpistemicOperation {
public:
    /// `channel` is the 1-qubit channel as seen from `perspective` (already
    /// the twin channel for named operations); it is lifted on application.
    EpistemicOperation(std::string label, TruthPerspective perspective, KrausChannel channel,
                       EpistemicDomain domain, Fallback fallback,
                       std::optional<NamedSpec> named = std::nullopt);

    const std::string& label() const noexcept { return label_; }
    const TruthPerspective& perspective() const noexcept { return perspective_; }
    const KrausChannel& channel() const noexcept { return channel_; }
    const EpistemicDomain& domain() const noexcept { return domain_; }
    const Fallback& fallback() const noexcept { return fallback_; }
    const std::optional<NamedSpec>& named() const noexcept { return named_; }

    bool in_domain(const DensityOperator& rho) const { return domain_.contains(rho); }

    /// Lifted channel output if ρ is in the domain, the fallback otherwise.
    DensityOperator apply(const DensityOperator& rho) const;

private:
    std::string label_;
    TruthPerspective perspective_;
    KrausChannel channel_;
    EpistemicDomain domain_;
    Fallback fallback_;
    std::optional<NamedSpec> named_;
};

inline DensityOperator apply_epistemic(const EpistemicOperation& e, const DensityOperator& rho) {
    return e.apply(rho);
}

enum class BoundPolicy { Enforce, Unchecked };

/// Wraps the twin channel of the named channel at t. With BoundPolicy::Enforce
/// the flip parameter must be nonzero (KBF, KPF, KBPF, KD) and the domain must
/// lie inside the kind's maximal strong set; violations throw DomainError.
EpistemicOperation make_named(const NamedSpec& spec, const TruthPerspective& t, EpistemicDomain domain,
                              Fallback fallback = Fallback::max_mixed(),
                              BoundPolicy policy = BoundPolicy::Enforce);

/// Maximal strong domain of a kind: ProbAtLeast(threshold, t), All for KPF.
EpistemicDomain maximal_domain(const NamedSpec& spec, const TruthPerspective& t);

/// Probability of E ρ from the Bloch z-coordinate of the reduced last qubit
/// read in frame t. Does not consult any domain.
double closed_form_prob(const NamedSpec& spec, const DensityOperator& rho, const TruthPerspective& t);
/// As above using e's spec and perspective; throws DomainError when e is not
/// named or ρ is outside e's domain.
double closed_form_prob(const EpistemicOperation& e, const DensityOperator& rho);

// ---------------------------------------------------------------------------
// Property checks

enum class Property {
    Strong,
    NonTrivial,
    Consistent,
    Monotonic,
    PositiveIntrospection,
    NegativeIntrospection,
    Closure,
};

std::string_view to_string(Property p);

struct CheckOptions {
    std::uint64_t seed = 1;
    int samples = 1000;
    int qubits = 1;
};

/// One checked instance: the states involved and the two compared
/// probabilities (left side, right side).
struct Instance {
    std::uint64_t index = 0;
    std::vector<DensityOperator> states;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct PropertyReport {
    Property property;
    bool holds = true;
    int drawn = 0;   // states (or pairs) generated
    int tested = 0;  // instances the property actually constrained
    std::optional<Instance> counterexample;
    std::optional<Instance> witness;  // NonTrivial only: the decreasing state
    std::uint64_t seed = 0;
    FallbackKind fallback = FallbackKind::MaxMixed;

    std::string summary() const;
};

/// Sample pool used by every checker. Indices below special_count() are the
/// explicit-domain members of matching size, the T-truth and T-falsity states
/// and the maximally mixed state; later indices are seeded random states.
class StatePool {
public:
    StatePool(const EpistemicOperation& e, const CheckOptions& opts);

    std::size_t special_count() const noexcept { return specials_.size(); }
    std::size_t size() const noexcept { return specials_.size() + static_cast<std::size_t>(samples_); }
    DensityOperator at(std::size_t index) const;

private:
    std::vector<DensityOperator> specials_;
    TruthPerspective t_;
    std::uint64_t seed_;
    int samples_;
    int qubits_;
};

/// Evaluates one instance of a property; returns the filled instance when
/// the property constrains it (for NonTrivial: when it is a candidate domain
/// state), std::nullopt otherwise. `violated` tells which side won.
struct InstanceResult {
    Instance instance;
    bool violated = false;
};
std::optional<InstanceResult> evaluate_instance(Property p, const EpistemicOperation& e,
                                                std::span<const DensityOperator> states);

PropertyReport check_strong(const EpistemicOperation& e, const CheckOptions& opts);
PropertyReport check_nontrivial(const EpistemicOperation& e, const CheckOptions& opts);
PropertyReport check_consistent(const EpistemicOperation& e, const CheckOptions& opts);
PropertyReport check_monotonic(const EpistemicOperation& e, const CheckOptions& opts);
enum class Introspection { Positive, Negative };
PropertyReport check_introspective(const EpistemicOperation& e, Introspection sign, const CheckOptions& opts);
/// Throws DomainError unless e's domain is ProbAtLeast.
PropertyReport check_closure(const EpistemicOperation& e, const CheckOptions& opts);

/// Checks a property on caller-supplied states (pairs are consecutive for
/// Monotonic) instead of the sampled pool.
PropertyReport check_on(Property p, const EpistemicOperation& e, std::span<const DensityOperator> states);

/// Re-runs the reported counterexample (or witness) and confirms it.
bool reverify(const EpistemicOperation& e, const PropertyReport& report);

/// States with Prob_t exactly `target`: a random last qubit on the z = 1-2·target
/// slice of the Bloch ball in frame t, tensored after a random (n-1)-qubit state.
std::vector<DensityOperator> states_with_prob(const TruthPerspective& t, int qubits, double target,
                                              int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Structures

enum class Role { Inf, U, B, K };

std::string_view to_string(Role r);
/// "Inf", "U", "B", "K" (also accepts lower case).
std::optional<Role> parse_role(std::string_view s);

struct RoleSet {
    std::optional<EpistemicOperation> inf, u, b, k;

    const std::optional<EpistemicOperation>& get(Role r) const;
    std::optional<EpistemicOperation>& get(Role r);
};

/// Roles keyed by qubit count ("1", "2", ...) or "*" for every count.
using RolesByQubits = std::map<std::string, RoleSet>;

struct Agent {
    TruthPerspective perspective = TruthPerspective::identity();
    RolesByQubits ops;                            // valid at every time
    std::map<std::string, RolesByQubits> at;      // per-time overrides
};

class EpistemicStructure {
public:
    std::vector<std::string> times;
    std::map<std::string, Agent> agents;

    /// The operation for (agent, time, role) acting on `qubits` qubits.
    /// Throws DomainError for unknown agents/times; nullptr when unassigned.
    const EpistemicOperation* resolve(std::string_view agent, std::string_view time, Role role,
                                      int qubits) const;
};

struct ConditionResult {
    enum class Status { Holds, Violated, Incomplete };
    std::string name;
    Status status = Status::Holds;
    std::string detail;
};

struct StructureEntry {
    std::string agent;
    std::string time;
    std::string qubits;
    std::vector<ConditionResult> conditions;
};

struct StructureReport {
    std::vector<StructureEntry> entries;
    bool valid() const;     // no Violated condition
    bool complete() const;  // no Incomplete condition
    std::string summary() const;
};

/// Inclusion of domains at a given qubit count. Analytic for All and
/// ProbAtLeast at probabilistically equivalent perspectives; explicit sets
/// are checked member-wise; other cases by sampled membership.
struct Inclusion {
    bool holds;
    bool analytic;
};
Inclusion domain_included(const EpistemicDomain& inner, const EpistemicDomain& outer, const CheckOptions& opts);

/// Checks, for every agent, time and assigned qubit count: EpD(K) ⊆ EpD(B) ⊆
/// EpD(U) ⊆ EpD(Inf); K ρ ⪯ B ρ on EpD(K); B ρ ⪯ U ρ on EpD(B); K and B strong.
StructureReport validate_structure(const EpistemicStructure& s, const CheckOptions& opts);

}  // namespace qepi
