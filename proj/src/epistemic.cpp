#include "qepi/epistemic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

namespace qepi {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

DensityOperator twin_not(const TruthPerspective& t, const DensityOperator& rho) {
    const Gate g = twin_gate(t, build_gate(GateKind::Not, {rho.qubits()}));
    return apply_unitary(g, rho);
}

}  // namespace

// ---------------------------------------------------------------------------
// Domains

EpistemicDomain EpistemicDomain::all() { return EpistemicDomain(All{}); }

EpistemicDomain EpistemicDomain::prob_at_least(double theta, TruthPerspective at) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw DomainError("domain threshold must be in [0,1], got " + num(theta));
    }
    return EpistemicDomain(ProbAtLeast{theta, std::move(at)});
}

EpistemicDomain EpistemicDomain::explicit_set(std::vector<DensityOperator> members, double tolerance) {
    return EpistemicDomain(Explicit{std::move(members), tolerance});
}

bool EpistemicDomain::contains(const DensityOperator& rho) const {
    return std::visit(
        [&](const auto& d) -> bool {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, All>) {
                return true;
            } else if constexpr (std::is_same_v<D, ProbAtLeast>) {
                return prob(d.at, rho) >= d.theta - kTol;
            } else {
                return std::any_of(d.members.begin(), d.members.end(), [&](const DensityOperator& m) {
                    return m.qubits() == rho.qubits() &&
                           trace_distance(m.matrix(), rho.matrix()) <= d.tolerance;
                });
            }
        },
        v_);
}

std::string EpistemicDomain::describe() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, All>) {
                return "all";
            } else if constexpr (std::is_same_v<D, ProbAtLeast>) {
                return "prob_at_least(" + num(d.theta) + (d.at.name().empty() ? "" : "@" + d.at.name()) + ")";
            } else {
                return "explicit(" + std::to_string(d.members.size()) + ")";
            }
        },
        v_);
}

std::string_view to_string(FallbackKind kind) {
    switch (kind) {
        case FallbackKind::MaxMixed: return "max_mixed";
        case FallbackKind::TFalsity: return "t_falsity";
        case FallbackKind::Explicit: return "explicit";
    }
    return "?";
}

DensityOperator Fallback::instantiate(int qubits, const TruthPerspective& t) const {
    switch (kind_) {
        case FallbackKind::MaxMixed: return DensityOperator::maximally_mixed(qubits);
        case FallbackKind::TFalsity: return falsity_state(t, qubits);
        case FallbackKind::Explicit:
            if (state_->qubits() != qubits) {
                throw DimensionError("explicit fallback has " + std::to_string(state_->qubits()) +
                                     " qubit(s), needed " + std::to_string(qubits));
            }
            return *state_;
    }
    throw Error("unreachable fallback kind");
}

// ---------------------------------------------------------------------------
// Named operations

std::string_view to_string(NamedKind kind) {
    switch (kind) {
        case NamedKind::KBF: return "kbf";
        case NamedKind::KPF: return "kpf";
        case NamedKind::KBPF: return "kbpf";
        case NamedKind::KD: return "kd";
        case NamedKind::KAD: return "kad";
    }
    return "?";
}

KrausChannel NamedSpec::channel() const {
    switch (kind) {
        case NamedKind::KBF: return bit_flip(param);
        case NamedKind::KPF: return phase_flip(param);
        case NamedKind::KBPF: return bit_phase_flip(param);
        case NamedKind::KD: return depolarizing(param);
        case NamedKind::KAD: return amplitude_damping({param, lambda});
    }
    throw Error("unreachable named kind");
}

double NamedSpec::threshold() const {
    switch (kind) {
        case NamedKind::KPF: return 0.0;
        case NamedKind::KAD: return 1.0 - lambda;
        default: return 0.5;
    }
}

std::string NamedSpec::label() const {
    std::string s(to_string(kind));
    s += "(" + num(param);
    if (kind == NamedKind::KAD) s += "," + num(lambda);
    return s + ")";
}

EpistemicOperation::EpistemicOperation(std::string label, TruthPerspective perspective, KrausChannel channel,
                                       EpistemicDomain domain, Fallback fallback,
                                       std::optional<NamedSpec> named)
    : label_(std::move(label)),
      perspective_(std::move(perspective)),
      channel_(std::move(channel)),
      domain_(std::move(domain)),
      fallback_(std::move(fallback)),
      named_(named) {
    if (channel_.qubits() != 1) {
        throw DimensionError("epistemic operation " + label_ + " needs a 1-qubit channel");
    }
}

DensityOperator EpistemicOperation::apply(const DensityOperator& rho) const {
    if (domain_.contains(rho)) return apply_lifted(channel_, rho);
    return fallback_.instantiate(rho.qubits(), perspective_);
}

EpistemicDomain maximal_domain(const NamedSpec& spec, const TruthPerspective& t) {
    if (spec.kind == NamedKind::KPF) return EpistemicDomain::all();
    return EpistemicDomain::prob_at_least(spec.threshold(), t);
}

EpistemicOperation make_named(const NamedSpec& spec, const TruthPerspective& t, EpistemicDomain domain,
                              Fallback fallback, BoundPolicy policy) {
    if (policy == BoundPolicy::Enforce) {
        const bool flip = spec.kind != NamedKind::KAD;
        if (flip && !(spec.param > 0.0)) {
            throw DomainError(spec.label() + ": the flip parameter must be nonzero");
        }
        if (spec.kind == NamedKind::KAD && !(spec.lambda >= 0.0 && spec.lambda <= 1.0)) {
            throw DomainError(spec.label() + ": λ must be in [0,1]");
        }
        const Inclusion inc = domain_included(domain, maximal_domain(spec, t), CheckOptions{});
        if (!inc.holds) {
            throw DomainError(spec.label() + ": domain " + domain.describe() + " exceeds the maximal strong set " +
                              maximal_domain(spec, t).describe());
        }
    }
    KrausChannel channel = twin_channel(t, spec.channel());
    return EpistemicOperation(spec.label(), t, std::move(channel), std::move(domain), std::move(fallback), spec);
}

double closed_form_prob(const NamedSpec& spec, const DensityOperator& rho, const TruthPerspective& t) {
    const double z = bloch_coords(reduced_last(rho), t).z;
    const double a2 = spec.param * spec.param;
    switch (spec.kind) {
        case NamedKind::KBF:
        case NamedKind::KBPF: return (1.0 - (1.0 - 2.0 * a2) * z) / 2.0;
        case NamedKind::KPF: return (1.0 - z) / 2.0;
        case NamedKind::KD: return (1.0 - (1.0 - spec.param) * z) / 2.0;
        case NamedKind::KAD:
            return (1.0 - (1.0 - spec.param) * z - spec.param * (2.0 * spec.lambda - 1.0)) / 2.0;
    }
    throw Error("unreachable named kind");
}

double closed_form_prob(const EpistemicOperation& e, const DensityOperator& rho) {
    if (!e.named()) throw DomainError(e.label() + " is not a named operation");
    if (!e.in_domain(rho)) throw DomainError("closed_form_prob: state outside the domain of " + e.label());
    return closed_form_prob(*e.named(), rho, e.perspective());
}

// ---------------------------------------------------------------------------
// Checks

std::string_view to_string(Property p) {
    switch (p) {
        case Property::Strong: return "strong";
        case Property::NonTrivial: return "non-trivial";
        case Property::Consistent: return "consistent";
        case Property::Monotonic: return "monotonic";
        case Property::PositiveIntrospection: return "positively-introspective";
        case Property::NegativeIntrospection: return "negatively-introspective";
        case Property::Closure: return "closure";
    }
    return "?";
}

std::string PropertyReport::summary() const {
    std::ostringstream os;
    os << to_string(property) << ": " << (holds ? "holds" : "violated") << " (tested " << tested << "/"
       << drawn << ", seed " << seed << ", fallback " << to_string(fallback) << ")";
    const auto& inst = counterexample ? counterexample : witness;
    if (inst) {
        os << (counterexample ? " counterexample" : " witness") << " #" << inst->index
           << " lhs=" << num(inst->lhs) << " rhs=" << num(inst->rhs);
    }
    return os.str();
}

StatePool::StatePool(const EpistemicOperation& e, const CheckOptions& opts)
    : t_(e.perspective()), seed_(opts.seed), samples_(std::max(0, opts.samples)), qubits_(opts.qubits) {
    require_qubits(qubits_, "state pool");
    if (const auto* ex = std::get_if<EpistemicDomain::Explicit>(&e.domain().variant())) {
        for (const auto& m : ex->members) {
            if (m.qubits() == qubits_) specials_.push_back(m);
        }
    }
    specials_.push_back(truth_state(t_, qubits_));
    specials_.push_back(falsity_state(t_, qubits_));
    specials_.push_back(DensityOperator::maximally_mixed(qubits_));
}

DensityOperator StatePool::at(std::size_t index) const {
    if (index < specials_.size()) return specials_[index];
    Rng rng = sample_rng(seed_, index);
    switch (index % 3) {
        case 0: return random_density(qubits_, rng);
        case 1: return DensityOperator::pure(random_quregister(qubits_, rng));
        default: {
            // Mixture with the T-truth state, for coverage of high-probability domains.
            const double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const DensityOperator r = random_density(qubits_, rng);
            return DensityOperator::adopt(w * truth_state(t_, qubits_).matrix() + (1.0 - w) * r.matrix());
        }
    }
}

std::optional<InstanceResult> evaluate_instance(Property p, const EpistemicOperation& e,
                                                std::span<const DensityOperator> states) {
    const TruthPerspective& t = e.perspective();
    const std::size_t need = p == Property::Monotonic ? 2 : 1;
    if (states.size() < need) throw DomainError(std::string(to_string(p)) + ": not enough states");
    InstanceResult r;
    const DensityOperator& rho = states[0];
    r.instance.states.assign(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(need));

    switch (p) {
        case Property::Strong:
        case Property::NonTrivial: {
            if (!e.in_domain(rho)) return std::nullopt;
            r.instance.lhs = prob(t, e.apply(rho));
            r.instance.rhs = prob(t, rho);
            r.violated = p == Property::Strong ? r.instance.lhs > r.instance.rhs + kTol
                                               : r.instance.lhs < r.instance.rhs - kTol;
            return r;
        }
        case Property::Consistent: {
            r.instance.lhs = prob(t, e.apply(rho));
            r.instance.rhs = prob(t, twin_not(t, e.apply(twin_not(t, rho))));
            break;
        }
        case Property::PositiveIntrospection: {
            const DensityOperator once = e.apply(rho);
            r.instance.lhs = prob(t, once);
            r.instance.rhs = prob(t, e.apply(once));
            break;
        }
        case Property::NegativeIntrospection: {
            const DensityOperator neg = twin_not(t, e.apply(rho));
            r.instance.lhs = prob(t, neg);
            r.instance.rhs = prob(t, e.apply(neg));
            break;
        }
        case Property::Monotonic: {
            const DensityOperator* a = &states[0];
            const DensityOperator* b = &states[1];
            if (a->qubits() != b->qubits()) throw DimensionError("monotonic: pair of different sizes");
            if (prob(t, *a) > prob(t, *b) + kTol) std::swap(a, b);
            r.instance.states = {*a, *b};
            r.instance.lhs = prob(t, e.apply(*a));
            r.instance.rhs = prob(t, e.apply(*b));
            break;
        }
        case Property::Closure: {
            const auto* pal = std::get_if<EpistemicDomain::ProbAtLeast>(&e.domain().variant());
            if (!pal) throw DomainError("closure check needs a prob_at_least domain");
            if (!e.in_domain(rho)) return std::nullopt;
            const DensityOperator out = e.apply(rho);
            r.instance.lhs = prob(pal->at, out);
            r.instance.rhs = pal->theta;
            r.violated = !e.in_domain(out);
            return r;
        }
    }
    r.violated = r.instance.lhs > r.instance.rhs + kTol;
    return r;
}

namespace {

PropertyReport new_report(Property p, const EpistemicOperation& e, std::uint64_t seed) {
    PropertyReport rep;
    rep.property = p;
    rep.seed = seed;
    rep.fallback = e.fallback().kind();
    rep.holds = p != Property::NonTrivial;
    return rep;
}

// Folds one evaluated instance into the report; returns true when the
// search can stop (first counterexample, or first non-triviality witness).
bool record(PropertyReport& rep, std::optional<InstanceResult> res, std::uint64_t index) {
    ++rep.drawn;
    if (!res) return false;
    ++rep.tested;
    if (!res->violated) return false;
    res->instance.index = index;
    if (rep.property == Property::NonTrivial) {
        rep.holds = true;
        rep.witness = std::move(res->instance);
    } else {
        rep.holds = false;
        rep.counterexample = std::move(res->instance);
    }
    return true;
}

PropertyReport run_single(Property p, const EpistemicOperation& e, const CheckOptions& opts) {
    PropertyReport rep = new_report(p, e, opts.seed);
    const StatePool pool(e, opts);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const DensityOperator rho = pool.at(i);
        if (record(rep, evaluate_instance(p, e, std::span(&rho, 1)), i)) break;
    }
    return rep;
}

}  // namespace

PropertyReport check_strong(const EpistemicOperation& e, const CheckOptions& opts) {
    return run_single(Property::Strong, e, opts);
}

PropertyReport check_nontrivial(const EpistemicOperation& e, const CheckOptions& opts) {
    return run_single(Property::NonTrivial, e, opts);
}

PropertyReport check_consistent(const EpistemicOperation& e, const CheckOptions& opts) {
    return run_single(Property::Consistent, e, opts);
}

PropertyReport check_introspective(const EpistemicOperation& e, Introspection sign, const CheckOptions& opts) {
    return run_single(sign == Introspection::Positive ? Property::PositiveIntrospection
                                                      : Property::NegativeIntrospection,
                      e, opts);
}

PropertyReport check_closure(const EpistemicOperation& e, const CheckOptions& opts) {
    if (!std::holds_alternative<EpistemicDomain::ProbAtLeast>(e.domain().variant())) {
        throw DomainError("closure check needs a prob_at_least domain, got " + e.domain().describe());
    }
    return run_single(Property::Closure, e, opts);
}

PropertyReport check_monotonic(const EpistemicOperation& e, const CheckOptions& opts) {
    PropertyReport rep = new_report(Property::Monotonic, e, opts.seed);
    CheckOptions doubled = opts;
    doubled.samples = 2 * std::max(0, opts.samples);
    const StatePool pool(e, doubled);
    const std::size_t s = pool.special_count();
    std::uint64_t index = 0;
    // Every ordered pair of special states first, then random pairs.
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j, ++index) {
            if (i == j) continue;
            const std::vector<DensityOperator> pair{pool.at(i), pool.at(j)};
            if (record(rep, evaluate_instance(Property::Monotonic, e, pair), index)) return rep;
        }
    }
    for (std::size_t k = s; k + 1 < pool.size(); k += 2, ++index) {
        const std::vector<DensityOperator> pair{pool.at(k), pool.at(k + 1)};
        if (record(rep, evaluate_instance(Property::Monotonic, e, pair), index)) return rep;
    }
    return rep;
}

PropertyReport check_on(Property p, const EpistemicOperation& e, std::span<const DensityOperator> states) {
    PropertyReport rep = new_report(p, e, 0);
    const std::size_t step = p == Property::Monotonic ? 2 : 1;
    for (std::size_t i = 0; i + step <= states.size(); i += step) {
        if (record(rep, evaluate_instance(p, e, states.subspan(i, step)), i / step)) break;
    }
    return rep;
}

bool reverify(const EpistemicOperation& e, const PropertyReport& report) {
    const auto& inst = report.property == Property::NonTrivial ? report.witness : report.counterexample;
    if (!inst) return false;
    const auto res = evaluate_instance(report.property, e, inst->states);
    return res && res->violated && std::abs(res->instance.lhs - inst->lhs) <= kTol &&
           std::abs(res->instance.rhs - inst->rhs) <= kTol;
}

std::vector<DensityOperator> states_with_prob(const TruthPerspective& t, int qubits, double target, int count,
                                              std::uint64_t seed) {
    if (!(target >= 0.0 && target <= 1.0)) throw DomainError("target probability must be in [0,1]");
    require_qubits(qubits, "states_with_prob");
    const double z = 1.0 - 2.0 * target;
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    std::vector<DensityOperator> out;
    out.reserve(static_cast<std::size_t>(std::max(0, count)));
    for (int i = 0; i < count; ++i) {
        Rng rng = sample_rng(seed, static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double r = radius * std::sqrt(u(rng));
        const double phi = 2.0 * std::numbers::pi * u(rng);
        DensityOperator q = from_bloch({r * std::cos(phi), r * std::sin(phi), z}, t);
        out.push_back(qubits == 1 ? q : tensor(random_density(qubits - 1, rng), q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structures

std::string_view to_string(Role r) {
    switch (r) {
        case Role::Inf: return "Inf";
        case Role::U: return "U";
        case Role::B: return "B";
        case Role::K: return "K";
    }
    return "?";
}

std::optional<Role> parse_role(std::string_view s) {
    if (s == "Inf" || s == "inf") return Role::Inf;
    if (s == "U" || s == "u") return Role::U;
    if (s == "B" || s == "b") return Role::B;
    if (s == "K" || s == "k") return Role::K;
    return std::nullopt;
}

const std::optional<EpistemicOperation>& RoleSet::get(Role r) const {
    switch (r) {
        case Role::Inf: return inf;
        case Role::U: return u;
        case Role::B: return b;
        case Role::K: return k;
    }
    throw Error("unreachable role");
}

std::optional<EpistemicOperation>& RoleSet::get(Role r) {
    return const_cast<std::optional<EpistemicOperation>&>(std::as_const(*this).get(r));
}

namespace {

const RoleSet* find_roles(const RolesByQubits& m, int qubits) {
    if (auto it = m.find(std::to_string(qubits)); it != m.end()) return &it->second;
    if (auto it = m.find("*"); it != m.end()) return &it->second;
    return nullptr;
}

}  // namespace

const EpistemicOperation* EpistemicStructure::resolve(std::string_view agent, std::string_view time, Role role,
                                                      int qubits) const {
    const auto a = agents.find(std::string(agent));
    if (a == agents.end()) throw DomainError("unknown agent '" + std::string(agent) + "'");
    if (std::find(times.begin(), times.end(), time) == times.end()) {
        throw DomainError("unknown time '" + std::string(time) + "'");
    }
    const Agent& ag = a->second;
    if (auto t = ag.at.find(std::string(time)); t != ag.at.end()) {
        if (const RoleSet* rs = find_roles(t->second, qubits); rs && rs->get(role)) {
            return &*rs->get(role);
        }
    }
    if (const RoleSet* rs = find_roles(ag.ops, qubits); rs && rs->get(role)) return &*rs->get(role);
    return nullptr;
}

Inclusion domain_included(const EpistemicDomain& inner, const EpistemicDomain& outer, const CheckOptions& opts) {
    using All = EpistemicDomain::All;
    using PAL = EpistemicDomain::ProbAtLeast;
    using Ex = EpistemicDomain::Explicit;
    const auto& iv = inner.variant();
    const auto& ov = outer.variant();

    if (std::holds_alternative<All>(ov)) return {true, true};
    if (const auto* ex = std::get_if<Ex>(&iv)) {
        const bool all_in = std::all_of(ex->members.begin(), ex->members.end(),
                                        [&](const DensityOperator& m) { return outer.contains(m); });
        return {all_in, true};
    }
    const auto* opal = std::get_if<PAL>(&ov);
    if (std::holds_alternative<All>(iv)) return {opal && opal->theta <= kTol, true};
    const auto& ipal = std::get<PAL>(iv);
    if (!opal) return {false, true};  // a threshold set is never inside a finite set
    if (opal->theta <= kTol) return {true, true};
    if (prob_equivalent(ipal.at, opal->at)) return {ipal.theta >= opal->theta - kTol, true};

    // Different perspectives: probe inner's boundary and interior.
    const int levels = 8;
    const int per_level = std::max(1, opts.samples / levels);
    for (int k = 0; k < levels; ++k) {
        const double target = ipal.theta + (1.0 - ipal.theta) * k / levels;
        for (const auto& s : states_with_prob(ipal.at, opts.qubits, target, per_level, opts.seed + k)) {
            if (!outer.contains(s)) return {false, false};
        }
    }
    return {true, false};
}

bool StructureReport::valid() const {
    for (const auto& e : entries) {
        for (const auto& c : e.conditions) {
            if (c.status == ConditionResult::Status::Violated) return false;
        }
    }
    return true;
}

bool StructureReport::complete() const {
    for (const auto& e : entries) {
        for (const auto& c : e.conditions) {
            if (c.status == ConditionResult::Status::Incomplete) return false;
        }
    }
    return true;
}

std::string StructureReport::summary() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        for (const auto& c : e.conditions) {
            const char* st = c.status == ConditionResult::Status::Holds      ? "holds"
                             : c.status == ConditionResult::Status::Violated ? "VIOLATED"
                                                                             : "incomplete";
            os << e.agent << "@" << e.time << " n=" << e.qubits << " " << c.name << ": " << st;
            if (!c.detail.empty()) os << " (" << c.detail << ")";
            os << "\n";
        }
    }
    return os.str();
}

namespace {

using Status = ConditionResult::Status;

ConditionResult inclusion_condition(std::string name, const EpistemicOperation* inner,
                                    const EpistemicOperation* outer, const CheckOptions& opts) {
    if (!inner || !outer) return {std::move(name), Status::Incomplete, "missing assignment"};
    const Inclusion inc = domain_included(inner->domain(), outer->domain(), opts);
    return {std::move(name), inc.holds ? Status::Holds : Status::Violated,
            inner->domain().describe() + " vs " + outer->domain().describe() + (inc.analytic ? "" : ", sampled")};
}

ConditionResult preorder_condition(std::string name, const EpistemicOperation* lower,
                                   const EpistemicOperation* upper, const TruthPerspective& t,
                                   const CheckOptions& opts) {
    if (!lower || !upper) return {std::move(name), Status::Incomplete, "missing assignment"};
    const StatePool pool(*lower, opts);
    int tested = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const DensityOperator rho = pool.at(i);
        if (!lower->in_domain(rho)) continue;
        ++tested;
        const double pl = prob(t, lower->apply(rho));
        const double pu = prob(t, upper->apply(rho));
        if (pl > pu + kTol) {
            return {std::move(name), Status::Violated,
                    "sample #" + std::to_string(i) + ": " + num(pl) + " > " + num(pu)};
        }
    }
    return {std::move(name), Status::Holds, std::to_string(tested) + " samples"};
}

ConditionResult strong_condition(std::string name, const EpistemicOperation* e, const CheckOptions& opts) {
    if (!e) return {std::move(name), Status::Incomplete, "missing assignment"};
    const PropertyReport r = check_strong(*e, opts);
    return {std::move(name), r.holds ? Status::Holds : Status::Violated, r.summary()};
}

}  // namespace

StructureReport validate_structure(const EpistemicStructure& s, const CheckOptions& opts) {
    StructureReport report;
    for (const auto& [name, agent] : s.agents) {
        for (const auto& time : s.times) {
            std::set<std::string> keys;
            for (const auto& [k, _] : agent.ops) keys.insert(k);
            if (auto t = agent.at.find(time); t != agent.at.end()) {
                for (const auto& [k, _] : t->second) keys.insert(k);
            }
            for (const auto& key : keys) {
                CheckOptions o = opts;
                if (key != "*") o.qubits = std::stoi(key);
                auto get = [&](Role r) { return s.resolve(name, time, r, o.qubits); };
                const auto *k = get(Role::K), *b = get(Role::B), *u = get(Role::U), *inf = get(Role::Inf);
                StructureEntry entry{name, time, key, {}};
                entry.conditions.push_back(inclusion_condition("EpD(K) ⊆ EpD(B)", k, b, o));
                entry.conditions.push_back(inclusion_condition("EpD(B) ⊆ EpD(U)", b, u, o));
                entry.conditions.push_back(inclusion_condition("EpD(U) ⊆ EpD(Inf)", u, inf, o));
                entry.conditions.push_back(preorder_condition("Kρ ⪯ Bρ on EpD(K)", k, b, agent.perspective, o));
                entry.conditions.push_back(preorder_condition("Bρ ⪯ Uρ on EpD(B)", b, u, agent.perspective, o));
                entry.conditions.push_back(strong_condition("K strong", k, o));
                entry.conditions.push_back(strong_condition("B strong", b, o));
                report.entries.push_back(std::move(entry));
            }
        }
    }
    return report;
}

}  // namespace qepi
