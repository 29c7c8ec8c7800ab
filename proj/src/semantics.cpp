#include "qepi/semantics.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "qepi/gates.hpp"

namespace qepi {

namespace {

SentencePtr make(Sentence s) { return std::make_shared<const Sentence>(std::move(s)); }

SentencePtr unary(Sentence::Kind k, SentencePtr s) {
    if (!s) throw DomainError("null operand");
    Sentence n{};
    n.kind = k;
    n.left = std::move(s);
    return make(std::move(n));
}

SentencePtr binary(Sentence::Kind k, SentencePtr a, SentencePtr b) {
    if (!a || !b) throw DomainError("null operand");
    Sentence n{};
    n.kind = k;
    n.left = std::move(a);
    n.right = std::move(b);
    return make(std::move(n));
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

}  // namespace

SentencePtr Sentence::atom(std::string name) {
    Sentence n{};
    n.kind = Kind::Atom;
    n.name = std::move(name);
    return make(std::move(n));
}
SentencePtr Sentence::negation(SentencePtr s) { return unary(Kind::Not, std::move(s)); }
SentencePtr Sentence::sqrt_not(SentencePtr s) { return unary(Kind::SqrtNot, std::move(s)); }
SentencePtr Sentence::hadamard(SentencePtr s) { return unary(Kind::Hadamard, std::move(s)); }
SentencePtr Sentence::conjunction(SentencePtr a, SentencePtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
SentencePtr Sentence::exclusive_or(SentencePtr a, SentencePtr b) { return binary(Kind::Xor, std::move(a), std::move(b)); }

SentencePtr Sentence::epistemic(Role role, std::string agent, std::string time, SentencePtr s) {
    if (!s) throw DomainError("null operand");
    Sentence n{};
    n.kind = Kind::Epistemic;
    n.role = role;
    n.agent = std::move(agent);
    n.time = std::move(time);
    n.left = std::move(s);
    return make(std::move(n));
}

bool operator==(const Sentence& a, const Sentence& b) {
    if (a.kind != b.kind) return false;
    auto same = [](const SentencePtr& x, const SentencePtr& y) {
        if (!x || !y) return !x && !y;
        return *x == *y;
    };
    switch (a.kind) {
        case Sentence::Kind::Atom: return a.name == b.name;
        case Sentence::Kind::Epistemic:
            return a.role == b.role && a.agent == b.agent && a.time == b.time && same(a.left, b.left);
        default: return same(a.left, b.left) && same(a.right, b.right);
    }
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& message, std::size_t offset)
    : Error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    SentencePtr run() {
        SentencePtr out = sentence();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(peek_word()) + "'");
        return out;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string_view peek_word() const {
        if (pos_ >= s_.size()) return "end of input";
        std::size_t e = pos_;
        if (is_ident_char(s_[e])) {
            while (e < s_.size() && is_ident_char(s_[e])) ++e;
        } else {
            ++e;
        }
        return s_.substr(pos_, e - pos_);
    }

    // Identifier at the cursor without consuming it ("" if none).
    std::string_view peek_ident() const {
        if (pos_ >= s_.size() || !is_ident_start(s_[pos_])) return {};
        std::size_t e = pos_;
        while (e < s_.size() && is_ident_char(s_[e])) ++e;
        return s_.substr(pos_, e - pos_);
    }

    bool next_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c) {
        if (!next_is(c)) fail(std::string("expected '") + c + "', found '" + std::string(peek_word()) + "'");
        ++pos_;
    }

    std::string name(const char* what) {
        skip_ws();
        std::size_t e = pos_;
        while (e < s_.size() && is_ident_char(s_[e])) ++e;
        if (e == pos_) fail(std::string("expected ") + what + " name");
        std::string out(s_.substr(pos_, e - pos_));
        pos_ = e;
        return out;
    }

    SentencePtr sentence() {
        SentencePtr lhs = unary_();
        skip_ws();
        const std::string_view w = peek_ident();
        if (w != "and" && w != "xor") return lhs;
        pos_ += w.size();
        SentencePtr rhs = unary_();
        skip_ws();
        const std::string_view again = peek_ident();
        if (again == "and" || again == "xor") fail("chained connective '" + std::string(again) + "' needs parentheses");
        return w == "and" ? Sentence::conjunction(lhs, rhs) : Sentence::exclusive_or(lhs, rhs);
    }

    SentencePtr unary_() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a sentence, found end of input");
        if (s_[pos_] == '(') {
            ++pos_;
            SentencePtr inner = sentence();
            expect(')');
            return inner;
        }
        const std::string_view w = peek_ident();
        if (w.empty()) fail("expected a sentence, found '" + std::string(peek_word()) + "'");
        const std::size_t start = pos_;
        pos_ += w.size();
        if (w == "not") return Sentence::negation(unary_());
        if (w == "sqrtnot") return Sentence::sqrt_not(unary_());
        if (w == "hadamard") return Sentence::hadamard(unary_());
        if (w == "and" || w == "xor") {
            pos_ = start;
            fail("expected a sentence, found '" + std::string(w) + "'");
        }
        if (next_is('[')) {
            const auto role = w == "Inf" ? std::optional<Role>(Role::Inf)
                              : w == "K"  ? std::optional<Role>(Role::K)
                              : w == "B"  ? std::optional<Role>(Role::B)
                              : w == "U"  ? std::optional<Role>(Role::U)
                                          : std::nullopt;
            if (!role) {
                pos_ = start;
                fail("unknown operator '" + std::string(w) + "'");
            }
            ++pos_;
            std::string agent = name("agent");
            expect('@');
            std::string time = name("time");
            expect(']');
            return Sentence::epistemic(*role, std::move(agent), std::move(time), unary_());
        }
        return Sentence::atom(std::string(w));
    }
};

}  // namespace

SentencePtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Sentence& s) {
    switch (s.kind) {
        case Sentence::Kind::Atom: return s.name;
        case Sentence::Kind::Not: return "not " + print(*s.left);
        case Sentence::Kind::SqrtNot: return "sqrtnot " + print(*s.left);
        case Sentence::Kind::Hadamard: return "hadamard " + print(*s.left);
        case Sentence::Kind::And: return "(" + print(*s.left) + " and " + print(*s.right) + ")";
        case Sentence::Kind::Xor: return "(" + print(*s.left) + " xor " + print(*s.right) + ")";
        case Sentence::Kind::Epistemic:
            return std::string(to_string(s.role)) + "[" + s.agent + "@" + s.time + "] " + print(*s.left);
    }
    return "?";
}

bool is_epistemic_free(const Sentence& s) {
    if (s.kind == Sentence::Kind::Epistemic) return false;
    if (s.left && !is_epistemic_free(*s.left)) return false;
    if (s.right && !is_epistemic_free(*s.right)) return false;
    return true;
}

namespace {

void collect_atoms(const Sentence& s, std::set<std::string>& out) {
    if (s.kind == Sentence::Kind::Atom) out.insert(s.name);
    if (s.left) collect_atoms(*s.left, out);
    if (s.right) collect_atoms(*s.right, out);
}

}  // namespace

std::set<std::string> atoms_of(const Sentence& s) {
    std::set<std::string> out;
    collect_atoms(s, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

int dimension(const Sentence& s, const Model& m) {
    switch (s.kind) {
        case Sentence::Kind::Atom: {
            const auto it = m.atoms.find(s.name);
            if (it == m.atoms.end()) throw DomainError("unassigned atom '" + s.name + "'");
            return it->second.qubits();
        }
        case Sentence::Kind::And: return dimension(*s.left, m) + dimension(*s.right, m) + 1;
        case Sentence::Kind::Xor: return dimension(*s.left, m) + dimension(*s.right, m);
        default: return dimension(*s.left, m);
    }
}

namespace {

DensityOperator eval(const Model& m, const TruthPerspective& t, const Sentence& s) {
    using K = Sentence::Kind;
    auto gate1 = [&](GateKind g) {
        const DensityOperator inner = eval(m, t, *s.left);
        return apply_unitary(twin_gate(t, build_gate(g, {inner.qubits()})), inner);
    };
    switch (s.kind) {
        case K::Atom: {
            const DensityOperator& rho = m.atoms.at(s.name);
            const ComplexMatrix tn = extend(t, rho.qubits());
            return DensityOperator::adopt(tn * rho.matrix() * tn.adjoint());
        }
        case K::Not: return gate1(GateKind::Not);
        case K::SqrtNot: return gate1(GateKind::SqrtNot);
        case K::Hadamard: return gate1(GateKind::Hadamard);
        case K::And: {
            const DensityOperator a = eval(m, t, *s.left);
            const DensityOperator b = eval(m, t, *s.right);
            const DensityOperator in = tensor(tensor(a, b), falsity_state(t, 1));
            return apply_unitary(twin_gate(t, build_gate(GateKind::Toffoli, {a.qubits(), b.qubits(), 1})), in);
        }
        case K::Xor: {
            const DensityOperator a = eval(m, t, *s.left);
            const DensityOperator b = eval(m, t, *s.right);
            return apply_unitary(twin_gate(t, build_gate(GateKind::Xor, {a.qubits(), b.qubits()})), tensor(a, b));
        }
        case K::Epistemic: {
            const DensityOperator inner = eval(m, t, *s.left);
            const EpistemicOperation* op = m.structure.resolve(s.agent, s.time, s.role, inner.qubits());
            if (!op) {
                throw DomainError("no " + std::string(to_string(s.role)) + " operation for " + s.agent + "@" +
                                  s.time + " on " + std::to_string(inner.qubits()) + " qubit(s)");
            }
            return op->apply(inner);
        }
    }
    throw Error("unreachable sentence kind");
}

}  // namespace

DensityOperator evaluate(const Model& m, const TruthPerspective& t, const Sentence& s) {
    const int n = dimension(s, m);
    if (n > max_qubits()) {
        throw DimensionError("sentence needs " + std::to_string(n) + " qubits, cap is " +
                             std::to_string(max_qubits()));
    }
    return eval(m, t, s);
}

bool is_true(const Model& m, const TruthPerspective& t, const Sentence& s) {
    return prob(t, evaluate(m, t, s)) >= 1.0 - kTol;
}

// ---------------------------------------------------------------------------
// Consequence

std::string ConsequenceVerdict::summary() const {
    std::ostringstream os;
    os << std::setprecision(12);
    if (status == Status::NoCounterexample) {
        os << "no counterexample in " << trials << " trials";
    } else {
        os << "counterexample at trial " << *trial << ": prob(alpha)=" << prob_alpha << " > prob(beta)=" << prob_beta;
    }
    os << " (seed " << seed << ", cross-checks " << cross_checks << ", disagreements " << cross_check_disagreements
       << ")";
    return os.str();
}

namespace {

std::optional<NamedSpec> random_spec(const EpistemicOperation& op, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NamedSpec spec = *op.named();
    const double nonzero = 1.0 - u(rng);  // (0, 1]
    switch (spec.kind) {
        case NamedKind::KBF:
        case NamedKind::KPF:
        case NamedKind::KBPF: spec.param = std::sqrt(nonzero); break;
        case NamedKind::KD: spec.param = nonzero; break;
        case NamedKind::KAD: {
            spec.param = u(rng);
            const auto& v = op.domain().variant();
            if (const auto* pal = std::get_if<EpistemicDomain::ProbAtLeast>(&v)) {
                // Keep the domain inside AD: λ >= 1 - θ.
                const double lo = std::max(0.0, 1.0 - pal->theta);
                spec.lambda = lo + (1.0 - lo) * u(rng);
            } else if (std::holds_alternative<EpistemicDomain::All>(v)) {
                spec.lambda = 1.0;
            }
            break;
        }
    }
    return spec;
}

void randomize(std::optional<EpistemicOperation>& slot, Rng& rng) {
    if (!slot || !slot->named()) return;
    const auto spec = random_spec(*slot, rng);
    try {
        slot = make_named(*spec, slot->perspective(), slot->domain(), slot->fallback());
    } catch (const DomainError&) {
        // Template parameters stay when the fresh ones are not admissible.
    }
}

void randomize(RolesByQubits& roles, Rng& rng) {
    for (auto& [_, rs] : roles) {
        for (Role r : {Role::Inf, Role::U, Role::B, Role::K}) randomize(rs.get(r), rng);
    }
}

Model sample_model(const std::set<std::string>& atoms, const ConsequenceTemplate& tpl, std::uint64_t seed,
                   std::uint64_t trial) {
    Rng rng = sample_rng(seed, trial);
    Model m;
    m.structure = tpl.structure;
    for (const auto& a : atoms) {
        const auto it = tpl.atom_qubits.find(a);
        const int n = it == tpl.atom_qubits.end() ? 1 : it->second;
        m.atoms.emplace(a, trial % 2 == 0 ? random_density(n, rng)
                                          : DensityOperator::pure(random_quregister(n, rng)));
    }
    if (tpl.randomize_parameters) {
        for (auto& [_, agent] : m.structure.agents) {
            randomize(agent.ops, rng);
            for (auto& [__, roles] : agent.at) randomize(roles, rng);
        }
    }
    return m;
}

}  // namespace

ConsequenceVerdict check_consequence(const Sentence& alpha, const Sentence& beta, const ConsequenceTemplate& tpl,
                                     const ConsequenceOptions& opts) {
    std::set<std::string> atoms = atoms_of(alpha);
    atoms.merge(atoms_of(beta));
    ConsequenceVerdict v;
    v.seed = opts.seed;
    const TruthPerspective canonical = TruthPerspective::identity();
    for (int i = 0; i < opts.trials; ++i) {
        const auto trial = static_cast<std::uint64_t>(i);
        Model m = sample_model(atoms, tpl, opts.seed, trial);
        const double pa = prob(canonical, evaluate(m, canonical, alpha));
        const double pb = prob(canonical, evaluate(m, canonical, beta));
        ++v.trials;
        const bool holds = pa <= pb + kTol;
        if (i % 10 == 0) {
            Rng rng = sample_rng(opts.seed ^ 0x9e3779b97f4a7c15ULL, trial);
            const TruthPerspective t = TruthPerspective::random(rng);
            const bool holds_t = prob(t, evaluate(m, t, alpha)) <= prob(t, evaluate(m, t, beta)) + kTol;
            ++v.cross_checks;
            if (holds_t != holds) ++v.cross_check_disagreements;
        }
        if (!holds) {
            v.status = ConsequenceVerdict::Status::Counterexample;
            v.trial = trial;
            v.model = std::move(m);
            v.prob_alpha = pa;
            v.prob_beta = pb;
            return v;
        }
    }
    return v;
}

bool reverify(const Sentence& alpha, const Sentence& beta, const ConsequenceVerdict& v) {
    if (v.status != ConsequenceVerdict::Status::Counterexample || !v.model) return false;
    const TruthPerspective canonical = TruthPerspective::identity();
    const double pa = prob(canonical, evaluate(*v.model, canonical, alpha));
    const double pb = prob(canonical, evaluate(*v.model, canonical, beta));
    return pa > pb + kTol && std::abs(pa - v.prob_alpha) <= kTol && std::abs(pb - v.prob_beta) <= kTol;
}

// ---------------------------------------------------------------------------
// Random sentences

namespace {

SentencePtr gen(Rng& rng, const RandomSentenceOptions& o, int depth, int budget) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto atom = [&] { return Sentence::atom(o.atoms[static_cast<std::size_t>(pick(0, int(o.atoms.size()) - 1))]); };
    if (depth <= 0) return atom();
    const bool epistemic = !o.agents.empty() && !o.times.empty();
    // 0 atom, 1-3 unary gates, 4 and, 5 xor, 6 epistemic
    const int choice = pick(0, epistemic ? 6 : 5);
    switch (choice) {
        case 0: return atom();
        case 1: return Sentence::negation(gen(rng, o, depth - 1, budget));
        case 2: return Sentence::sqrt_not(gen(rng, o, depth - 1, budget));
        case 3: return Sentence::hadamard(gen(rng, o, depth - 1, budget));
        case 4: {
            if (budget < 3) return Sentence::negation(gen(rng, o, depth - 1, budget));
            const int left = pick(1, budget - 2);
            SentencePtr a = gen(rng, o, depth - 1, left);
            return Sentence::conjunction(a, gen(rng, o, depth - 1, budget - 1 - left));
        }
        case 5: {
            if (budget < 2) return Sentence::hadamard(gen(rng, o, depth - 1, budget));
            const int left = pick(1, budget - 1);
            SentencePtr a = gen(rng, o, depth - 1, left);
            return Sentence::exclusive_or(a, gen(rng, o, depth - 1, budget - left));
        }
        default: {
            const Role roles[] = {Role::Inf, Role::U, Role::B, Role::K};
            const Role r = roles[pick(0, 3)];
            const auto& agent = o.agents[static_cast<std::size_t>(pick(0, int(o.agents.size()) - 1))];
            const auto& time = o.times[static_cast<std::size_t>(pick(0, int(o.times.size()) - 1))];
            return Sentence::epistemic(r, agent, time, gen(rng, o, depth - 1, budget));
        }
    }
}

}  // namespace

SentencePtr random_sentence(Rng& rng, const RandomSentenceOptions& opts) {
    if (opts.atoms.empty()) throw DomainError("random_sentence needs at least one atom name");
    // The budget bounds the dimension whatever the subtree shape; with no
    // limit a depth-d tree has at most 2^(d+1) qubits.
    const int budget = opts.max_qubits > 0 ? opts.max_qubits : (1 << (opts.max_depth + 1));
    return gen(rng, opts, opts.max_depth, budget);
}

}  // namespace qepi
