#include "qepi/suite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "qepi/channels.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/gates.hpp"
#include "qepi/perspective.hpp"
#include "qepi/semantics.hpp"

namespace qepi {

namespace {

std::string g3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Rows {
    std::string suite;
    std::vector<SuiteRow> rows;

    void add(std::string claim, bool pass, std::string detail) {
        rows.push_back({suite, std::move(claim), pass, std::move(detail)});
    }
};

// Independent stream per suite so suites can run alone with identical rows.
Rng suite_rng(const SuiteOptions& o, std::uint64_t tag) { return sample_rng(o.seed, 0xC0FFEE00ULL + tag); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Complex random_phase(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

double matrix_gap(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) { return (a - b).cwiseAbs().maxCoeff(); }

double vector_gap(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::string report_detail(const PropertyReport& r) {
    std::string s = "tested " + std::to_string(r.tested) + "/" + std::to_string(r.drawn);
    const auto& inst = r.counterexample ? r.counterexample : r.witness;
    if (inst) s += ", instance #" + std::to_string(inst->index) + " " + g3(inst->lhs) + " vs " + g3(inst->rhs);
    return s;
}

NamedSpec representative(NamedKind kind, Rng& rng) {
    switch (kind) {
        case NamedKind::KBF: return NamedSpec::kbf(std::sqrt(uniform(rng, 0.05, 1.0)));
        case NamedKind::KPF: return NamedSpec::kpf(std::sqrt(uniform(rng, 0.05, 1.0)));
        case NamedKind::KBPF: return NamedSpec::kbpf(std::sqrt(uniform(rng, 0.05, 1.0)));
        case NamedKind::KD: return NamedSpec::kd(uniform(rng, 0.05, 1.0));
        case NamedKind::KAD: return NamedSpec::kad(uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 0.9));
    }
    throw Error("unreachable named kind");
}

// Parameters away from the degenerate ends, where the explicit-set
// constructions below lose their strict decrease. Flip weights stay <= ½ so
// K P1 remains inside D.
NamedSpec interior(NamedKind kind, Rng& rng) {
    switch (kind) {
        case NamedKind::KAD: return NamedSpec::kad(uniform(rng, 0.1, 0.9), uniform(rng, 0.1, 0.9));
        case NamedKind::KD: return NamedSpec::kd(uniform(rng, 0.1, 0.9));
        default: return {kind, std::sqrt(uniform(rng, 0.1, 0.5)), 0.0};
    }
}

std::string domain_name(NamedKind k) { return k == NamedKind::KAD ? "AD" : k == NamedKind::KPF ? "all" : "D"; }

constexpr NamedKind kThresholdKinds[] = {NamedKind::KBF, NamedKind::KBPF, NamedKind::KD, NamedKind::KAD};
constexpr NamedKind kAllKinds[] = {NamedKind::KBF, NamedKind::KPF, NamedKind::KBPF, NamedKind::KD, NamedKind::KAD};

// ---------------------------------------------------------------------------

void pauli_bloch(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        // Weights from a flat Dirichlet(1,1,1,1): |α|²+|β|²+|γ|² = 1 - w0 <= 1.
        std::exponential_distribution<double> ex(1.0);
        double w[4];
        double sum = 0.0;
        for (double& x : w) sum += (x = ex(rng));
        const double a2 = w[1] / sum, b2 = w[2] / sum, g2 = w[3] / sum;
        const PauliParams p{std::sqrt(a2) * random_phase(rng), std::sqrt(b2) * random_phase(rng),
                            std::sqrt(g2) * random_phase(rng)};
        const AffineBlochMap m = bloch_map(pauli_channel(p), TruthPerspective::identity());
        const Eigen::Matrix3d expect =
            Eigen::Vector3d(1 - 2 * b2 - 2 * g2, 1 - 2 * a2 - 2 * g2, 1 - 2 * a2 - 2 * b2).asDiagonal();
        worst = std::max({worst, matrix_gap(m.linear, expect), vector_gap(m.offset, Eigen::Vector3d::Zero())});
    }
    out.add("diagonal-map", worst <= 1e-9, "100 parameter triples, max error " + g3(worst));
}

void ad_bloch(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 2);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double p = uniform(rng, 0.0, 1.0), l = uniform(rng, 0.0, 1.0);
        const AffineBlochMap m = bloch_map(amplitude_damping({p, l}), TruthPerspective::identity());
        const double s = std::sqrt(1 - p);
        const Eigen::Matrix3d expect = Eigen::Vector3d(s, s, 1 - p).asDiagonal();
        worst = std::max({worst, matrix_gap(m.linear, expect),
                          vector_gap(m.offset, Eigen::Vector3d(0, 0, p * (2 * l - 1)))});
    }
    out.add("affine-map", worst <= 1e-9, "100 (p, λ) pairs, max error " + g3(worst));
}

void kpf_trivial(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 3);
    std::vector<TruthPerspective> frames;
    for (int i = 0; i < 20; ++i) frames.push_back(TruthPerspective::random(rng));
    for (int n = 1; n <= 3; ++n) {
        double worst = 0.0;
        for (int i = 0; i < o.samples; ++i) {
            const TruthPerspective& t = frames[static_cast<std::size_t>(i % 20)];
            const auto e = make_named(NamedSpec::kpf(std::sqrt(uniform(rng, 0.0, 1.0))), t,
                                      EpistemicDomain::all());
            const DensityOperator rho = random_density(n, rng);
            worst = std::max(worst, std::abs(prob(t, e.apply(rho)) - prob(t, rho)));
        }
        out.add("n=" + std::to_string(n), worst <= 1e-9,
                std::to_string(o.samples) + " states, 20 perspectives, max |Δprob| " + g3(worst));
    }
}

void strong(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 4);
    const TruthPerspective t = TruthPerspective::random(rng);
    for (NamedKind k : kThresholdKinds) {
        const NamedSpec spec = representative(k, rng);
        const std::string name(to_string(k));
        for (int n = 1; n <= 2; ++n) {
            const auto e = make_named(spec, t, maximal_domain(spec, t));
            const PropertyReport r = check_strong(e, {o.seed, o.samples, n});
            out.add(name + "-on-" + domain_name(k) + "-n" + std::to_string(n), r.holds, report_detail(r));
        }
        const auto raw = make_named(spec, t, EpistemicDomain::all(), Fallback::max_mixed(), BoundPolicy::Unchecked);
        const PropertyReport r = check_strong(raw, {o.seed, o.samples, 1});
        const bool below = r.counterexample && prob(t, r.counterexample->states[0]) < spec.threshold();
        out.add(name + "-raw-counterexample", !r.holds && reverify(raw, r) && below, report_detail(r));
    }
}

void maximal(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 5);
    const TruthPerspective t = TruthPerspective::random(rng);
    for (NamedKind k : kThresholdKinds) {
        const NamedSpec spec = representative(k, rng);  // λ <= 0.9 keeps threshold - 0.05 >= 0
        const std::string name(to_string(k));
        const auto forced = make_named(spec, t, EpistemicDomain::all(), Fallback::max_mixed(), BoundPolicy::Unchecked);
        const auto below = states_with_prob(t, 1, spec.threshold() - 0.05, 50, o.seed);
        int violations = 0;
        for (const auto& s : below) {
            const auto res = evaluate_instance(Property::Strong, forced, std::span(&s, 1));
            if (res && res->violated) ++violations;
        }
        out.add(name + "-below-threshold", violations == 50, std::to_string(violations) + "/50 violate");
        const auto e = make_named(spec, t, maximal_domain(spec, t));
        int above = 0, tested = 0;
        for (double level : {spec.threshold(), (spec.threshold() + 1.0) / 2.0, 1.0}) {
            for (const auto& s : states_with_prob(t, 1, level, 50, o.seed + 1)) {
                const auto res = evaluate_instance(Property::Strong, e, std::span(&s, 1));
                ++tested;
                if (!res || res->violated) ++above;
            }
        }
        out.add(name + "-at-or-above", above == 0, std::to_string(above) + "/" + std::to_string(tested) + " violate");
    }
}

void closure(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 6);
    const TruthPerspective t = TruthPerspective::random(rng);
    const NamedSpec specs[] = {
        NamedSpec::kbf(std::sqrt(uniform(rng, 0.05, 0.5))),
        NamedSpec::kbpf(std::sqrt(uniform(rng, 0.05, 0.5))),
        NamedSpec::kd(uniform(rng, 0.05, 1.0)),
        NamedSpec::kad(uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0)),
    };
    for (const auto& spec : specs) {
        const auto e = make_named(spec, t, maximal_domain(spec, t));
        const PropertyReport r = check_closure(e, {o.seed, o.samples, 1});
        out.add(std::string(to_string(spec.kind)) + "-closed", r.holds, report_detail(r));
    }
    const NamedSpec wide = NamedSpec::kbf(std::sqrt(0.8));
    const auto e = make_named(wide, t, maximal_domain(wide, t));
    const PropertyReport r = check_closure(e, {o.seed, o.samples, 1});
    out.add("kbf-0.8-counterexample", !r.holds && reverify(e, r), report_detail(r));
}

// Explicit-set constructions showing named operations need not be introspective.
EpistemicOperation positive_counterexample(const NamedSpec& spec, const TruthPerspective& t) {
    const DensityOperator truth = truth_state(t, 1);
    const auto channel = twin_channel(t, spec.channel());
    const DensityOperator k_truth = apply_lifted(channel, truth);
    return make_named(spec, t, EpistemicDomain::explicit_set({k_truth, truth}), Fallback::t_falsity());
}

EpistemicOperation negative_counterexample(const NamedSpec& spec, const TruthPerspective& t) {
    // With the falsity fallback K P0 = P0 whenever P0 is outside the domain, so NOT K P0 = P1.
    return make_named(spec, t, EpistemicDomain::explicit_set({truth_state(t, 1)}), Fallback::t_falsity());
}

void summary(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 7);
    const TruthPerspective t = TruthPerspective::random(rng);
    const CheckOptions co{o.seed, o.samples, 1};
    for (NamedKind k : kAllKinds) {
        NamedSpec spec = representative(k, rng);
        if (k == NamedKind::KAD) spec.lambda = uniform(rng, 0.5, 1.0);
        const auto e = make_named(spec, t, maximal_domain(spec, t), Fallback::t_falsity());
        const PropertyReport r = check_consistent(e, co);
        out.add(std::string(to_string(k)) + "-consistent", r.holds, report_detail(r));
    }
    for (NamedKind k : kAllKinds) {
        NamedSpec spec = representative(k, rng);
        if (k == NamedKind::KBF || k == NamedKind::KBPF) spec.param = std::sqrt(uniform(rng, 0.05, 0.5));
        const auto e = make_named(spec, t, maximal_domain(spec, t), Fallback::t_falsity());
        const PropertyReport r = check_monotonic(e, co);
        out.add(std::string(to_string(k)) + "-monotonic-on-" + domain_name(k), r.holds, report_detail(r));
    }
    {
        const auto e = make_named(NamedSpec::kpf(std::sqrt(uniform(rng, 0.05, 1.0))), t, EpistemicDomain::all(),
                                  Fallback::t_falsity());
        const PropertyReport pos = check_introspective(e, Introspection::Positive, co);
        out.add("kpf-positively-introspective", pos.holds, report_detail(pos));
        const PropertyReport neg = check_introspective(e, Introspection::Negative, co);
        out.add("kpf-negatively-introspective", neg.holds, report_detail(neg));
    }
    for (NamedKind k : kThresholdKinds) {
        const NamedSpec spec = interior(k, rng);
        const std::string name(to_string(k));
        const auto pe = positive_counterexample(spec, t);
        const PropertyReport pos = check_introspective(pe, Introspection::Positive, co);
        out.add(name + "-not-positively-introspective", !pos.holds && reverify(pe, pos), report_detail(pos));
        const auto ne = negative_counterexample(spec, t);
        const PropertyReport neg = check_introspective(ne, Introspection::Negative, co);
        out.add(name + "-not-negatively-introspective", !neg.holds && reverify(ne, neg), report_detail(neg));
    }
}

void closed_form(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 8);
    for (NamedKind k : kAllKinds) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const NamedSpec spec = representative(k, rng);
        const auto e = make_named(spec, t, maximal_domain(spec, t));
        double worst = 0.0;
        int found = 0;
        for (int n = 1; n <= 3; ++n) {
            const StatePool pool(e, {o.seed, 4 * o.samples, n});
            int here = 0;
            for (std::size_t i = 0; i < pool.size() && here < o.samples; ++i) {
                const DensityOperator rho = pool.at(i);
                if (!e.in_domain(rho)) continue;
                ++here;
                worst = std::max(worst, std::abs(closed_form_prob(e, rho) - prob(t, e.apply(rho))));
            }
            found += here;
        }
        out.add(std::string(to_string(k)) + "-matches-channel", worst <= 1e-9 && found >= 3 * o.samples,
                std::to_string(found) + " in-domain states, max error " + g3(worst));
    }
}

void xor_rigidity_suite(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 9);
    double smallest = 1e300;
    for (int i = 0; i < 100; ++i) smallest = std::min(smallest, xor_rigidity(TruthPerspective::random(rng)).gap);
    out.add("non-scalar-differs", smallest > 1e-6, "100 random perspectives, min gap " + g3(smallest));
    double largest = 0.0;
    for (int i = 0; i < 100; ++i) {
        largest = std::max(largest, xor_rigidity(TruthPerspective::phase(uniform(rng, 0.0, 2.0 * std::numbers::pi))).gap);
    }
    out.add("global-phase-equal", largest <= 1e-12, "100 phases, max gap " + g3(largest));
}

void distances(const SuiteOptions&, Rows& out) {
    const Quregister zero = Quregister::basis({0}), one = Quregister::basis({1});
    ComplexVector bell(2);
    bell << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const double d_orth = fubini_study(zero, one);
    const double d_same = fubini_study(one, one);
    const double d_bell = fubini_study(one, Quregister(bell));
    const double d_ep = epistemic_distance(TruthPerspective::identity(), TruthPerspective::hadamard());
    out.add("orthogonal", std::abs(d_orth - 1.0) <= 1e-12, g3(d_orth));
    out.add("identical", std::abs(d_same) <= 1e-12, g3(d_same));
    out.add("truth-vs-bell-truth", std::abs(d_bell - 0.5) <= 1e-12, g3(d_bell));
    out.add("I-vs-hadamard", std::abs(d_ep - 0.5) <= 1e-12, g3(d_ep));
}

void invariance(const SuiteOptions& o, Rows& out) {
    Rng rng = suite_rng(o, 11);
    RandomSentenceOptions so;
    so.max_depth = 5;
    so.max_qubits = 6;
    std::vector<TruthPerspective> frames;
    for (int i = 0; i < 20; ++i) frames.push_back(TruthPerspective::random(rng));
    const TruthPerspective id = TruthPerspective::identity();
    double worst = 0.0;
    int disagreements = 0;
    for (int i = 0; i < 200; ++i) {
        Model m;
        for (const auto& a : so.atoms) m.atoms.emplace(a, random_density(1, rng));
        const SentencePtr s = random_sentence(rng, so);
        const SentencePtr s2 = random_sentence(rng, so);
        const double p_id = prob(id, evaluate(m, id, *s));
        const double p2_id = prob(id, evaluate(m, id, *s2));
        for (const auto& t : frames) {
            const double p_t = prob(t, evaluate(m, t, *s));
            const double p2_t = prob(t, evaluate(m, t, *s2));
            worst = std::max(worst, std::abs(p_t - p_id));
            if ((p_t <= p2_t + kTol) != (p_id <= p2_id + kTol)) ++disagreements;
        }
    }
    out.add("prob-invariant", worst <= 1e-9, "200 sentences x 20 perspectives, max |Δprob| " + g3(worst));
    out.add("preorder-invariant", disagreements == 0, std::to_string(disagreements) + " verdict changes over 4000 pairs");
}

void consequence(const SuiteOptions& o, Rows& out) {
    const SentencePtr p = parse("p");
    const ConsequenceOptions co{o.samples, o.seed};
    {
        const ConsequenceVerdict v = check_consequence(*p, *p, {}, co);
        out.add("reflexive", v.status == ConsequenceVerdict::Status::NoCounterexample, v.summary());
    }
    auto tpl = [](Fallback fb) {
        const TruthPerspective id = TruthPerspective::identity();
        const NamedSpec spec = NamedSpec::kbf(std::sqrt(0.3));
        ConsequenceTemplate t;
        t.structure.times = {"t1"};
        Agent a;
        a.ops["*"].k = make_named(spec, id, maximal_domain(spec, id), fb);
        t.structure.agents.emplace("a", std::move(a));
        return t;
    };
    const SentencePtr kp = parse("K[a@t1] p");
    {
        const ConsequenceVerdict v = check_consequence(*kp, *p, tpl(Fallback::t_falsity()), co);
        out.add("knowledge-implies-truth-t-falsity", v.status == ConsequenceVerdict::Status::NoCounterexample,
                v.summary());
    }
    {
        const ConsequenceVerdict v = check_consequence(*kp, *p, tpl(Fallback::max_mixed()), co);
        out.add("knowledge-implies-truth-max-mixed-fails",
                v.status == ConsequenceVerdict::Status::Counterexample && reverify(*kp, *p, v), v.summary());
    }
}

using SuiteFn = std::function<void(const SuiteOptions&, Rows&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"pauli-bloch", pauli_bloch}, {"ad-bloch", ad_bloch},        {"kpf-trivial", kpf_trivial},
        {"strong", strong},           {"maximal", maximal},          {"closure", closure},
        {"summary", summary},         {"closed-form", closed_form},  {"xor-rigidity", xor_rigidity_suite},
        {"distances", distances},     {"invariance", invariance},    {"consequence", consequence},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, _] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

std::vector<SuiteRow> run_suite(const std::string& name, const SuiteOptions& opts) {
    if (opts.samples < 1) throw DomainError("samples must be at least 1");
    std::vector<SuiteRow> rows;
    bool matched = false;
    for (const auto& [n, fn] : registry()) {
        if (name != "all" && name != n) continue;
        matched = true;
        Rows r{n, {}};
        fn(opts, r);
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
    if (!matched) throw DomainError("unknown suite '" + name + "'");
    return rows;
}

std::string format_rows(const std::vector<SuiteRow>& rows) {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.suite << "/" << r.claim << "  " << r.detail << "\n";
    }
    return os.str();
}

}  // namespace qepi
