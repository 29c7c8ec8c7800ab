#include <doctest.h>

#include <cmath>

#include "qepi/epistemic.hpp"

using namespace qepi;

namespace {

const TruthPerspective I = TruthPerspective::identity();

EpistemicDomain D(const TruthPerspective& t = I) { return EpistemicDomain::prob_at_least(0.5, t); }

const ConditionResult* condition(const StructureReport& r, const std::string& name) {
    for (const auto& e : r.entries) {
        for (const auto& c : e.conditions) {
            if (c.name == name) return &c;
        }
    }
    return nullptr;
}

}  // namespace

TEST_CASE("apply_epistemic inside and outside the domain") {
    const auto e = make_named(NamedSpec::kbf(0.6), I, D());
    const DensityOperator p1 = truth_state(I, 1);
    CHECK(prob(I, e.apply(p1)) == doctest::Approx(1 - 0.36));
    CHECK(prob(I, apply_epistemic(e, truth_state(I, 3))) == doctest::Approx(1 - 0.36));

    const DensityOperator low = states_with_prob(I, 2, 0.3, 1, 5)[0];
    CHECK(prob(I, low) == doctest::Approx(0.3));
    const DensityOperator out = e.apply(low);
    CHECK(out.matrix().isApprox(DensityOperator::maximally_mixed(2).matrix()));
    CHECK(prob(I, out) == doctest::Approx(0.5));

    const auto f = make_named(NamedSpec::kbf(0.6), I, D(), Fallback::t_falsity());
    CHECK(prob(I, f.apply(low)) == doctest::Approx(0.0));
    const auto x = make_named(NamedSpec::kbf(0.6), I, D(), Fallback::explicit_state(p1));
    CHECK(x.apply(DensityOperator::pure(Quregister::basis({0}))).matrix().isApprox(p1.matrix()));
    CHECK_THROWS_AS(x.apply(falsity_state(I, 2)), DimensionError);
}

TEST_CASE("outputs are density operators in and out of the domain") {
    Rng rng(3);
    const TruthPerspective t = TruthPerspective::random(rng);
    const auto e = make_named(NamedSpec::kad(0.4, 0.7), t, maximal_domain(NamedSpec::kad(0.4, 0.7), t));
    for (int i = 0; i < 1000; ++i) {
        const DensityOperator rho = random_density(1 + i % 3, rng);
        const DensityReport r = validate_density(e.apply(rho).matrix());
        REQUIRE_MESSAGE(r.ok(), r.summary());
    }
}

TEST_CASE("KPF preserves probability") {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const auto e = make_named(NamedSpec::kpf(0.7), t, EpistemicDomain::all());
        const DensityOperator rho = random_density(1 + i % 3, rng);
        CHECK(std::abs(prob(t, e.apply(rho)) - prob(t, rho)) < 1e-12);
    }
}

TEST_CASE("make_named enforces the theorem bounds") {
    CHECK_NOTHROW(make_named(NamedSpec::kbf(0.5), I, D()));
    CHECK_THROWS_AS(make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::all()), DomainError);
    CHECK_THROWS_AS(make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::prob_at_least(0.3, I)), DomainError);
    CHECK_NOTHROW(make_named(NamedSpec::kad(0.3, 0.8), I, EpistemicDomain::prob_at_least(0.2, I)));
    CHECK_THROWS_AS(make_named(NamedSpec::kad(0.3, 0.8), I, EpistemicDomain::prob_at_least(0.15, I)), DomainError);
    CHECK_THROWS_AS(make_named(NamedSpec::kbf(0.0), I, D()), DomainError);
    CHECK_THROWS_AS(make_named(NamedSpec::kd(0.0), I, D()), DomainError);
    CHECK_NOTHROW(make_named(NamedSpec::kpf(0.3), I, EpistemicDomain::all()));
    CHECK_NOTHROW(make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::all(), Fallback::max_mixed(),
                             BoundPolicy::Unchecked));
    CHECK_THROWS_AS(EpistemicDomain::prob_at_least(1.2, I), DomainError);
    CHECK(NamedSpec::kbf(0.5).threshold() == 0.5);
    CHECK(NamedSpec::kad(0.3, 0.8).threshold() == doctest::Approx(0.2));
    CHECK(NamedSpec::kpf(0.5).threshold() == 0.0);
}

TEST_CASE("check_strong") {
    const auto e = make_named(NamedSpec::kbf(0.6), I, D());
    const PropertyReport r = check_strong(e, {1, 1000, 1});
    CHECK(r.holds);
    CHECK(r.tested > 100);
    CHECK_FALSE(r.counterexample);

    const auto raw = make_named(NamedSpec::kbf(0.6), I, EpistemicDomain::all(), Fallback::max_mixed(),
                                BoundPolicy::Unchecked);
    const PropertyReport bad = check_strong(raw, {1, 1000, 1});
    REQUIRE_FALSE(bad.holds);
    REQUIRE(bad.counterexample);
    CHECK(prob(I, bad.counterexample->states[0]) < 0.5);
    CHECK(bad.counterexample->lhs > bad.counterexample->rhs);
    CHECK(reverify(raw, bad));

    Rng rng(5);
    const TruthPerspective t = TruthPerspective::random(rng);
    const NamedSpec kad = NamedSpec::kad(0.45, 0.3);
    for (int n = 1; n <= 3; ++n) CHECK(check_strong(make_named(kad, t, maximal_domain(kad, t)), {9, 1000, n}).holds);
}

TEST_CASE("reports are deterministic in the seed") {
    const auto raw = make_named(NamedSpec::kd(0.5), I, EpistemicDomain::all(), Fallback::max_mixed(),
                                BoundPolicy::Unchecked);
    const PropertyReport a = check_strong(raw, {11, 500, 2}), b = check_strong(raw, {11, 500, 2});
    CHECK(a.summary() == b.summary());
    REQUIRE(a.counterexample);
    CHECK(a.counterexample->index == b.counterexample->index);
}

TEST_CASE("check_nontrivial") {
    const auto kbf = make_named(NamedSpec::kbf(0.5), I, D());
    const PropertyReport r = check_nontrivial(kbf, {1, 1000, 1});
    CHECK(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->lhs < r.witness->rhs);
    CHECK(reverify(kbf, r));
    CHECK_FALSE(check_nontrivial(make_named(NamedSpec::kpf(0.8), I, EpistemicDomain::all()), {1, 1000, 1}).holds);
    CHECK(check_nontrivial(make_named(NamedSpec::kd(1.0), I, D()), {1, 1000, 1}).holds);
}

TEST_CASE("consistency") {
    Rng rng(6);
    const TruthPerspective t = TruthPerspective::random(rng);
    for (const NamedSpec& s : {NamedSpec::kbf(0.6), NamedSpec::kpf(0.5), NamedSpec::kbpf(0.4), NamedSpec::kd(0.7),
                               NamedSpec::kad(0.6, 0.5), NamedSpec::kad(0.9, 0.95)}) {
        const auto e = make_named(s, t, maximal_domain(s, t), Fallback::t_falsity());
        const PropertyReport r = check_consistent(e, {2, 1000, 1});
        CHECK_MESSAGE(r.holds, s.label() << " " << r.summary());
    }
    // λ < ½: the theorem is silent. Only the report's internal consistency is asserted.
    const NamedSpec low = NamedSpec::kad(0.9, 0.1);
    const auto e = make_named(low, t, maximal_domain(low, t), Fallback::t_falsity());
    const PropertyReport r = check_consistent(e, {2, 1000, 1});
    CHECK(r.seed == 2);
    CHECK(r.fallback == FallbackKind::TFalsity);
    if (!r.holds) CHECK(reverify(e, r));
    MESSAGE("KAD(0.9, 0.1) consistency: " << r.summary());
}

TEST_CASE("monotonicity") {
    Rng rng(7);
    const TruthPerspective t = TruthPerspective::random(rng);
    for (const NamedSpec& s : {NamedSpec::kbf(std::sqrt(0.4)), NamedSpec::kpf(0.6), NamedSpec::kd(0.5)}) {
        const auto e = make_named(s, t, maximal_domain(s, t), Fallback::t_falsity());
        CHECK_MESSAGE(check_monotonic(e, {3, 1000, 1}).holds, s.label());
    }
    // ρ ∈ EpD, σ ∉ EpD, with Prob(ρ) <= Prob(σ): Kσ falls back to falsity.
    const DensityOperator rho = states_with_prob(I, 1, 0.8, 1, 1)[0];
    const DensityOperator sigma = states_with_prob(I, 1, 0.9, 1, 2)[0];
    const auto e = make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::explicit_set({rho}), Fallback::t_falsity());
    const std::vector<DensityOperator> pair{rho, sigma};
    const PropertyReport r = check_on(Property::Monotonic, e, pair);
    REQUIRE_FALSE(r.holds);
    CHECK(r.counterexample->lhs == doctest::Approx(0.65));
    CHECK(r.counterexample->rhs == doctest::Approx(0.0));
    CHECK(reverify(e, r));
    // The sampled checker finds it too: ρ is a pool special.
    CHECK_FALSE(check_monotonic(e, {3, 200, 1}).holds);
}

TEST_CASE("introspection") {
    const auto kpf = make_named(NamedSpec::kpf(0.6), I, EpistemicDomain::all(), Fallback::t_falsity());
    CHECK(check_introspective(kpf, Introspection::Positive, {1, 1000, 1}).holds);
    CHECK(check_introspective(kpf, Introspection::Negative, {1, 1000, 1}).holds);

    const NamedSpec s = NamedSpec::kbf(0.5);
    const DensityOperator p1 = truth_state(I, 1), p0 = falsity_state(I, 1);
    const DensityOperator k_p1 = apply_channel(s.channel(), p1);
    const auto pos = make_named(s, I, EpistemicDomain::explicit_set({k_p1, p1}), Fallback::t_falsity());
    const PropertyReport rp = check_introspective(pos, Introspection::Positive, {1, 1000, 1});
    REQUIRE_FALSE(rp.holds);
    CHECK(reverify(pos, rp));

    // Domain {NOT K P0}, with K P0 computed by the channel.
    const DensityOperator not_k_p0 = apply_unitary(build_gate(GateKind::Not, {1}), apply_channel(s.channel(), p0));
    const auto neg = make_named(s, I, EpistemicDomain::explicit_set({not_k_p0}), Fallback::t_falsity());
    const PropertyReport rn = check_introspective(neg, Introspection::Negative, {1, 1000, 1});
    REQUIRE_FALSE(rn.holds);
    CHECK(reverify(neg, rn));
    // The domain member itself comes first in the pool: Prob(NOT K ρ) = 1 - 0.625,
    // and NOT K ρ falls outside the domain, so K NOT K ρ = P0.
    CHECK(rn.counterexample->index == 0);
    CHECK(rn.counterexample->lhs == doctest::Approx(0.375));
    CHECK(rn.counterexample->rhs == doctest::Approx(0.0));
    const PropertyReport at_p0 = check_on(Property::NegativeIntrospection, neg, std::span(&p0, 1));
    REQUIRE_FALSE(at_p0.holds);
    CHECK(at_p0.counterexample->lhs == doctest::Approx(1.0));
    CHECK(at_p0.counterexample->rhs == doctest::Approx(0.0));
}

TEST_CASE("closure") {
    CHECK(check_closure(make_named(NamedSpec::kbf(std::sqrt(0.3)), I, D()), {1, 1000, 1}).holds);
    CHECK(check_closure(make_named(NamedSpec::kd(0.8), I, D()), {1, 1000, 1}).holds);
    const NamedSpec kad = NamedSpec::kad(0.7, 0.4);
    CHECK(check_closure(make_named(kad, I, maximal_domain(kad, I)), {1, 1000, 1}).holds);
    const auto wide = make_named(NamedSpec::kbf(std::sqrt(0.8)), I, D());
    const PropertyReport r = check_closure(wide, {1, 1000, 1});
    REQUIRE_FALSE(r.holds);
    CHECK(reverify(wide, r));
    CHECK_THROWS_AS(check_closure(make_named(NamedSpec::kpf(0.5), I, EpistemicDomain::all()), {1, 10, 1}),
                    DomainError);
}

TEST_CASE("closed forms") {
    const DensityOperator p1 = truth_state(I, 1);
    for (double p : {0.1, 0.5, 0.9}) CHECK(closed_form_prob(NamedSpec::kd(p), p1, I) == doctest::Approx((2 - p) / 2));
    CHECK(closed_form_prob(NamedSpec::kad(1.0, 1.0), p1, I) == doctest::Approx(0.0));
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        const DensityOperator rho = random_density(2, rng);
        CHECK(closed_form_prob(NamedSpec::kpf(0.4), rho, I) == doctest::Approx(prob(I, rho)));
    }
    const auto e = make_named(NamedSpec::kbf(0.5), I, D());
    CHECK_THROWS_AS(closed_form_prob(e, falsity_state(I, 1)), DomainError);
    for (int i = 0; i < 50; ++i) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const NamedSpec s = NamedSpec::kad(0.3, 0.6);
        const auto k = make_named(s, t, maximal_domain(s, t));
        const DensityOperator rho = states_with_prob(t, 2, 0.5 + 0.01 * i, 1, std::uint64_t(i))[0];
        CHECK(std::abs(closed_form_prob(k, rho) - prob(t, k.apply(rho))) < 1e-9);
    }
}

TEST_CASE("states_with_prob") {
    Rng rng(9);
    const TruthPerspective t = TruthPerspective::random(rng);
    for (const auto& s : states_with_prob(t, 3, 0.37, 20, 4)) {
        CHECK(s.qubits() == 3);
        CHECK(prob(t, s) == doctest::Approx(0.37).epsilon(1e-12));
        CHECK(validate_density(s.matrix()).ok());
    }
}

TEST_CASE("explicit domain matching tolerance") {
    const DensityOperator p1 = truth_state(I, 1);
    const EpistemicDomain d = EpistemicDomain::explicit_set({p1});
    CHECK(d.contains(p1));
    CHECK(d.contains(DensityOperator::adopt(p1.matrix() * (1 - 1e-8) + falsity_state(I, 1).matrix() * 1e-8)));
    CHECK_FALSE(d.contains(DensityOperator::maximally_mixed(1)));
    CHECK_FALSE(d.contains(truth_state(I, 2)));
}

TEST_CASE("roles") {
    CHECK(parse_role("Inf") == Role::Inf);
    CHECK(parse_role("k") == Role::K);
    CHECK_FALSE(parse_role("X"));
}

TEST_CASE("validate_structure") {
    auto structure = [](EpistemicOperation k, EpistemicOperation b) {
        EpistemicStructure s;
        s.times = {"t1"};
        Agent a;
        a.ops["*"].k = std::move(k);
        a.ops["*"].b = std::move(b);
        a.ops["*"].u = make_named(NamedSpec::kpf(0.3), I, EpistemicDomain::all());
        a.ops["*"].inf = make_named(NamedSpec::kpf(0.1), I, EpistemicDomain::all());
        s.agents.emplace("alice", std::move(a));
        return s;
    };
    const CheckOptions co{1, 1000, 1};

    const auto good = validate_structure(
        structure(make_named(NamedSpec::kbf(0.5), I, D()), make_named(NamedSpec::kbf(0.4), I, D())), co);
    CHECK_MESSAGE(good.valid(), good.summary());
    CHECK(good.complete());
    REQUIRE(good.entries.size() == 1);
    CHECK(good.entries[0].conditions.size() == 7);

    const auto incl = validate_structure(
        structure(make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::prob_at_least(0.6, I)),
                  make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::prob_at_least(0.6, I))),
        co);
    CHECK(incl.valid());
    // K on threshold 0.6 sits inside B on 0.4-threshold AD; the reverse is violated.
    const auto bad_incl = validate_structure(
        structure(make_named(NamedSpec::kad(0.5, 0.6), I, EpistemicDomain::prob_at_least(0.4, I)),
                  make_named(NamedSpec::kbf(0.5), I, EpistemicDomain::prob_at_least(0.6, I))),
        co);
    CHECK_FALSE(bad_incl.valid());
    REQUIRE(condition(bad_incl, "EpD(K) ⊆ EpD(B)"));
    CHECK(condition(bad_incl, "EpD(K) ⊆ EpD(B)")->status == ConditionResult::Status::Violated);

    const auto kpf_k = validate_structure(
        structure(make_named(NamedSpec::kpf(0.5), I, D()), make_named(NamedSpec::kbf(0.5), I, D())), co);
    REQUIRE(condition(kpf_k, "Kρ ⪯ Bρ on EpD(K)"));
    CHECK(condition(kpf_k, "Kρ ⪯ Bρ on EpD(K)")->status == ConditionResult::Status::Violated);
    CHECK(condition(kpf_k, "EpD(K) ⊆ EpD(B)")->status == ConditionResult::Status::Holds);

    EpistemicStructure partial;
    partial.times = {"t1"};
    Agent a;
    a.ops["1"].k = make_named(NamedSpec::kbf(0.5), I, D());
    partial.agents.emplace("bob", std::move(a));
    const auto inc = validate_structure(partial, co);
    CHECK(inc.valid());
    CHECK_FALSE(inc.complete());
    CHECK(condition(inc, "K strong")->status == ConditionResult::Status::Holds);
    CHECK(condition(inc, "EpD(K) ⊆ EpD(B)")->status == ConditionResult::Status::Incomplete);
}

TEST_CASE("structure resolution") {
    EpistemicStructure s;
    s.times = {"t1", "t2"};
    Agent a;
    a.ops["*"].k = make_named(NamedSpec::kbf(0.5), I, D());
    a.at["t2"]["2"].k = make_named(NamedSpec::kd(0.5), I, D());
    s.agents.emplace("alice", std::move(a));
    CHECK(s.resolve("alice", "t1", Role::K, 2)->label() == NamedSpec::kbf(0.5).label());
    CHECK(s.resolve("alice", "t2", Role::K, 2)->label() == NamedSpec::kd(0.5).label());
    CHECK(s.resolve("alice", "t2", Role::K, 1)->label() == NamedSpec::kbf(0.5).label());
    CHECK(s.resolve("alice", "t1", Role::B, 1) == nullptr);
    CHECK_THROWS_AS(s.resolve("carol", "t1", Role::K, 1), DomainError);
    CHECK_THROWS_AS(s.resolve("alice", "t9", Role::K, 1), DomainError);
}
