#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qepi/gates.hpp"

using namespace qepi;

namespace {

ComplexVector apply(const Gate& g, const std::vector<int>& bits) {
    return g.matrix() * Quregister::basis(bits).amplitudes();
}

bool is_basis(const ComplexVector& v, const std::vector<int>& bits) {
    return (v - Quregister::basis(bits).amplitudes()).norm() < 1e-15;
}

}  // namespace

TEST_CASE("classical truth tables") {
    CHECK(is_basis(apply(build_gate(GateKind::Not, {1}), {0}), {1}));
    const Gate x = build_gate(GateKind::Xor, {1, 1});
    CHECK(is_basis(apply(x, {1, 0}), {1, 1}));
    CHECK(is_basis(apply(x, {0, 0}), {0, 0}));
    CHECK(is_basis(apply(x, {1, 1}), {1, 0}));
    CHECK(is_basis(apply(x, {0, 1}), {0, 1}));
    const Gate t = build_gate(GateKind::Toffoli, {1, 1, 1});
    CHECK(is_basis(apply(t, {1, 1, 0}), {1, 1, 1}));
    CHECK(is_basis(apply(t, {1, 0, 0}), {1, 0, 0}));
    CHECK(is_basis(apply(t, {0, 1, 1}), {0, 1, 1}));
}

TEST_CASE("multi-qubit arities address the ends of the blocks") {
    // XOR^(2,1): control is qubit 2, target qubit 3.
    const Gate x = build_gate(GateKind::Xor, {2, 1});
    CHECK(is_basis(apply(x, {0, 1, 0}), {0, 1, 1}));
    CHECK(is_basis(apply(x, {1, 0, 0}), {1, 0, 0}));
    // TOFFOLI^(1,2,1): controls qubits 1 and 3, target qubit 4.
    const Gate t = build_gate(GateKind::Toffoli, {1, 2, 1});
    CHECK(is_basis(apply(t, {1, 0, 1, 0}), {1, 0, 1, 1}));
    CHECK(is_basis(apply(t, {1, 1, 0, 0}), {1, 1, 0, 0}));
    // NOT^(3) flips only the last qubit.
    CHECK(is_basis(apply(build_gate(GateKind::Not, {3}), {1, 1, 0}), {1, 1, 1}));
}

TEST_CASE("sqrt-not squares to not, Hadamard squares to identity") {
    const Gate r = build_gate(GateKind::SqrtNot, {2});
    CHECK((r.matrix() * r.matrix()).isApprox(build_gate(GateKind::Not, {2}).matrix()));
    const Gate h = build_gate(GateKind::Hadamard, {2});
    CHECK((h.matrix() * h.matrix()).isApprox(identity(2)));
}

TEST_CASE("build_gate rejects bad signatures") {
    CHECK_THROWS_AS(build_gate(GateKind::Not, {0}), DomainError);
    CHECK_THROWS_AS(build_gate(GateKind::Xor, {1}), DomainError);
    CHECK_THROWS_AS(build_gate(GateKind::Toffoli, {4, 4, 1}), DimensionError);
    CHECK_THROWS_AS(parse_gate("cnot:1,1"), DomainError);
    CHECK_THROWS_AS(parse_gate("xor:1,x"), DomainError);
    CHECK(parse_gate("xor:2,1").qubits() == 3);
    CHECK(parse_gate("toffoli").qubits() == 3);
    CHECK(parse_gate("xor:2,1").spec() == "xor:2,1");
}

TEST_CASE("twin gates") {
    const Gate n = build_gate(GateKind::Not, {1});
    CHECK(twin_gate(TruthPerspective::identity(), n).matrix().isApprox(n.matrix()));
    CHECK(twin_gate(TruthPerspective::hadamard(), n).matrix().isApprox(sigma_z(), 1e-15));
    Rng rng(8);
    const Gate t = build_gate(GateKind::Toffoli, {1, 1, 1});
    for (int i = 0; i < 10; ++i) {
        const ComplexMatrix u = twin_gate(TruthPerspective::random(rng), t).matrix();
        CHECK((u.adjoint() * u - identity(3)).norm() < kTol);
    }
}

TEST_CASE("twin NOT maps T-truth to T-falsity") {
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const DensityOperator out = apply_unitary(twin_gate(t, build_gate(GateKind::Not, {2})), truth_state(t, 2));
        CHECK((out.matrix() - falsity_state(t, 2).matrix()).norm() < 1e-12);
    }
}

TEST_CASE("apply_unitary") {
    const TruthPerspective id = TruthPerspective::identity();
    const DensityOperator one = DensityOperator::pure(Quregister::basis({1}));
    const DensityOperator flipped = apply_unitary(build_gate(GateKind::Not, {1}), one);
    CHECK(prob(id, one) == doctest::Approx(1.0));
    CHECK(prob(id, flipped) == doctest::Approx(0.0));
    CHECK(flipped.matrix().isApprox(DensityOperator::pure(Quregister::basis({0})).matrix()));

    const DensityOperator bell = apply_unitary(build_gate(GateKind::Hadamard, {1}), one);
    ComplexMatrix expect(2, 2);
    expect << 0.5, -0.5, -0.5, 0.5;
    CHECK(bell.matrix().isApprox(expect, 1e-15));
    CHECK(prob(id, bell) == doctest::Approx(0.5));

    for (const char* spec : {"not:3", "xor:1,2", "toffoli:1,1,1", "sqrtnot:3", "hadamard:3"}) {
        const DensityOperator mm = apply_unitary(parse_gate(spec), DensityOperator::maximally_mixed(3));
        CHECK(mm.matrix().isApprox(DensityOperator::maximally_mixed(3).matrix(), 1e-14));
    }
    CHECK_THROWS_AS(apply_unitary(build_gate(GateKind::Not, {2}), one), DimensionError);
}

TEST_CASE("xor rigidity examples") {
    CHECK(xor_rigidity(TruthPerspective::identity()).equal);
    const XorRigidity p = xor_rigidity(TruthPerspective::phase(std::numbers::pi / 7));
    CHECK(p.equal);
    CHECK(p.gap <= 1e-12);
    const XorRigidity h = xor_rigidity(TruthPerspective::hadamard());
    CHECK_FALSE(h.equal);
    CHECK(h.gap > 1e-6);
    // The Hadamard twin of CNOT is CNOT with control and target exchanged:
    // six unit entries differ, so the gap is sqrt(6).
    CHECK(h.gap == doctest::Approx(std::sqrt(6.0)));
    // Diagonal, non-scalar perspectives are also caught.
    ComplexMatrix d(2, 2);
    d << 1, 0, 0, Complex(0, 1);
    CHECK_FALSE(xor_rigidity(TruthPerspective(d)).equal);
}
