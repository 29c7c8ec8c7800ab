#include <doctest.h>

#include <cmath>

#include "qepi/channels.hpp"

using namespace qepi;

namespace {

ComplexMatrix p0() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1;
    return m;
}

ComplexMatrix p1() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 1) = 1;
    return m;
}

DensityOperator dm(const ComplexMatrix& m) { return DensityOperator::from_matrix(m); }

}  // namespace

TEST_CASE("Pauli channel with zero parameters is the identity") {
    Rng rng(1);
    const KrausChannel c = pauli_channel({});
    for (int i = 0; i < 10; ++i) {
        const DensityOperator rho = random_density(1, rng);
        CHECK(apply_channel(c, rho).matrix().isApprox(rho.matrix(), 1e-14));
    }
}

TEST_CASE("bit flip exchanges the canonical bits") {
    const double a = 0.6;
    const KrausChannel c = bit_flip(a);
    const ComplexMatrix expect0 = (1 - a * a) * p0() + a * a * p1();
    const ComplexMatrix expect1 = (1 - a * a) * p1() + a * a * p0();
    CHECK(apply_channel(c, dm(p0())).matrix().isApprox(expect0, 1e-14));
    CHECK(apply_channel(c, dm(p1())).matrix().isApprox(expect1, 1e-14));
    // Complex α: only |α|² matters.
    const KrausChannel cc = bit_flip(std::polar(a, 0.7));
    CHECK(apply_channel(cc, dm(p1())).matrix().isApprox(expect1, 1e-14));
}

TEST_CASE("Pauli Bloch maps") {
    const TruthPerspective id = TruthPerspective::identity();
    const double a = 0.3, b = 0.4, g = 0.5;
    const AffineBlochMap m = bloch_map(pauli_channel({a, b, g}), id);
    CHECK(m.linear(0, 0) == doctest::Approx(1 - 2 * b * b - 2 * g * g));
    CHECK(m.linear(1, 1) == doctest::Approx(1 - 2 * a * a - 2 * g * g));
    CHECK(m.linear(2, 2) == doctest::Approx(1 - 2 * a * a - 2 * b * b));
    CHECK(m.linear(0, 1) == doctest::Approx(0.0));
    CHECK(m.offset.norm() < 1e-12);

    const AffineBlochMap ident = bloch_map(identity_channel(), id);
    CHECK(ident.linear.isApprox(Eigen::Matrix3d::Identity()));
    CHECK(ident.offset.norm() < 1e-14);

    CHECK_THROWS_AS(pauli_channel({0.8, 0.8, 0.0}), DomainError);
}

TEST_CASE("depolarizing") {
    const DensityOperator out = apply_channel(depolarizing(1.0), random_density(1, 3));
    CHECK(out.matrix().isApprox(0.5 * identity(1), 1e-14));
    const AffineBlochMap m = bloch_map(depolarizing(0.3), TruthPerspective::identity());
    CHECK(m.linear.isApprox(0.7 * Eigen::Matrix3d::Identity(), 1e-12));
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const KrausChannel tw = twin_channel(t, depolarizing(0.45));
        const DensityOperator rho = random_density(1, rng);
        CHECK(apply_channel(tw, rho).matrix().isApprox(apply_channel(depolarizing(0.45), rho).matrix(), 1e-12));
    }
    CHECK_THROWS_AS(depolarizing(1.5), DomainError);
}

TEST_CASE("twin bit flip under Hadamard acts as a phase flip") {
    const KrausChannel tw = twin_channel(TruthPerspective::hadamard(), bit_flip(0.4));
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const DensityOperator rho = random_density(1, rng);
        CHECK(apply_channel(tw, rho).matrix().isApprox(apply_channel(phase_flip(0.4), rho).matrix(), 1e-12));
    }
}

TEST_CASE("twin channel Bloch map read in its own frame equals the canonical map") {
    Rng rng(6);
    const AffineBlochMap canon = bloch_map(amplitude_damping({0.35, 0.7}), TruthPerspective::identity());
    for (int i = 0; i < 5; ++i) {
        const TruthPerspective t = TruthPerspective::random(rng);
        const AffineBlochMap m = bloch_map(twin_channel(t, amplitude_damping({0.35, 0.7})), t);
        CHECK(m.linear.isApprox(canon.linear, 1e-10));
        CHECK((m.offset - canon.offset).norm() < 1e-10);
    }
}

TEST_CASE("amplitude damping") {
    Rng rng(7);
    const DensityOperator rho = random_density(1, rng);
    CHECK(apply_channel(amplitude_damping({0.0, 0.4}), rho).matrix().isApprox(rho.matrix(), 1e-14));
    const BlochVector z = bloch_coords(apply_channel(amplitude_damping({1.0, 1.0}), rho), identity(1));
    CHECK(z.z == doctest::Approx(1.0));
    CHECK(std::abs(z.x) + std::abs(z.y) < 1e-14);

    for (int i = 0; i < 100; ++i) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double p = u(rng), l = u(rng);
        CHECK(validate_kraus(amplitude_damping({p, l})).ok());
        const AffineBlochMap m = bloch_map(amplitude_damping({p, l}), TruthPerspective::identity());
        CHECK(m.linear(0, 0) == doctest::Approx(std::sqrt(1 - p)));
        CHECK(m.linear(1, 1) == doctest::Approx(std::sqrt(1 - p)));
        CHECK(m.linear(2, 2) == doctest::Approx(1 - p));
        CHECK(m.offset.z() == doctest::Approx(p * (2 * l - 1)));
        CHECK(std::abs(m.offset.x()) + std::abs(m.offset.y()) < 1e-12);
    }
    CHECK_THROWS_AS(amplitude_damping({1.2, 0.5}), DomainError);
    CHECK_THROWS_AS(amplitude_damping({0.5, -0.1}), DomainError);
}

TEST_CASE("lifting") {
    Rng rng(8);
    const KrausChannel c = amplitude_damping({0.4, 0.3});
    const DensityOperator r1 = random_density(1, rng), r2 = random_density(1, rng);
    const DensityOperator lifted = apply_channel(lift(c, 2), tensor(r1, r2));
    CHECK(lifted.matrix().isApprox(tensor(r1, apply_channel(c, r2)).matrix(), 1e-12));
    CHECK(lift(c, 3).qubits() == 3);
    CHECK(validate_kraus(lift(c, 3)).ok());

    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 2;
        const DensityOperator rho = random_density(n, rng);
        const DensityOperator out = apply_channel(lift(c, n), rho);
        CHECK(prob(TruthPerspective::identity(), out) ==
              doctest::Approx(prob(TruthPerspective::identity(), apply_channel(c, reduced_last(rho)))).epsilon(1e-12));
        if (i < 20) CHECK(apply_lifted(c, rho).matrix().isApprox(out.matrix(), 1e-12));
    }
    CHECK_THROWS_AS(lift(lift(c, 2), 3), DimensionError);
    CHECK_THROWS_AS(apply_channel(c, random_density(2, 1)), DimensionError);
}

TEST_CASE("validate_kraus") {
    CHECK(validate_kraus(std::vector<ComplexMatrix>{sigma_x()}).ok());
    const KrausDefect half = validate_kraus(std::vector<ComplexMatrix>{0.5 * identity(1)});
    CHECK(half.defect == doctest::Approx(0.75 * std::sqrt(2.0)));
    CHECK_FALSE(half.ok());
    CHECK_THROWS_AS(KrausChannel({0.5 * identity(1)}, "half"), DomainError);
    // Completeness within the user tolerance is accepted when asked for.
    CHECK_NOTHROW(KrausChannel({(1.0 + 1e-8) * identity(1)}, "nearly", kUserKrausTol));
}

TEST_CASE("parse_channel") {
    CHECK(parse_channel("identity").ops().size() == 1);
    CHECK(parse_channel("ad:0.5,1").qubits() == 1);
    const KrausChannel bf = parse_channel("bitflip:0.3");
    const DensityOperator rho = random_density(1, 11);
    CHECK(apply_channel(bf, rho).matrix().isApprox(apply_channel(bit_flip(0.3), rho).matrix()));
    CHECK_THROWS_AS(parse_channel("ad:0.5"), DomainError);
    CHECK_THROWS_AS(parse_channel("bitflip:x"), DomainError);
    CHECK_THROWS_AS(parse_channel("warp:1"), DomainError);
}
