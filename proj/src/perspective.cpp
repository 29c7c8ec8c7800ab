#include "qepi/perspective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qepi {

TruthPerspective::TruthPerspective(ComplexMatrix u, std::string name)
    : u_(std::move(u)), name_(std::move(name)) {
    if (u_.rows() != 2 || u_.cols() != 2) {
        throw DomainError("truth-perspective " + name_ + " must be a 2x2 matrix");
    }
    const double defect = unitarity_defect(u_);
    if (defect > kTol) {
        std::ostringstream os;
        os << "truth-perspective " << (name_.empty() ? "<unnamed>" : name_)
           << " is not unitary (defect " << defect << ")";
        throw DomainError(os.str());
    }
    truth_ = u_.col(1);
    falsity_ = u_.col(0);
}

double TruthPerspective::unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

TruthPerspective TruthPerspective::identity() {
    return TruthPerspective(ComplexMatrix::Identity(2, 2), "I");
}

TruthPerspective TruthPerspective::hadamard() {
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return TruthPerspective(std::move(h), "hadamard");
}

TruthPerspective TruthPerspective::pauli_x() { return TruthPerspective(sigma_x(), "x"); }

TruthPerspective TruthPerspective::phase(double theta) {
    return TruthPerspective(std::polar(1.0, theta) * ComplexMatrix::Identity(2, 2));
}

TruthPerspective TruthPerspective::random(Rng& rng) {
    return TruthPerspective(random_unitary(2, rng));
}

ComplexMatrix extend(const TruthPerspective& t, int n) {
    require_qubits(n, "extend");
    ComplexMatrix out = t.matrix();
    for (int k = 1; k < n; ++k) out = kron(out, t.matrix());
    return out;
}

ComplexMatrix truth_projection(const TruthPerspective& t, int n, TruthValue value) {
    require_qubits(n, "truth_projection");
    const ComplexVector& v = value == TruthValue::Truth ? t.truth() : t.falsity();
    const ComplexMatrix q = v * v.adjoint();
    if (n == 1) return q;
    return kron(identity(n - 1), q);
}

namespace {

DensityOperator normalized_projection(const TruthPerspective& t, int n, TruthValue v) {
    const double scale = 1.0 / static_cast<double>(Eigen::Index{1} << (n - 1));
    return DensityOperator::adopt(scale * truth_projection(t, n, v));
}

}  // namespace

DensityOperator falsity_state(const TruthPerspective& t, int n) {
    return normalized_projection(t, n, TruthValue::Falsity);
}

DensityOperator truth_state(const TruthPerspective& t, int n) {
    return normalized_projection(t, n, TruthValue::Truth);
}

double prob(const TruthPerspective& t, const DensityOperator& rho) {
    const ComplexMatrix p = truth_projection(t, rho.qubits(), TruthValue::Truth);
    // Tr(P ρ) = Σ_ij P_ij ρ_ji
    const double v = p.cwiseProduct(rho.matrix().transpose()).sum().real();
    return std::clamp(v, 0.0, 1.0);
}

bool preceq(const TruthPerspective& t, const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.qubits() != sigma.qubits()) {
        throw DimensionError("preceq between states of " + std::to_string(rho.qubits()) + " and " +
                             std::to_string(sigma.qubits()) + " qubits");
    }
    return prob(t, rho) <= prob(t, sigma) + kTol;
}

double fubini_study(const Quregister& psi, const Quregister& phi) {
    if (psi.qubits() != 1 || phi.qubits() != 1) {
        throw DimensionError("fubini_study is defined on single qubits");
    }
    const double overlap = std::min(1.0, std::abs(psi.amplitudes().dot(phi.amplitudes())));
    return 2.0 / std::numbers::pi * std::acos(overlap);
}

double epistemic_distance(const TruthPerspective& t1, const TruthPerspective& t2) {
    return fubini_study(Quregister(t1.truth()), Quregister(t2.truth()));
}

bool prob_equivalent(const TruthPerspective& t1, const TruthPerspective& t2) {
    const ComplexMatrix p1 = t1.truth() * t1.truth().adjoint();
    const ComplexMatrix p2 = t2.truth() * t2.truth().adjoint();
    return frobenius_distance(p1, p2) <= kTol;
}

BlochVector bloch_coords(const DensityOperator& rho, const TruthPerspective& t) {
    return bloch_coords(rho, t.matrix());
}

DensityOperator from_bloch(const BlochVector& v, const TruthPerspective& t) {
    return from_bloch(v, t.matrix());
}

}  // namespace qepi
