#include "qepi/qstate.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qepi {

namespace {

std::atomic<int> g_max_qubits{8};

constexpr Complex kI{0.0, 1.0};

ComplexMatrix make2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

int max_qubits() noexcept { return g_max_qubits.load(std::memory_order_relaxed); }

void set_max_qubits(int n) {
    if (n < 1 || n > 14) throw DomainError("qubit cap must be in [1, 14]");
    g_max_qubits.store(n, std::memory_order_relaxed);
}

void require_qubits(int n, const char* what) {
    if (n < 1 || n > max_qubits()) {
        std::ostringstream os;
        os << what << ": qubit count " << n << " outside [1, " << max_qubits() << "]";
        throw DimensionError(os.str());
    }
}

int qubits_for_dim(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return n;
}

ComplexMatrix identity(int qubits) {
    if (qubits != 0) require_qubits(qubits, "identity");
    const Eigen::Index d = Eigen::Index{1} << qubits;
    return ComplexMatrix::Identity(d, d);
}

namespace {

void require_dim(Eigen::Index d, const char* what) {
    if (d > (Eigen::Index{1} << max_qubits())) {
        throw DimensionError(std::string(what) + ": dimension " + std::to_string(d) + " exceeds the qubit cap " +
                             std::to_string(max_qubits()));
    }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_dim(a.rows() * b.rows(), "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    require_dim(a.size() * b.size(), "kron");
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Complex trace(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("trace of a non-square matrix");
    return m.trace();
}

const ComplexMatrix& sigma_x() {
    static const ComplexMatrix m = make2(0.0, 1.0, 1.0, 0.0);
    return m;
}
const ComplexMatrix& sigma_y() {
    static const ComplexMatrix m = make2(0.0, -kI, kI, 0.0);
    return m;
}
const ComplexMatrix& sigma_z() {
    static const ComplexMatrix m = make2(1.0, 0.0, 0.0, -1.0);
    return m;
}

// ---------------------------------------------------------------------------
// Quregister

Quregister::Quregister(ComplexVector amplitudes) : qubits_(0), amps_(std::move(amplitudes)) {
    qubits_ = qubits_for_dim(amps_.size());
    require_qubits(qubits_, "quregister");
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kTol) {
        std::ostringstream os;
        os << "quregister is not a unit vector (norm " << norm << ")";
        throw DomainError(os.str());
    }
}

Quregister Quregister::basis(const std::vector<int>& bits) {
    require_qubits(static_cast<int>(bits.size()), "basis register");
    Eigen::Index index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw DomainError("basis register bits must be 0 or 1");
        index = (index << 1) | b;
    }
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
    v(index) = 1.0;
    return Quregister(std::move(v));
}

Quregister tensor(const Quregister& a, const Quregister& b) {
    require_qubits(a.qubits() + b.qubits(), "tensor");
    return Quregister(kron(a.amplitudes(), b.amplitudes()));
}

// ---------------------------------------------------------------------------
// Validation

std::string DensityReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].message;
    }
    return os.str();
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityReport validate_density(const ComplexMatrix& m, double tol) {
    DensityReport r;
    using K = DensityViolation::Kind;
    if (m.rows() != m.cols() || m.rows() < 2 || (m.rows() & (m.rows() - 1)) != 0) {
        std::ostringstream os;
        os << "shape " << m.rows() << "x" << m.cols() << " is not square with power-of-two dim";
        r.violations.push_back({K::Shape, 0.0, os.str()});
        return r;
    }
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        std::ostringstream os;
        os << "hermiticity defect " << herm;
        r.violations.push_back({K::Hermiticity, herm, os.str()});
    }
    const Complex tr = m.trace();
    const double tr_defect = std::abs(tr - 1.0);
    if (tr_defect > tol) {
        std::ostringstream os;
        os << "trace " << tr.real();
        if (tr.imag() != 0.0) os << (tr.imag() > 0 ? "+" : "") << tr.imag() << "i";
        os << " (defect " << tr_defect << ")";
        r.violations.push_back({K::Trace, tr_defect, os.str()});
    }
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    const double lo = min_eigenvalue(h);
    if (lo < -tol) {
        std::ostringstream os;
        os << "negative eigenvalue " << lo;
        r.violations.push_back({K::Positivity, lo, os.str()});
    }
    return r;
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::from_matrix(ComplexMatrix m) {
    const DensityReport r = validate_density(m);
    if (!r.ok()) throw DomainError("not a density operator: " + r.summary());
    const int n = qubits_for_dim(m.rows());
    require_qubits(n, "density operator");
    return DensityOperator(std::move(m), n);
}

DensityOperator DensityOperator::adopt(ComplexMatrix m) {
    const int n = qubits_for_dim(m.rows());
    return DensityOperator(std::move(m), n);
}

DensityOperator DensityOperator::pure(const Quregister& psi) {
    const ComplexVector& v = psi.amplitudes();
    return DensityOperator(v * v.adjoint(), psi.qubits());
}

DensityOperator DensityOperator::maximally_mixed(int qubits) {
    require_qubits(qubits, "maximally mixed state");
    const double d = static_cast<double>(Eigen::Index{1} << qubits);
    return DensityOperator(identity(qubits) / d, qubits);
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    require_qubits(a.qubits() + b.qubits(), "tensor");
    return DensityOperator::adopt(kron(a.matrix(), b.matrix()));
}

DensityOperator reduced_last(const DensityOperator& rho) {
    const ComplexMatrix& m = rho.matrix();
    const Eigen::Index blocks = m.rows() / 2;
    ComplexMatrix red = ComplexMatrix::Zero(2, 2);
    for (Eigen::Index k = 0; k < blocks; ++k) red += m.block(2 * k, 2 * k, 2, 2);
    return DensityOperator::adopt(std::move(red));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius distance between matrices of different shape");
    }
    return (a - b).norm();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("trace distance between matrices of different shape");
    }
    const ComplexMatrix d = a - b;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Bloch coordinates

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_coords(const DensityOperator& rho, const ComplexMatrix& frame) {
    if (rho.qubits() != 1) throw DimensionError("bloch_coords needs a 1-qubit state");
    if (frame.rows() != 2 || frame.cols() != 2) throw DimensionError("bloch frame must be 2x2");
    const ComplexMatrix r = frame.adjoint() * rho.matrix() * frame;
    // Tr(σ_k r) for k = x, y, z.
    return {2.0 * r(0, 1).real(), -2.0 * r(0, 1).imag(), (r(0, 0) - r(1, 1)).real()};
}

DensityOperator from_bloch(const BlochVector& v, const ComplexMatrix& frame) {
    if (v.norm() > 1.0 + kTol) {
        std::ostringstream os;
        os << "bloch vector (" << v.x << ", " << v.y << ", " << v.z << ") has norm " << v.norm()
           << " > 1";
        throw DomainError(os.str());
    }
    if (frame.rows() != 2 || frame.cols() != 2) throw DimensionError("bloch frame must be 2x2");
    const ComplexMatrix canonical =
        0.5 * (ComplexMatrix::Identity(2, 2) + v.x * sigma_x() + v.y * sigma_y() + v.z * sigma_z());
    return DensityOperator::adopt(frame * canonical * frame.adjoint());
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            a(i, j) = Complex(re, im);
        }
    }
    return a;
}

}  // namespace

DensityOperator random_density(int qubits, Rng& rng) {
    require_qubits(qubits, "random_density");
    const Eigen::Index d = Eigen::Index{1} << qubits;
    const ComplexMatrix a = ginibre(d, d, rng);
    ComplexMatrix m = a * a.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint());
    return DensityOperator::adopt(std::move(m));
}

DensityOperator random_density(int qubits, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(qubits, rng);
}

Quregister random_quregister(int qubits, Rng& rng) {
    require_qubits(qubits, "random_quregister");
    ComplexVector v = ginibre(Eigen::Index{1} << qubits, 1, rng).col(0);
    v.normalize();
    return Quregister(std::move(v));
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
    const ComplexMatrix a = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x71e9u};
    return Rng(seq);
}

}  // namespace qepi
