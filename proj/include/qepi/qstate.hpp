// qstate.hpp
// Dense complex linear algebra for n-qubit registers and density operators.
//
// Basis convention: |0> = (1,0), |1> = (0,1). Multi-qubit basis states are
// big-endian: qubit 1 is the most significant bit of the basis index, so the
// last qubit (the one carrying the truth value) is the least significant bit.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qepi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Tolerance for every invariant check (hermiticity, trace, positivity,
/// unitarity, probability comparisons).
inline constexpr double kTol = 1e-9;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not match (dimension or qubit count).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value is outside the set the operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Largest qubit count any operation will build a dense matrix for.
/// Defaults to 8 (dim 256). Process-wide; intended to be set once at startup.
int max_qubits() noexcept;
void set_max_qubits(int n);

/// Throws DimensionError when n is outside [1, max_qubits()].
void require_qubits(int n, const char* what);

/// Returns log2(dim) or throws if dim is not a power of two.
int qubits_for_dim(Eigen::Index dim);

ComplexMatrix identity(int qubits);

/// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

Complex trace(const ComplexMatrix& m);

/// Pauli matrices.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

/// Pure n-qubit state: a unit vector of length 2^n.
class Quregister {
public:
    /// Normalization is checked within kTol; amplitudes are not renormalized.
    explicit Quregister(ComplexVector amplitudes);

    /// Canonical basis register |bits[0], ..., bits[n-1]>.
    static Quregister basis(const std::vector<int>& bits);

    int qubits() const noexcept { return qubits_; }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](Eigen::Index i) const { return amps_(i); }

private:
    int qubits_;
    ComplexVector amps_;
};

Quregister tensor(const Quregister& a, const Quregister& b);

struct DensityViolation {
    enum class Kind { Shape, Hermiticity, Trace, Positivity };
    Kind kind;
    double defect;  // measured deviation (or the offending eigenvalue for Positivity)
    std::string message;
};

struct DensityReport {
    std::vector<DensityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

/// Reports every invariant the matrix fails: power-of-two square shape,
/// hermiticity, unit trace, positivity (smallest eigenvalue >= -tol).
DensityReport validate_density(const ComplexMatrix& m, double tol = kTol);

/// Positive semidefinite, trace-one operator on n qubits.
class DensityOperator {
public:
    /// Validates; throws DomainError carrying the violation summary.
    static DensityOperator from_matrix(ComplexMatrix m);
    /// Skips validation. Only for matrices that are valid by construction.
    static DensityOperator adopt(ComplexMatrix m);

    static DensityOperator pure(const Quregister& psi);
    static DensityOperator maximally_mixed(int qubits);

    int qubits() const noexcept { return qubits_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

    double purity() const;

private:
    DensityOperator(ComplexMatrix m, int qubits) : m_(std::move(m)), qubits_(qubits) {}

    ComplexMatrix m_;
    int qubits_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Partial trace over qubits 1..n-1; the reduced state of the last qubit.
DensityOperator reduced_last(const DensityOperator& rho);

/// Frobenius distance between two operators of equal size.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace-norm distance ||a - b||_1 for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double min_eigenvalue(const ComplexMatrix& hermitian);

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    bool operator==(const BlochVector&) const = default;
};

/// Coordinates (x,y,z) with frame† ρ frame = ½(I + xσx + yσy + zσz).
/// With this convention the frame-probability of truth is (1 - z)/2.
BlochVector bloch_coords(const DensityOperator& rho, const ComplexMatrix& frame);

/// Inverse of bloch_coords. Throws DomainError when |v| > 1 + kTol.
DensityOperator from_bloch(const BlochVector& v, const ComplexMatrix& frame);

/// Ginibre sampler: A with i.i.d. standard complex Gaussian entries,
/// returns AA†/Tr(AA†).
DensityOperator random_density(int qubits, Rng& rng);
DensityOperator random_density(int qubits, std::uint64_t seed);

/// Haar-random pure register.
Quregister random_quregister(int qubits, Rng& rng);

/// Haar-random unitary of the given dimension (QR of a Ginibre matrix).
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Deterministic per-sample generator derived from (seed, index).
Rng sample_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace qepi
