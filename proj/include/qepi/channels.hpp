// channels.hpp
// Kraus channels: the Pauli family, generalized amplitude damping, twin
// channels, lifting to n qubits and Bloch affine-map extraction.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qepi/perspective.hpp"
#include "qepi/qstate.hpp"

namespace qepi {

/// Completeness tolerance accepted for hand-entered Kraus lists.
inline constexpr double kUserKrausTol = 1e-6;

struct PauliParams {
    Complex alpha{0.0};
    Complex beta{0.0};
    Complex gamma{0.0};
};

struct DampingParams {
    double p = 0.0;
    double lambda = 0.0;
};

class KrausChannel {
public:
    /// Checks square, equal-size, power-of-two operators and completeness
    /// Σ E†E = I within tol; throws DomainError otherwise.
    KrausChannel(std::vector<ComplexMatrix> ops, std::string label, double tol = kTol);

    int qubits() const noexcept { return qubits_; }
    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
    const std::string& label() const noexcept { return label_; }

private:
    std::vector<ComplexMatrix> ops_;
    std::string label_;
    int qubits_;
};

struct KrausDefect {
    double defect;  // ||Σ E†E - I||_F
    bool ok(double tol = kTol) const noexcept { return defect <= tol; }
};

/// Diagnostic completeness check on an arbitrary operator list.
KrausDefect validate_kraus(const std::vector<ComplexMatrix>& ops);
KrausDefect validate_kraus(const KrausChannel& c);

KrausChannel identity_channel();
KrausChannel pauli_channel(const PauliParams& p);
KrausChannel bit_flip(Complex alpha);
KrausChannel bit_phase_flip(Complex beta);
KrausChannel phase_flip(Complex gamma);
/// |α|² = |β|² = |γ|² = p/4.
KrausChannel depolarizing(double p);
KrausChannel amplitude_damping(const DampingParams& d);

/// Parses "bitflip:α", "phaseflip:γ", "bitphaseflip:β", "depolarizing:p",
/// "ad:p,λ" and "identity".
KrausChannel parse_channel(std::string_view spec);

/// Σ E_i ρ E_i†.
DensityOperator apply_channel(const KrausChannel& c, const DensityOperator& rho);

/// Kraus operators T E_i T†.
KrausChannel twin_channel(const TruthPerspective& t, const KrausChannel& c);

/// I^(n-1) ⊗ E_i for a 1-qubit channel.
KrausChannel lift(const KrausChannel& c, int n);

/// apply_channel(lift(c, n), ρ) computed block-wise without building the lift.
DensityOperator apply_lifted(const KrausChannel& c, const DensityOperator& rho);

struct AffineBlochMap {
    Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();

    BlochVector apply(const BlochVector& v) const;
};

/// Extracts the affine map induced on Bloch coordinates read in frame t
/// from four channel applications (centre and the three unit axes).
AffineBlochMap bloch_map(const KrausChannel& c, const TruthPerspective& t);

}  // namespace qepi
