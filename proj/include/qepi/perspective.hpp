// perspective.hpp
// Truth-perspectives: a 2x2 unitary T fixing |1_T> = T|1> as Truth and
// |0_T> = T|0> as Falsity.

#pragma once

#include <string>

#include "qepi/qstate.hpp"

namespace qepi {

enum class TruthValue { Falsity, Truth };

class TruthPerspective {
public:
    /// Throws DomainError if u is not a 2x2 unitary within kTol.
    explicit TruthPerspective(ComplexMatrix u, std::string name = {});

    static TruthPerspective identity();
    static TruthPerspective hadamard();
    static TruthPerspective pauli_x();
    /// e^{iθ} I.
    static TruthPerspective phase(double theta);
    static TruthPerspective random(Rng& rng);

    const ComplexMatrix& matrix() const noexcept { return u_; }
    const std::string& name() const noexcept { return name_; }
    const ComplexVector& truth() const noexcept { return truth_; }
    const ComplexVector& falsity() const noexcept { return falsity_; }

    /// Unitarity defect ||u†u - I||_F of an arbitrary 2x2 matrix.
    static double unitarity_defect(const ComplexMatrix& u);

private:
    ComplexMatrix u_;
    ComplexVector truth_;
    ComplexVector falsity_;
    std::string name_;
};

/// T ⊗ ... ⊗ T (n factors).
ComplexMatrix extend(const TruthPerspective& t, int n);

/// T-truth/falsity projection on n qubits: I_{2^(n-1)} ⊗ T|v><v|T†.
ComplexMatrix truth_projection(const TruthPerspective& t, int n, TruthValue value);

/// The normalized T-falsity state 2^{1-n} · P_0 (one of the two standard fallbacks).
DensityOperator falsity_state(const TruthPerspective& t, int n);
/// The normalized T-truth state 2^{1-n} · P_1.
DensityOperator truth_state(const TruthPerspective& t, int n);

/// Prob_T(ρ) = Tr(P_1 ρ), clamped to [0, 1].
double prob(const TruthPerspective& t, const DensityOperator& rho);

/// prob(t, rho) <= prob(t, sigma) + kTol. Ties hold in both directions.
bool preceq(const TruthPerspective& t, const DensityOperator& rho, const DensityOperator& sigma);

/// (2/π) arccos |<ψ|φ>| for single qubits.
double fubini_study(const Quregister& psi, const Quregister& phi);

/// Fubini-Study distance between the two Truth qubits.
double epistemic_distance(const TruthPerspective& t1, const TruthPerspective& t2);

/// Decided by equality of the Truth projectors |1_T1><1_T1| and |1_T2><1_T2|.
bool prob_equivalent(const TruthPerspective& t1, const TruthPerspective& t2);

BlochVector bloch_coords(const DensityOperator& rho, const TruthPerspective& t);
DensityOperator from_bloch(const BlochVector& v, const TruthPerspective& t);

}  // namespace qepi
