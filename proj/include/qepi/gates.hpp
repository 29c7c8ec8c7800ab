// gates.hpp
// The five connective gates and their twins under a truth-perspective.
//
// Every gate targets the last qubit of its block structure:
//   NOT^(n)         = I^(n-1) ⊗ σx
//   SQRT_NOT^(n)    = I^(n-1) ⊗ ½[[1+i, 1-i], [1-i, 1+i]]
//   HADAMARD^(n)    = I^(n-1) ⊗ H                (the gate √I)
//   XOR^(n,m)       flips qubit n+m when qubit n is 1
//   TOFFOLI^(n,m,p) flips qubit n+m+p when qubits n and n+m are both 1

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qepi/perspective.hpp"
#include "qepi/qstate.hpp"

namespace qepi {

enum class GateKind { Not, Toffoli, Xor, Hadamard, SqrtNot };

std::string_view to_string(GateKind kind);

class Gate {
public:
    GateKind kind() const noexcept { return kind_; }
    const std::vector<int>& signature() const noexcept { return signature_; }
    int qubits() const noexcept { return qubits_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    /// "xor:1,1" style description.
    std::string spec() const;

private:
    friend Gate build_gate(GateKind, std::span<const int>);
    friend Gate twin_gate(const TruthPerspective&, const Gate&);

    Gate(GateKind kind, std::vector<int> signature, int qubits, ComplexMatrix m)
        : kind_(kind), signature_(std::move(signature)), qubits_(qubits), matrix_(std::move(m)) {}

    GateKind kind_;
    std::vector<int> signature_;
    int qubits_;
    ComplexMatrix matrix_;
};

/// Signature length must be 1 for NOT/HADAMARD/SQRT_NOT, 2 for XOR, 3 for
/// TOFFOLI; every entry >= 1 and the total within max_qubits().
Gate build_gate(GateKind kind, std::span<const int> signature);
Gate build_gate(GateKind kind, std::initializer_list<int> signature);

/// Parses "not:1", "xor:1,1", "toffoli:1,1,1", "hadamard:1", "sqrtnot:1".
Gate parse_gate(std::string_view spec);

/// T^(n) G T^(n)†.
Gate twin_gate(const TruthPerspective& t, const Gate& g);

/// G ρ G†.
DensityOperator apply_unitary(const Gate& g, const DensityOperator& rho);
DensityOperator apply_unitary(const ComplexMatrix& u, const DensityOperator& rho);

struct XorRigidity {
    bool equal;
    double gap;  // Frobenius distance between twin XOR^(1,1) and XOR^(1,1)
};

/// Compares the twin XOR^(1,1) under t with the canonical one.
XorRigidity xor_rigidity(const TruthPerspective& t);

}  // namespace qepi
