#include "qepi/gates.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qepi {

namespace {

// Permutation matrix for a classical reversible map on basis indices.
template <class F>
ComplexMatrix permutation(int qubits, F map) {
    const Eigen::Index d = Eigen::Index{1} << qubits;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index x = 0; x < d; ++x) m(map(x), x) = 1.0;
    return m;
}

// Bit mask of 1-based qubit k in an n-qubit big-endian index.
Eigen::Index qubit_mask(int n, int k) { return Eigen::Index{1} << (n - k); }

ComplexMatrix last_qubit(int n, const ComplexMatrix& u) {
    return n == 1 ? u : kron(identity(n - 1), u);
}

std::size_t expected_arity(GateKind kind) {
    switch (kind) {
        case GateKind::Xor: return 2;
        case GateKind::Toffoli: return 3;
        default: return 1;
    }
}

}  // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "not";
        case GateKind::Toffoli: return "toffoli";
        case GateKind::Xor: return "xor";
        case GateKind::Hadamard: return "hadamard";
        case GateKind::SqrtNot: return "sqrtnot";
    }
    return "?";
}

std::string Gate::spec() const {
    std::ostringstream os;
    os << to_string(kind_) << ':';
    for (std::size_t i = 0; i < signature_.size(); ++i) os << (i ? "," : "") << signature_[i];
    return os.str();
}

Gate build_gate(GateKind kind, std::span<const int> signature) {
    if (signature.size() != expected_arity(kind)) {
        std::ostringstream os;
        os << to_string(kind) << " takes " << expected_arity(kind) << " arity parameter(s), got "
           << signature.size();
        throw DomainError(os.str());
    }
    for (int a : signature) {
        if (a < 1) throw DomainError(std::string(to_string(kind)) + ": arity parameters must be >= 1");
    }
    const int n = std::accumulate(signature.begin(), signature.end(), 0);
    require_qubits(n, "build_gate");

    ComplexMatrix m;
    switch (kind) {
        case GateKind::Not:
            m = last_qubit(n, sigma_x());
            break;
        case GateKind::Hadamard: {
            const double s = 1.0 / std::sqrt(2.0);
            ComplexMatrix h(2, 2);
            h << s, s, s, -s;
            m = last_qubit(n, h);
            break;
        }
        case GateKind::SqrtNot: {
            const Complex a(0.5, 0.5), b(0.5, -0.5);
            ComplexMatrix r(2, 2);
            r << a, b, b, a;
            m = last_qubit(n, r);
            break;
        }
        case GateKind::Xor: {
            const Eigen::Index control = qubit_mask(n, signature[0]);
            const Eigen::Index target = qubit_mask(n, n);
            m = permutation(n, [&](Eigen::Index x) { return (x & control) ? x ^ target : x; });
            break;
        }
        case GateKind::Toffoli: {
            const Eigen::Index c1 = qubit_mask(n, signature[0]);
            const Eigen::Index c2 = qubit_mask(n, signature[0] + signature[1]);
            const Eigen::Index target = qubit_mask(n, n);
            m = permutation(n, [&](Eigen::Index x) { return ((x & c1) && (x & c2)) ? x ^ target : x; });
            break;
        }
    }
    return Gate(kind, std::vector<int>(signature.begin(), signature.end()), n, std::move(m));
}

Gate build_gate(GateKind kind, std::initializer_list<int> signature) {
    return build_gate(kind, std::span<const int>(signature.begin(), signature.size()));
}

Gate parse_gate(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    GateKind kind;
    if (name == "not") kind = GateKind::Not;
    else if (name == "xor") kind = GateKind::Xor;
    else if (name == "toffoli") kind = GateKind::Toffoli;
    else if (name == "hadamard") kind = GateKind::Hadamard;
    else if (name == "sqrtnot") kind = GateKind::SqrtNot;
    else throw DomainError("unknown gate '" + std::string(name) + "'");

    std::vector<int> sig;
    if (colon == std::string_view::npos) {
        sig.assign(expected_arity(kind), 1);
    } else {
        std::string_view rest = spec.substr(colon + 1);
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view tok = rest.substr(0, comma);
            int v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw DomainError("bad gate arity '" + std::string(tok) + "' in '" + std::string(spec) + "'");
            }
            sig.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    return build_gate(kind, sig);
}

Gate twin_gate(const TruthPerspective& t, const Gate& g) {
    const ComplexMatrix tn = extend(t, g.qubits());
    return Gate(g.kind(), g.signature(), g.qubits(), tn * g.matrix() * tn.adjoint());
}

DensityOperator apply_unitary(const ComplexMatrix& u, const DensityOperator& rho) {
    if (u.rows() != rho.dim()) {
        throw DimensionError("gate of dim " + std::to_string(u.rows()) + " applied to state of dim " +
                             std::to_string(rho.dim()));
    }
    return DensityOperator::adopt(u * rho.matrix() * u.adjoint());
}

DensityOperator apply_unitary(const Gate& g, const DensityOperator& rho) {
    return apply_unitary(g.matrix(), rho);
}

XorRigidity xor_rigidity(const TruthPerspective& t) {
    const Gate canonical = build_gate(GateKind::Xor, {1, 1});
    const Gate twin = twin_gate(t, canonical);
    const double gap = frobenius_distance(twin.matrix(), canonical.matrix());
    return {gap <= kTol, gap};
}

}  // namespace qepi
