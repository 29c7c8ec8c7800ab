#include "qepi/channels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qepi {

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> parse_numbers(std::string_view text, std::string_view spec) {
    std::vector<double> out;
    if (text.empty()) return out;
    while (true) {
        const auto comma = text.find(',');
        const std::string tok(text.substr(0, comma));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tok.size()) {
            throw DomainError("bad channel parameter '" + tok + "' in '" + std::string(spec) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, std::string label, double tol)
    : ops_(std::move(ops)), label_(std::move(label)), qubits_(0) {
    if (ops_.empty()) throw DomainError("kraus channel " + label_ + " has no operators");
    const Eigen::Index d = ops_.front().rows();
    for (const auto& e : ops_) {
        if (e.rows() != d || e.cols() != d) {
            throw DimensionError("kraus channel " + label_ + ": operators must be square and equal-sized");
        }
    }
    qubits_ = qubits_for_dim(d);
    require_qubits(qubits_, "kraus channel");
    const KrausDefect k = validate_kraus(ops_);
    if (!k.ok(tol)) {
        std::ostringstream os;
        os << "kraus channel " << label_ << " violates completeness (defect " << k.defect << ")";
        throw DomainError(os.str());
    }
}

KrausDefect validate_kraus(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return {std::numeric_limits<double>::infinity()};
    const Eigen::Index d = ops.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : ops) {
        if (e.rows() != d || e.cols() != d) return {std::numeric_limits<double>::infinity()};
        sum += e.adjoint() * e;
    }
    return {(sum - ComplexMatrix::Identity(d, d)).norm()};
}

KrausDefect validate_kraus(const KrausChannel& c) { return validate_kraus(c.ops()); }

KrausChannel identity_channel() { return KrausChannel({ComplexMatrix::Identity(2, 2)}, "identity"); }

KrausChannel pauli_channel(const PauliParams& p) {
    const double a2 = std::norm(p.alpha), b2 = std::norm(p.beta), g2 = std::norm(p.gamma);
    const double rest = 1.0 - a2 - b2 - g2;
    if (rest < -kTol) {
        throw DomainError("pauli channel needs |α|²+|β|²+|γ|² <= 1, got " + fmt_num(a2 + b2 + g2));
    }
    std::vector<ComplexMatrix> ops{
        std::sqrt(std::max(0.0, rest)) * ComplexMatrix::Identity(2, 2),
        std::abs(p.alpha) * sigma_x(),
        std::abs(p.beta) * sigma_y(),
        std::abs(p.gamma) * sigma_z(),
    };
    std::ostringstream label;
    label << "pauli(" << std::abs(p.alpha) << "," << std::abs(p.beta) << "," << std::abs(p.gamma) << ")";
    return KrausChannel(std::move(ops), label.str());
}

KrausChannel bit_flip(Complex alpha) { return pauli_channel({alpha, 0.0, 0.0}); }
KrausChannel bit_phase_flip(Complex beta) { return pauli_channel({0.0, beta, 0.0}); }
KrausChannel phase_flip(Complex gamma) { return pauli_channel({0.0, 0.0, gamma}); }

KrausChannel depolarizing(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("depolarizing p must be in [0,1], got " + fmt_num(p));
    const double a = std::sqrt(p / 4.0);
    return pauli_channel({a, a, a});
}

KrausChannel amplitude_damping(const DampingParams& d) {
    if (d.p < 0.0 || d.p > 1.0 || d.lambda < 0.0 || d.lambda > 1.0) {
        throw DomainError("amplitude damping needs p, λ in [0,1], got p=" + fmt_num(d.p) +
                          " λ=" + fmt_num(d.lambda));
    }
    const double sl = std::sqrt(d.lambda), sl1 = std::sqrt(1.0 - d.lambda);
    const double sp = std::sqrt(d.p), sp1 = std::sqrt(1.0 - d.p);
    ComplexMatrix e0(2, 2), e1(2, 2), e2(2, 2), e3(2, 2);
    e0 << sl, 0.0, 0.0, sl * sp1;
    e1 << 0.0, sl * sp, 0.0, 0.0;
    e2 << sl1 * sp1, 0.0, 0.0, sl1;
    e3 << 0.0, 0.0, sl1 * sp, 0.0;
    return KrausChannel({e0, e1, e2, e3}, "ad(" + fmt_num(d.p) + "," + fmt_num(d.lambda) + ")");
}

KrausChannel parse_channel(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::vector<double> args =
        colon == std::string_view::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1), spec);
    auto need = [&](std::size_t k) {
        if (args.size() != k) {
            throw DomainError("channel '" + std::string(name) + "' takes " + std::to_string(k) +
                              " parameter(s)");
        }
    };
    if (name == "identity") { need(0); return identity_channel(); }
    if (name == "bitflip") { need(1); return bit_flip(args[0]); }
    if (name == "phaseflip") { need(1); return phase_flip(args[0]); }
    if (name == "bitphaseflip") { need(1); return bit_phase_flip(args[0]); }
    if (name == "depolarizing") { need(1); return depolarizing(args[0]); }
    if (name == "ad") { need(2); return amplitude_damping({args[0], args[1]}); }
    throw DomainError("unknown channel '" + std::string(name) + "'");
}

DensityOperator apply_channel(const KrausChannel& c, const DensityOperator& rho) {
    const Eigen::Index d = rho.dim();
    if (c.ops().front().rows() != d) {
        throw DimensionError("channel " + c.label() + " on " + std::to_string(c.qubits()) +
                             " qubit(s) applied to a " + std::to_string(rho.qubits()) + "-qubit state");
    }
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& e : c.ops()) out.noalias() += e * rho.matrix() * e.adjoint();
    return DensityOperator::adopt(0.5 * (out + out.adjoint()));
}

KrausChannel twin_channel(const TruthPerspective& t, const KrausChannel& c) {
    const ComplexMatrix tn = extend(t, c.qubits());
    std::vector<ComplexMatrix> ops;
    ops.reserve(c.ops().size());
    for (const auto& e : c.ops()) ops.push_back(tn * e * tn.adjoint());
    const std::string tag = t.name().empty() ? "T" : t.name();
    return KrausChannel(std::move(ops), c.label() + "@" + tag, kUserKrausTol);
}

DensityOperator apply_lifted(const KrausChannel& c, const DensityOperator& rho) {
    if (c.qubits() != 1) throw DimensionError("apply_lifted expects a 1-qubit channel");
    const Eigen::Index blocks = rho.dim() / 2;
    ComplexMatrix out(rho.dim(), rho.dim());
    for (Eigen::Index i = 0; i < blocks; ++i) {
        for (Eigen::Index j = 0; j < blocks; ++j) {
            const ComplexMatrix b = rho.matrix().block(2 * i, 2 * j, 2, 2);
            Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
            for (const auto& e : c.ops()) acc.noalias() += e * b * e.adjoint();
            out.block(2 * i, 2 * j, 2, 2) = acc;
        }
    }
    return DensityOperator::adopt(0.5 * (out + out.adjoint()));
}

KrausChannel lift(const KrausChannel& c, int n) {
    if (c.qubits() != 1) throw DimensionError("lift expects a 1-qubit channel");
    require_qubits(n, "lift");
    if (n == 1) return c;
    const ComplexMatrix id = identity(n - 1);
    std::vector<ComplexMatrix> ops;
    ops.reserve(c.ops().size());
    for (const auto& e : c.ops()) ops.push_back(kron(id, e));
    return KrausChannel(std::move(ops), c.label() + "^(" + std::to_string(n) + ")", kUserKrausTol);
}

BlochVector AffineBlochMap::apply(const BlochVector& v) const {
    const Eigen::Vector3d r = linear * Eigen::Vector3d(v.x, v.y, v.z) + offset;
    return {r.x(), r.y(), r.z()};
}

AffineBlochMap bloch_map(const KrausChannel& c, const TruthPerspective& t) {
    if (c.qubits() != 1) throw DimensionError("bloch_map expects a 1-qubit channel");
    auto image = [&](const BlochVector& v) {
        const BlochVector w = bloch_coords(apply_channel(c, from_bloch(v, t)), t);
        return Eigen::Vector3d(w.x, w.y, w.z);
    };
    AffineBlochMap m;
    m.offset = image({0.0, 0.0, 0.0});
    m.linear.col(0) = image({1.0, 0.0, 0.0}) - m.offset;
    m.linear.col(1) = image({0.0, 1.0, 0.0}) - m.offset;
    m.linear.col(2) = image({0.0, 0.0, 1.0}) - m.offset;
    return m;
}

}  // namespace qepi
