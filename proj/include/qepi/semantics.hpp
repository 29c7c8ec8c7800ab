// semantics.hpp
// The epistemic sentential language: AST, parser and printer, compositional
// evaluation to density operators, and a sampled logical-consequence search.
//
// Concrete syntax:
//   sentence := unary [("and" | "xor") unary]
//   unary    := atom | "not" unary | "sqrtnot" unary | "hadamard" unary
//             | "(" sentence ")" | OP "[" agent "@" time "]" unary
//   OP       := "K" | "B" | "U" | "Inf"
// A binary connective may appear once per parenthesis level; "p and q and r"
// is rejected. The printer always parenthesizes binaries.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qepi/epistemic.hpp"
#include "qepi/perspective.hpp"
#include "qepi/qstate.hpp"

namespace qepi {

struct Sentence;
using SentencePtr = std::shared_ptr<const Sentence>;

struct Sentence {
    enum class Kind { Atom, Not, SqrtNot, Hadamard, And, Xor, Epistemic };

    Kind kind;
    std::string name;            // Atom
    Role role = Role::K;         // Epistemic
    std::string agent, time;     // Epistemic
    SentencePtr left, right;     // operands; unary nodes use left only

    static SentencePtr atom(std::string name);
    static SentencePtr negation(SentencePtr s);
    static SentencePtr sqrt_not(SentencePtr s);
    static SentencePtr hadamard(SentencePtr s);
    static SentencePtr conjunction(SentencePtr a, SentencePtr b);
    static SentencePtr exclusive_or(SentencePtr a, SentencePtr b);
    static SentencePtr epistemic(Role role, std::string agent, std::string time, SentencePtr s);
};

/// Structural (deep) equality.
bool operator==(const Sentence& a, const Sentence& b);

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset);
    /// 0-based byte offset of the offending token.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

SentencePtr parse(std::string_view text);
std::string print(const Sentence& s);

bool is_epistemic_free(const Sentence& s);
std::set<std::string> atoms_of(const Sentence& s);

struct Model {
    /// Meanings at the canonical perspective.
    std::map<std::string, DensityOperator> atoms;
    EpistemicStructure structure;
};

/// Atom: its assigned qubit count; unary and epistemic nodes preserve;
/// And(a, b) = a + b + 1 (Toffoli ancilla); Xor(a, b) = a + b.
/// Throws DomainError for unassigned atoms.
int dimension(const Sentence& s, const Model& m);

/// Mod_t(s). Throws DimensionError when the dimension exceeds max_qubits()
/// and DomainError for unresolved atoms, agents, times or roles.
DensityOperator evaluate(const Model& m, const TruthPerspective& t, const Sentence& s);

/// prob(t, evaluate(m, t, s)) >= 1 - kTol.
bool is_true(const Model& m, const TruthPerspective& t, const Sentence& s);

// ---------------------------------------------------------------------------
// Logical consequence

struct ConsequenceTemplate {
    /// Epistemic structure whose named operations get fresh admissible
    /// parameters each trial (other operations are kept as given).
    EpistemicStructure structure;
    /// Qubit count per atom; atoms not listed get 1.
    std::map<std::string, int> atom_qubits;
    bool randomize_parameters = true;
};

struct ConsequenceOptions {
    int trials = 1000;
    std::uint64_t seed = 1;
};

struct ConsequenceVerdict {
    enum class Status { NoCounterexample, Counterexample };

    Status status = Status::NoCounterexample;
    int trials = 0;
    std::uint64_t seed = 0;
    // Counterexample only.
    std::optional<std::uint64_t> trial;
    std::optional<Model> model;
    double prob_alpha = 0.0;
    double prob_beta = 0.0;
    // Every tenth trial is re-evaluated at a random perspective; these count
    // how often the ⪯ verdict there differed from the one at I.
    int cross_checks = 0;
    int cross_check_disagreements = 0;

    std::string summary() const;
};

/// Samples `trials` models and compares the meanings of alpha and beta at
/// the canonical perspective; reports the lowest-index counterexample.
ConsequenceVerdict check_consequence(const Sentence& alpha, const Sentence& beta, const ConsequenceTemplate& tpl,
                                     const ConsequenceOptions& opts);

/// Re-evaluates the snapshot model of a counterexample verdict.
bool reverify(const Sentence& alpha, const Sentence& beta, const ConsequenceVerdict& v);

struct RandomSentenceOptions {
    int max_depth = 5;
    int max_qubits = 6;                    // 0 means no limit
    std::vector<std::string> atoms{"p", "q", "r"};
    // Epistemic nodes are only generated when agents and times are given.
    std::vector<std::string> agents;
    std::vector<std::string> times;
};

/// Random AST; atoms count as 1 qubit for the max_qubits bound.
SentencePtr random_sentence(Rng& rng, const RandomSentenceOptions& opts);

}  // namespace qepi
