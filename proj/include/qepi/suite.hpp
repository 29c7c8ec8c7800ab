// suite.hpp
// The theorem suite behind `qepi check`: each suite reproduces one group of
// analytic results numerically and reports one PASS/FAIL row per claim.
// Rows depend only on the seed and sample count.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qepi {

struct SuiteOptions {
    std::uint64_t seed = 7;
    int samples = 1000;
};

struct SuiteRow {
    std::string suite;
    std::string claim;
    bool pass = false;
    std::string detail;
};

/// In execution order: pauli-bloch, ad-bloch, kpf-trivial, strong, maximal,
/// closure, summary, closed-form, xor-rigidity, distances, invariance, consequence.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws DomainError for unknown names.
std::vector<SuiteRow> run_suite(const std::string& name, const SuiteOptions& opts);

/// "PASS  strong/kbf-on-D  tested 1003/1003" lines, one per row.
std::string format_rows(const std::vector<SuiteRow>& rows);

}  // namespace qepi
