#pragma once

#include <string>
#include <vector>

#include "zladder/experiments.hpp"

namespace zladder::report {

// JSON schema keeps the factorization fields at the top level: lhs,
// rhs_asym, rhs_exact, signal, noise, error_residual, alphas, betas, d, e,
// spacing_ratios; inputs and diagnostics ride along. theorem_from_json
// inverts render_theorem(run, "json").
std::string theorem_to_json(const experiments::TheoremRun& run);
experiments::TheoremRun theorem_from_json(const std::string& text);

std::string render_theorem(const experiments::TheoremRun& run,
                           const std::string& format);
std::string render_decomposition(const experiments::Decomposition& dec,
                                 const std::string& format);
std::string render_chain(const ladder::SegmentChain& chain,
                         const std::string& format);
std::string render_scan(const experiments::DistinctScan& scan,
                        const std::string& format);
std::string render_complement(const std::vector<experiments::ComplementRow>& rows,
                              const std::string& format);

}  // namespace zladder::report
