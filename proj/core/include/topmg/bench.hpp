#pragma once

#include <string>
#include <vector>

#include "topmg/config.hpp"
#include "topmg/io.hpp"

namespace topmg {

/// Contrast-robustness harness: one frozen seeded design, one
/// (set-up, LS1, LS2) triple per (cr, preconditioner) pair. Solver failures
/// become DNF rows, the sweep continues.
std::vector<BenchRow> run_bench(const RunConfig& cfg,
                                const std::vector<int>& crs,
                                const std::vector<std::string>& preconds);

/// Text table per contrast value: set-up seconds, solve seconds(iterations)
/// per system, and total time relative to the first preconditioner column.
/// Seconds carry one digit after the point; DNF entries are marked.
std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace topmg
