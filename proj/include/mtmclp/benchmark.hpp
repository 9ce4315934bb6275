#pragma once

// Batch runs over (instance, method) pairs with per-run rows and the
// per-(n, rho, p) aggregate table.

#include <string>
#include <vector>

#include "mtmclp/solvers.hpp"

namespace mtmclp {

struct BenchmarkRow {
  std::string instance;
  std::size_t n = 0;
  std::string rho;  // radii per type, discrete first, '|' separated
  std::string p;    // counts per type, same order
  std::string method;
  std::string status;  // optimal, feasible, no-solution or error
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  PhaseTimes times;
  std::size_t constraints = 0;
  std::size_t cuts = 0;
  long nodes = 0;
  std::string error;

  bool solved() const { return status == "optimal"; }
};

struct BenchmarkOptions {
  // bnc, bips, brute, seq (discrete first) or seq-cf (continuous first).
  std::vector<std::string> methods = {"bnc", "bips"};
  SolveOptions solve;
  int jobs = 1;
};

// Failing runs become rows with status "error"; rows follow input order.
std::vector<BenchmarkRow> run_benchmark(const std::vector<Instance>& instances,
                                        const BenchmarkOptions& options);

SolveReport run_method(const Instance& instance, const std::string& method,
                       const SolveOptions& options);

std::string rows_csv(const std::vector<BenchmarkRow>& rows);
// Means over solved runs; MIPGAP averages the unsolved runs that have an incumbent.
std::string aggregate_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace mtmclp
