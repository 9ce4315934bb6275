#pragma once

// End-to-end solves: branch-and-cut on the incomplete formulation, the BIPS
// formulation, sequential baselines and the exhaustive oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtmclp/milp.hpp"
#include "mtmclp/model.hpp"

namespace mtmclp {

enum class Method { Bnc, Bips, Sequential, Brute };

const char* to_string(Method method);
// Accepts bnc, bips, seq, brute.
Method parse_method(const std::string& name);

struct SolveOptions {
  milp::SolveLimits limits;
  bool symmetry = true;
  // Pool epsilons as fractions of each type's radius; empty disables the pool.
  std::vector<double> pool_fractions = {0.8, 0.9, 1.0};
  PairwiseForm pairwise = PairwiseForm::Cliques;
  // Seeds branch-and-bound with a greedy solution.
  bool warm_start = true;
  bool record_trace = false;
};

struct PhaseTimes {
  double total = 0.0;
  double solving = 0.0;
  double preprocessing = 0.0;
  double constraint_generation = 0.0;
  double callback = 0.0;
};

enum class SolveStatus { Optimal, Feasible, NoSolution };

const char* to_string(SolveStatus status);

struct SolveReport {
  std::string method;
  SolveStatus status = SolveStatus::NoSolution;
  Solution solution;
  double bound = 0.0;
  double gap = 0.0;
  PhaseTimes times;
  std::size_t constraints = 0;  // final row count, lazy rows included
  std::size_t variables = 0;
  std::size_t pool_cuts = 0;
  std::size_t lazy_cuts = 0;    // distinct cuts returned by the separation oracle
  long nodes = 0;
  long lp_iterations = 0;
  std::vector<milp::TracePoint> trace;
  std::vector<Cut> cuts;  // every cut used beyond the pairwise family
};

SolveReport solve_bnc(const Instance& instance, const SolveOptions& options = {});
SolveReport solve_bips(const Instance& instance, const SolveOptions& options = {});

// A facility type: discrete (index into discrete_types) or continuous.
struct TypeRef {
  bool continuous = false;
  std::size_t index = 0;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};
using StageOrder = std::vector<std::vector<TypeRef>>;

StageOrder discrete_first(const Instance& instance);
StageOrder continuous_first(const Instance& instance);
// "d0,d1>c0" style: stages separated by '>', types by ','; also accepts the
// shorthands "discrete-first" and "continuous-first".
StageOrder parse_order(const std::string& text, const Instance& instance);
std::string format_order(const StageOrder& order);

// Each stage solves its types on the demand left uncovered by earlier stages.
SolveReport solve_sequential(const Instance& instance, const StageOrder& order,
                             Method stage_method = Method::Bnc,
                             const SolveOptions& options = {});

// Enclosing-ball center per nonempty slot cluster; empty slots sit at the
// first demand point. Throws ContractError for an infeasible cluster.
std::vector<std::vector<Point>> recover_centers(const Instance& instance,
                                                const Assignment& assignment);

// Greedy facilities (sites and demand-point centers), best weight first.
Solution greedy_solution(const Instance& instance);

struct BruteForceOptions {
  double max_combinations = 1e7;
};

// Enumerates site subsets and BIPS subsets; exact for planar Euclidean types.
SolveReport brute_force(const Instance& instance, const BruteForceOptions& options = {});

}  // namespace mtmclp
