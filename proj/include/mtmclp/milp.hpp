#pragma once

// Generic 0/1 linear maximisation kernel: model container, LP relaxation and
// best-first branch-and-bound with a lazy-constraint callback.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtmclp::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool integer = false;
  double objective = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  // Kept out of the LP relaxation until a relaxation point violates it.
  bool deferred = false;
};

// Amount by which `x` violates `row` (0 when satisfied).
double violation(const Constraint& row, std::span<const double> x);

class LinearModel {
 public:
  int add_variable(std::string name, double lower, double upper, bool integer,
                   double objective);
  int add_binary(std::string name, double objective) {
    return add_variable(std::move(name), 0.0, 1.0, true, objective);
  }
  int add_constraint(Constraint row);
  int add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs) {
    return add_constraint(Constraint{std::move(name), std::move(terms), relation, rhs});
  }

  void set_variable_bounds(int var, double lower, double upper);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  // Declares that every integer-feasible point has an integer objective
  // value, which lets branch-and-bound round bounds down.
  void set_integral_objective(bool integral) { integral_objective_ = integral; }
  bool integral_objective() const { return integral_objective_; }

  double objective_value(std::span<const double> x) const;
  // Largest row violation and bound violation of `x`.
  double max_violation(std::span<const double> x) const;

  // Throws InputError on inconsistent bounds, bad indices or non-finite data.
  void validate() const;

  // Plain-text LP format (one constraint per line) for external cross-checks.
  std::string to_lp_format() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  bool integral_objective_ = false;
};

// --- LP relaxation ----------------------------------------------------------

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;
  long iterations = 0;
};

// Solves the continuous relaxation (integrality dropped, bounds kept).
LpResult solve_lp(const LinearModel& model);

// --- Branch-and-bound ---------------------------------------------------------

struct SolveLimits {
  double time_limit_seconds = 3600.0;
  long node_limit = std::numeric_limits<long>::max();
  double relative_gap = 1e-6;
  double integrality_tolerance = 1e-6;
};

enum class BnBStatus { Optimal, Feasible, Infeasible, Limit };

const char* to_string(BnBStatus status);

struct BnBStats {
  long nodes = 0;
  long lp_iterations = 0;
  long callback_calls = 0;
  long cuts_added = 0;
  double lp_seconds = 0.0;
  double callback_seconds = 0.0;
  double total_seconds = 0.0;
};

struct TracePoint {
  long node = 0;
  double bound = 0.0;
  double incumbent = 0.0;
  bool has_incumbent = false;
};

struct BnBResult {
  BnBStatus status = BnBStatus::Infeasible;
  std::vector<double> incumbent;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  BnBStats stats;
  std::vector<Constraint> added_cuts;
  std::size_t final_constraint_count = 0;
  std::vector<TracePoint> trace;
};

// Called with an integer-feasible LP point (integers rounded). Returning an
// empty list accepts the point; otherwise the rows are added globally and at
// least one of them must be violated by the point.
using LazyCallback = std::function<std::vector<Constraint>(std::span<const double>)>;

struct BnBOptions {
  bool record_trace = false;
  // Optional starting incumbent; must satisfy the model and the callback.
  std::optional<std::vector<double>> initial_solution;
};

BnBResult branch_and_bound(const LinearModel& model, const LazyCallback& callback,
                           const SolveLimits& limits, const BnBOptions& options = {});

}  // namespace mtmclp::milp
