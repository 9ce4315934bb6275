#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>

#include "mtmclp/errors.hpp"
#include "mtmclp/milp.hpp"
#include "mtmclp/simplex.hpp"

namespace mtmclp::milp {

const char* to_string(BnBStatus status) {
  switch (status) {
    case BnBStatus::Optimal:
      return "optimal";
    case BnBStatus::Feasible:
      return "feasible";
    case BnBStatus::Infeasible:
      return "infeasible";
    case BnBStatus::Limit:
      return "limit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  long id = 0;
  long parent = -1;
  std::vector<BoundChange> changes;  // path from the root
  DualSimplex::Basis basis;
  double bound = kInfinity;
  int depth = 0;
};

// Best bound first; ties prefer the deeper node, then the older one.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const LinearModel& model, const LazyCallback& callback,
                 const SolveLimits& limits, const BnBOptions& options)
      : model_(model), callback_(callback), limits_(limits), options_(options), lp_(model) {}

  BnBResult run();

 private:
  // Effective bound of a node value, rounded down for integral objectives.
  double effective(double value) const {
    return model_.integral_objective() ? std::floor(value + 1e-6) : value;
  }
  bool prunable(double value) const {
    return has_incumbent_ && effective(value) <= incumbent_value_ + 1e-6;
  }
  void apply_bounds(const std::vector<BoundChange>& changes);
  // Returns the most fractional integer variable, or -1.
  int branching_variable(const std::vector<double>& x) const;
  std::vector<double> rounded(const std::vector<double>& x) const;
  // Runs the callback; returns true when the point is accepted.
  bool check_candidate(const std::vector<double>& candidate);
  void offer_incumbent(const std::vector<double>& candidate);
  // Moves deferred rows violated by `x` into the LP; true if any moved.
  bool activate_violated(const std::vector<double>& x);
  double open_bound() const;
  void record(long node);

  const LinearModel& model_;
  const LazyCallback& callback_;
  SolveLimits limits_;
  const BnBOptions& options_;
  DualSimplex lp_;
  Clock::time_point start_ = Clock::now();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  long next_id_ = 0;
  bool has_incumbent_ = false;
  double incumbent_value_ = 0.0;
  std::vector<double> incumbent_;
  double global_bound_ = kInfinity;
  std::vector<int> pending_;  // deferred model rows not yet in the LP
  BnBResult result_;
};

void BranchAndBound::apply_bounds(const std::vector<BoundChange>& changes) {
  const auto& vars = model_.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    lp_.set_bounds(static_cast<int>(j), vars[j].lower, vars[j].upper);
  }
  for (const BoundChange& c : changes) lp_.set_bounds(c.var, c.lower, c.upper);
}

int BranchAndBound::branching_variable(const std::vector<double>& x) const {
  int best = -1;
  double best_dist = 0.0;
  const auto& vars = model_.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (!vars[j].integer) continue;
    const double frac = x[j] - std::floor(x[j]);
    if (frac <= limits_.integrality_tolerance || frac >= 1.0 - limits_.integrality_tolerance) {
      continue;
    }
    const double closeness = 0.5 - std::fabs(frac - 0.5);  // larger = more fractional
    if (best < 0 || closeness > best_dist + 1e-12) {
      best = static_cast<int>(j);
      best_dist = closeness;
    }
  }
  return best;
}

std::vector<double> BranchAndBound::rounded(const std::vector<double>& x) const {
  std::vector<double> out = x;
  const auto& vars = model_.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].integer) out[j] = std::round(x[j]);
  }
  return out;
}

bool BranchAndBound::check_candidate(const std::vector<double>& candidate) {
  if (!callback_) return true;
  const auto t0 = Clock::now();
  std::vector<Constraint> cuts = callback_(candidate);
  result_.stats.callback_seconds += seconds_since(t0);
  ++result_.stats.callback_calls;
  if (cuts.empty()) return true;
  const bool any_violated = std::any_of(cuts.begin(), cuts.end(), [&](const Constraint& c) {
    return violation(c, candidate) > 1e-6;
  });
  if (!any_violated) {
    throw ContractError("lazy callback rejected a candidate without a violated cut");
  }
  lp_.add_rows(cuts);
  result_.stats.cuts_added += static_cast<long>(cuts.size());
  for (Constraint& c : cuts) result_.added_cuts.push_back(std::move(c));
  return false;
}

void BranchAndBound::offer_incumbent(const std::vector<double>& candidate) {
  double value = model_.objective_value(candidate);
  if (model_.integral_objective()) value = std::round(value);
  if (!has_incumbent_ || value > incumbent_value_ + 1e-9) {
    has_incumbent_ = true;
    incumbent_value_ = value;
    incumbent_ = candidate;
  }
}

bool BranchAndBound::activate_violated(const std::vector<double>& x) {
  std::vector<Constraint> rows;
  std::vector<int> rest;
  for (int i : pending_) {
    const Constraint& row = model_.constraints()[static_cast<std::size_t>(i)];
    if (violation(row, x) > 1e-9) {
      rows.push_back(row);
    } else {
      rest.push_back(i);
    }
  }
  if (rows.empty()) return false;
  lp_.add_rows(rows);
  pending_ = std::move(rest);
  return true;
}

double BranchAndBound::open_bound() const {
  return open_.empty() ? -kInfinity : effective(open_.top().bound);
}

void BranchAndBound::record(long node) {
  if (!options_.record_trace) return;
  TracePoint p;
  p.node = node;
  p.bound = global_bound_;
  p.has_incumbent = has_incumbent_;
  p.incumbent = incumbent_value_;
  result_.trace.push_back(p);
}

BnBResult BranchAndBound::run() {
  model_.validate();
  for (std::size_t i = 0; i < model_.num_constraints(); ++i) {
    if (model_.constraints()[i].deferred) pending_.push_back(static_cast<int>(i));
  }
  if (options_.initial_solution) {
    const std::vector<double>& init = *options_.initial_solution;
    if (init.size() != model_.num_variables() || model_.max_violation(init) > 1e-6) {
      throw ContractError("initial solution violates the model");
    }
    if (!check_candidate(rounded(init))) {
      throw ContractError("initial solution rejected by the lazy callback");
    }
    offer_incumbent(rounded(init));
  }

  open_.push(Node{next_id_++, -1, {}, {}, kInfinity, 0});
  long last_solved = -1;  // node whose final LP state is still loaded
  bool limit_hit = false;

  while (!open_.empty()) {
    const double frontier = open_bound();
    global_bound_ = std::min(global_bound_, std::max(frontier, has_incumbent_ ? incumbent_value_ : -kInfinity));
    if (has_incumbent_) {
      const double gap = (frontier - incumbent_value_) / std::max(std::fabs(incumbent_value_), 1e-10);
      if (frontier <= incumbent_value_ + 1e-6 || gap <= limits_.relative_gap) break;
    }
    if (seconds_since(start_) > limits_.time_limit_seconds ||
        result_.stats.nodes >= limits_.node_limit) {
      limit_hit = true;
      break;
    }

    Node node = open_.top();
    open_.pop();
    if (prunable(node.bound)) continue;
    ++result_.stats.nodes;

    apply_bounds(node.changes);
    if (node.parent != last_solved || node.parent < 0) {
      if (node.basis.empty()) {
        lp_.reset_to_slack_basis();
      } else {
        lp_.load_basis(node.basis);
      }
    }
    last_solved = node.id;

    // Solve, separating lazy cuts at integer points until the node settles.
    for (;;) {
      const auto t0 = Clock::now();
      const long before = lp_.iterations();
      const LpStatus status = lp_.solve();
      result_.stats.lp_iterations += lp_.iterations() - before;
      result_.stats.lp_seconds += seconds_since(t0);
      if (status == LpStatus::Unbounded) throw SolverError("LP relaxation is unbounded");
      if (status == LpStatus::Infeasible) break;
      const double value = lp_.objective();
      if (prunable(value)) break;
      std::vector<double> x = lp_.primal();
      if (activate_violated(x)) continue;
      const int branch = branching_variable(x);
      if (branch >= 0) {
        const DualSimplex::Basis basis = lp_.basis();
        const double v = x[branch];
        for (int side = 0; side < 2; ++side) {
          Node child;
          child.id = next_id_++;
          child.parent = node.id;
          child.changes = node.changes;
          const double lo = lp_.lower(branch);
          const double up = lp_.upper(branch);
          if (side == 0) {
            child.changes.push_back(BoundChange{branch, lo, std::floor(v)});
          } else {
            child.changes.push_back(BoundChange{branch, std::ceil(v), up});
          }
          child.basis = basis;
          child.bound = value;
          child.depth = node.depth + 1;
          open_.push(std::move(child));
        }
        break;
      }
      const std::vector<double> candidate = rounded(x);
      if (check_candidate(candidate)) {
        offer_incumbent(candidate);
        break;
      }
      // Cuts were added; the loaded basis stays valid with new slacks basic.
    }
    record(node.id);
  }

  const double frontier = open_bound();
  result_.final_constraint_count = model_.num_constraints() + result_.added_cuts.size();
  result_.stats.total_seconds = seconds_since(start_);
  if (has_incumbent_) {
    result_.incumbent = incumbent_;
    result_.objective = incumbent_value_;
    result_.bound = std::max(incumbent_value_, frontier);
    result_.gap = (result_.bound - result_.objective) / std::max(std::fabs(result_.objective), 1e-10);
    result_.status = limit_hit ? BnBStatus::Feasible : BnBStatus::Optimal;
  } else {
    result_.status = limit_hit ? BnBStatus::Limit : BnBStatus::Infeasible;
    result_.bound = limit_hit ? frontier : -kInfinity;
    result_.gap = limit_hit ? kInfinity : 0.0;
  }
  record(-1);
  return std::move(result_);
}

}  // namespace

BnBResult branch_and_bound(const LinearModel& model, const LazyCallback& callback,
                           const SolveLimits& limits, const BnBOptions& options) {
  BranchAndBound bnb(model, callback, limits, options);
  return bnb.run();
}

}  // namespace mtmclp::milp
