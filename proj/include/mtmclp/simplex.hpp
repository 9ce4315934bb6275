#pragma once

// Bounded-variable dual simplex with an explicit dense basis inverse.
//
// Every row a.x (rel) b gets a slack s with a.x + s = b, so the slack basis
// is always available. All variables are kept boxed (infinite bounds are
// replaced by +-kArtificialBound); a final point resting on an artificial
// bound is reported as unbounded. Boxed nonbasic variables sit at whichever
// bound makes their reduced cost dual feasible, so a cold start is always
// dual feasible and branching or cut rows only cost a few dual pivots.

#include <cstdint>
#include <span>
#include <vector>

#include "mtmclp/milp.hpp"

namespace mtmclp::milp {

class DualSimplex {
 public:
  enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

  struct Basis {
    std::vector<VarState> state;  // structurals then slacks
    bool empty() const { return state.empty(); }
  };

  static constexpr double kArtificialBound = 1e7;

  explicit DualSimplex(const LinearModel& model);

  int num_structurals() const { return n_; }
  int num_rows() const { return m_; }

  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return up_[var]; }

  void add_rows(std::span<const Constraint> rows);

  Basis basis() const;
  // Rows added after `b` was captured get their slack in the basis.
  void load_basis(const Basis& b);
  void reset_to_slack_basis();

  LpStatus solve();

  double objective() const;  // maximisation sense of the source model
  std::vector<double> primal() const;
  long iterations() const { return total_iterations_; }
  double max_row_violation() const;

 private:
  struct Entry {
    int row;
    double value;
  };

  int total_vars() const { return n_ + m_; }
  double column_dot(const std::vector<double>& rho, int var) const;
  void column_times_binv(int var, std::vector<double>& out) const;
  void place_nonbasic_dual_feasible(int var);
  void refactor();
  void compute_primal();
  void compute_duals();
  void flip_dual_infeasible();
  bool artificial_hit() const;

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Entry>> cols_;  // structural columns
  std::vector<std::vector<Term>> rows_;   // row-wise copy for residual checks
  std::vector<Relation> rel_;
  std::vector<double> rhs_;
  std::vector<double> cost_;  // minimisation costs, slack costs are zero
  std::vector<double> lo_, up_;
  std::vector<bool> artificial_lo_, artificial_up_;

  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<int> head_;     // basic variable per row position
  std::vector<double> binv_;  // m x m row-major
  std::vector<double> y_;     // duals
  std::vector<double> d_;     // reduced costs
  bool factor_valid_ = false;
  int pivots_since_refactor_ = 0;
  long total_iterations_ = 0;
};

}  // namespace mtmclp::milp
