#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "mtmclp/errors.hpp"
#include "mtmclp/milp.hpp"
#include "mtmclp/simplex.hpp"

namespace mtmclp::milp {

// --- LinearModel --------------------------------------------------------------

double violation(const Constraint& row, std::span<const double> x) {
  double lhs = 0.0;
  for (const Term& t : row.terms) lhs += t.coef * x[t.var];
  switch (row.relation) {
    case Relation::LessEqual:
      return std::max(0.0, lhs - row.rhs);
    case Relation::GreaterEqual:
      return std::max(0.0, row.rhs - lhs);
    case Relation::Equal:
      return std::fabs(lhs - row.rhs);
  }
  return 0.0;
}

int LinearModel::add_variable(std::string name, double lower, double upper, bool integer,
                              double objective) {
  vars_.push_back(Variable{std::move(name), lower, upper, integer, objective});
  return static_cast<int>(vars_.size()) - 1;
}

int LinearModel::add_constraint(Constraint row) {
  rows_.push_back(std::move(row));
  return static_cast<int>(rows_.size()) - 1;
}

void LinearModel::set_variable_bounds(int var, double lower, double upper) {
  vars_.at(static_cast<std::size_t>(var)).lower = lower;
  vars_.at(static_cast<std::size_t>(var)).upper = upper;
}

double LinearModel::objective_value(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) s += vars_[j].objective * x[j];
  return s;
}

double LinearModel::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max({worst, vars_[j].lower - x[j], x[j] - vars_[j].upper});
  }
  for (const Constraint& row : rows_) worst = std::max(worst, violation(row, x));
  return worst;
}

void LinearModel::validate() const {
  std::ostringstream errs;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const Variable& v = vars_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      errs << "variable " << v.name << ": invalid bounds; ";
    }
    if (!std::isfinite(v.objective)) errs << "variable " << v.name << ": non-finite objective; ";
    if (v.integer && v.lower == 0.0 && v.upper == 1.0) continue;
  }
  for (const Constraint& row : rows_) {
    if (!std::isfinite(row.rhs)) errs << "row " << row.name << ": non-finite rhs; ";
    for (const Term& t : row.terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= vars_.size()) {
        errs << "row " << row.name << ": variable index out of range; ";
      } else if (!std::isfinite(t.coef)) {
        errs << "row " << row.name << ": non-finite coefficient; ";
      }
    }
  }
  if (!errs.str().empty()) throw InputError("invalid linear model: " + errs.str());
}

std::string LinearModel::to_lp_format() const {
  std::ostringstream os;
  os << std::setprecision(17);
  auto term_list = [&](const std::vector<Term>& terms) {
    bool first = true;
    for (const Term& t : terms) {
      if (t.coef == 0.0) continue;
      if (!first || t.coef < 0.0) os << (t.coef < 0.0 ? " - " : " + ");
      if (first && t.coef >= 0.0) os << ' ';
      os << std::fabs(t.coef) << ' ' << vars_[static_cast<std::size_t>(t.var)].name;
      first = false;
    }
    if (first) os << " 0 " << (vars_.empty() ? "x" : vars_[0].name);
  };
  os << "Maximize\n obj:";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (vars_[j].objective != 0.0) obj.push_back(Term{static_cast<int>(j), vars_[j].objective});
  }
  term_list(obj);
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Constraint& row = rows_[i];
    os << ' ' << (row.name.empty() ? "c" + std::to_string(i) : row.name) << ':';
    term_list(row.terms);
    switch (row.relation) {
      case Relation::LessEqual:
        os << " <= ";
        break;
      case Relation::GreaterEqual:
        os << " >= ";
        break;
      case Relation::Equal:
        os << " = ";
        break;
    }
    os << row.rhs << '\n';
  }
  os << "Bounds\n";
  for (const Variable& v : vars_) {
    if (v.integer && v.lower == 0.0 && v.upper == 1.0) continue;
    os << ' ';
    if (std::isinf(v.lower)) {
      os << "-inf";
    } else {
      os << v.lower;
    }
    os << " <= " << v.name << " <= ";
    if (std::isinf(v.upper)) {
      os << "+inf";
    } else {
      os << v.upper;
    }
    os << '\n';
  }
  std::ostringstream bin;
  std::ostringstream gen;
  for (const Variable& v : vars_) {
    if (!v.integer) continue;
    ((v.lower == 0.0 && v.upper == 1.0) ? bin : gen) << ' ' << v.name;
  }
  if (!bin.str().empty()) os << "Binaries\n" << bin.str() << '\n';
  if (!gen.str().empty()) os << "Generals\n" << gen.str() << '\n';
  os << "End\n";
  return os.str();
}

// --- DualSimplex ----------------------------------------------------------------

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorInterval = 100;
constexpr long kDegenerateBeforeBland = 1000;

std::vector<Term> merged_terms(const std::vector<Term>& terms) {
  std::map<int, double> acc;
  for (const Term& t : terms) acc[t.var] += t.coef;
  std::vector<Term> out;
  for (const auto& [var, coef] : acc) {
    if (coef != 0.0) out.push_back(Term{var, coef});
  }
  return out;
}

}  // namespace

DualSimplex::DualSimplex(const LinearModel& model) {
  n_ = static_cast<int>(model.num_variables());
  cols_.resize(static_cast<std::size_t>(n_));
  lo_.resize(static_cast<std::size_t>(n_));
  up_.resize(static_cast<std::size_t>(n_));
  artificial_lo_.assign(static_cast<std::size_t>(n_), false);
  artificial_up_.assign(static_cast<std::size_t>(n_), false);
  cost_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    const Variable& v = model.variables()[static_cast<std::size_t>(j)];
    cost_[j] = -v.objective;
    set_bounds(j, v.lower, v.upper);
  }
  state_.resize(static_cast<std::size_t>(n_));
  x_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    state_[j] = cost_[j] < 0.0 ? VarState::AtUpper : VarState::AtLower;
  }
  std::vector<Constraint> active;
  for (const Constraint& row : model.constraints()) {
    if (!row.deferred) active.push_back(row);
  }
  add_rows(active);
}

void DualSimplex::set_bounds(int var, double lower, double upper) {
  const bool inf_lo = std::isinf(lower);
  const bool inf_up = std::isinf(upper);
  lo_[var] = inf_lo ? -kArtificialBound : lower;
  up_[var] = inf_up ? kArtificialBound : upper;
  if (var < n_) {
    artificial_lo_[var] = inf_lo;
    artificial_up_[var] = inf_up;
  }
}

void DualSimplex::add_rows(std::span<const Constraint> rows) {
  for (const Constraint& row : rows) {
    const int i = m_++;
    std::vector<Term> terms = merged_terms(row.terms);
    for (const Term& t : terms) cols_[t.var].push_back(Entry{i, t.coef});
    rows_.push_back(terms);
    rel_.push_back(row.relation);
    rhs_.push_back(row.rhs);
    cost_.push_back(0.0);
    switch (row.relation) {
      case Relation::LessEqual:
        lo_.push_back(0.0);
        up_.push_back(kArtificialBound);
        break;
      case Relation::GreaterEqual:
        lo_.push_back(-kArtificialBound);
        up_.push_back(0.0);
        break;
      case Relation::Equal:
        lo_.push_back(0.0);
        up_.push_back(0.0);
        break;
    }
    state_.push_back(VarState::Basic);
    x_.push_back(0.0);
  }
  head_.clear();
  for (int j = 0; j < total_vars(); ++j) {
    if (state_[j] == VarState::Basic) head_.push_back(j);
  }
  factor_valid_ = false;
}

DualSimplex::Basis DualSimplex::basis() const { return Basis{state_}; }

void DualSimplex::load_basis(const Basis& b) {
  if (b.state.size() > static_cast<std::size_t>(total_vars()) ||
      b.state.size() < static_cast<std::size_t>(n_)) {
    reset_to_slack_basis();
    return;
  }
  std::vector<VarState> st = b.state;
  st.resize(static_cast<std::size_t>(total_vars()), VarState::Basic);
  const auto basic = std::count(st.begin(), st.end(), VarState::Basic);
  if (basic != m_) {
    reset_to_slack_basis();
    return;
  }
  state_ = std::move(st);
  head_.clear();
  for (int j = 0; j < total_vars(); ++j) {
    if (state_[j] == VarState::Basic) head_.push_back(j);
  }
  factor_valid_ = false;
}

void DualSimplex::reset_to_slack_basis() {
  for (int j = 0; j < n_; ++j) {
    state_[j] = cost_[j] < 0.0 ? VarState::AtUpper : VarState::AtLower;
  }
  head_.clear();
  for (int i = 0; i < m_; ++i) {
    state_[n_ + i] = VarState::Basic;
    head_.push_back(n_ + i);
  }
  factor_valid_ = false;
}

double DualSimplex::column_dot(const std::vector<double>& rho, int var) const {
  if (var >= n_) return rho[var - n_];
  double s = 0.0;
  for (const Entry& e : cols_[var]) s += rho[e.row] * e.value;
  return s;
}

void DualSimplex::column_times_binv(int var, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(m_), 0.0);
  const std::size_t m = static_cast<std::size_t>(m_);
  auto add_col = [&](int row, double value) {
    for (std::size_t k = 0; k < m; ++k) out[k] += binv_[k * m + row] * value;
  };
  if (var >= n_) {
    add_col(var - n_, 1.0);
  } else {
    for (const Entry& e : cols_[var]) add_col(e.row, e.value);
  }
}

// Basic slacks are unit columns, so only the block of basic structurals on
// rows whose slack is nonbasic needs a real inversion:
//   B^-1 = [ M^-1 on those rows ; e_i - A[i,S] M^-1 for slack rows i ].
void DualSimplex::refactor() {
  const std::size_t m = static_cast<std::size_t>(m_);
  std::vector<int> structural_pos;  // basis positions holding structurals
  std::vector<int> local(static_cast<std::size_t>(n_), -1);
  std::vector<int> slack_row_pos(m, -1);
  for (std::size_t k = 0; k < m; ++k) {
    const int var = head_[k];
    if (var >= n_) {
      slack_row_pos[static_cast<std::size_t>(var - n_)] = static_cast<int>(k);
    } else {
      local[var] = static_cast<int>(structural_pos.size());
      structural_pos.push_back(static_cast<int>(k));
    }
  }
  std::vector<int> tight_rows;
  std::vector<int> tight_index(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_row_pos[i] < 0) {
      tight_index[i] = static_cast<int>(tight_rows.size());
      tight_rows.push_back(static_cast<int>(i));
    }
  }
  const std::size_t k = structural_pos.size();
  bool singular = tight_rows.size() != k;

  // a[t][c]: coefficient of the c-th basic structural on the t-th tight row.
  std::vector<double> a(k * k, 0.0), inv(k * k, 0.0);
  if (!singular) {
    for (std::size_t c = 0; c < k; ++c) {
      for (const Entry& e : cols_[head_[structural_pos[c]]]) {
        const int t = tight_index[e.row];
        if (t >= 0) a[static_cast<std::size_t>(t) * k + c] = e.value;
      }
    }
    for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;
  }
  // Gauss-Jordan: row-reduce [a | I] so that afterwards inv = a^-1
  // (rows in structural order, columns in tight-row order).
  for (std::size_t c = 0; c < k && !singular; ++c) {
    std::size_t piv = c;
    double best = std::fabs(a[c * k + c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double v = std::fabs(a[r * k + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-11) {
      singular = true;
      break;
    }
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) {
        std::swap(a[piv * k + j], a[c * k + j]);
        std::swap(inv[piv * k + j], inv[c * k + j]);
      }
    }
    const double d = 1.0 / a[c * k + c];
    for (std::size_t j = 0; j < k; ++j) {
      a[c * k + j] *= d;
      inv[c * k + j] *= d;
    }
    const double* ac = &a[c * k];
    const double* ic = &inv[c * k];
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = a[r * k + c];
      if (f == 0.0) continue;
      double* ar = &a[r * k];
      double* ir = &inv[r * k];
      for (std::size_t j = c; j < k; ++j) ar[j] -= f * ac[j];
      for (std::size_t j = 0; j < k; ++j) ir[j] -= f * ic[j];
    }
  }
  if (singular) {
    reset_to_slack_basis();
    binv_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
    factor_valid_ = true;
    pivots_since_refactor_ = 0;
    return;
  }

  // After the reduction a = I, and inv maps tight-row residuals to the basic
  // structurals. Row c of inv is the c-th structural's row of B^-1.
  binv_.assign(m * m, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    double* row = &binv_[static_cast<std::size_t>(structural_pos[c]) * m];
    const double* src = &inv[c * k];
    for (std::size_t t = 0; t < k; ++t) row[tight_rows[t]] = src[t];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const int pos = slack_row_pos[i];
    if (pos < 0) continue;
    double* row = &binv_[static_cast<std::size_t>(pos) * m];
    row[i] = 1.0;
    for (const Term& t : rows_[i]) {
      const int c = local[t.var];
      if (c < 0) continue;
      const double* src = &inv[static_cast<std::size_t>(c) * k];
      for (std::size_t q = 0; q < k; ++q) row[tight_rows[q]] -= t.coef * src[q];
    }
  }
  factor_valid_ = true;
  pivots_since_refactor_ = 0;
}

void DualSimplex::compute_primal() {
  const std::size_t m = static_cast<std::size_t>(m_);
  std::vector<double> r(rhs_.begin(), rhs_.end());
  for (int j = 0; j < total_vars(); ++j) {
    if (state_[j] == VarState::Basic) continue;
    x_[j] = state_[j] == VarState::AtLower ? lo_[j] : up_[j];
    if (x_[j] == 0.0) continue;
    if (j >= n_) {
      r[j - n_] -= x_[j];
    } else {
      for (const Entry& e : cols_[j]) r[e.row] -= e.value * x_[j];
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double s = 0.0;
    const double* row = &binv_[k * m];
    for (std::size_t i = 0; i < m; ++i) s += row[i] * r[i];
    x_[head_[k]] = s;
  }
}

void DualSimplex::compute_duals() {
  const std::size_t m = static_cast<std::size_t>(m_);
  y_.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double cb = cost_[head_[k]];
    if (cb == 0.0) continue;
    const double* row = &binv_[k * m];
    for (std::size_t i = 0; i < m; ++i) y_[i] += cb * row[i];
  }
  d_.assign(static_cast<std::size_t>(total_vars()), 0.0);
  for (int j = 0; j < total_vars(); ++j) {
    if (state_[j] == VarState::Basic) continue;
    d_[j] = cost_[j] - column_dot(y_, j);
  }
}

void DualSimplex::flip_dual_infeasible() {
  for (int j = 0; j < total_vars(); ++j) {
    if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
    // Never park a variable on an artificial bound through a flip.
    if (std::fabs(lo_[j]) >= kArtificialBound || std::fabs(up_[j]) >= kArtificialBound) continue;
    if (state_[j] == VarState::AtLower && d_[j] < -kDualTol) {
      state_[j] = VarState::AtUpper;
    } else if (state_[j] == VarState::AtUpper && d_[j] > kDualTol) {
      state_[j] = VarState::AtLower;
    }
  }
}

bool DualSimplex::artificial_hit() const {
  for (int j = 0; j < n_; ++j) {
    if (artificial_lo_[j] && x_[j] <= -kArtificialBound + 1.0) return true;
    if (artificial_up_[j] && x_[j] >= kArtificialBound - 1.0) return true;
  }
  return false;
}

double DualSimplex::max_row_violation() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    double lhs = 0.0;
    for (const Term& t : rows_[i]) lhs += t.coef * x_[t.var];
    double v = 0.0;
    switch (rel_[i]) {
      case Relation::LessEqual:
        v = lhs - rhs_[i];
        break;
      case Relation::GreaterEqual:
        v = rhs_[i] - lhs;
        break;
      case Relation::Equal:
        v = std::fabs(lhs - rhs_[i]);
        break;
    }
    worst = std::max(worst, v);
  }
  for (int j = 0; j < n_; ++j) worst = std::max({worst, lo_[j] - x_[j], x_[j] - up_[j]});
  return worst;
}

LpStatus DualSimplex::solve() {
  const long max_iterations = 50L * (n_ + m_) + 20000;
  long iterations = 0;
  long degenerate_run = 0;
  bool bland = false;
  int infeasible_retries = 0;
  int residual_retries = 0;
  const std::size_t m = static_cast<std::size_t>(m_);
  std::vector<double> rho(m);
  std::vector<double> column;
  std::vector<double> alpha(static_cast<std::size_t>(total_vars()), 0.0);
  struct Candidate {
    int var;
    double alpha;
    double dj;
  };
  std::vector<Candidate> cands;

  // Primal values and reduced costs are updated per pivot and recomputed
  // from scratch whenever the factor is rebuilt.
  bool fresh = false;
  auto refresh = [&] {
    if (!factor_valid_ || pivots_since_refactor_ > 0) refactor();
    compute_duals();
    flip_dual_infeasible();
    compute_primal();
    fresh = true;
  };
  refresh();
  for (;;) {
    if (pivots_since_refactor_ >= kRefactorInterval) refresh();

    // Leaving row: largest bound violation among basic variables.
    int r = -1;
    double worst = kPrimalTol;
    for (std::size_t k = 0; k < m; ++k) {
      const int j = head_[k];
      const double infeas = std::max(lo_[j] - x_[j], x_[j] - up_[j]);
      if (infeas <= kPrimalTol) continue;
      if (bland) {
        if (r < 0 || j < head_[r]) r = static_cast<int>(k);
      } else if (infeas > worst || (infeas == worst && r >= 0 && j < head_[r])) {
        worst = infeas;
        r = static_cast<int>(k);
      }
    }
    if (r < 0) {
      if (!fresh) {
        refresh();
        continue;
      }
      if (max_row_violation() > 1e-7) {
        if (++residual_retries > 3) throw SolverError("LP residual above 1e-7 after refactorisation");
        refactor();
        refresh();
        continue;
      }
      if (artificial_hit()) return LpStatus::Unbounded;
      total_iterations_ += iterations;
      return LpStatus::Optimal;
    }

    const int leaving = head_[r];
    const bool to_lower = x_[leaving] < lo_[leaving];
    std::copy_n(&binv_[static_cast<std::size_t>(r) * m], m, rho.begin());

    // Ratio test (Harris two-pass, or Bland's rule after long degeneracy).
    cands.clear();
    double theta_max = kInfinity;
    for (int j = 0; j < total_vars(); ++j) {
      if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
      const double a = column_dot(rho, j);
      alpha[j] = a;
      if (std::fabs(a) < kPivotTol) continue;
      const bool at_lower = state_[j] == VarState::AtLower;
      const bool eligible = to_lower ? (at_lower ? a < 0.0 : a > 0.0) : (at_lower ? a > 0.0 : a < 0.0);
      if (!eligible) continue;
      const double dj = std::max(0.0, at_lower ? d_[j] : -d_[j]);
      cands.push_back(Candidate{j, a, dj});
      theta_max = std::min(theta_max, (dj + kDualTol) / std::fabs(a));
    }
    if (cands.empty()) {
      if (!fresh || ++infeasible_retries <= 1) {
        refactor();
        refresh();
        continue;
      }
      total_iterations_ += iterations;
      return LpStatus::Infeasible;
    }
    const Candidate* chosen = nullptr;
    if (bland) {
      double theta_min = kInfinity;
      for (const Candidate& c : cands) theta_min = std::min(theta_min, c.dj / std::fabs(c.alpha));
      for (const Candidate& c : cands) {
        if (c.dj / std::fabs(c.alpha) <= theta_min + 1e-12 && (!chosen || c.var < chosen->var)) {
          chosen = &c;
        }
      }
    } else {
      for (const Candidate& c : cands) {
        if (c.dj / std::fabs(c.alpha) > theta_max) continue;
        if (!chosen || std::fabs(c.alpha) > std::fabs(chosen->alpha)) chosen = &c;
      }
    }
    const int q = chosen->var;
    const double step = chosen->dj / std::fabs(chosen->alpha);

    column_times_binv(q, column);
    const double pivot = column[static_cast<std::size_t>(r)];
    if (std::fabs(pivot) < 1e-11 || std::fabs(pivot - alpha[q]) > 1e-7 * (1.0 + std::fabs(pivot))) {
      if (++infeasible_retries > 5) throw SolverError("LP pivot breakdown");
      refactor();
      refresh();
      continue;
    }

    // Dual update: the entering reduced cost drops to zero.
    const double theta_d = d_[q] / alpha[q];
    for (int j = 0; j < total_vars(); ++j) {
      if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
      d_[j] -= theta_d * alpha[j];
    }
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    // Primal update: the leaving variable lands on its violated bound.
    const double bound = to_lower ? lo_[leaving] : up_[leaving];
    const double theta_p = (x_[leaving] - bound) / pivot;
    for (std::size_t k = 0; k < m; ++k) x_[head_[k]] -= theta_p * column[k];
    x_[q] += theta_p;
    x_[leaving] = bound;

    double* prow = &binv_[static_cast<std::size_t>(r) * m];
    for (std::size_t i = 0; i < m; ++i) prow[i] /= pivot;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == static_cast<std::size_t>(r)) continue;
      const double f = column[k];
      if (f == 0.0) continue;
      double* row = &binv_[k * m];
      for (std::size_t i = 0; i < m; ++i) row[i] -= f * prow[i];
    }
    state_[leaving] = to_lower ? VarState::AtLower : VarState::AtUpper;
    state_[q] = VarState::Basic;
    head_[static_cast<std::size_t>(r)] = q;
    ++pivots_since_refactor_;
    ++iterations;
    fresh = false;

    degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    if (degenerate_run > kDegenerateBeforeBland) bland = true;
    if (iterations > max_iterations) throw SolverError("LP iteration limit exceeded");
  }
}

double DualSimplex::objective() const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s -= cost_[j] * x_[j];
  return s;
}

std::vector<double> DualSimplex::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

LpResult solve_lp(const LinearModel& model) {
  model.validate();
  DualSimplex simplex(model);
  LpResult result;
  std::vector<const Constraint*> pending;
  for (const Constraint& row : model.constraints()) {
    if (row.deferred) pending.push_back(&row);
  }
  for (;;) {
    result.status = simplex.solve();
    if (result.status != LpStatus::Optimal) break;
    const std::vector<double> x = simplex.primal();
    std::vector<Constraint> violated;
    std::vector<const Constraint*> rest;
    for (const Constraint* row : pending) {
      if (violation(*row, x) > 1e-9) {
        violated.push_back(*row);
      } else {
        rest.push_back(row);
      }
    }
    if (violated.empty()) break;
    simplex.add_rows(violated);
    pending = std::move(rest);
  }
  result.iterations = simplex.iterations();
  if (result.status == LpStatus::Optimal) {
    result.values = simplex.primal();
    result.objective = simplex.objective();
  }
  return result;
}

}  // namespace mtmclp::milp
