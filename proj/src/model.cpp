#include "mtmclp/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mtmclp/errors.hpp"
#include "mtmclp/kernels.hpp"

namespace mtmclp {

std::vector<Point> Instance::points() const {
  std::vector<Point> out;
  out.reserve(demand.size());
  for (const DemandPoint& d : demand) out.push_back(d.point);
  return out;
}

std::vector<double> Instance::weights() const {
  std::vector<double> out;
  out.reserve(demand.size());
  for (const DemandPoint& d : demand) out.push_back(d.weight);
  return out;
}

double Instance::total_weight() const {
  double s = 0.0;
  for (const DemandPoint& d : demand) s += d.weight;
  return s;
}

bool Instance::integral_weights() const {
  return std::all_of(demand.begin(), demand.end(),
                     [](const DemandPoint& d) { return d.weight == std::round(d.weight); });
}

std::vector<std::string> validation_errors(const Instance& instance) {
  std::vector<std::string> errs;
  auto add = [&](const std::string& what) { errs.push_back(what); };
  const std::size_t d = instance.dimension;
  if (d < 1) add("dimension must be at least 1");
  if (instance.demand.empty()) add("demand list is empty");
  for (std::size_t i = 0; i < instance.demand.size(); ++i) {
    const DemandPoint& p = instance.demand[i];
    const std::string where = "demand[" + std::to_string(i) + "]";
    if (p.point.dim() != d) add(where + ": dimension " + std::to_string(p.point.dim()) + " != " + std::to_string(d));
    if (!p.point.all_finite()) add(where + ": non-finite coordinate");
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) add(where + ": weight must be a finite value >= 0");
  }
  long requested = 0;
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& s = instance.discrete_types[t];
    const std::string where = "discrete_types[" + std::to_string(t) + "]";
    if (s.radii.size() != s.sites.size()) add(where + ": radii and sites differ in length");
    if (s.count < 0) add(where + ": count must be >= 0");
    if (static_cast<std::size_t>(std::max(s.count, 0)) > s.sites.size()) {
      add(where + ": count exceeds the number of sites");
    }
    for (std::size_t j = 0; j < s.sites.size(); ++j) {
      if (s.sites[j].dim() != d) add(where + ".sites[" + std::to_string(j) + "]: wrong dimension");
      if (!s.sites[j].all_finite()) add(where + ".sites[" + std::to_string(j) + "]: non-finite coordinate");
    }
    for (std::size_t j = 0; j < s.radii.size(); ++j) {
      if (!(s.radii[j] > 0.0) || !std::isfinite(s.radii[j])) {
        add(where + ".sites[" + std::to_string(j) + "]: radius must be positive");
      }
    }
    requested += std::max(s.count, 0);
  }
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& s = instance.continuous_types[t];
    const std::string where = "continuous_types[" + std::to_string(t) + "]";
    if (!(s.radius > 0.0) || !std::isfinite(s.radius)) add(where + ": radius must be positive");
    if (s.count < 0) add(where + ": count must be >= 0");
    if (s.norm.kind == NormKind::Lp && !(s.norm.tau >= 1.0)) add(where + ": Lp norm needs tau >= 1");
    requested += std::max(s.count, 0);
  }
  if (requested < 1) add("at least one facility must be requested");
  // Pairwise distinctness is only checked when dimensions are consistent.
  if (errs.empty()) {
    std::map<Point, std::size_t> seen;
    for (std::size_t i = 0; i < instance.demand.size(); ++i) {
      auto [it, inserted] = seen.emplace(instance.demand[i].point, i);
      if (!inserted) {
        add("demand[" + std::to_string(i) + "]: duplicates demand[" + std::to_string(it->second) + "]");
      }
    }
  }
  return errs;
}

void validate(const Instance& instance) {
  const std::vector<std::string> errs = validation_errors(instance);
  if (errs.empty()) return;
  std::ostringstream os;
  os << "invalid instance:";
  for (const std::string& e : errs) os << "\n  - " << e;
  throw InputError(os.str());
}

Instance deduplicated(Instance instance) {
  std::map<Point, std::size_t> first;
  std::vector<DemandPoint> merged;
  merged.reserve(instance.demand.size());
  for (DemandPoint& p : instance.demand) {
    auto it = first.find(p.point);
    if (it != first.end()) {
      merged[it->second].weight += p.weight;
      continue;
    }
    first.emplace(p.point, merged.size());
    merged.push_back(std::move(p));
  }
  instance.demand = std::move(merged);
  return instance;
}

std::vector<int> Assignment::cluster(std::size_t t, std::size_t k) const {
  std::vector<int> out;
  const auto& flags = continuous_cover.at(t).at(k);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

Assignment Assignment::empty_for(const Instance& instance) {
  Assignment a;
  const std::size_t n = instance.size();
  a.open_sites.resize(instance.discrete_types.size());
  a.discrete_cover.assign(instance.discrete_types.size(), std::vector<std::uint8_t>(n, 0));
  for (const ContinuousTypeSpec& s : instance.continuous_types) {
    a.continuous_cover.emplace_back(static_cast<std::size_t>(std::max(s.count, 0)),
                                    std::vector<std::uint8_t>(n, 0));
  }
  return a;
}

namespace {

bool batched(const NormSpec& norm, std::size_t dim) {
  return dim == 2 && norm.kind != NormKind::Lp;
}

}  // namespace

std::vector<int> covered_by(const Instance& instance, const Point& center, double radius,
                            const NormSpec& norm) {
  std::vector<int> out;
  if (batched(norm, instance.dimension)) {
    static thread_local std::vector<std::uint8_t> marks;
    const kernels::PlanarSoA soa(instance.points());
    marks.resize(soa.size());
    kernels::mark_within(norm.kind, soa, center[0], center[1], radius, marks);
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i]) out.push_back(static_cast<int>(i));
    }
    return out;
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (within(instance.demand[i].point, center, radius, norm)) out.push_back(static_cast<int>(i));
  }
  return out;
}

CoverageTable coverage_table(const Instance& instance) {
  const std::size_t n = instance.size();
  CoverageTable table(instance.discrete_types.size(), std::vector<std::vector<int>>(n));
  const std::vector<Point> pts = instance.points();
  kernels::PlanarSoA soa;
  if (instance.dimension == 2) soa = kernels::PlanarSoA(pts);
  std::vector<std::uint8_t> marks(n);
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      const Point& site = spec.sites[j];
      if (batched(spec.norm, instance.dimension)) {
        kernels::mark_within(spec.norm.kind, soa, site[0], site[1], spec.radii[j], marks);
      } else {
        for (std::size_t i = 0; i < n; ++i) marks[i] = within(pts[i], site, spec.radii[j], spec.norm);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (marks[i]) table[t][i].push_back(static_cast<int>(j));
      }
    }
  }
  return table;
}

std::vector<std::pair<int, int>> incompatible_pairs(std::span<const Point> points, double rho,
                                                    const NormSpec& norm) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(points.size());
  // Two balls of radius rho meet iff their centers are within 2 rho, for any norm.
  if (n > 0 && batched(norm, points[0].dim())) {
    const kernels::PlanarSoA soa(points);
    std::vector<std::uint8_t> marks(points.size());
    for (int i = 0; i < n; ++i) {
      kernels::mark_within(norm.kind, soa, points[i][0], points[i][1], 2.0 * rho, marks);
      for (int l = i + 1; l < n; ++l) {
        if (!marks[l]) out.emplace_back(i, l);
      }
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      if (!within(points[i], points[l], 2.0 * rho, norm)) out.emplace_back(i, l);
    }
  }
  return out;
}

// --- Incomplete integer formulation --------------------------------------------

namespace {

std::string var_name(const char* prefix, std::initializer_list<std::size_t> idx) {
  std::string s = prefix;
  for (std::size_t v : idx) s += "_" + std::to_string(v);
  return s;
}

// Greedy edge clique cover of the incompatibility graph: each clique is grown
// to maximality, preferring vertices that cover the most uncovered edges.
std::vector<std::vector<int>> clique_cover(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::uint8_t>> adj(static_cast<std::size_t>(n),
                                             std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = 1;
  std::vector<std::vector<std::uint8_t>> open = adj;
  std::vector<std::vector<int>> cliques;
  std::vector<int> gain(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!open[u][v]) continue;
      std::vector<int> clique{u, v};
      std::vector<int> cand;
      for (int w = 0; w < n; ++w) {
        if (w != u && w != v && adj[u][w] && adj[v][w]) cand.push_back(w);
      }
      for (int w : cand) gain[w] = open[u][w] + open[v][w];
      while (!cand.empty()) {
        int best = cand[0];
        for (int w : cand) {
          if (gain[w] > gain[best]) best = w;
        }
        clique.push_back(best);
        std::vector<int> next;
        for (int w : cand) {
          if (w != best && adj[best][w]) {
            gain[w] += open[best][w];
            next.push_back(w);
          }
        }
        cand = std::move(next);
      }
      for (std::size_t a = 0; a < clique.size(); ++a) {
        for (std::size_t b = a + 1; b < clique.size(); ++b) {
          open[clique[a]][clique[b]] = open[clique[b]][clique[a]] = 0;
        }
      }
      std::sort(clique.begin(), clique.end());
      cliques.push_back(std::move(clique));
    }
  }
  return cliques;
}

}  // namespace

std::vector<milp::Constraint> cut_rows(const IpLayout& layout, const Cut& cut) {
  std::vector<milp::Constraint> rows;
  const auto& slots = layout.slot_vars.at(static_cast<std::size_t>(cut.type));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    milp::Constraint row;
    std::ostringstream name;
    name << "cut_t" << cut.type << "_k" << k;
    for (int i : cut.members) name << '_' << i;
    row.name = name.str();
    for (int i : cut.members) row.terms.push_back(milp::Term{slots[k][static_cast<std::size_t>(i)], 1.0});
    row.relation = milp::Relation::LessEqual;
    row.rhs = static_cast<double>(cut.members.size()) - 1.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t add_symmetry_breaking(milp::LinearModel& model, const IpLayout& layout,
                                  const Instance& instance) {
  std::size_t added = 0;
  for (std::size_t t = 0; t < layout.slot_vars.size(); ++t) {
    const auto& slots = layout.slot_vars[t];
    for (std::size_t k = 1; k < slots.size(); ++k) {
      milp::Constraint row;
      row.name = var_name("sym", {t, k});
      for (std::size_t i = 0; i < instance.size(); ++i) {
        const double w = instance.demand[i].weight;
        if (w == 0.0) continue;
        row.terms.push_back(milp::Term{slots[k - 1][i], w});
        row.terms.push_back(milp::Term{slots[k][i], -w});
      }
      row.relation = milp::Relation::LessEqual;
      row.rhs = 0.0;
      model.add_constraint(std::move(row));
      ++added;
    }
  }
  return added;
}

IpModel build_incomplete_ip(const Instance& instance, std::span<const Cut> pool,
                            const IpBuildOptions& options) {
  for (const ContinuousTypeSpec& s : instance.continuous_types) {
    if (s.count > 0 && !separation_supported(s.norm, instance.dimension)) {
      throw_capability("branch-and-cut separation does not support norm " + s.norm.to_string() +
                       " in dimension " + std::to_string(instance.dimension));
    }
  }
  IpModel out;
  milp::LinearModel& model = out.model;
  IpLayout& layout = out.layout;
  const std::size_t n = instance.size();
  const CoverageTable cover = coverage_table(instance);

  layout.site_vars.resize(instance.discrete_types.size());
  layout.cover_vars.resize(instance.discrete_types.size());
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    if (spec.count <= 0) continue;
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      layout.site_vars[t].push_back(model.add_binary(var_name("y", {t, j}), 0.0));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int x = model.add_binary(var_name("x", {t, i}), instance.demand[i].weight);
      if (cover[t][i].empty()) model.set_variable_bounds(x, 0.0, 0.0);
      layout.cover_vars[t].push_back(x);
    }
  }
  layout.slot_vars.resize(instance.continuous_types.size());
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const int p = std::max(instance.continuous_types[t].count, 0);
    layout.slot_vars[t].resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        layout.slot_vars[t][k].push_back(model.add_binary(
            var_name("z", {t, static_cast<std::size_t>(k), i}), instance.demand[i].weight));
      }
    }
  }

  // Exactly p_t open sites per discrete type.
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    if (layout.site_vars[t].empty()) continue;
    milp::Constraint row{var_name("card", {t}), {}, milp::Relation::Equal,
                         static_cast<double>(instance.discrete_types[t].count)};
    for (int y : layout.site_vars[t]) row.terms.push_back(milp::Term{y, 1.0});
    model.add_constraint(std::move(row));
  }
  // x_i^t only if an open site of type t covers i.
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    if (layout.site_vars[t].empty()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (cover[t][i].empty()) continue;
      milp::Constraint row{var_name("link", {t, i}), {{layout.cover_vars[t][i], 1.0}},
                           milp::Relation::LessEqual, 0.0};
      for (int j : cover[t][i]) row.terms.push_back(milp::Term{layout.site_vars[t][static_cast<std::size_t>(j)], -1.0});
      model.add_constraint(std::move(row));
    }
  }
  // Each demand point is credited at most once.
  for (std::size_t i = 0; i < n; ++i) {
    milp::Constraint row{var_name("once", {i}), {}, milp::Relation::LessEqual, 1.0};
    for (std::size_t t = 0; t < layout.cover_vars.size(); ++t) {
      if (!layout.cover_vars[t].empty()) row.terms.push_back(milp::Term{layout.cover_vars[t][i], 1.0});
    }
    for (const auto& slots : layout.slot_vars) {
      for (const auto& slot : slots) row.terms.push_back(milp::Term{slot[i], 1.0});
    }
    if (row.terms.size() >= 2) model.add_constraint(std::move(row));
  }
  // Pairwise incompatibilities.
  const std::vector<Point> pts = instance.points();
  const std::size_t rows_before_pairs = model.num_constraints();
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    if (spec.count <= 0) continue;
    const auto pairs = incompatible_pairs(pts, spec.radius, spec.norm);
    std::vector<std::vector<int>> groups;
    if (options.pairwise == PairwiseForm::Cliques) {
      groups = clique_cover(static_cast<int>(n), pairs);
    } else {
      for (auto [a, b] : pairs) groups.push_back({a, b});
    }
    for (const auto& g : groups) {
      for (std::size_t k = 0; k < layout.slot_vars[t].size(); ++k) {
        milp::Constraint row{var_name("pair", {t, k}) + "_" + std::to_string(g[0]) + "_" + std::to_string(g[1]),
                             {}, milp::Relation::LessEqual, 1.0, options.defer_incompatibility};
        for (int i : g) row.terms.push_back(milp::Term{layout.slot_vars[t][k][static_cast<std::size_t>(i)], 1.0});
        model.add_constraint(std::move(row));
      }
    }
  }
  out.pairwise_rows = model.num_constraints() - rows_before_pairs;
  for (const Cut& cut : pool) {
    if (cut.type < 0 || static_cast<std::size_t>(cut.type) >= layout.slot_vars.size()) {
      throw_contract("cut refers to an unknown continuous type");
    }
    for (milp::Constraint& row : cut_rows(layout, cut)) {
      row.deferred = options.defer_incompatibility;
      model.add_constraint(std::move(row));
      ++out.pool_rows;
    }
  }
  if (options.symmetry) out.symmetry_rows = add_symmetry_breaking(model, layout, instance);
  model.set_integral_objective(instance.integral_weights());
  return out;
}

Assignment decode_assignment(const Instance& instance, const IpLayout& layout,
                             std::span<const double> values) {
  Assignment a = Assignment::empty_for(instance);
  for (std::size_t t = 0; t < layout.site_vars.size(); ++t) {
    for (std::size_t j = 0; j < layout.site_vars[t].size(); ++j) {
      if (values[layout.site_vars[t][j]] > 0.5) a.open_sites[t].push_back(static_cast<int>(j));
    }
    for (std::size_t i = 0; i < layout.cover_vars[t].size(); ++i) {
      a.discrete_cover[t][i] = values[layout.cover_vars[t][i]] > 0.5;
    }
  }
  for (std::size_t t = 0; t < layout.slot_vars.size(); ++t) {
    for (std::size_t k = 0; k < layout.slot_vars[t].size(); ++k) {
      for (std::size_t i = 0; i < layout.slot_vars[t][k].size(); ++i) {
        a.continuous_cover[t][k][i] = values[layout.slot_vars[t][k][i]] > 0.5;
      }
    }
  }
  return a;
}

// --- Balls intersection points set -----------------------------------------------

namespace {

// Merges points closer than kGeomTolerance, keeping first-seen order.
class PointDeduper {
 public:
  bool insert(const Point& p) {
    const auto cx = static_cast<long long>(std::floor(p[0] / kCell));
    const auto cy = static_cast<long long>(std::floor(p[1] / kCell));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (std::size_t idx : it->second) {
          const Point& q = points_[idx];
          if (std::fabs(q[0] - p[0]) <= kGeomTolerance && std::fabs(q[1] - p[1]) <= kGeomTolerance) {
            return false;
          }
        }
      }
    }
    cells_[key(cx, cy)].push_back(points_.size());
    points_.push_back(p);
    return true;
  }
  std::vector<Point> take() { return std::move(points_); }

 private:
  static constexpr double kCell = 1e-6;
  static std::uint64_t key(long long x, long long y) {
    return (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(y);
  }
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
  std::vector<Point> points_;
};

void require_bips(const Instance& instance, std::size_t type) {
  if (type >= instance.continuous_types.size()) throw_contract("unknown continuous type");
  const ContinuousTypeSpec& spec = instance.continuous_types[type];
  if (instance.dimension != 2 || spec.norm.kind != NormKind::L2) {
    throw_capability("BIPS requires planar Euclidean continuous facilities (type " +
                     std::to_string(type) + " uses " + spec.norm.to_string() + " in d = " +
                     std::to_string(instance.dimension) + ")");
  }
}

}  // namespace

std::vector<Point> build_bips(const Instance& instance, std::size_t type) {
  require_bips(instance, type);
  const double rho = instance.continuous_types[type].radius;
  const std::vector<Point> pts = instance.points();
  PointDeduper dedup;
  for (const Point& p : pts) dedup.insert(p);
  const kernels::PlanarSoA soa(pts);
  std::vector<std::uint8_t> marks(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    kernels::mark_within(NormKind::L2, soa, pts[i][0], pts[i][1], 2.0 * rho, marks);
    for (std::size_t l = i + 1; l < pts.size(); ++l) {
      if (!marks[l]) continue;
      for (const Point& c : circle_boundary_intersection(pts[i], pts[l], rho)) dedup.insert(c);
    }
  }
  return dedup.take();
}

BipsModel build_bips_ip(const Instance& instance) {
  std::vector<std::vector<Point>> candidates(instance.continuous_types.size());
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    if (instance.continuous_types[t].count > 0) candidates[t] = build_bips(instance, t);
  }
  return build_bips_ip(instance, std::move(candidates));
}

BipsModel build_bips_ip(const Instance& instance, std::vector<std::vector<Point>> candidates) {
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    if (instance.continuous_types[t].count > 0) require_bips(instance, t);
  }
  BipsModel out;
  milp::LinearModel& model = out.model;
  BipsLayout& layout = out.layout;
  layout.candidates = std::move(candidates);
  layout.candidates.resize(instance.continuous_types.size());
  const std::size_t n = instance.size();
  std::vector<std::vector<int>> covering(n);  // variables able to cover i

  const CoverageTable cover = coverage_table(instance);
  layout.site_vars.resize(instance.discrete_types.size());
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    if (spec.count <= 0) continue;
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      layout.site_vars[t].push_back(model.add_binary(var_name("y1", {t, j}), 0.0));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int j : cover[t][i]) covering[i].push_back(layout.site_vars[t][static_cast<std::size_t>(j)]);
    }
  }
  layout.candidate_vars.resize(instance.continuous_types.size());
  const kernels::PlanarSoA soa(instance.points());
  std::vector<std::uint8_t> marks(n);
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    if (spec.count <= 0) continue;
    for (std::size_t l = 0; l < layout.candidates[t].size(); ++l) {
      const Point& c = layout.candidates[t][l];
      const int var = model.add_binary(var_name("y2", {t, l}), 0.0);
      layout.candidate_vars[t].push_back(var);
      kernels::mark_within(NormKind::L2, soa, c[0], c[1], spec.radius, marks);
      for (std::size_t i = 0; i < n; ++i) {
        if (marks[i]) covering[i].push_back(var);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    layout.cover_vars.push_back(
        model.add_variable(var_name("x", {i}), 0.0, 1.0, false, instance.demand[i].weight));
  }

  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    if (layout.site_vars[t].empty()) continue;
    milp::Constraint row{var_name("card1", {t}), {}, milp::Relation::Equal,
                         static_cast<double>(instance.discrete_types[t].count)};
    for (int y : layout.site_vars[t]) row.terms.push_back(milp::Term{y, 1.0});
    model.add_constraint(std::move(row));
  }
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    if (layout.candidate_vars[t].empty()) continue;
    // More slots than candidates: the surplus slots cover nothing.
    const std::size_t open = std::min(static_cast<std::size_t>(instance.continuous_types[t].count),
                                      layout.candidate_vars[t].size());
    milp::Constraint row{var_name("card2", {t}), {}, milp::Relation::Equal, static_cast<double>(open)};
    for (int y : layout.candidate_vars[t]) row.terms.push_back(milp::Term{y, 1.0});
    model.add_constraint(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i) {
    milp::Constraint row{var_name("cover", {i}), {{layout.cover_vars[i], 1.0}},
                         milp::Relation::LessEqual, 0.0};
    for (int v : covering[i]) row.terms.push_back(milp::Term{v, -1.0});
    model.add_constraint(std::move(row));
  }
  model.set_integral_objective(instance.integral_weights());
  return out;
}

// --- Evaluation --------------------------------------------------------------------

Assignment assignment_from_facilities(const Instance& instance,
                                      const std::vector<std::vector<int>>& open_sites,
                                      const std::vector<std::vector<Point>>& centers) {
  Assignment a = Assignment::empty_for(instance);
  const std::size_t n = instance.size();
  std::vector<std::uint8_t> taken(n, 0);
  for (std::size_t t = 0; t < instance.discrete_types.size() && t < open_sites.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    a.open_sites[t] = open_sites[t];
    for (int j : open_sites[t]) {
      for (int i : covered_by(instance, spec.sites[static_cast<std::size_t>(j)], spec.radii[static_cast<std::size_t>(j)], spec.norm)) {
        if (taken[i]) continue;
        taken[i] = 1;
        a.discrete_cover[t][i] = 1;
      }
    }
  }
  for (std::size_t t = 0; t < instance.continuous_types.size() && t < centers.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    for (std::size_t k = 0; k < centers[t].size() && k < a.continuous_cover[t].size(); ++k) {
      for (int i : covered_by(instance, centers[t][k], spec.radius, spec.norm)) {
        if (taken[i]) continue;
        taken[i] = 1;
        a.continuous_cover[t][k][i] = 1;
      }
    }
  }
  return a;
}

EvaluationReport evaluate(const Instance& instance, const Solution& solution) {
  EvaluationReport report;
  const std::size_t n = instance.size();
  report.covered.assign(n, 0);
  const Assignment& a = solution.assignment;
  auto flag = [&](const std::string& what) { report.violations.push_back(what); };

  std::vector<int> marks(n, 0);
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    const std::vector<int> open = t < a.open_sites.size() ? a.open_sites[t] : std::vector<int>{};
    if (static_cast<int>(open.size()) != spec.count) {
      flag("discrete type " + std::to_string(t) + ": " + std::to_string(open.size()) +
           " open sites, expected " + std::to_string(spec.count));
    }
    std::vector<std::uint8_t> by_open(n, 0);
    for (int j : open) {
      if (j < 0 || static_cast<std::size_t>(j) >= spec.sites.size()) {
        flag("discrete type " + std::to_string(t) + ": site index " + std::to_string(j) + " out of range");
        continue;
      }
      for (int i : covered_by(instance, spec.sites[static_cast<std::size_t>(j)], spec.radii[static_cast<std::size_t>(j)], spec.norm)) {
        by_open[i] = 1;
        report.covered[i] = 1;
      }
    }
    if (t < a.discrete_cover.size()) {
      for (std::size_t i = 0; i < n && i < a.discrete_cover[t].size(); ++i) {
        if (!a.discrete_cover[t][i]) continue;
        ++marks[i];
        if (!by_open[i]) {
          flag("demand " + std::to_string(i) + " marked covered by discrete type " +
               std::to_string(t) + " but no open site reaches it");
        }
      }
    }
  }
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    const std::size_t p = static_cast<std::size_t>(std::max(spec.count, 0));
    const std::size_t placed = t < solution.centers.size() ? solution.centers[t].size() : 0;
    if (placed != p) {
      flag("continuous type " + std::to_string(t) + ": " + std::to_string(placed) +
           " centers, expected " + std::to_string(p));
    }
    for (std::size_t k = 0; k < placed; ++k) {
      const Point& c = solution.centers[t][k];
      if (c.dim() != instance.dimension) {
        flag("continuous type " + std::to_string(t) + " slot " + std::to_string(k) + ": wrong dimension");
        continue;
      }
      for (int i : covered_by(instance, c, spec.radius, spec.norm)) report.covered[i] = 1;
      if (t < a.continuous_cover.size() && k < a.continuous_cover[t].size()) {
        const auto& flags = a.continuous_cover[t][k];
        for (std::size_t i = 0; i < n && i < flags.size(); ++i) {
          if (!flags[i]) continue;
          ++marks[i];
          if (!within(instance.demand[i].point, c, spec.radius, spec.norm)) {
            flag("demand " + std::to_string(i) + " marked for continuous slot (" + std::to_string(t) +
                 ", " + std::to_string(k) + ") lies outside its ball");
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (marks[i] > 1) flag("demand " + std::to_string(i) + " credited " + std::to_string(marks[i]) + " times");
    if (report.covered[i]) report.objective += instance.demand[i].weight;
  }
  return report;
}

}  // namespace mtmclp
