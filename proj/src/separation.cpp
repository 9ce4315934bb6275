#include "mtmclp/separation.hpp"

#include <algorithm>

#include "mtmclp/errors.hpp"

namespace mtmclp {

const char* to_string(CutOrigin origin) {
  switch (origin) {
    case CutOrigin::Pairwise:
      return "pairwise";
    case CutOrigin::ThreeWise:
      return "three-wise";
    case CutOrigin::ClusteringPool:
      return "clustering-pool";
    case CutOrigin::Callback:
      return "callback";
  }
  return "?";
}

bool CutPool::add(Cut cut, CutOrigin origin) {
  std::sort(cut.members.begin(), cut.members.end());
  cut.members.erase(std::unique(cut.members.begin(), cut.members.end()), cut.members.end());
  if (cut.members.size() < 2) throw_contract("a cut needs at least two members");
  if (!index_.insert(cut).second) return false;
  cuts_.push_back(std::move(cut));
  origins_.push_back(origin);
  return true;
}

void CutPool::merge(const CutPool& other) {
  for (std::size_t i = 0; i < other.size(); ++i) add(other.cuts_[i], other.origins_[i]);
}

namespace {

const ContinuousTypeSpec& continuous(const Instance& instance, std::size_t type) {
  if (type >= instance.continuous_types.size()) throw_contract("unknown continuous type");
  return instance.continuous_types[type];
}

bool compatible(const Point& a, const Point& b, double rho, const NormSpec& norm) {
  return within(a, b, 2.0 * rho, norm);
}

}  // namespace

CutPool two_wise_cuts(const Instance& instance, std::size_t type) {
  const ContinuousTypeSpec& spec = continuous(instance, type);
  CutPool pool;
  const std::vector<Point> pts = instance.points();
  for (auto [a, b] : incompatible_pairs(pts, spec.radius, spec.norm)) {
    pool.add(Cut{static_cast<int>(type), {a, b}}, CutOrigin::Pairwise);
  }
  return pool;
}

CutPool three_wise_cuts(const Instance& instance, std::size_t type) {
  const ContinuousTypeSpec& spec = continuous(instance, type);
  CutPool pool;
  const std::vector<Point> pts = instance.points();
  const int n = static_cast<int>(pts.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!compatible(pts[a], pts[b], spec.radius, spec.norm)) continue;
      for (int c = b + 1; c < n; ++c) {
        if (!compatible(pts[a], pts[c], spec.radius, spec.norm) ||
            !compatible(pts[b], pts[c], spec.radius, spec.norm)) {
          continue;
        }
        const int triple[3] = {a, b, c};
        if (!cluster_feasible(triple, pts, spec.radius, spec.norm).feasible) {
          pool.add(Cut{static_cast<int>(type), {a, b, c}}, CutOrigin::ThreeWise);
        }
      }
    }
  }
  return pool;
}

std::vector<double> default_pool_fractions() { return {0.8, 0.9, 1.0}; }

CutPool initial_cut_pool(const Instance& instance, std::size_t type,
                         std::span<const double> epsilons) {
  const ContinuousTypeSpec& spec = continuous(instance, type);
  const std::vector<Point> pts = instance.points();
  CutPool pool;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw_input("pool epsilon must be positive");
    for (const std::vector<int>& cluster : complete_linkage(pts, spec.norm, spec.radius + eps)) {
      if (cluster.size() < 3) continue;
      const FeasibilityCertificate cert = cluster_feasible(cluster, pts, spec.radius, spec.norm);
      for (const std::vector<int>& w : cert.witnesses) {
        if (w.size() < 3) continue;
        // Pairs are already in the model; keep witnesses that are new information.
        bool all_pairs_meet = true;
        for (std::size_t i = 0; i < w.size() && all_pairs_meet; ++i) {
          for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (!compatible(pts[w[i]], pts[w[j]], spec.radius, spec.norm)) {
              all_pairs_meet = false;
              break;
            }
          }
        }
        if (all_pairs_meet) pool.add(Cut{static_cast<int>(type), w}, CutOrigin::ClusteringPool);
      }
    }
  }
  return filter_dominated(pool);
}

CutPool filter_dominated(const CutPool& pool) {
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pool.cuts()[a].members.size() < pool.cuts()[b].members.size();
  });
  std::vector<char> keep(pool.size(), 1);
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const Cut& cut = pool.cuts()[idx];
    for (std::size_t other : kept) {
      const Cut& small = pool.cuts()[other];
      if (small.type != cut.type || small.members.size() >= cut.members.size()) continue;
      if (std::includes(cut.members.begin(), cut.members.end(), small.members.begin(),
                        small.members.end())) {
        keep[idx] = 0;
        break;
      }
    }
    if (keep[idx]) kept.push_back(idx);
  }
  CutPool out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (keep[i]) out.add(pool.cuts()[i], pool.origin(i));
  }
  return out;
}

std::vector<Cut> separate(const Assignment& candidate, const Instance& instance) {
  std::vector<Cut> cuts;
  const std::vector<Point> pts = instance.points();
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    if (t >= candidate.continuous_cover.size()) break;
    for (std::size_t k = 0; k < candidate.continuous_cover[t].size(); ++k) {
      const std::vector<int> q = candidate.cluster(t, k);
      if (q.size() < 2) continue;
      const FeasibilityCertificate cert = cluster_feasible(q, pts, spec.radius, spec.norm);
      if (cert.feasible) continue;
      if (cert.witnesses.empty()) {
        cuts.push_back(Cut{static_cast<int>(t), q});
      } else {
        for (const std::vector<int>& w : cert.witnesses) cuts.push_back(Cut{static_cast<int>(t), w});
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace mtmclp
