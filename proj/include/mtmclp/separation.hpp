#pragma once

// Lazy incompatibility cuts for the incomplete formulation: static pairwise
// enumeration, the clustering-based initial pool, dominance filtering and the
// separation oracle run at integer candidates.

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "mtmclp/model.hpp"

namespace mtmclp {

enum class CutOrigin { Pairwise, ThreeWise, ClusteringPool, Callback };

const char* to_string(CutOrigin origin);

class CutPool {
 public:
  // Sorts the members; returns false for a duplicate (type, members).
  bool add(Cut cut, CutOrigin origin);
  void merge(const CutPool& other);

  std::size_t size() const { return cuts_.size(); }
  bool empty() const { return cuts_.empty(); }
  const std::vector<Cut>& cuts() const { return cuts_; }
  CutOrigin origin(std::size_t i) const { return origins_[i]; }
  bool contains(const Cut& cut) const { return index_.count(cut) > 0; }

 private:
  std::vector<Cut> cuts_;
  std::vector<CutOrigin> origins_;
  std::set<Cut> index_;
};

// Every pair of demand points whose rho(t)-balls are disjoint.
CutPool two_wise_cuts(const Instance& instance, std::size_t type);

// Every triple whose balls are pairwise intersecting but share no common point.
CutPool three_wise_cuts(const Instance& instance, std::size_t type);

// Complete-linkage agglomerative clustering cut at `threshold`: every returned
// cluster has diameter <= threshold. Clusters are listed by smallest member.
std::vector<std::vector<int>> complete_linkage(std::span<const Point> points,
                                               const NormSpec& norm, double threshold);

// Default epsilon schedule as fractions of rho(t).
std::vector<double> default_pool_fractions();

// Clusters at rho(t) + eps for each eps in `epsilons` (absolute values) and
// collects the triple witnesses of every infeasible cluster.
CutPool initial_cut_pool(const Instance& instance, std::size_t type,
                         std::span<const double> epsilons);

// Drops cuts whose member set strictly contains another cut of the same type.
CutPool filter_dominated(const CutPool& pool);

// Cuts violated by `candidate`: witnesses of each infeasible slot cluster,
// or the whole cluster when no small witness exists. Empty iff every cluster
// admits a center.
std::vector<Cut> separate(const Assignment& candidate, const Instance& instance);

}  // namespace mtmclp
