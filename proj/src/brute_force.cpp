#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "mtmclp/errors.hpp"
#include "mtmclp/solvers.hpp"

namespace mtmclp {

namespace {

using Bits = std::vector<std::uint64_t>;

struct Group {
  std::vector<Bits> reach;  // per candidate
  int count = 0;
};

Bits to_bits(const std::vector<int>& members, std::size_t words) {
  Bits b(words, 0);
  for (int i : members) b[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  return b;
}

double choose(std::size_t m, int p) {
  double c = 1.0;
  for (int k = 0; k < p; ++k) c = c * static_cast<double>(m - static_cast<std::size_t>(k)) / (k + 1);
  return c;
}

class Enumerator {
 public:
  Enumerator(const std::vector<Group>& groups, const std::vector<double>& weights)
      : groups_(groups), weights_(weights), words_((weights.size() + 63) / 64),
        pick_(groups.size()), best_pick_(groups.size()) {}

  void run() {
    Bits empty(words_, 0);
    descend(0, 0, empty);
  }
  double best() const { return best_; }
  const std::vector<std::vector<int>>& best_pick() const { return best_pick_; }

 private:
  void descend(std::size_t g, std::size_t from, const Bits& acc) {
    if (g == groups_.size()) {
      const double v = value(acc);
      if (v > best_) {
        best_ = v;
        best_pick_ = pick_;
      }
      return;
    }
    const Group& grp = groups_[g];
    if (static_cast<int>(pick_[g].size()) == grp.count) {
      descend(g + 1, 0, acc);
      return;
    }
    const std::size_t need = static_cast<std::size_t>(grp.count) - pick_[g].size();
    for (std::size_t c = from; c + need <= grp.reach.size(); ++c) {
      Bits next = acc;
      for (std::size_t w = 0; w < words_; ++w) next[w] |= grp.reach[c][w];
      pick_[g].push_back(static_cast<int>(c));
      descend(g, c + 1, next);
      pick_[g].pop_back();
    }
  }

  double value(const Bits& bits) const {
    double v = 0.0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits[w];
      while (word) {
        const int b = std::countr_zero(word);
        v += weights_[w * 64 + static_cast<std::size_t>(b)];
        word &= word - 1;
      }
    }
    return v;
  }

  const std::vector<Group>& groups_;
  const std::vector<double>& weights_;
  std::size_t words_;
  std::vector<std::vector<int>> pick_;
  std::vector<std::vector<int>> best_pick_;
  double best_ = -1.0;
};

}  // namespace

SolveReport brute_force(const Instance& instance, const BruteForceOptions& options) {
  validate(instance);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = instance.size();
  const std::size_t words = (n + 63) / 64;

  std::vector<Group> groups;
  std::vector<std::vector<Point>> candidates(instance.continuous_types.size());
  double combos = 1.0;
  for (const DiscreteTypeSpec& spec : instance.discrete_types) {
    Group g;
    g.count = spec.count;
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      g.reach.push_back(to_bits(covered_by(instance, spec.sites[j], spec.radii[j], spec.norm), words));
    }
    combos *= choose(g.reach.size(), g.count);
    groups.push_back(std::move(g));
  }
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    Group g;
    if (spec.count > 0) {
      candidates[t] = build_bips(instance, t);
      for (const Point& c : candidates[t]) {
        g.reach.push_back(to_bits(covered_by(instance, c, spec.radius, spec.norm), words));
      }
    }
    g.count = std::min(spec.count, static_cast<int>(g.reach.size()));
    combos *= choose(g.reach.size(), g.count);
    groups.push_back(std::move(g));
  }
  if (combos > options.max_combinations) {
    throw CapacityError("brute force would enumerate " + std::to_string(static_cast<long long>(combos)) +
                        " combinations (limit " +
                        std::to_string(static_cast<long long>(options.max_combinations)) + ")");
  }

  const std::vector<double> weights = instance.weights();
  Enumerator e(groups, weights);
  e.run();

  SolveReport report;
  report.method = "brute";
  report.status = SolveStatus::Optimal;
  Solution& sol = report.solution;
  const std::size_t t1 = instance.discrete_types.size();
  sol.assignment.open_sites.resize(t1);
  for (std::size_t t = 0; t < t1; ++t) sol.assignment.open_sites[t] = e.best_pick()[t];
  sol.centers.resize(instance.continuous_types.size());
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    for (int l : e.best_pick()[t1 + t]) sol.centers[t].push_back(candidates[t][static_cast<std::size_t>(l)]);
    while (sol.centers[t].size() < static_cast<std::size_t>(std::max(instance.continuous_types[t].count, 0))) {
      sol.centers[t].push_back(instance.demand.front().point);
    }
  }
  sol.assignment = assignment_from_facilities(instance, sol.assignment.open_sites, sol.centers);
  sol.objective = evaluate(instance, sol).objective;
  report.bound = sol.objective;
  report.times.total = report.times.solving =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace mtmclp
