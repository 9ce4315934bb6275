#pragma once

// Instances of the hybrid discrete/continuous maximal covering problem and
// the two integer formulations built from them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtmclp/geometry.hpp"
#include "mtmclp/milp.hpp"

namespace mtmclp {

struct DemandPoint {
  Point point;
  double weight = 1.0;
};

// Facilities picked from a finite candidate list, each site with its own radius.
struct DiscreteTypeSpec {
  std::vector<Point> sites;
  std::vector<double> radii;
  int count = 0;
  NormSpec norm = NormSpec::l2();
};

// Facilities placed anywhere in R^d with a type-wide radius.
struct ContinuousTypeSpec {
  NormSpec norm = NormSpec::l2();
  double radius = 0.0;
  int count = 0;
};

struct Instance {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::size_t dimension = 2;
  std::vector<DemandPoint> demand;
  std::vector<DiscreteTypeSpec> discrete_types;
  std::vector<ContinuousTypeSpec> continuous_types;

  std::size_t size() const { return demand.size(); }
  std::vector<Point> points() const;
  std::vector<double> weights() const;
  double total_weight() const;
  bool integral_weights() const;
};

// Every violated invariant, one message each (empty when valid).
std::vector<std::string> validation_errors(const Instance& instance);
// Throws InputError carrying every message from validation_errors.
void validate(const Instance& instance);
// Merges coincident demand points (weights summed), keeping first-seen order.
Instance deduplicated(Instance instance);

struct Assignment {
  std::vector<std::vector<int>> open_sites;                         // [t][.] site ids
  std::vector<std::vector<std::uint8_t>> discrete_cover;            // [t][i]
  std::vector<std::vector<std::vector<std::uint8_t>>> continuous_cover;  // [t][k][i]

  // Demand indices marked for continuous slot (t, k).
  std::vector<int> cluster(std::size_t t, std::size_t k) const;
  static Assignment empty_for(const Instance& instance);
};

// Forbids the member set from sharing one continuous facility of `type`.
struct Cut {
  int type = 0;
  std::vector<int> members;  // sorted demand indices

  friend bool operator==(const Cut&, const Cut&) = default;
  friend auto operator<=>(const Cut&, const Cut&) = default;
};

struct Solution {
  Assignment assignment;
  std::vector<std::vector<Point>> centers;  // [t][k]
  double objective = 0.0;
};

struct EvaluationReport {
  double objective = 0.0;
  std::vector<std::uint8_t> covered;
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// [t][i] -> sites j of discrete type t covering demand point i.
using CoverageTable = std::vector<std::vector<std::vector<int>>>;
CoverageTable coverage_table(const Instance& instance);

// Demand points within the closed `radius` ball of `center`.
std::vector<int> covered_by(const Instance& instance, const Point& center, double radius,
                            const NormSpec& norm);

// Pairs (i < l) whose rho-balls are disjoint, i.e. distance > 2 rho.
std::vector<std::pair<int, int>> incompatible_pairs(std::span<const Point> points, double rho,
                                                    const NormSpec& norm);

// --- Integer formulations ----------------------------------------------------

struct IpLayout {
  std::vector<std::vector<int>> site_vars;               // [t][j]  y
  std::vector<std::vector<int>> cover_vars;              // [t][i]  x
  std::vector<std::vector<std::vector<int>>> slot_vars;  // [t][k][i]  z
};

struct IpModel {
  milp::LinearModel model;
  IpLayout layout;
  std::size_t pairwise_rows = 0;
  std::size_t pool_rows = 0;
  std::size_t symmetry_rows = 0;
};

// How the pairwise incompatibility family enters the model: one row per pair,
// or aggregated into clique rows of the incompatibility graph (each clique row
// implies all of its pair rows).
enum class PairwiseForm { Pairs, Cliques };

struct IpBuildOptions {
  bool symmetry = true;
  PairwiseForm pairwise = PairwiseForm::Cliques;
  // Pairwise and pool rows enter the LP relaxation only once violated.
  bool defer_incompatibility = true;
};

// Incomplete formulation: all pairwise cuts present, larger cuts supplied by
// `pool` and later by the separation callback.
IpModel build_incomplete_ip(const Instance& instance, std::span<const Cut> pool,
                            const IpBuildOptions& options = {});

// Rows of `cut` for every slot of its type.
std::vector<milp::Constraint> cut_rows(const IpLayout& layout, const Cut& cut);

// Weighted non-decreasing slot chain per continuous type; returns rows added.
std::size_t add_symmetry_breaking(milp::LinearModel& model, const IpLayout& layout,
                                  const Instance& instance);

// Decodes an integer point of the incomplete formulation.
Assignment decode_assignment(const Instance& instance, const IpLayout& layout,
                             std::span<const double> values);

// Candidate centers: demand points plus pairwise boundary crossings (d = 2, L2).
std::vector<Point> build_bips(const Instance& instance, std::size_t type);

struct BipsLayout {
  std::vector<std::vector<int>> site_vars;       // [t][j]
  std::vector<std::vector<int>> candidate_vars;  // [t][l]
  std::vector<int> cover_vars;                   // [i]
  std::vector<std::vector<Point>> candidates;    // [t][l]
};

struct BipsModel {
  milp::LinearModel model;
  BipsLayout layout;
};

BipsModel build_bips_ip(const Instance& instance);
BipsModel build_bips_ip(const Instance& instance, std::vector<std::vector<Point>> candidates);

// --- Evaluation ------------------------------------------------------------------

// Assigns every demand point to the first open facility covering it
// (discrete types first, then continuous slots in order).
Assignment assignment_from_facilities(const Instance& instance,
                                      const std::vector<std::vector<int>>& open_sites,
                                      const std::vector<std::vector<Point>>& centers);

// Recomputes coverage from geometry and reports structural violations.
EvaluationReport evaluate(const Instance& instance, const Solution& solution);

}  // namespace mtmclp
