#pragma once

// Instance and solution documents (JSON) and raw point lists (CSV).

#include <string>
#include <string_view>
#include <vector>

#include "mtmclp/model.hpp"
#include "mtmclp/solvers.hpp"

namespace mtmclp {

inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kSolutionFormatVersion = 1;

// Parses an instance document, merges coincident demand points and validates.
// Errors carry the line/column or the JSON path of the offending field.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);
std::string emit_instance(const Instance& instance);

// Rows "x,y[,weight]"; a non-numeric first row is treated as a header.
std::vector<DemandPoint> parse_points_csv(std::string_view text);

struct SolutionDocument {
  std::string instance;
  std::string method;
  std::string status;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  Solution solution;  // assignment rebuilt from the facilities
};

// Deterministic: no timings, fixed key order.
std::string emit_solution(const Instance& instance, const SolveReport& report);
SolutionDocument parse_solution(std::string_view text, const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace mtmclp
