#pragma once

#include <stdexcept>
#include <string>

namespace mtmclp {

// Malformed or invalid user input (documents, instances, arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested (norm, dimension, method) combination is not supported.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition of an internal contract.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An enumeration would exceed its configured size guard.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure inside the LP / branch-and-bound kernel.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void throw_input(const std::string& what);
[[noreturn]] void throw_capability(const std::string& what);
[[noreturn]] void throw_contract(const std::string& what);

}  // namespace mtmclp
