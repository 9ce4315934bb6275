#include "mtmclp/errors.hpp"

namespace mtmclp {

void throw_input(const std::string& what) { throw InputError(what); }
void throw_capability(const std::string& what) { throw CapabilityError(what); }
void throw_contract(const std::string& what) { throw ContractError(what); }

}  // namespace mtmclp
