#pragma once

// Canonical JSON encoding of elements:
//   {"i":[ints]} | {"L":e} | {"R":e} | {"p":[e,e]} | {"x":{"t":e,"e":e}}
// with "s": +-1 attached at the top level.

#include <json.hpp>

#include "asmbij/sijection.hpp"

namespace asmbij {

nlohmann::json elem_to_json(const Elem& e, const SSet& s);
nlohmann::json elem_to_json_bare(const Elem& e);  // no sign attached
nlohmann::json verify_report_to_json(const VerifyReport& r);

}  // namespace asmbij
