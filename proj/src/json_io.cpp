#include "asmbij/json_io.hpp"

namespace asmbij {

nlohmann::json elem_to_json_bare(const Elem& e) {
  nlohmann::json j;
  switch (e->kind) {
    case ElemNode::Kind::Tuple:
      j["i"] = e->values;
      break;
    case ElemNode::Kind::InLeft:
      j["L"] = elem_to_json_bare(e->a);
      break;
    case ElemNode::Kind::InRight:
      j["R"] = elem_to_json_bare(e->a);
      break;
    case ElemNode::Kind::Pair:
      j["p"] = {elem_to_json_bare(e->a), elem_to_json_bare(e->b)};
      break;
    case ElemNode::Kind::AtIndex:
      j["x"] = {{"t", elem_to_json_bare(e->a)}, {"e", elem_to_json_bare(e->b)}};
      break;
  }
  return j;
}

nlohmann::json elem_to_json(const Elem& e, const SSet& s) {
  nlohmann::json j = elem_to_json_bare(e);
  j["s"] = elem_sign(e, s);
  return j;
}

nlohmann::json verify_report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["checked"] = r.checked;
  if (!r.ok) j["counterexample"] = r.message;
  return j;
}

}  // namespace asmbij
