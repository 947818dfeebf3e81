#pragma once

// Structural signed sets and their elements.
//
// A signed set is a pair of disjoint finite sets (S+, S-).  Here a set is a
// construction tree (intervals, tuple families, opposites, products, disjoint
// unions, indexed unions); elements are tagged values whose sign is derived
// from their position in the tree.
//
// Enumeration order (part of the golden-file contract):
//   * intervals ascending (a..b, or b+1..a-1 for the negative case),
//   * Tuples in stored order,
//   * Union left then right,
//   * Product lexicographic with the left factor outer,
//   * IndexedUnion in index enumeration order, fiber inner.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asmbij {

using i64 = long long;
using Ints = std::vector<i64>;

struct ElemNode;
using Elem = std::shared_ptr<const ElemNode>;

struct ElemNode {
  enum class Kind { Tuple, InLeft, InRight, Pair, AtIndex };
  Kind kind;
  Ints values;  // Tuple payload
  Elem a, b;    // children: InLeft/InRight use a; Pair/AtIndex use a,b
  std::string key;  // canonical encoding, injective and order-stable
};

Elem tuple_elem(Ints xs);
Elem in_left(Elem e);
Elem in_right(Elem e);
Elem pair_elem(Elem x, Elem y);
Elem at_index(Elem idx, Elem fiber);

inline bool elem_eq(const Elem& x, const Elem& y) { return x->key == y->key; }
inline const std::string& elem_key(const Elem& e) { return e->key; }

struct SignedSet;
using SSet = std::shared_ptr<const SignedSet>;

struct SignedSet {
  enum class Kind { Empty, Interval, Tuples, Opposite, Product, Union, IndexedUnion };
  Kind kind = Kind::Empty;

  i64 lo = 0, hi = 0;                            // Interval (hi < lo-1 means negative carrier)
  std::vector<std::pair<Ints, int>> tups;        // Tuples: (value, ±1)
  SSet left, right;                              // Opposite child in `left`
  SSet index;                                    // IndexedUnion index set
  std::function<SSet(const Elem&)> family;       // IndexedUnion fibers
  std::string uid;                               // interning key (IndexedUnion, labeled Tuples)

  mutable std::optional<i64> size_cache;
  mutable std::optional<std::vector<Elem>> enum_cache;
  mutable std::map<std::string, SSet> family_memo;
};

SSet empty_set();
SSet interval(i64 a, i64 b);                 // signed interval [a,b]
SSet singleton(Ints v, int sign = 1);
SSet tuples_set(std::vector<std::pair<Ints, int>> t, const std::string& label = "");
SSet opp(SSet s);                            // opposite; collapses opp(opp(x))
SSet wrap_sign(int sign, SSet s);            // sign=+1: s, sign=-1: opp(s)
SSet prod(SSet a, SSet b);
SSet union2(SSet a, SSet b);
SSet prod_many(const std::vector<SSet>& xs);   // left-nested; empty list = positive unit singleton
SSet union_many(const std::vector<SSet>& xs);  // left-nested; empty list = Empty
SSet indexed_union(const std::string& uid, SSet index, std::function<SSet(const Elem&)> family);
SSet unit_set();  // singleton of the empty tuple, positive

// Fiber lookup with per-node memoization on the index element key.
SSet iu_fiber(const SSet& s, const Elem& idx);

bool set_equal(const SSet& a, const SSet& b);
i64 sset_size(const SSet& s);
int elem_sign(const Elem& e, const SSet& s);
bool elem_valid(const Elem& e, const SSet& s);
void for_each_elem(const SSet& s, const std::function<void(const Elem&)>& fn);
const std::vector<Elem>& enumerate_set(const SSet& s);

// Projection xi of an element of an elementary set to an integer tuple.
Ints project(const Elem& e);
// Dimension of an elementary set; throws if branches disagree.
int elementary_dim(const SSet& s);

[[noreturn]] void fail(const std::string& msg);

#define ASMBIJ_CHECK(cond, msg) \
  do {                          \
    if (!(cond)) ::asmbij::fail(msg); \
  } while (0)

std::string ints_to_string(const Ints& xs);

}  // namespace asmbij
