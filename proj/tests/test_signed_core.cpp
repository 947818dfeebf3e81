#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "asmbij/signed_set.hpp"

using namespace asmbij;

namespace {

i64 enumerated_size(const SSet& s) {
  i64 total = 0;
  for (const Elem& e : enumerate_set(s)) total += elem_sign(e, s);
  return total;
}

bool duplicate_free(const SSet& s) {
  std::set<std::string> seen;
  for (const Elem& e : enumerate_set(s))
    if (!seen.insert(e->key).second) return false;
  return true;
}

}  // namespace

TEST_CASE("signed intervals") {
  SSet a = interval(1, 3);
  CHECK(sset_size(a) == 3);
  CHECK(enumerate_set(a).size() == 3);
  CHECK(elem_sign(enumerate_set(a)[0], a) == 1);

  CHECK(interval(3, 2)->kind == SignedSet::Kind::Empty);

  SSet c = interval(3, 1);
  REQUIRE(enumerate_set(c).size() == 1);
  CHECK(enumerate_set(c)[0]->values == Ints{2});
  CHECK(elem_sign(enumerate_set(c)[0], c) == -1);
  CHECK(sset_size(c) == -1);

  CHECK(sset_size(interval(5, 1)) == -3);
  CHECK(enumerated_size(interval(5, 1)) == -3);
}

TEST_CASE("interval additivity over a grid") {
  for (i64 a = -4; a <= 4; ++a)
    for (i64 b = -4; b <= 4; ++b)
      for (i64 c = -4; c <= 4; ++c)
        CHECK(sset_size(interval(a, c)) ==
              sset_size(interval(a, b)) + sset_size(interval(b + 1, c)));
}

TEST_CASE("structural sizes agree with enumeration") {
  SSet p = prod(interval(1, 2), interval(3, 1));
  CHECK(sset_size(p) == -2);
  CHECK(enumerated_size(p) == -2);
  CHECK(sset_size(empty_set()) == 0);

  SSet u = union2(interval(-1, 1), opp(interval(0, 4)));
  CHECK(sset_size(u) == 3 - 5);
  CHECK(enumerated_size(u) == -2);
  CHECK(duplicate_free(u));

  std::vector<std::pair<Ints, int>> idx{{{0}, 1}, {{1}, -1}, {{2}, 1}};
  SSet t = tuples_set(idx, "");
  SSet iu = indexed_union("test:iu1", t, [](const Elem& e) {
    return interval(0, e->values[0]);
  });
  CHECK(sset_size(iu) == 1 - 2 + 3);
  CHECK(enumerated_size(iu) == 2);
  CHECK(duplicate_free(iu));
}

TEST_CASE("enumeration order and tags") {
  SSet a = interval(1, 2);
  auto& es = enumerate_set(a);
  REQUIRE(es.size() == 2);
  CHECK(es[0]->values == Ints{1});
  CHECK(es[1]->values == Ints{2});

  SSet u = union2(interval(1, 1), interval(2, 1));
  auto& eu = enumerate_set(u);
  REQUIRE(eu.size() == 1);
  CHECK(eu[0]->kind == ElemNode::Kind::InLeft);

  Elem l = in_left(pair_elem(tuple_elem({1}), tuple_elem({2})));
  Elem r = in_right(pair_elem(tuple_elem({1}), tuple_elem({2})));
  CHECK(l->key != r->key);
  CHECK(l->key == in_left(pair_elem(tuple_elem({1}), tuple_elem({2})))->key);
}

TEST_CASE("projection") {
  CHECK(project(tuple_elem({4})) == Ints{4});
  CHECK(project(at_index(tuple_elem({7}), tuple_elem({4}))) == Ints{4});
  CHECK(project(pair_elem(tuple_elem({1}), tuple_elem({2, 3}))) == Ints({1, 2, 3}));

  SSet bad = union2(interval(0, 1), prod(interval(0, 1), interval(0, 1)));
  CHECK_THROWS(elementary_dim(bad));
  CHECK(elementary_dim(prod(interval(0, 2), interval(1, 1))) == 2);
}

TEST_CASE("validity") {
  SSet s = prod(interval(1, 2), interval(3, 1));
  Elem good = pair_elem(tuple_elem({1}), tuple_elem({2}));
  Elem bad = pair_elem(tuple_elem({1}), tuple_elem({3}));
  CHECK(elem_valid(good, s));
  CHECK(!elem_valid(bad, s));
  CHECK(!elem_valid(tuple_elem({1}), s));
}

namespace {

SSet random_sset(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 5);
  std::uniform_int_distribution<i64> val(-3, 3);
  switch (kind(rng)) {
    case 0:
      return interval(val(rng), val(rng));
    case 1:
      return singleton({val(rng), val(rng)}, val(rng) >= 0 ? 1 : -1);
    case 2:
      return opp(random_sset(rng, depth - 1));
    case 3:
      return prod(random_sset(rng, depth - 1), random_sset(rng, depth - 1));
    case 4:
      return union2(random_sset(rng, depth - 1), random_sset(rng, depth - 1));
    default: {
      static int uid = 0;
      std::vector<std::pair<Ints, int>> idx;
      i64 m = std::uniform_int_distribution<i64>(0, 3)(rng);
      for (i64 t = 0; t < m; ++t) idx.push_back({{t}, t % 2 == 0 ? 1 : -1});
      SSet inner = random_sset(rng, depth - 1);
      return indexed_union("rand:" + std::to_string(uid++), tuples_set(idx, ""),
                           [inner](const Elem&) { return inner; });
    }
  }
}

}  // namespace

TEST_CASE("randomized structures: structural size equals enumeration") {
  std::mt19937 rng(20260810);
  for (int trial = 0; trial < 60; ++trial) {
    SSet s = random_sset(rng, 3);
    CHECK(sset_size(s) == enumerated_size(s));
    CHECK(duplicate_free(s));
  }
}
