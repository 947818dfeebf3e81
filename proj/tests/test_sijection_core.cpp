#include <doctest.h>

#include "asmbij/sijection.hpp"
#include "asmbij/subsets.hpp"

using namespace asmbij;

namespace {

bool pointwise_equal(const Sij& a, const Sij& b) {
  for (const Elem& e : enumerate_set(a->dom)) {
    SElem x = a->apply({0, e}), y = b->apply({0, e});
    if (x.side != y.side || !elem_eq(x.e, y.e)) return false;
  }
  for (const Elem& e : enumerate_set(a->cod)) {
    SElem x = a->apply({1, e}), y = b->apply({1, e});
    if (x.side != y.side || !elem_eq(x.e, y.e)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identity and verify") {
  SSet s = union2(interval(1, 2), opp(interval(5, 3)));
  Sij id = identity_sij(s);
  auto rep = verify_sij(id);
  CHECK(rep.ok);
  CHECK(sset_size(id->dom) == sset_size(id->cod));

  Sij idi = identity_sij(interval(1, 2));
  SElem y = idi->apply({0, tuple_elem({1})});
  CHECK(y.side == 1);
  CHECK(y.e->values == Ints{1});
}

TEST_CASE("a corrupted map is rejected") {
  SSet s = interval(1, 2);
  // breaks the involution: both elements map to [1]
  Sij bad = make_sij(s, s, [](const SElem& x) { return SElem{1 - x.side, tuple_elem({1})}; },
                     "bad");
  auto rep = verify_sij(bad);
  CHECK(!rep.ok);
  CHECK(!rep.message.empty());
}

TEST_CASE("opposite") {
  Sij a = alpha(1, 4, 2);
  CHECK(verify_sij(a).ok);
  Sij oa = opposite_sij(a);
  CHECK(verify_sij(oa).ok);
  CHECK(pointwise_equal(opposite_sij(oa), a));
  CHECK(set_equal(opposite_sij(oa)->dom, a->dom));
}

TEST_CASE("products of sijections") {
  Sij i1 = identity_sij(interval(0, 1));
  Sij i2 = identity_sij(interval(2, 3));
  Sij p = product_sij(i1, i2);
  CHECK(verify_sij(p).ok);
  Sij pid = identity_sij(prod(interval(0, 1), interval(2, 3)));
  CHECK(pointwise_equal(p, pid));

  Sij q = product_sij(alpha(1, 4, 2), alpha(0, 2, 1));
  CHECK(verify_sij(q).ok);
  CHECK(sset_size(q->dom) == sset_size(q->cod));
}

TEST_CASE("compose") {
  Sij a = alpha(1, 4, 2);
  Sij c = compose(a, invert_sij(a));
  CHECK(verify_sij(c).ok);
  CHECK(pointwise_equal(c, identity_sij(a->dom)));

  Sij d = compose(identity_sij(a->dom), a);
  CHECK(pointwise_equal(d, a));

  for (i64 x = -2; x <= 2; ++x)
    for (i64 y = -2; y <= 2; ++y)
      for (i64 z = -2; z <= 2; ++z) {
        Sij s = alpha(x, y, z);
        CHECK(verify_sij(compose(s, invert_sij(s))).ok);
      }
}

TEST_CASE("invert") {
  Sij a = alpha(0, 3, 1);
  CHECK(pointwise_equal(invert_sij(invert_sij(a)), a));
  CHECK(verify_sij(invert_sij(a)).ok);
  Sij b = compose(a, invert_sij(a));
  CHECK(pointwise_equal(invert_sij(b), b));  // identity is self-inverse
}

TEST_CASE("cancel and transpose helpers") {
  SSet s = interval(1, 3);
  CHECK(verify_sij(cancel_sij(s)).ok);

  Sij a = alpha(1, 4, 2);
  Sij z = to_empty_from(a);
  CHECK(verify_sij(z).ok);
  Sij back = split_from_empty(z);
  CHECK(verify_sij(back).ok);
  // back : [1,2] => -(-([1,4] u [5,2])) recovers alpha pointwise
  for (const Elem& e : enumerate_set(a->dom)) {
    SElem x = a->apply({0, e}), y = back->apply({0, e});
    CHECK(x.side == y.side);
    CHECK(elem_eq(x.e, y.e));
  }
}

TEST_CASE("union of sijections over a sijection of index sets") {
  // psi = identity on a two-element index set, fibers arbitrary verified
  std::vector<std::pair<Ints, int>> it{{{0}, 1}, {{1}, 1}};
  SSet t = tuples_set(it, "test:unionidx");
  auto famd = [](const Elem& e) {
    return e->values[0] == 0 ? interval(1, 2) : interval(0, 4);
  };
  auto famc = [](const Elem& e) {
    return e->values[0] == 0 ? union2(interval(1, 1), interval(2, 2)) : interval(0, 4);
  };
  auto prov = [&](const Elem& e) -> Sij {
    if (e->values[0] == 0) return alpha(1, 1, 2);
    return identity_sij(interval(0, 4));
  };
  Sij u = fiberwise_union_sij(t, famd, famc, prov, "test:ud", "test:uc");
  CHECK(verify_sij(u).ok);

  // normal psi with identity fibers
  Sij a = alpha(0, 2, 4);
  Sij nu = normal_union_sij(a, [](const Ints& xi) { return interval(0, xi[0]); },
                            "test:nud", "test:nuc");
  CHECK(verify_sij(nu).ok);

  // a non-normal psi is rejected
  Sij shift = reshape_sij(
      interval(1, 2), interval(2, 3),
      [](const Elem& e) { return tuple_elem({e->values[0] + 1}); },
      [](const Elem& e) { return tuple_elem({e->values[0] - 1}); }, "shift");
  CHECK_THROWS(normal_union_sij(shift, [](const Ints& xi) { return interval(0, xi[0]); },
                                "test:nn1", "test:nn2"));
}

TEST_CASE("reshaping sijections") {
  SSet a = interval(0, 1), b = interval(2, 3), c = interval(4, 5);
  CHECK(verify_sij(assoc_prod_sij(a, b, c)).ok);
  CHECK(verify_sij(comm_prod_sij(a, b)).ok);
  CHECK(verify_sij(assoc_union_sij(a, b, c)).ok);
  CHECK(verify_sij(comm_union_sij(a, opp(b))).ok);
  CHECK(verify_sij(unit_prod_left_sij(singleton({7}), a)).ok);
  CHECK(verify_sij(unit_union_left_sij(a)).ok);
  CHECK(verify_sij(unit_union_right_sij(a)).ok);
}

TEST_CASE("matcher") {
  // equal-size one-dimensional sets; by-fiber matching is normal
  SSet d = interval(1, 4);
  SSet c = union2(interval(1, 2), interval(3, 4));
  Sij m = matcher_sij(d, c, true, "m");
  CHECK(verify_sij(m).ok);
  CHECK(is_normal(m));
  // size mismatch fails loudly
  CHECK_THROWS(matcher_sij(interval(1, 2), interval(1, 3), false, "bad"));
}

TEST_CASE("compose is associative pointwise") {
  Sij a = alpha(1, 4, 2);
  Sij b = invert_sij(a);
  Sij c = identity_sij(a->dom);
  Sij left = compose(compose(a, b), c);
  Sij right = compose(a, compose(b, c));
  CHECK(pointwise_equal(left, right));
}

TEST_CASE("inverse of a composition") {
  Sij a = alpha(0, 3, 1);
  Sij b = invert_sij(a);  // b : [0,3] u [4,1] => [0,1]
  Sij ab = compose(a, b);
  CHECK(pointwise_equal(invert_sij(ab), compose(invert_sij(b), invert_sij(a))));
}
