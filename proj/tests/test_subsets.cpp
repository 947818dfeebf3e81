#include <doctest.h>

#include <set>

#include "asmbij/subsets.hpp"

using namespace asmbij;

TEST_CASE("alpha splits") {
  // a <= b <= c: the identity split
  Sij a = alpha(1, 2, 5);
  CHECK(verify_sij(a).ok);
  CHECK(is_normal(a));
  SElem y = a->apply({0, tuple_elem({2})});
  CHECK(y.side == 1);
  CHECK(project(y.e) == Ints{2});

  // [1,2] => [1,4] u -[3,4]: the extra values cancel across the union
  Sij b = alpha(1, 4, 2);
  CHECK(sset_size(b->dom) == 2);
  CHECK(enumerate_set(b->cod).size() == 6);
  CHECK(verify_sij(b).ok);
  CHECK(is_normal(b));

  for (i64 x = -3; x <= 3; ++x)
    for (i64 yy = -3; yy <= 3; ++yy)
      for (i64 z = -3; z <= 3; ++z) {
        Sij s = alpha(x, yy, z);
        auto rep = verify_sij(s);
        CHECK(rep.ok);
        CHECK(is_normal(s));
      }
}

TEST_CASE("stars and bars") {
  Ints comp{2, 0, 1};
  Ints bars = comp_to_bars(comp);
  CHECK(bars == Ints({3, 4}));
  CHECK(bars_to_comp(bars, 3, 3) == comp);
  CHECK(bars_to_comp(comp_to_bars({0, 0}), 2, 0) == Ints({0, 0}));
}

TEST_CASE("trinomial") {
  Sij t0 = trinomial(0, 0, 0);
  CHECK(verify_sij(t0).ok);
  CHECK(enumerate_set(t0->dom).size() == 1);

  Sij t = trinomial(1, 1, 0);
  CHECK(verify_sij(t).ok);
  // (A,B) -> (B, [a+b+c] \ (A u B)): A={1},B={2} -> B={2}, C empty
  Elem e = pair_elem(tuple_elem({1}), tuple_elem({1}));  // A = {1}, B at position 1 of [2]\{1}
  SElem img = t->apply({0, e});
  CHECK(img.side == 1);
  CHECK(img.e->a->values == Ints{2});

  for (i64 a = 0; a <= 4; ++a)
    for (i64 b = 0; b <= 4; ++b)
      for (i64 c = 0; c <= 4; ++c)
        CHECK(binom_count(a + b + c, a) * binom_count(b + c, b) ==
              binom_count(a + b + c, b) * binom_count(a + c, c));
  CHECK(verify_sij(trinomial(2, 1, 2)).ok);
}

TEST_CASE("chu vandermonde") {
  Sij s = chu_vandermonde(2, 1, 1);
  CHECK(sset_size(s->dom) == 1);
  CHECK(sset_size(s->cod) == 1);
  CHECK(verify_sij(s).ok);

  // a < b < a+c: both sides enumerate to nothing
  Sij e0 = chu_vandermonde(1, 3, 3);
  CHECK(sset_size(e0->dom) == 0);
  CHECK(enumerate_set(e0->cod).empty());
  CHECK(verify_sij(e0).ok);
  // at the boundary b = a+c the two sides still match (size -1 each)
  Sij e = chu_vandermonde(1, 2, 1);
  CHECK(sset_size(e->dom) == -1);
  CHECK(sset_size(e->cod) == -1);
  CHECK(verify_sij(e).ok);

  CHECK_THROWS(chu_vandermonde(0, 1, 1));

  for (i64 a = 1; a <= 3; ++a)
    for (i64 b = 0; b <= 3; ++b)
      for (i64 c = 0; c <= 3; ++c) CHECK(verify_sij(chu_vandermonde(a, b, c)).ok);
}

TEST_CASE("B sets") {
  CHECK(sset_size(bset(3, 1)) == 6);
  CHECK(sset_size(bset(3, 2)) == 9);
  CHECK(sset_size(bset(3, 3)) == 6);
  CHECK(sset_size(bset_full(3)) == 21);
  CHECK(sset_size(bset_full(1)) == 1);

  Sij sp = b_split(3, 2);
  CHECK(verify_sij(sp).ok);
  SElem y = sp->apply({0, tuple_elem({2, 3, 4, 5, 7})});
  CHECK(y.side == 1);
  CHECK(y.e->a->values == Ints({2, 3}));
  CHECK(y.e->b->values == Ints({1, 3}));

  Sij s1 = b_split(1, 1);
  CHECK(verify_sij(s1).ok);
  CHECK(enumerate_set(s1->dom).size() == 1);
}

TEST_CASE("binomial complement") {
  Sij c = binom_complement_sij(4, 0);
  SElem y = c->apply({0, tuple_elem({})});
  CHECK(y.e->values == Ints({1, 2, 3, 4}));
  Sij c2 = binom_complement_sij(5, 2);
  CHECK(verify_sij(c2).ok);
  for (i64 m = 0; m <= 5; ++m)
    for (i64 k = 0; k <= m; ++k) CHECK(binom_count(m, k) == binom_count(m, m - k));
}

TEST_CASE("B recurrence") {
  i64 lhs = 0;
  Ints bsz{6, 9, 6};
  for (i64 j = 1; j <= 3; ++j)
    lhs += (j % 2 == 1 ? 1 : -1) * binom_count(3, 2 - j) * bsz[j - 1];
  CHECK(lhs == 9);

  for (i64 i = 1; i <= 2; ++i) {
    Sij r = b_recurrence(2, i);
    CHECK(verify_sij(r).ok);
  }
  for (i64 i = 1; i <= 3; ++i) {
    Sij r = b_recurrence(3, i);
    CHECK(verify_sij(r).ok);
  }
}
