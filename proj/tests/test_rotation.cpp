#include <doctest.h>

#include "asmbij/patterns.hpp"
#include "asmbij/rotation.hpp"

using namespace asmbij;

TEST_CASE("prepelementary base cases") {
  // n=2, j=0: both sides are the plain interval
  Sij s0 = prep_elementary(2, 0, {1, 3}, +1);
  CHECK(verify_sij(s0).ok);
  CHECK(is_normal(s0));
  SElem y = s0->apply({0, enumerate_set(s0->dom)[0]});
  CHECK(project(y.e) == project(enumerate_set(s0->dom)[0]));

  // n=2, j=3: both sides empty
  Sij s3 = prep_elementary(2, 3, {1, 3}, +1);
  CHECK(enumerate_set(s3->dom).empty());
  CHECK(enumerate_set(s3->cod).empty());
  CHECK(verify_sij(s3).ok);
}

TEST_CASE("prepelementary at n=3") {
  Sij s = prep_elementary(3, 1, {1, 2, 3}, +1);
  CHECK(verify_sij(s).ok);
  CHECK(is_normal(s));
  Sij sm = prep_elementary(3, 1, {1, 2, 3}, -1);
  CHECK(verify_sij(sm).ok);
  CHECK(is_normal(sm));
}

TEST_CASE("prepelementary grid") {
  for (int d : {+1, -1})
    for (i64 n = 1; n <= 3; ++n)
      for (i64 j = 0; j <= n + 1; ++j)
        for (i64 a = 0; a <= 2; ++a)
          for (i64 b = 0; b <= 2; ++b) {
            Ints k;
            if (n == 1) k = {a};
            if (n == 2) k = {a, b};
            if (n == 3) k = {a, b, (a + b) % 3};
            Sij s = prep_elementary(n, j, k, d);
            auto rep = verify_sij(s);
            CHECK_MESSAGE(rep.ok, "prep ", n, " ", j, " d=", d, " a=", a, " b=", b, ": ",
                          rep.message);
            CHECK(is_normal(s));
          }
}

TEST_CASE("e_zero and f_zero") {
  // j > n: no elements at all
  Sij big = e_zero({0, 1}, 3, +1);
  CHECK(verify_sij(big).ok);

  for (int d : {+1, -1}) {
    Sij s21 = e_zero({0, 1}, 1, d);
    CHECK(verify_sij(s21).ok);
    Sij s31 = e_zero({1, 2, 3}, 1, d);
    CHECK(verify_sij(s31).ok);
    Sij s32 = e_zero({1, 2, 3}, 2, d);
    CHECK(verify_sij(s32).ok);
  }

  // numeric vanishing: the signed sum over (V,U) of GT sizes is zero
  for (i64 a = 0; a <= 2; ++a)
    for (i64 b = 0; b <= 2; ++b)
      for (i64 j = 1; j <= 2; ++j) {
        CHECK(sset_size(e_family_set({a, b, 2}, j, +1)) == 0);
        CHECK(sset_size(e_family_set({a, b, 2}, j, -1)) == 0);
      }
}

TEST_CASE("e_prime") {
  for (int d : {+1, -1}) {
    Sij s0 = e_prime({0, 1}, 0, d);
    CHECK(verify_sij(s0).ok);
    Sij s1 = e_prime({0, 1}, 1, d);
    CHECK(verify_sij(s1).ok);
    Sij s2 = e_prime({1, 2, 3}, 2, d);
    CHECK(verify_sij(s2).ok);
    CHECK(sset_size(e_prime_set({1, 2, 3}, 2, d)) ==
          sset_size(e_prime_target({1, 2, 3}, 2, d)));
  }
}

TEST_CASE("left to right at n=2") {
  Ints tp{};  // the unique arrow pattern of order 1
  for (i64 a = 0; a <= 2; ++a)
    for (i64 b = 0; b <= 2; ++b) {
      Sij s = left_to_right({a, b}, tp);
      auto rep = verify_sij(s);
      CHECK_MESSAGE(rep.ok, "l2r (", a, ",", b, "): ", rep.message);
    }
}

TEST_CASE("left to right at n=3") {
  Ints allse{1, 1, 1};  // all-SE arrow pattern of order 2
  Sij s = left_to_right({1, 2, 3}, allse);
  CHECK(sset_size(s->dom) == sset_size(s->cod));
  CHECK(verify_sij(s).ok);
  Ints mixed{0, 2, 1};
  Sij s2 = left_to_right({0, 2, 1}, mixed);
  CHECK(verify_sij(s2).ok);
}

TEST_CASE("rotate_mt size law and verification") {
  CHECK(rot_vec({1, 2, 3}) == Ints({2, 3, -2}));
  CHECK(sset_size(mt({1, 2, 3})) == 7);
  CHECK(sset_size(mt({2, 3, -2})) == 7);

  // n = 1: both sides are single triangles
  Sij r1 = rotate_mt({5}, 0);
  CHECK(verify_sij(r1).ok);

  Sij r2 = rotate_mt({1, 2}, 0);
  CHECK(verify_sij(r2).ok);

  Sij r3 = rotate_mt({1, 2, 3}, 0);
  auto rep = verify_sij(r3);
  CHECK_MESSAGE(rep.ok, rep.message);
}

TEST_CASE("E and F families vanish numerically on the full grid") {
  for (int d : {+1, -1})
    for (i64 m = 1; m <= 3; ++m)
      for (i64 j = 1; j <= m; ++j) {
        std::vector<Ints> ks;
        if (m == 1)
          for (i64 a = 0; a <= 3; ++a) ks.push_back({a});
        if (m == 2)
          for (i64 a = 0; a <= 3; ++a)
            for (i64 b = 0; b <= 3; ++b) ks.push_back({a, b});
        if (m == 3)
          for (i64 a = 0; a <= 3; ++a)
            for (i64 b = 0; b <= 3; ++b)
              for (i64 c = 0; c <= 3; ++c) ks.push_back({a, b, c});
        for (auto& k : ks) CHECK(sset_size(e_family_set(k, j, d)) == 0);
      }
}
