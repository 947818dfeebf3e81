#include <doctest.h>

#include <map>
#include <set>

#include "asmbij/asmdpp.hpp"

using namespace asmbij;

namespace {

// independent ASM enumeration: direct backtracking over matrix entries
bool asm_partial_ok(const std::vector<Ints>& a, i64 rows_done, i64 n) {
  for (i64 c = 0; c < n; ++c) {
    i64 sum = 0, last = 0;
    for (i64 r = 0; r < rows_done; ++r) {
      if (a[r][c] != 0) {
        if (last == a[r][c]) return false;
        last = a[r][c];
        if (sum == 0 && a[r][c] == -1) return false;
      }
      sum += a[r][c];
    }
    if (sum < 0 || sum > 1) return false;
    if (rows_done == n && sum != 1) return false;
  }
  return true;
}

void asm_brute_rec(std::vector<Ints>& a, i64 r, i64 n, std::vector<std::vector<Ints>>& out) {
  if (r == (i64)a.size()) {
    out.push_back(a);
    return;
  }
  std::function<void(i64, i64, i64)> row = [&](i64 c, i64 sum, i64 last) {
    if (c == n) {
      if (sum == 1 && asm_partial_ok(a, r + 1, n)) asm_brute_rec(a, r + 1, n, out);
      return;
    }
    for (i64 v : {0LL, 1LL, -1LL}) {
      if (v != 0 && v == last) continue;
      if (sum == 0 && v == -1) continue;
      a[r][c] = v;
      row(c + 1, sum + v, v == 0 ? last : v);
      a[r][c] = 0;
    }
  };
  row(0, 0, 0);
}

i64 asm_brute_count(i64 n, i64 topcol = 0) {
  std::vector<Ints> a(n, Ints(n, 0));
  std::vector<std::vector<Ints>> out;
  asm_brute_rec(a, 0, n, out);
  if (topcol == 0) return (i64)out.size();
  i64 c = 0;
  for (auto& m : out) {
    for (i64 j = 0; j < n; ++j)
      if (m[0][j] == 1 && j + 1 == topcol) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("asm enumeration and formulas") {
  CHECK(enumerate_asm(1).size() == 1);
  CHECK(enumerate_asm(2).size() == 2);
  CHECK(enumerate_asm(3).size() == 7);
  CHECK(enumerate_asm(4).size() == 42);
  CHECK(asm_brute_count(3) == 7);
  CHECK(asm_brute_count(4) == 42);
  for (auto& a : enumerate_asm(4)) CHECK(is_asm(a));

  CHECK(asm_formula(1) == 1);
  CHECK(asm_formula(2) == 2);
  CHECK(asm_formula(3) == 7);
  CHECK(asm_formula(4) == 42);
  CHECK(asm_formula(5) == 429);

  CHECK(sset_size(asm_set_i(3, 1)) == 2);
  CHECK(sset_size(asm_set_i(3, 2)) == 3);
  CHECK(sset_size(asm_set_i(3, 3)) == 2);
  for (i64 i = 1; i <= 3; ++i) CHECK(asm_brute_count(3, i) == sset_size(asm_set_i(3, i)));
  CHECK(asm_refined_formula(4, 1) == 7);
  CHECK(asm_refined_formula(4, 2) == 14);
  CHECK(asm_refined_formula(4, 3) == 14);
  CHECK(asm_refined_formula(4, 4) == 7);
  CHECK(asm_refined_formula(1, 1) == 1);
}

TEST_CASE("dpp enumeration") {
  auto d2 = enumerate_dpp(2);
  CHECK(d2.size() == 2);  // empty and (2)
  CHECK(enumerate_dpp(3).size() == 7);
  CHECK(enumerate_dpp(4).size() == 42);
  for (i64 i = 1; i <= 4; ++i)
    CHECK(sset_size(dpp_set_i(4, i)) == sset_size(asm_set_i(4, i)));
  for (i64 i = 1; i <= 3; ++i)
    CHECK(sset_size(dpp_set_i(3, i)) == sset_size(asm_set_i(3, i)));
  for (auto& rows : enumerate_dpp(3)) {
    CHECK(dpp_rows_from_tuple(dpp_tuple(rows)) == rows);
  }
}

TEST_CASE("asm symmetries") {
  Sij r = asm_reflect_sij(3, 1);
  CHECK(verify_sij(r).ok);
  for (auto& a : enumerate_asm(3)) {
    CHECK(asm_rotate90(asm_rotate90(asm_rotate90(asm_rotate90(a, true), true), true), true) ==
          a);
    CHECK(asm_reflect_cols(asm_reflect_cols(a)) == a);
    CHECK(is_asm(asm_rotate90(a, true)));
  }
  for (i64 i = 1; i <= 3; ++i) {
    CHECK(verify_sij(asm_to_mti_sij(3, i)).ok);
    CHECK(verify_sij(asm_to_mt_upper_sij(3, i)).ok);
  }
}

TEST_CASE("mti") {
  Ints k{1, 2, 3};
  Sij m1 = mti_sij(k, 1);
  CHECK(verify_sij(m1).ok);
  Sij m2 = mti_sij(k, 2);
  CHECK(verify_sij(m2).ok);
  Sij m3 = mti_sij(k, 3);
  CHECK(verify_sij(m3).ok);
  CHECK(sset_size(mt_i_set(k, 3)) == sset_size(mti_target(k, 3)));

  for (i64 i = 1; i <= 3; ++i) {
    CHECK(verify_sij(mti_upper_sij(k, i)).ok);
  }
  Sij m4 = mti_sij({1, 2}, 3);
  CHECK(verify_sij(m4).ok);
  CHECK_THROWS(mti_sij({2, 1}, 1));
  CHECK_THROWS(mti_sij({1, 1, 2}, 1));
}

TEST_CASE("asm recurrence sizes") {
  Ints a3{2, 3, 2};
  for (i64 i = 1; i <= 3; ++i) {
    i64 lhs = 0;
    for (i64 j = 1; j <= 3; ++j)
      lhs += (j % 2 == 1 ? 1 : -1) * binom_count(2 * 3 - i - 1, 3 - i - j + 1) * a3[j - 1];
    CHECK(lhs == a3[i - 1]);
  }
}

TEST_CASE("asm recurrence verify n=2") {
  for (i64 i = 1; i <= 2; ++i) {
    Sij s = asm_recurrence(2, i);
    auto rep = verify_sij(s);
    CHECK_MESSAGE(rep.ok, "arec 2 ", i, ": ", rep.message);
  }
}

TEST_CASE("asm recurrence verify n=3") {
  for (i64 i = 1; i <= 3; ++i) {
    Sij s = asm_recurrence(3, i);
    auto rep = verify_sij(s);
    CHECK_MESSAGE(rep.ok, "arec 3 ", i, ": ", rep.message);
  }
}

TEST_CASE("lgv") {
  Sij l2 = lgv_dpp_sij(2);
  CHECK(verify_sij(l2).ok);
  CHECK(enumerate_set(l2->dom).size() == 1);

  Sij l3 = lgv_dpp_sij(3);
  CHECK(sset_size(l3->dom) == 2);
  CHECK(verify_sij(l3).ok);

  Sij l4 = lgv_dpp_sij(4);
  CHECK(sset_size(l4->dom) == 7);
  auto rep = verify_sij(l4);
  CHECK_MESSAGE(rep.ok, rep.message);

  Sij l5 = lgv_dpp_sij(5);
  CHECK(sset_size(l5->dom) == 42);
  CHECK(verify_sij(l5).ok);

  for (i64 j = 2; j <= 3; ++j) {
    Sij lr = lgv_dpp_refined_sij(3, j);
    auto r2 = verify_sij(lr);
    CHECK_MESSAGE(r2.ok, "lgvR 3 ", j, ": ", r2.message);
  }
  for (i64 j = 2; j <= 4; ++j) {
    Sij lr = lgv_dpp_refined_sij(4, j);
    auto r2 = verify_sij(lr);
    CHECK_MESSAGE(r2.ok, "lgvR 4 ", j, ": ", r2.message);
  }
}

TEST_CASE("from_det") {
  Sij f2 = from_det(2);
  CHECK(verify_sij(f2).ok);
  CHECK(sset_size(f2->dom) == -1);

  Sij f3 = from_det(3);
  CHECK(sset_size(f3->dom) == 2);
  auto rep = verify_sij(f3);
  CHECK_MESSAGE(rep.ok, rep.message);

  Sij f4 = from_det(4);
  CHECK(sset_size(f4->dom) == -7);
  auto rep4 = verify_sij(f4);
  CHECK_MESSAGE(rep4.ok, rep4.message);
}

TEST_CASE("main bijection at n=2") {
  for (i64 i = 1; i <= 2; ++i) {
    Sij s = main_bijection(2, i, 0);
    auto rep = verify_sij(s);
    CHECK_MESSAGE(rep.ok, "main 2 ", i, ": ", rep.message);
  }
}

TEST_CASE("main bijection cardinalities at n=3") {
  CHECK(sset_size(dpp_set(2)) * sset_size(bset(3, 1)) * sset_size(asm_set_i(3, 2)) == 36);
  CHECK(sset_size(dpp_set(2)) * sset_size(asm_set_i(3, 1)) * sset_size(bset(3, 2)) == 36);
  Sij s = main_bijection(3, 2, 0);
  auto rep = verify_sij(s);
  CHECK_MESSAGE(rep.ok, rep.message);
}

TEST_CASE("asm_to_dpp at n=1 is the singleton swap") {
  Sij s = asm_to_dpp(1, 1, 0);
  CHECK(verify_sij(s).ok);
  CHECK(enumerate_set(s->dom).size() == 1);
  Sij m = main_bijection(1, 1, 0);
  CHECK(verify_sij(m).ok);
  CHECK(enumerate_set(m->dom).size() == 1);
}

TEST_CASE("asm_to_dpp at n=2 and n=3") {
  for (i64 i = 1; i <= 2; ++i) {
    Sij s = asm_to_dpp(2, i, 0);
    auto rep = verify_sij(s);
    CHECK_MESSAGE(rep.ok, "ad 2 ", i, ": ", rep.message);
  }
  for (i64 i = 1; i <= 3; ++i) {
    Sij s = asm_to_dpp(3, i, 0);
    auto rep = verify_sij(s);
    CHECK_MESSAGE(rep.ok, "ad 3 ", i, ": ", rep.message);
  }
}

TEST_CASE("main bijection is total and injective at n=4") {
  for (i64 i = 1; i <= 4; ++i) {
    Sij s = main_bijection(4, i, 0);
    std::set<std::string> images;
    i64 cnt = 0;
    for (const Elem& e : enumerate_set(s->dom)) {
      Elem img = s->fwd(e);
      REQUIRE(elem_valid(img, s->cod));
      REQUIRE(images.insert(img->key).second);
      ++cnt;
    }
    CHECK(cnt == sset_size(s->dom));
    CHECK((i64)images.size() == sset_size(s->cod));
  }
}
