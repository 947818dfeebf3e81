#include <doctest.h>

#include "asmbij/linalg.hpp"
#include "asmbij/subsets.hpp"

using namespace asmbij;

namespace {

// independent numeric determinant over the size matrix
i64 det_oracle(const std::vector<Ints>& a) {
  i64 m = (i64)a.size();
  if (m == 0) return 1;
  i64 out = 0;
  Ints idx(m);
  for (i64 r = 0; r < m; ++r) idx[r] = r;
  do {
    Ints one(m);
    for (i64 r = 0; r < m; ++r) one[r] = idx[r] + 1;
    i64 t = perm_parity(one);
    for (i64 r = 0; r < m; ++r) t *= a[r][idx[r]];
    out += t;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace

TEST_CASE("determinant of a signed matrix") {
  SMatrix d = make_matrix(2, "tst:diag", [](i64 r, i64 c) {
    return r == c ? singleton({r + 10}) : empty_set();
  });
  CHECK(sset_size(det_set(d)) == 1);
  CHECK(enumerate_set(det_set(d)).size() == 1);

  SMatrix p = make_matrix(2, "tst:p1", [](i64 r, i64 c) {
    if (r == 0 && c == 0) return interval(1, 2);
    if (r == 1 && c == 1) return interval(1, 3);
    return interval(1, 1);
  });
  CHECK(sset_size(det_set(p)) == 2 * 3 - 1);
  CHECK(numeric_det(p) == 5);

  SMatrix q = make_matrix(3, "tst:q1", [](i64 r, i64 c) {
    if (r == c) return interval(0, r + 1);
    if (r < c) return interval(1, 1);
    return opp(interval(0, 0));
  });
  std::vector<Ints> sizes(3, Ints(3));
  for (i64 r = 0; r < 3; ++r)
    for (i64 c = 0; c < 3; ++c) sizes[r][c] = sset_size(q.e[r][c]);
  CHECK(sset_size(det_set(q)) == det_oracle(sizes));
}

TEST_CASE("det product") {
  SMatrix p1 = make_matrix(1, "tst:dp1", [](i64, i64) { return interval(1, 3); });
  SMatrix q1 = make_matrix(1, "tst:dq1", [](i64, i64) { return interval(0, 1); });
  Sij s1 = det_product_sij(p1, q1);
  CHECK(verify_sij(s1).ok);

  SMatrix p = make_matrix(2, "tst:dp2", [](i64 r, i64 c) { return interval(0, r + c); });
  SMatrix q = make_matrix(2, "tst:dq2", [](i64 r, i64 c) {
    return c == 0 ? interval(1, 2) : interval(r, 2 * r);
  });
  Sij s = det_product_sij(p, q);
  CHECK(verify_sij(s).ok);

  SMatrix p3 = make_matrix(3, "tst:dp3", [](i64 r, i64 c) {
    return interval(0, (r * 2 + c) % 3);
  });
  SMatrix q3 = make_matrix(3, "tst:dq3", [](i64 r, i64 c) {
    return c >= r ? interval(1, 1 + c - r) : opp(interval(0, r - c));
  });
  SMatrix r3 = matrix_product(p3, q3);
  CHECK(sset_size(det_set(r3)) == sset_size(det_set(p3)) * sset_size(det_set(q3)));
  Sij s3 = det_product_sij(p3, q3);
  CHECK(verify_sij(s3).ok);
}

TEST_CASE("cramer") {
  // m = 1: reduces to the given row sijection
  SMatrix p1 = make_matrix(1, "tst:cr1", [](i64, i64) { return interval(1, 2); });
  std::vector<SSet> X1{interval(0, 2)};
  SSet rd = row_dom(p1, X1, 0, "t");
  std::vector<SSet> Y1{rd};
  std::vector<Sij> rows1{identity_sij(rd)};
  Sij c1 = cramer_sij(p1, X1, Y1, rows1, 0, "t");
  CHECK(verify_sij(c1).ok);

  // m = 2 toy: interval entries, rows built with the canonical matcher
  SMatrix p = make_matrix(2, "tst:cr2", [](i64 r, i64 c) { return interval(1, 1 + r + c); });
  std::vector<SSet> X{interval(0, 1), interval(2, 4)};
  std::vector<SSet> Y;
  std::vector<Sij> rows;
  for (i64 i = 0; i < 2; ++i) {
    SSet d = row_dom(p, X, i, "t2");
    std::vector<std::pair<Ints, int>> ys;
    for (i64 t = 0; t < sset_size(d); ++t) ys.push_back({{t}, 1});
    SSet y = tuples_set(ys, "tst:crY" + std::to_string(i));
    Y.push_back(y);
    rows.push_back(matcher_sij(d, y, false, "rowm" + std::to_string(i)));
  }
  Sij c = cramer_sij(p, X, Y, rows, 0, "t2");
  CHECK(verify_sij(c).ok);
  Sij c2 = cramer_sij(p, X, Y, rows, 1, "t2");
  CHECK(verify_sij(c2).ok);
  SMatrix pj = column_replace(p, 1, Y, "tst:cr2:colY");
  CHECK(sset_size(det_set(p)) * sset_size(X[1]) == sset_size(det_set(pj)));
}

TEST_CASE("solve zero") {
  // rows cancel by construction: X_0 = [0,1], X_1 = -[0,1], P rows constant
  SMatrix p = make_matrix(2, "tst:sz", [](i64 r, i64) { return interval(1, 2 + r); });
  std::vector<SSet> X{interval(0, 1), opp(interval(0, 1))};
  std::vector<Sij> rows;
  for (i64 i = 0; i < 2; ++i) {
    SSet d = row_dom(p, X, i, "t3");
    rows.push_back(matcher_sij(d, empty_set(), false, "zrow" + std::to_string(i)));
  }
  for (i64 j = 0; j < 2; ++j) {
    Sij s = solve_zero_sij(p, X, rows, j, "t3");
    CHECK(verify_sij(s).ok);
    CHECK(sset_size(det_set(p)) * sset_size(X[j]) == 0);
  }
  // all-empty X: trivial
  SMatrix q = make_matrix(1, "tst:sz2", [](i64, i64) { return interval(1, 2); });
  std::vector<SSet> XE{empty_set()};
  std::vector<Sij> rowsE{empty_sij(row_dom(q, XE, 0, "t4"), empty_set())};
  CHECK(verify_sij(solve_zero_sij(q, XE, rowsE, 0, "t4")).ok);
}

TEST_CASE("entrywise and extraction") {
  SMatrix a = make_matrix(2, "tst:ew1", [](i64 r, i64 c) { return interval(0, r + c + 1); });
  SMatrix b = make_matrix(2, "tst:ew2", [](i64 r, i64 c) {
    return union2(interval(0, r + c), singleton({r + c + 1}));
  });
  Sij s = det_entrywise_sij(a, b, [a, b](i64 r, i64 c) {
    return matcher_sij(a.e[r][c], b.e[r][c], true, "ew");
  });
  CHECK(verify_sij(s).ok);

  SMatrix t = make_matrix(2, "tst:ex", [](i64 r, i64 c) {
    if (r == 1) return c == 1 ? opp(singleton({5})) : empty_set();
    return interval(0, c + 1);
  });
  SMatrix mi = matrix_minor(t, 1, 1, "tst:ex:minor");
  Sij ex = det_extract_sij(t, 1, 1, mi);
  CHECK(verify_sij(ex).ok);
  CHECK(sset_size(det_set(t)) == -sset_size(det_set(mi)));
}
