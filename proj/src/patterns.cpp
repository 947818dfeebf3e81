#include "asmbij/patterns.hpp"

#include <algorithm>
#include <unordered_map>

namespace asmbij {

namespace {

std::string vec_key(const Ints& k) { return ints_to_string(k); }

template <typename T>
T& registry_get(std::unordered_map<std::string, T>& reg, const std::string& key, bool& found) {
  auto it = reg.find(key);
  found = it != reg.end();
  if (found) return it->second;
  return reg[key];
}

}  // namespace

SSet gt_index(const Ints& k) {
  std::vector<SSet> fs;
  for (size_t i = 0; i + 1 < k.size(); ++i) fs.push_back(interval(k[i], k[i + 1]));
  return prod_many(fs);
}

SSet gt(const Ints& k) {
  ASMBIJ_CHECK(!k.empty(), "gt: empty bottom row");
  std::string uid = "GT:" + vec_key(k);
  if (k.size() == 1) {
    // single positive dot, tagged by k so distinct sets stay distinct
    return tuples_set({{Ints{}, 1}}, uid);
  }
  return indexed_union(uid, gt_index(k), [](const Elem& l) { return gt(project(l)); });
}

i64 gt_size(const Ints& k) { return sset_size(gt(k)); }

bool interlaces(const Ints& l, const Ints& k) {
  i64 n = (i64)k.size();
  if ((i64)l.size() != n - 1) return false;
  for (i64 i = 0; i < n - 1; ++i) {
    i64 lo = std::min(k[i], k[i + 1]), hi = std::max(k[i], k[i + 1]);
    if (l[i] < lo || l[i] > hi) return false;  // (a)
  }
  for (i64 i = 1; i + 1 < n; ++i)  // (b): 2 <= i <= n-1 (1-based)
    if (k[i - 1] <= k[i] && k[i] <= k[i + 1] && l[i - 1] == k[i] && l[i] == k[i]) return false;
  for (i64 i = 0; i < n - 1; ++i) {  // (c)
    if (k[i] > l[i] && l[i] == k[i + 1]) {
      if (i > n - 3) return false;
      if (l[i + 1] != l[i]) return false;
    }
  }
  for (i64 i = 0; i < n - 1; ++i) {  // (d)
    if (k[i] == l[i] && l[i] > k[i + 1]) {
      if (i < 1) return false;
      if (l[i - 1] != l[i]) return false;
    }
  }
  return true;
}

std::vector<Ints> interlacing_rows(const Ints& k) {
  std::vector<Ints> out;
  i64 n = (i64)k.size();
  Ints cur(n - 1);
  std::function<void(i64)> rec = [&](i64 i) {
    if (i == n - 1) {
      if (interlaces(cur, k)) out.push_back(cur);
      return;
    }
    i64 lo = std::min(k[i], k[i + 1]), hi = std::max(k[i], k[i + 1]);
    for (i64 v = lo; v <= hi; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  if (n >= 1) rec(0);
  return out;
}

int mt_sign(const std::vector<Ints>& rows) {
  i64 r = 0;
  i64 n = (i64)rows.size();
  for (i64 i = 0; i < n; ++i)
    for (i64 jj = 0; jj + 1 <= i; ++jj)
      if (rows[i][jj] > rows[i][jj + 1]) ++r;  // strict descents
  for (i64 i = 1; i < n; ++i)
    for (i64 jj = 0; jj + 2 <= i; ++jj)  // 1 <= j <= i-2 (1-based)
      if (rows[i][jj] > rows[i - 1][jj] && rows[i - 1][jj] == rows[i][jj + 1] &&
          rows[i][jj + 1] == rows[i - 1][jj + 1] && rows[i - 1][jj + 1] > rows[i][jj + 2])
        ++r;
  return r % 2 == 0 ? 1 : -1;
}

Ints mt_tuple_from_rows(const std::vector<Ints>& rows) {
  Ints flat;
  for (auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

std::vector<Ints> mt_rows_from_tuple(const Ints& flat) {
  std::vector<Ints> rows;
  size_t pos = 0, len = 1;
  while (pos < flat.size()) {
    rows.push_back(Ints(flat.begin() + pos, flat.begin() + pos + len));
    pos += len;
    ++len;
  }
  return rows;
}

namespace {

void mt_enumerate(const Ints& k, std::vector<Ints>& stack_rows,
                  std::vector<std::vector<Ints>>& out) {
  // stack_rows holds the rows above k, built bottom-up
  const Ints& top = stack_rows.empty() ? k : stack_rows.back();
  if (top.size() == 1) {
    std::vector<Ints> ordered(stack_rows.rbegin(), stack_rows.rend());
    ordered.push_back(k);
    if (ordered.size() > 1 && ordered.front().size() != 1)
      fail("mt_enumerate: malformed triangle");
    if (stack_rows.empty()) ordered.assign({k});
    out.push_back(ordered);
    return;
  }
  for (const Ints& l : interlacing_rows(top)) {
    stack_rows.push_back(l);
    mt_enumerate(k, stack_rows, out);
    stack_rows.pop_back();
  }
}

}  // namespace

SSet mt(const Ints& k) {
  std::string uid = "MT:" + vec_key(k);
  std::vector<std::vector<Ints>> tris;
  std::vector<Ints> stack_rows;
  mt_enumerate(k, stack_rows, tris);
  std::vector<std::pair<Ints, int>> tups;
  for (auto& rows : tris) tups.push_back({mt_tuple_from_rows(rows), mt_sign(rows)});
  std::sort(tups.begin(), tups.end());
  return tuples_set(std::move(tups), uid);
}

SSet mt_i_set(const Ints& k, i64 i) {
  i64 n = (i64)k.size();
  std::string uid = "MTi:" + vec_key(k) + ":" + std::to_string(i);
  std::vector<std::pair<Ints, int>> tups;
  if (i >= 1 && i <= n) {
    for (auto& [flat, sg] : mt(k)->tups) {
      auto rows = mt_rows_from_tuple(flat);
      bool ok = true;
      for (i64 r = n - i; r < n; ++r) ok = ok && rows[r][0] == k[0];
      if (n - i - 1 >= 0) ok = ok && rows[n - i - 1][0] != k[0];
      if (ok) tups.push_back({flat, sg});
    }
  }
  return tuples_set(std::move(tups), uid);
}

SSet mt_upper_i_set(const Ints& k, i64 i) {
  i64 n = (i64)k.size();
  std::string uid = "MTui:" + vec_key(k) + ":" + std::to_string(i);
  std::vector<std::pair<Ints, int>> tups;
  if (i >= 1 && i <= n) {
    for (auto& [flat, sg] : mt(k)->tups) {
      auto rows = mt_rows_from_tuple(flat);
      bool ok = true;
      for (i64 r = n - i; r < n; ++r) ok = ok && rows[r][r] == k[n - 1];
      if (n - i - 1 >= 0) ok = ok && rows[n - i - 1][n - i - 1] != k[n - 1];
      if (ok) tups.push_back({flat, sg});
    }
  }
  return tuples_set(std::move(tups), uid);
}

namespace {

void fill_codes(i64 len, Ints& cur, std::vector<std::pair<Ints, int>>& out) {
  if ((i64)cur.size() == len) {
    int twos = 0;
    for (i64 x : cur) twos += x == 2;
    out.push_back({cur, twos % 2 == 0 ? 1 : -1});
    return;
  }
  for (i64 v = 0; v <= 2; ++v) {
    cur.push_back(v);
    fill_codes(len, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SSet ap_set(i64 n) {
  std::vector<std::pair<Ints, int>> out;
  Ints cur;
  fill_codes(n * (n - 1) / 2, cur, out);
  return tuples_set(std::move(out), "AP:" + std::to_string(n));
}

SSet ar_set(i64 n) {
  std::vector<std::pair<Ints, int>> out;
  Ints cur;
  fill_codes(n, cur, out);
  return tuples_set(std::move(out), "AR:" + std::to_string(n));
}

namespace {

// index of (p,q), 1 <= p < q <= n, in lexicographic order
inline i64 ap_pos(i64 p, i64 q, i64 n) {
  return (p - 1) * n - p * (p - 1) / 2 + (q - p - 1);
}

}  // namespace

Ints ap_c(const Ints& t, i64 n) {
  auto dsw = [](i64 v) { return v == 0 || v == 2 ? 1 : 0; };  // SW component
  auto dse = [](i64 v) { return v == 1 || v == 2 ? 1 : 0; };  // SE component
  Ints c(n, 0);
  for (i64 p = 1; p <= n; ++p) {
    for (i64 q = p + 1; q <= n; ++q) c[p - 1] += dsw(t[ap_pos(p, q, n)]);
    for (i64 j = 1; j < p; ++j) c[p - 1] -= dse(t[ap_pos(j, p, n)]);
  }
  return c;
}

Ints deform(const Ints& k, const Ints& t) {
  Ints c = ap_c(t, (i64)k.size());
  Ints d = k;
  for (size_t i = 0; i < k.size(); ++i) d[i] += c[i];
  return d;
}

Ints mu_T(const Ints& mu, const Ints& tp, i64 n) {
  // leftmost NE diagonal: entries t_{1,q}; first arrow-row element at the bottom,
  // i.e. t_{1,i+1} = mu_i (reflection keeps the codes)
  Ints t(n * (n - 1) / 2, 0);
  for (i64 i = 1; i <= n - 1; ++i) t[ap_pos(1, i + 1, n)] = mu[i - 1];
  for (i64 p = 2; p <= n; ++p)
    for (i64 q = p + 1; q <= n; ++q) t[ap_pos(p, q, n)] = tp[ap_pos(p - 1, q - 1, n - 1)];
  return t;
}

Ints T_mu(const Ints& tp, const Ints& mu, i64 n) {
  // rightmost SE diagonal: entries t_{p,n}; first arrow-row element at the top
  Ints t(n * (n - 1) / 2, 0);
  for (i64 p = 1; p <= n - 1; ++p) t[ap_pos(p, n, n)] = mu[p - 1];
  for (i64 p = 1; p <= n - 1; ++p)
    for (i64 q = p + 1; q <= n - 1; ++q) t[ap_pos(p, q, n)] = tp[ap_pos(p, q, n - 1)];
  return t;
}

SSet sgt(const Ints& k) {
  i64 n = (i64)k.size();
  Ints kc = k;
  return indexed_union("SGT:" + vec_key(k), ap_set(n),
                       [kc](const Elem& t) { return gt(deform(kc, t->values)); });
}

namespace {

std::unordered_map<std::string, Sij>& sij_registry() {
  static std::unordered_map<std::string, Sij> reg;
  return reg;
}

}  // namespace

Sij pi_sij(const Ints& k, i64 i) {
  i64 n = (i64)k.size();
  ASMBIJ_CHECK(1 <= i && i <= n - 1, "pi_sij: index out of range");
  std::string key = "pi:" + vec_key(k) + ":" + std::to_string(i);
  auto& reg = sij_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  Ints k2 = k;
  k2[i - 1] = k[i] + 1;
  k2[i] = k[i - 1] - 1;
  Sij s = matcher_sij(gt(k), opp(gt(k2)), /*by_fiber=*/false, key);
  reg.emplace(key, s);
  return s;
}

Sij gamma_sij(const Ints& k, i64 /*x*/) {
  std::string key = "gamma:" + vec_key(k);
  auto& reg = sij_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  Sij s = matcher_sij(mt(k), sgt(k), /*by_fiber=*/false, key);
  reg.emplace(key, s);
  return s;
}

std::vector<Ints> asm_from_mt_rows(const std::vector<Ints>& rows) {
  i64 n = (i64)rows.size();
  std::vector<Ints> a(n, Ints(n, 0));
  std::vector<Ints> ind(n, Ints(n, 0));
  for (i64 r = 0; r < n; ++r)
    for (i64 v : rows[r]) ind[r][v - 1] = 1;
  for (i64 r = 0; r < n; ++r)
    for (i64 c = 0; c < n; ++c) a[r][c] = ind[r][c] - (r > 0 ? ind[r - 1][c] : 0);
  return a;
}

std::vector<Ints> mt_rows_from_asm(const std::vector<Ints>& a) {
  i64 n = (i64)a.size();
  std::vector<Ints> rows(n);
  Ints sum(n, 0);
  for (i64 r = 0; r < n; ++r) {
    for (i64 c = 0; c < n; ++c) {
      sum[c] += a[r][c];
      if (sum[c] == 1) rows[r].push_back(c + 1);
    }
  }
  return rows;
}

namespace {

Elem shift_elem(const Elem& e, i64 delta) {
  switch (e->kind) {
    case ElemNode::Kind::Tuple: {
      Ints v = e->values;
      for (auto& x : v) x += delta;
      return tuple_elem(v);
    }
    case ElemNode::Kind::InLeft:
      return in_left(shift_elem(e->a, delta));
    case ElemNode::Kind::InRight:
      return in_right(shift_elem(e->a, delta));
    case ElemNode::Kind::Pair:
      return pair_elem(shift_elem(e->a, delta), shift_elem(e->b, delta));
    case ElemNode::Kind::AtIndex:
      return at_index(shift_elem(e->a, delta), shift_elem(e->b, delta));
  }
  fail("shift_elem: bad element");
}

}  // namespace

Sij gt_shift_sij(const Ints& k) {
  Ints k1 = k;
  for (auto& x : k1) x += 1;
  return reshape_sij(
      gt(k1), gt(k), [](const Elem& e) { return shift_elem(e, -1); },
      [](const Elem& e) { return shift_elem(e, +1); }, "gtshift:" + vec_key(k));
}

}  // namespace asmbij
