#include "asmbij/rotation.hpp"

#include <algorithm>
#include <unordered_map>

#include "asmbij/linalg.hpp"
#include "asmbij/patterns.hpp"
#include "asmbij/subsets.hpp"

namespace asmbij {

namespace {

std::string vkey(const Ints& k) { return ints_to_string(k); }

std::string pkey(const char* tag, i64 n, i64 j, const Ints& k, int d) {
  return std::string(tag) + (d > 0 ? "+" : "-") + std::to_string(n) + ":" + std::to_string(j) +
         ":" + vkey(k);
}

std::unordered_map<std::string, Sij>& rot_registry() {
  static std::unordered_map<std::string, Sij> reg;
  return reg;
}

void masks_rec(i64 n, i64 j, Ints& cur, std::vector<std::pair<Ints, int>>& out) {
  if ((i64)cur.size() == n) {
    i64 nz = 0, twos = 0;
    for (i64 x : cur) {
      nz += x != 0;
      twos += x == 2;
    }
    if (nz == j) out.push_back({cur, twos % 2 == 0 ? 1 : -1});
    return;
  }
  for (i64 v = 0; v <= 2; ++v) {
    cur.push_back(v);
    masks_rec(n, j, cur, out);
    cur.pop_back();
  }
}

inline i64 eps(const Ints& mask, i64 i) { return mask[i] == 2 ? 1 : 0; }  // 0-based

Ints head(const Ints& k) { return Ints(k.begin(), k.end() - 1); }
Ints head2(const Ints& k) { return Ints(k.begin(), k.end() - 2); }

}  // namespace

SSet vu_set(i64 n, i64 j) {
  std::vector<std::pair<Ints, int>> out;
  if (j >= 0) {
    Ints cur;
    masks_rec(n, j, cur, out);
  }
  return tuples_set(std::move(out), "VU:" + std::to_string(n) + ":" + std::to_string(j));
}

SSet prep_dom(i64 n, i64 j, const Ints& k, int d) {
  Ints kc = k;
  return indexed_union(pkey("prepA", n, j, k, d), vu_set(n, j), [kc, n, d](const Elem& t) {
    const Ints& m = t->values;
    std::vector<SSet> fs;
    for (i64 i = 0; i + 1 < n; ++i)
      fs.push_back(interval(kc[i] + d * eps(m, i), kc[i + 1] + d * eps(m, i + 1)));
    return prod_many(fs);
  });
}

namespace {

SSet prep_sing_pair(const Ints& k, int d) {
  i64 n = (i64)k.size();
  i64 a = d > 0 ? k[n - 2] + 1 : k[n - 2];
  return prod(singleton({a}), singleton({a - 1}));
}

}  // namespace

SSet prep_cod(i64 n, i64 j, const Ints& k, int d) {
  if (j < 0) return empty_set();
  if (n == 1) return j == 0 ? tuples_set({{Ints{}, 1}}, pkey("prepZ", 1, 0, k, d)) : empty_set();
  if (n == 2) {
    Ints kc = k;
    return indexed_union(pkey("prepZ", 2, j, k, d), vu_set(1, j), [kc, d](const Elem& t) {
      i64 e1 = eps(t->values, 0);
      return interval(kc[0] + d * e1, kc[1] + d * e1);
    });
  }
  Ints kp = head(k), kpp = head2(k);
  SSet I0 = interval(k[n - 2], k[n - 1]);
  SSet I1 = interval(k[n - 2] + d, k[n - 1] + d);
  SSet S = prep_sing_pair(k, d);
  return union_many({prod(prep_cod(n - 1, j, kp, d), I0), prod(prep_cod(n - 1, j - 1, kp, d), I0),
                     opp(prod(prep_cod(n - 1, j - 1, kp, d), I1)),
                     prod(prep_cod(n - 2, j - 1, kpp, d), S),
                     prod(prep_cod(n - 2, j - 2, kpp, d), S)});
}

std::optional<PrepDecoded> prep_decode(i64 n, i64 j, const Ints& k, int d, const Elem& e) {
  if (n == 1) return PrepDecoded{Ints{}, Ints{}};
  if (n == 2) {
    PrepDecoded out;
    out.mask = e->a->values;
    out.row = e->b->values;
    return out;
  }
  // union_many nesting: ((((a+b)+c)+d)+e)
  const Elem* cur = &e;
  int branch;
  if ((*cur)->kind == ElemNode::Kind::InRight) {
    branch = 4;
    cur = &(*cur)->a;
  } else {
    cur = &(*cur)->a;
    if ((*cur)->kind == ElemNode::Kind::InRight) {
      branch = 3;
      cur = &(*cur)->a;
    } else {
      cur = &(*cur)->a;
      if ((*cur)->kind == ElemNode::Kind::InRight) {
        branch = 2;
        cur = &(*cur)->a;
      } else {
        cur = &(*cur)->a;
        branch = (*cur)->kind == ElemNode::Kind::InRight ? 1 : 0;
        cur = &(*cur)->a;
      }
    }
  }
  if (branch >= 3) return std::nullopt;
  Ints kp = head(k);
  const Elem& z = (*cur)->a;
  i64 v = (*cur)->b->values[0];
  i64 jj = branch == 0 ? j : j - 1;
  auto sub = prep_decode(n - 1, jj, kp, d, z);
  if (!sub) return std::nullopt;
  PrepDecoded out = *sub;
  out.mask.push_back(branch == 0 ? 0 : branch == 1 ? 1 : 2);
  out.row.push_back(v);
  return out;
}

Elem prep_encode(i64 n, i64 j, const Ints& k, int d, const Ints& mask, const Elem& row_elem) {
  if (n == 1) return tuple_elem({});
  if (n == 2) return at_index(tuple_elem(mask), row_elem);
  Ints v = project(row_elem);
  i64 last = v[n - 2];
  Ints mh(mask.begin(), mask.end() - 1);
  Ints vh(v.begin(), v.end() - 1);
  std::vector<Elem> leaves;
  for (i64 x : vh) leaves.push_back(tuple_elem({x}));
  Elem sub = prep_encode(n - 1, mask[n - 2] == 0 ? j : j - 1, head(k), d, mh, prod_repack(leaves));
  Elem pr = pair_elem(sub, tuple_elem({last}));
  // wrap with the union tags of ((((a+b)+c)+d)+e): branch 0/1/2 by mask[n-2]
  switch (mask[n - 2]) {
    case 0:
      return in_left(in_left(in_left(in_left(pr))));
    case 1:
      return in_left(in_left(in_left(in_right(pr))));
    case 2:
      return in_left(in_left(in_right(pr)));
  }
  fail("prep_encode: bad mask");
}

Sij prep_elementary(i64 n, i64 j, const Ints& k, int d) {
  std::string key = pkey("prep", n, j, k, d);
  auto& reg = rot_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  Sij out;
  SSet dom = prep_dom(n, j, k, d);
  if (n <= 2 || j == 0 || enumerate_set(dom).empty()) {
    out = matcher_sij(dom, prep_cod(n, j, k, d), /*by_fiber=*/true, key);
  } else {
    // one induction step: peel the last ground element, then recurse per branch
    Ints kp = head(k), kpp = head2(k);
    SSet I0 = interval(k[n - 2], k[n - 1]);
    SSet I1 = interval(k[n - 2] + d, k[n - 1] + d);
    SSet S = prep_sing_pair(k, d);
    SSet shallow = union_many(
        {prod(prep_dom(n - 1, j, kp, d), I0), prod(prep_dom(n - 1, j - 1, kp, d), I0),
         opp(prod(prep_dom(n - 1, j - 1, kp, d), I1)), prod(prep_dom(n - 2, j - 1, kpp, d), S),
         prod(prep_dom(n - 2, j - 2, kpp, d), S)});
    Sij level = matcher_sij(dom, shallow, /*by_fiber=*/true, key + ":level");
    Sij ra = product_sij(prep_elementary(n - 1, j, kp, d), identity_sij(I0));
    Sij rb = product_sij(prep_elementary(n - 1, j - 1, kp, d), identity_sij(I0));
    Sij rc = opposite_sij(product_sij(prep_elementary(n - 1, j - 1, kp, d), identity_sij(I1)));
    Sij rd = product_sij(prep_elementary(n - 2, j - 1, kpp, d), identity_sij(S));
    Sij re = product_sij(prep_elementary(n - 2, j - 2, kpp, d), identity_sij(S));
    Sij rec = union2_sij(union2_sij(union2_sij(union2_sij(ra, rb), rc), rd), re);
    out = compose(level, rec);
  }
  reg.emplace(key, out);
  return out;
}

SSet e_family_set(const Ints& k, i64 j, int d) {
  i64 n = (i64)k.size();
  Ints kc = k;
  return indexed_union(pkey("E", n, j, k, d), vu_set(n, j), [kc, d](const Elem& t) {
    Ints kk = kc;
    for (size_t i = 0; i < kk.size(); ++i) kk[i] += d * eps(t->values, (i64)i);
    return gt(kk);
  });
}

SSet e_prime_set(const Ints& k, i64 j, int d) {
  i64 n = (i64)k.size();
  Ints kc = k;
  return indexed_union(pkey("Ep", n, j, k, d), vu_set(n - 1, j), [kc, d](const Elem& t) {
    Ints kk = kc;
    for (size_t i = 1; i < kk.size(); ++i) kk[i] += d * eps(t->values, (i64)i - 1);
    return gt(kk);
  });
}

SSet e_prime_target(const Ints& k, i64 j, int d) {
  i64 n = (i64)k.size();
  std::vector<std::pair<Ints, int>> ir;
  for (i64 i = 0; i <= j; ++i) ir.push_back({{i}, (j - i) % 2 == 0 ? 1 : -1});
  SSet irange = tuples_set(std::move(ir), pkey("EpTi", n, j, k, d));
  Ints kc = k;
  return indexed_union(pkey("EpT", n, j, k, d), irange, [kc, j, d](const Elem& t) {
    i64 i = t->values[0];
    Ints kk = kc;
    kk[0] += d * i;
    return prod(binom_set(j, i), gt(kk));
  });
}

Sij e_zero(const Ints& k, i64 j, int d) {
  i64 n = (i64)k.size();
  std::string key = pkey("ez", n, j, k, d);
  auto& reg = rot_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  ASMBIJ_CHECK(j >= 1, "e_zero: needs j >= 1");

  SSet dom = e_family_set(k, j, d);
  Sij out;
  if (j > n) {
    out = empty_sij(dom, empty_set());
  } else if (n == 1) {
    // two dots with opposite signs
    auto fn = [](const SElem& x) -> SElem {
      ASMBIJ_CHECK(x.side == 0, "e_zero base: empty codomain");
      Ints m = x.e->a->values;
      return {0, at_index(tuple_elem({m[0] == 1 ? 2 : 1}), x.e->b)};
    };
    out = make_sij(dom, empty_set(), fn, key);
  } else {
    Ints kc = k;
    // sigma1: unfold GT one level; indexed over the prepelementary domain
    SSet ea = indexed_union(pkey("EA", n, j, k, d), prep_dom(n, j, k, d),
                            [](const Elem& t) { return gt(project(t)); });
    Sij s1 = reshape_sij(
        dom, ea,
        [](const Elem& e) { return at_index(at_index(e->a, e->b->a), e->b->b); },
        [](const Elem& e) { return at_index(e->a->a, at_index(e->a->b, e->b)); }, key + ":s1");
    // sigma2: transport along the normal prepelementary sijection
    Sij s2 = normal_union_sij(prep_elementary(n, j, k, d),
                              [](const Ints& xi) { return gt(xi); }, pkey("EA", n, j, k, d),
                              pkey("EZ", n, j, k, d));
    // sigma3: regroup the surviving branches as ⊔_{m} E_j(m)
    SSet em = indexed_union(pkey("EM", n, j, k, d), gt_index(k), [kc, j, d](const Elem& t) {
      return e_family_set(project(t), j, d);
    });
    i64 jj = j;
    int dd = d;
    Sij s3 = reshape_sij(
        s2->cod, em,
        [kc, jj, dd, n](const Elem& e) {
          auto dec = prep_decode(n, jj, kc, dd, e->a);
          ASMBIJ_CHECK(dec.has_value(), "e_zero: dead branch carries an element");
          Ints m = dec->row;
          for (i64 i = 0; i < (i64)m.size(); ++i) m[i] -= dd * eps(dec->mask, i);
          std::vector<Elem> leaves;
          for (i64 x : m) leaves.push_back(tuple_elem({x}));
          return at_index(prod_repack(leaves), at_index(tuple_elem(dec->mask), e->b));
        },
        [kc, jj, dd, n](const Elem& e) {
          Ints m = project(e->a);
          Ints mask = e->b->a->values;
          Ints row = m;
          for (i64 i = 0; i < (i64)row.size(); ++i) row[i] += dd * eps(mask, i);
          std::vector<Elem> leaves;
          for (i64 x : row) leaves.push_back(tuple_elem({x}));
          return at_index(prep_encode(n, jj, kc, dd, mask, prod_repack(leaves)), e->b->b);
        },
        key + ":s3");
    // sigma4: recurse on every m
    SSet eme = indexed_union(pkey("EME", n, j, k, d), gt_index(k),
                             [](const Elem&) { return empty_set(); });
    Sij s4 = fiberwise_union_sij(
        gt_index(k), [jj, dd](const Elem& t) { return e_family_set(project(t), jj, dd); },
        [](const Elem&) { return empty_set(); },
        [jj, dd](const Elem& t) { return e_zero(project(t), jj, dd); }, pkey("EM", n, j, k, d),
        pkey("EME", n, j, k, d));
    Sij s5 = empty_sij(eme, empty_set());
    out = compose_chain({s1, s2, s3, s4, s5});
  }
  reg.emplace(key, out);
  return out;
}

Sij e_prime(const Ints& k, i64 j, int d) {
  i64 n = (i64)k.size();
  std::string key = pkey("epr", n, j, k, d);
  auto& reg = rot_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  SSet dom = e_prime_set(k, j, d);
  SSet cod = e_prime_target(k, j, d);
  Sij out;
  if (j == 0) {
    out = reshape_sij(
        dom, cod,
        [](const Elem& e) {
          return at_index(tuple_elem({0}), pair_elem(tuple_elem({}), e->b));
        },
        [n](const Elem& e) {
          Ints mask(n - 1, 0);
          return at_index(tuple_elem(mask), e->b->b);
        },
        key);
  } else {
    Ints k1 = k;
    k1[0] += d;
    SSet ep1 = e_prime_set(k1, j - 1, d);
    SSet ep2 = e_prime_set(k, j - 1, d);
    SSet u3 = union2(dom, union2(opp(ep1), ep2));
    // rho: E_j(k) over ground [n]  =>  three-way split on element 1
    SSet efull = e_family_set(k, j, d);
    Sij rho = reshape_sij(
        efull, u3,
        [](const Elem& e) {
          const Ints& m = e->a->values;
          Ints mt(m.begin() + 1, m.end());
          Elem sub = at_index(tuple_elem(mt), e->b);
          if (m[0] == 0) return in_left(sub);
          if (m[0] == 2) return in_right(in_left(sub));
          return in_right(in_right(sub));
        },
        [](const Elem& e) {
          i64 first;
          Elem sub;
          if (e->kind == ElemNode::Kind::InLeft) {
            first = 0;
            sub = e->a;
          } else if (e->a->kind == ElemNode::Kind::InLeft) {
            first = 2;
            sub = e->a->a;
          } else {
            first = 1;
            sub = e->a->a;
          }
          Ints m{first};
          for (i64 x : sub->a->values) m.push_back(x);
          return at_index(tuple_elem(m), sub->b);
        },
        key + ":rho");
    Sij sigma = compose(invert_sij(rho), e_zero(k, j, d));
    Sij tau = split_from_empty(sigma);  // dom => opp(union2(opp(ep1), ep2))
    Sij upsilon = reshape_sij(
        tau->cod, union2(ep1, opp(ep2)), [](const Elem& e) { return e; },
        [](const Elem& e) { return e; }, key + ":ups");
    Sij rec = union2_sij(e_prime(k1, j - 1, d), opposite_sij(e_prime(k, j - 1, d)));
    // pascal: merge the two targets into the j-level target
    SSet t1 = e_prime_target(k1, j - 1, d);
    SSet t2 = e_prime_target(k, j - 1, d);
    Sij pascal = reshape_sij(
        union2(t1, opp(t2)), cod,
        [j](const Elem& e) {
          if (e->kind == ElemNode::Kind::InLeft) {
            i64 i = e->a->a->values[0];
            Ints A = e->a->b->a->values;
            A.push_back(j);
            return at_index(tuple_elem({i + 1}), pair_elem(tuple_elem(A), e->a->b->b));
          }
          return e->a;
        },
        [j](const Elem& e) {
          i64 i = e->a->values[0];
          Ints A = e->b->a->values;
          if (!A.empty() && A.back() == j) {
            A.pop_back();
            return in_left(at_index(tuple_elem({i - 1}), pair_elem(tuple_elem(A), e->b->b)));
          }
          return in_right(at_index(tuple_elem({i}), pair_elem(tuple_elem(A), e->b->b)));
        },
        key + ":pascal");
    out = compose_chain({tau, upsilon, rec, pascal});
  }
  reg.emplace(key, out);
  return out;
}

namespace {

Ints l2r_lvec(const Ints& k, const Ints& tp) {
  i64 n = (i64)k.size();
  Ints c = ap_c(tp, n - 1);
  Ints l = k;  // l_1 unused
  for (i64 i = 1; i < n; ++i) l[i] = k[i] + c[i - 1];
  return l;
}

// (p, eps_2..eps_n) index with sign (-1)^{n+p+q-1}
SSet pe_set(i64 n, const std::string& uid) {
  std::vector<std::pair<Ints, int>> out;
  Ints eps(n - 1);
  std::function<void(i64)> rec = [&](i64 i) {
    if (i == n - 1) {
      i64 q = 0;
      for (i64 x : eps) q += x;
      for (i64 p = 0; p <= n - 1; ++p) {
        Ints v{p};
        v.insert(v.end(), eps.begin(), eps.end());
        out.push_back({v, (n + p + q - 1) % 2 == 0 ? 1 : -1});
      }
      return;
    }
    for (i64 b = 0; b <= 1; ++b) {
      eps[i] = b;
      rec(i + 1);
    }
  };
  if (n >= 1) rec(0);
  std::sort(out.begin(), out.end());
  return tuples_set(std::move(out), uid);
}

// (j,p) index with 0<=j<=n-1, 0<=p<=n-1-j, sign (-1)^{n-1-j+p}
SSet jp_set(i64 n, const std::string& uid) {
  std::vector<std::pair<Ints, int>> out;
  for (i64 jj = 0; jj <= n - 1; ++jj)
    for (i64 p = 0; p <= n - 1 - jj; ++p)
      out.push_back({{jj, p}, (n - 1 - jj + p) % 2 == 0 ? 1 : -1});
  std::sort(out.begin(), out.end());
  return tuples_set(std::move(out), uid);
}

}  // namespace

SSet l2r_dom(const Ints& k, const Ints& tp) {
  i64 n = (i64)k.size();
  Ints kc = k, tpc = tp;
  return indexed_union("l2rD:" + vkey(k) + ":" + vkey(tp), ar_set(n - 1),
                       [kc, tpc, n](const Elem& mu) {
                         return gt(deform(kc, mu_T(mu->values, tpc, n)));
                       });
}

SSet l2r_cod(const Ints& k, const Ints& tp) {
  i64 n = (i64)k.size();
  Ints kc = k, tpc = tp;
  return indexed_union("l2rC:" + vkey(k) + ":" + vkey(tp), ar_set(n - 1),
                       [kc, tpc, n](const Elem& mu) {
                         Ints c = ap_c(T_mu(tpc, mu->values, n), n);
                         Ints row(n);
                         row[0] = kc[0] + c[n - 1];
                         for (i64 i = 1; i < n; ++i) row[i] = kc[i] + c[i - 1];
                         return gt(row);
                       });
}

namespace {

// shared assembly for both halves of left_to_right; d=-1 is the F side
// (domain side), d=+1 the E side (codomain side).
Sij l2r_half(const Ints& k, const Ints& tp, int d, const SSet& ends) {
  i64 n = (i64)k.size();
  std::string suff = std::string(d > 0 ? "E" : "F") + ":" + vkey(k) + ":" + vkey(tp);
  Ints l = l2r_lvec(k, tp);

  // counting reshape between the AR-indexed union and the (p,eps) normal form
  SSet pe = pe_set(n, "l2rPE:" + suff);
  Ints kc = k;
  auto fn_row = [kc, l, n, d](i64 p, const Ints& eps) {
    Ints row = l;
    row[0] = kc[0] + (d > 0 ? -p : p);
    for (i64 i = 1; i < n; ++i) row[i] = l[i] + d * eps[i - 1];
    return row;
  };
  SSet nf = indexed_union("l2rNF:" + suff, pe, [fn_row, n](const Elem& t) {
    i64 p = t->values[0];
    Ints eps(t->values.begin() + 1, t->values.end());
    i64 q = 0;
    for (i64 x : eps) q += x;
    return prod(binom_set(q, n - p - 1), gt(fn_row(p, eps)));
  });
  // mu -> (p, eps, S): eps flags the arrows with the d-direction component;
  // S lists (ranked within the eps support) the pure arrows of the other kind
  Sij count = reshape_sij(
      ends, nf,
      [n, d](const Elem& e) {
        const Ints& mu = e->a->values;
        Ints eps;
        Ints S;
        i64 p = 0, rank = 0;
        for (i64 i = 0; i < n - 1; ++i) {
          i64 other = d > 0 ? 1 : 0;  // code carrying the "p" direction
          bool has_eps = d > 0 ? (mu[i] == 0 || mu[i] == 2) : (mu[i] == 1 || mu[i] == 2);
          p += (mu[i] == other || mu[i] == 2) ? 1 : 0;
          eps.push_back(has_eps ? 1 : 0);
          if (has_eps) {
            ++rank;
            if (mu[i] != 2) S.push_back(rank);
          }
        }
        Ints v{p};
        v.insert(v.end(), eps.begin(), eps.end());
        return at_index(tuple_elem(v), pair_elem(tuple_elem(S), e->b));
      },
      [n, d](const Elem& e) {
        Ints eps(e->a->values.begin() + 1, e->a->values.end());
        Ints S = e->b->a->values;
        Ints mu(n - 1);
        i64 rank = 0;
        size_t si = 0;
        for (i64 i = 0; i < n - 1; ++i) {
          if (!eps[i]) {
            mu[i] = d > 0 ? 1 : 0;  // pure arrow of the p-kind
            continue;
          }
          ++rank;
          if (si < S.size() && S[si] == rank) {
            mu[i] = d > 0 ? 0 : 1;  // pure arrow of the eps-kind
            ++si;
          } else {
            mu[i] = 2;
          }
        }
        return at_index(tuple_elem(mu), e->b->b);
      },
      "l2rcount:" + suff);

  // big side: ⊔_{(j,p)} +- C([n-j-1],p) x E'_{n-j-1}(k1 -+ p, l)
  SSet jp = jp_set(n, "l2rJP:" + suff);
  auto kappa = [kc, l, d](i64 p) {
    Ints row = l;
    row[0] = kc[0] + (d > 0 ? -p : p);
    return row;
  };
  SSet big = indexed_union("l2rBig:" + suff, jp, [kappa, d, n](const Elem& t) {
    i64 jj = t->values[0], p = t->values[1];
    return prod(binom_set(n - jj - 1, p), e_prime_set(kappa(p), n - jj - 1, d));
  });

  // regroup big as ⊔_{(p,eps)} cv_lhs x GT
  SSet mid = indexed_union("l2rMid:" + suff, pe, [fn_row, n](const Elem& t) {
    i64 p = t->values[0];
    Ints eps(t->values.begin() + 1, t->values.end());
    i64 q = 0;
    for (i64 x : eps) q += x;
    return prod(cv_lhs(p + 1, n - 1 - q, n - p - 1), gt(fn_row(p, eps)));
  });
  Sij b1 = reshape_sij(
      big, mid,
      [n](const Elem& e) {
        i64 jj = e->a->values[0], p = e->a->values[1];
        Ints A = e->b->a->values;
        const Ints& mask = e->b->b->a->values;  // over ground [2,n]
        Ints eps(n - 1, 0);
        Ints wpos;
        i64 q = 0;
        for (i64 i = 0; i < n - 1; ++i) {
          if (mask[i] == 2) {
            eps[i] = 1;
            ++q;
          }
        }
        i64 rank = 0;
        for (i64 i = 0; i < n - 1; ++i) {
          if (eps[i]) continue;
          ++rank;
          if (mask[i] == 1) wpos.push_back(rank);
        }
        // complement within [n-1-q]
        Ints J;
        size_t wi = 0;
        for (i64 v = 1; v <= n - 1 - q; ++v) {
          if (wi < wpos.size() && wpos[wi] == v) {
            ++wi;
          } else {
            J.push_back(v);
          }
        }
        Ints idx{p};
        idx.insert(idx.end(), eps.begin(), eps.end());
        Elem inner = at_index(tuple_elem({jj}), pair_elem(tuple_elem(J), tuple_elem(A)));
        return at_index(tuple_elem(idx), pair_elem(inner, e->b->b->b));
      },
      [n](const Elem& e) {
        i64 p = e->a->values[0];
        Ints eps(e->a->values.begin() + 1, e->a->values.end());
        i64 jj = e->b->a->a->values[0];
        Ints J = e->b->a->b->a->values;
        Ints A = e->b->a->b->b->values;
        i64 q = 0;
        for (i64 x : eps) q += x;
        Ints wpos;  // complement of J in [n-1-q]
        size_t ji = 0;
        for (i64 v = 1; v <= n - 1 - q; ++v) {
          if (ji < J.size() && J[ji] == v) {
            ++ji;
          } else {
            wpos.push_back(v);
          }
        }
        Ints mask(n - 1, 0);
        i64 rank = 0;
        size_t wi = 0;
        for (i64 i = 0; i < n - 1; ++i) {
          if (eps[i]) {
            mask[i] = 2;
            continue;
          }
          ++rank;
          if (wi < wpos.size() && wpos[wi] == rank) {
            mask[i] = 1;
            ++wi;
          }
        }
        Elem ep = at_index(tuple_elem(mask), e->b->b);
        return at_index(tuple_elem({jj, p}), pair_elem(tuple_elem(A), ep));
      },
      "l2rB1:" + suff);
  // cv per (p,eps) fiber
  auto fam_mid = [fn_row, n](const Elem& t) {
    i64 p = t->values[0];
    Ints eps(t->values.begin() + 1, t->values.end());
    i64 q = 0;
    for (i64 x : eps) q += x;
    return prod(cv_lhs(p + 1, n - 1 - q, n - p - 1), gt(fn_row(p, eps)));
  };
  auto fam_nf = [fn_row, n](const Elem& t) {
    i64 p = t->values[0];
    Ints eps(t->values.begin() + 1, t->values.end());
    i64 q = 0;
    for (i64 x : eps) q += x;
    return prod(binom_set(q, n - p - 1), gt(fn_row(p, eps)));
  };
  auto provider = [fn_row, n](const Elem& t) -> Sij {
    i64 p = t->values[0];
    Ints eps(t->values.begin() + 1, t->values.end());
    i64 q = 0;
    for (i64 x : eps) q += x;
    SSet g = gt(fn_row(p, eps));
    Sij cv = chu_vandermonde(p + 1, n - 1 - q, n - p - 1);
    Sij s = product_sij(cv, identity_sij(g));
    if (p + 1 >= n - 1 - q) return s;
    return compose(s, empty_sij(s->cod, prod(binom_set(q, n - p - 1), g)));
  };
  Sij b2 = fiberwise_union_sij(pe, fam_mid, fam_nf, provider, "l2rMid:" + suff,
                               "l2rNF:" + suff);
  Sij stageB = compose(b1, b2);  // big => nf

  // expansion per (j,p) fiber with e_prime
  SSet expd = indexed_union("l2rExp:" + suff, jp, [kappa, d, n](const Elem& t) {
    i64 jj = t->values[0], p = t->values[1];
    return prod(binom_set(n - jj - 1, p), e_prime_target(kappa(p), n - jj - 1, d));
  });
  auto fam_big = [kappa, d, n](const Elem& t) {
    i64 jj = t->values[0], p = t->values[1];
    return prod(binom_set(n - jj - 1, p), e_prime_set(kappa(p), n - jj - 1, d));
  };
  auto fam_expd = [kappa, d, n](const Elem& t) {
    i64 jj = t->values[0], p = t->values[1];
    return prod(binom_set(n - jj - 1, p), e_prime_target(kappa(p), n - jj - 1, d));
  };
  auto prov_exp = [kappa, d, n](const Elem& t) -> Sij {
    i64 jj = t->values[0], p = t->values[1];
    return product_sij(identity_sij(binom_set(n - jj - 1, p)),
                       e_prime(kappa(p), n - jj - 1, d));
  };
  Sij stageC = fiberwise_union_sij(jp, fam_big, fam_expd, prov_exp, "l2rBig:" + suff,
                                   "l2rExp:" + suff);

  // either side: AR-union => normal form => big => expansion
  return compose_chain({count, invert_sij(stageB), stageC});
}

}  // namespace

Sij left_to_right(const Ints& k, const Ints& tp) {
  std::string key = "l2r:" + vkey(k) + ":" + vkey(tp);
  auto& reg = rot_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  Sij fhalf = l2r_half(k, tp, -1, l2r_dom(k, tp));
  Sij ehalf = l2r_half(k, tp, +1, l2r_cod(k, tp));
  // swap reshape between the two expansions
  SSet fx = fhalf->cod, ex = ehalf->cod;
  Sij swap = reshape_sij(
      fx, ex,
      [](const Elem& e) {
        i64 jj = e->a->values[0], p = e->a->values[1];
        Elem A = e->b->a;
        i64 i = e->b->b->a->values[0];
        Elem B = e->b->b->b->a;
        Elem g = e->b->b->b->b;
        return at_index(tuple_elem({jj, i}), pair_elem(B, at_index(tuple_elem({p}),
                                                                   pair_elem(A, g))));
      },
      [](const Elem& e) {
        i64 jj = e->a->values[0], i = e->a->values[1];
        Elem B = e->b->a;
        i64 p = e->b->b->a->values[0];
        Elem A = e->b->b->b->a;
        Elem g = e->b->b->b->b;
        return at_index(tuple_elem({jj, p}), pair_elem(A, at_index(tuple_elem({i}),
                                                                   pair_elem(B, g))));
      },
      "l2rswap:" + key);
  Sij out = compose_chain({fhalf, swap, invert_sij(ehalf)});
  reg.emplace(key, out);
  return out;
}

Ints rot_vec(const Ints& k) {
  i64 n = (i64)k.size();
  Ints r(k.begin() + 1, k.end());
  r.push_back(k[0] - n);
  return r;
}

Sij rotate_mt(const Ints& k, i64 x) {
  i64 n = (i64)k.size();
  std::string key = "rot:" + vkey(k);
  auto& reg = rot_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  Ints kc = k;
  Sij r1 = gamma_sij(k, x);
  // split AP_n as AP_{n-1} x AR_{n-1}
  SSet sp = indexed_union("rotSP:" + vkey(k), ap_set(n - 1), [kc](const Elem& tp) {
    return l2r_dom(kc, tp->values);
  });
  Sij r2 = reshape_sij(
      sgt(k), sp,
      [n](const Elem& e) {
        const Ints& t = e->a->values;
        Ints mu(n - 1), tp((n - 1) * (n - 2) / 2);
        // leftmost NE diagonal of T is mu (t_{1,q}); the rest, in lex order, is T'
        for (i64 i = 1; i <= n - 1; ++i) mu[i - 1] = t[i - 1];
        i64 src = n - 1, dst = 0;
        for (i64 p = 2; p <= n; ++p)
          for (i64 q = p + 1; q <= n; ++q) tp[dst++] = t[src++];
        return at_index(tuple_elem(tp), at_index(tuple_elem(mu), e->b));
      },
      [n](const Elem& e) {
        const Ints& tp = e->a->values;
        const Ints& mu = e->b->a->values;
        Ints t = mu_T(mu, tp, n);
        return at_index(tuple_elem(t), e->b->b);
      },
      "rotsplit:" + vkey(k));
  // left-to-right per T' fiber
  SSet sp2 = indexed_union("rotSP2:" + vkey(k), ap_set(n - 1), [kc](const Elem& tp) {
    return l2r_cod(kc, tp->values);
  });
  Sij r3 = fiberwise_union_sij(
      ap_set(n - 1), [kc](const Elem& tp) { return l2r_dom(kc, tp->values); },
      [kc](const Elem& tp) { return l2r_cod(kc, tp->values); },
      [kc](const Elem& tp) { return left_to_right(kc, tp->values); }, "rotSP:" + vkey(k),
      "rotSP2:" + vkey(k));
  // recombine T' mu into one arrow pattern
  auto row_rot = [kc, n](const Ints& t) {
    Ints c = ap_c(t, n);
    Ints row(n);
    row[0] = kc[0] + c[n - 1];
    for (i64 i = 1; i < n; ++i) row[i] = kc[i] + c[i - 1];
    return row;
  };
  SSet rt = indexed_union("rotRT:" + vkey(k), ap_set(n), [row_rot](const Elem& t) {
    return gt(row_rot(t->values));
  });
  Sij r4 = reshape_sij(
      sp2, rt,
      [n](const Elem& e) {
        Ints t = T_mu(e->a->values, e->b->a->values, n);
        return at_index(tuple_elem(t), e->b->b);
      },
      [n](const Elem& e) {
        const Ints& t = e->a->values;
        Ints mu(n - 1), tp((n - 1) * (n - 2) / 2);
        // rightmost SE diagonal (p,n) is mu, the rest is T'
        i64 dst = 0;
        for (i64 p = 1; p <= n - 1; ++p) {
          for (i64 q = p + 1; q <= n; ++q) {
            i64 idx = (p - 1) * n - p * (p - 1) / 2 + (q - p - 1);
            if (q == n) {
              mu[p - 1] = t[idx];
            } else {
              tp[dst++] = t[idx];
            }
          }
        }
        return at_index(tuple_elem(tp), at_index(tuple_elem(mu), e->b));
      },
      "rotmerge:" + vkey(k));
  // per-T rotation of the GT bottom row (pi moves), then the global shift
  Ints rotk = rot_vec(k);
  SSet rt2 = indexed_union("rotRT2:" + vkey(k), ap_set(n), [rotk](const Elem& t) {
    Ints row = deform(rotk, t->values);
    return wrap_sign((i64)rotk.size() % 2 == 1 ? 1 : -1, gt(row));
  });
  auto fiber_rot = [row_rot, rotk, n](const Elem& t) -> Sij {
    Ints row = row_rot(t->values);
    Sij acc;
    bool oppform = false;
    Ints cur = row;
    for (i64 i = 1; i <= n - 1; ++i) {
      Sij step = pi_sij(cur, i);
      Ints nxt = cur;
      nxt[i - 1] = cur[i] + 1;
      nxt[i] = cur[i - 1] - 1;
      Sij wrapped = oppform ? opposite_sij(step) : step;
      acc = acc ? compose(acc, wrapped) : wrapped;
      cur = nxt;
      oppform = !oppform;
    }
    // shift all entries by -1
    Ints target = cur;
    for (auto& v : target) v -= 1;
    Sij sh = gt_shift_sij(target);
    Sij wrapped = oppform ? opposite_sij(sh) : sh;
    acc = acc ? compose(acc, wrapped) : wrapped;
    return acc;
  };
  Sij r5 = fiberwise_union_sij(
      ap_set(n), [row_rot](const Elem& t) { return gt(row_rot(t->values)); },
      [rotk, n](const Elem& t) {
        return wrap_sign(n % 2 == 1 ? 1 : -1, gt(deform(rotk, t->values)));
      },
      fiber_rot, "rotRT:" + vkey(k), "rotRT2:" + vkey(k));
  // pull the sign out of the union and meet SGT(rot k)
  SSet tgt = wrap_sign(n % 2 == 1 ? 1 : -1, sgt(rotk));
  Sij r6 = reshape_sij(
      rt2, tgt, [](const Elem& e) { return e; }, [](const Elem& e) { return e; },
      "rotwrap:" + vkey(k));
  Sij gback = invert_sij(gamma_sij(rotk, x));
  Sij r7 = n % 2 == 1 ? gback : opposite_sij(gback);
  Sij out = compose_chain({r1, r2, r3, r4, r5, r6, r7});
  reg.emplace(key, out);
  return out;
}

}  // namespace asmbij
