#include "asmbij/subsets.hpp"

#include <algorithm>

namespace asmbij {

namespace {

void subsets_rec(i64 m, i64 k, i64 start, Ints& cur, std::vector<std::pair<Ints, int>>& out) {
  if ((i64)cur.size() == k) {
    out.push_back({cur, 1});
    return;
  }
  for (i64 v = start; v <= m - (k - (i64)cur.size()) + 1; ++v) {
    cur.push_back(v);
    subsets_rec(m, k, v + 1, cur, out);
    cur.pop_back();
  }
}

std::string key3(const char* tag, i64 a, i64 b, i64 c) {
  return std::string(tag) + ":" + std::to_string(a) + ":" + std::to_string(b) + ":" +
         std::to_string(c);
}

}  // namespace

SSet binom_set(i64 m, i64 k) {
  if (k < 0 || (k > 0 && k > m)) return empty_set();
  std::string label = "C:" + std::to_string(m) + ":" + std::to_string(k);
  std::vector<std::pair<Ints, int>> out;
  if (k == 0) {
    out.push_back({Ints{}, 1});
  } else {
    Ints cur;
    subsets_rec(m, k, 1, cur, out);
  }
  return tuples_set(std::move(out), label);
}

i64 binom_count(i64 m, i64 k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  i64 r = 1;
  for (i64 t = 1; t <= k; ++t) r = r * (m - k + t) / t;
  return r;
}

Sij alpha(i64 a, i64 b, i64 c) {
  SSet dom = interval(a, c);
  SSet cod = union2(interval(a, b), interval(b + 1, c));
  return matcher_sij(dom, cod, /*by_fiber=*/true, key3("alpha", a, b, c));
}

Ints comp_to_bars(const Ints& comp) {
  Ints bars;
  i64 acc = 0;
  for (size_t i = 0; i + 1 < comp.size(); ++i) {
    acc += comp[i];
    bars.push_back(acc + (i64)i + 1);
  }
  return bars;
}

Ints bars_to_comp(const Ints& bars, i64 parts, i64 total) {
  if (parts == 0) {
    ASMBIJ_CHECK(bars.empty() && total == 0, "bars_to_comp: empty composition");
    return {};
  }
  ASMBIJ_CHECK((i64)bars.size() == parts - 1, "bars_to_comp: arity mismatch");
  Ints comp(parts, 0);
  i64 prev = 0;
  for (i64 i = 0; i < parts - 1; ++i) {
    comp[i] = bars[i] - prev - 1;
    prev = bars[i];
  }
  comp[parts - 1] = total + parts - 1 - prev;
  for (i64 x : comp) ASMBIJ_CHECK(x >= 0, "bars_to_comp: negative part");
  return comp;
}

namespace {

// order-preserving embedding of a subset of [|ground|] into `ground`
Ints embed(const Ints& small, const Ints& ground) {
  Ints out;
  for (i64 pos : small) out.push_back(ground[pos - 1]);
  return out;
}

Ints positions_in(const Ints& subset, const Ints& ground) {
  Ints out;
  size_t gi = 0;
  for (i64 v : subset) {
    while (gi < ground.size() && ground[gi] != v) ++gi;
    ASMBIJ_CHECK(gi < ground.size(), "positions_in: not a subset");
    out.push_back((i64)gi + 1);
  }
  return out;
}

Ints complement_in(const Ints& subset, i64 m) {
  Ints out;
  size_t si = 0;
  for (i64 v = 1; v <= m; ++v) {
    if (si < subset.size() && subset[si] == v) {
      ++si;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

Ints ground_range(i64 m) {
  Ints g;
  for (i64 v = 1; v <= m; ++v) g.push_back(v);
  return g;
}

}  // namespace

Sij trinomial(i64 a, i64 b, i64 c) {
  ASMBIJ_CHECK(a >= 0 && b >= 0 && c >= 0, "trinomial: negative parameter");
  i64 m = a + b + c;
  SSet dom = prod(binom_set(m, a), binom_set(b + c, b));
  SSet cod = prod(binom_set(m, b), binom_set(a + c, c));
  auto fwd = [a, b, c, m](const Elem& e) {
    Ints A = e->a->values;
    Ints rest = complement_in(A, m);
    Ints B = embed(e->b->values, rest);                  // B as subset of [m] \ A
    Ints AB = A;
    AB.insert(AB.end(), B.begin(), B.end());
    std::sort(AB.begin(), AB.end());
    Ints C = complement_in(AB, m);
    Ints restB = complement_in(B, m);
    return pair_elem(tuple_elem(B), tuple_elem(positions_in(C, restB)));
  };
  auto bwd = [a, b, c, m](const Elem& e) {
    Ints B = e->a->values;
    Ints restB = complement_in(B, m);
    Ints C = embed(e->b->values, restB);
    Ints BC = B;
    BC.insert(BC.end(), C.begin(), C.end());
    std::sort(BC.begin(), BC.end());
    Ints A = complement_in(BC, m);
    Ints restA = complement_in(A, m);
    return pair_elem(tuple_elem(A), tuple_elem(positions_in(B, restA)));
  };
  return reshape_sij(dom, cod, fwd, bwd, key3("tri", a, b, c));
}

SSet cv_lhs(i64 a, i64 b, i64 c) {
  std::vector<std::pair<Ints, int>> idx;
  for (i64 j = 0; j <= c; ++j) idx.push_back({{j}, (j % 2 == 0) ? 1 : -1});
  SSet jr = tuples_set(std::move(idx), key3("cvj", a, b, c));
  return indexed_union(key3("cvlhs", a, b, c), jr, [a, b, c](const Elem& t) {
    i64 j = t->values[0];
    return prod(binom_set(b, j), binom_set(a + c - j - 1, a - 1));
  });
}

SSet cv_rhs(i64 a, i64 b, i64 c) {
  if (a >= b) return binom_set(a + c - b - 1, c);
  return wrap_sign(c % 2 == 0 ? 1 : -1, binom_set(b - a, c));
}

Sij chu_vandermonde(i64 a, i64 b, i64 c) {
  ASMBIJ_CHECK(a >= 1, "chu_vandermonde: a must be >= 1");
  ASMBIJ_CHECK(b >= 0, "chu_vandermonde: b must be >= 0");
  SSet dom = cv_lhs(a, b, c);
  SSet cod = cv_rhs(a, b, c);
  if (c < 0) return empty_sij(dom, cod);

  auto fn = [a, b, c](const SElem& x) -> SElem {
    if (x.side == 1) {  // codomain -> survivor in the domain
      if (a >= b) {
        Ints barsp = complement_in(x.e->values, a + c - b - 1);
        Ints pip = bars_to_comp(barsp, a - b, c);
        Ints pi(b, 0);
        pi.insert(pi.end(), pip.begin(), pip.end());
        return {0, at_index(tuple_elem({0}),
                            pair_elem(tuple_elem({}), tuple_elem(comp_to_bars(pi))))};
      }
      Ints J;
      for (i64 v : x.e->values) J.push_back(v + a);
      Ints pi(a, 0);
      return {0, at_index(tuple_elem({c}), pair_elem(tuple_elem(J), tuple_elem(comp_to_bars(pi))))};
    }
    i64 j = x.e->a->values[0];
    Ints J = x.e->b->a->values;
    Ints pi = bars_to_comp(x.e->b->b->values, a, c - j);
    i64 lim = std::min(a, b);
    i64 star = 0;
    for (i64 i = 1; i <= lim && star == 0; ++i) {
      bool inJ = std::binary_search(J.begin(), J.end(), i);
      if (inJ || pi[i - 1] > 0) star = i;
    }
    if (star == 0) {  // survivor: cross to the codomain
      if (a >= b) {
        Ints pip(pi.begin() + b, pi.end());
        Ints barsp = comp_to_bars(pip);
        return {1, tuple_elem(complement_in(barsp, a + c - b - 1))};
      }
      Ints out;
      for (i64 v : J) out.push_back(v - a);
      return {1, tuple_elem(out)};
    }
    bool inJ = std::binary_search(J.begin(), J.end(), star);
    Ints J2 = J;
    Ints pi2 = pi;
    i64 j2;
    if (inJ) {
      J2.erase(std::find(J2.begin(), J2.end(), star));
      pi2[star - 1] += 1;
      j2 = j - 1;
    } else {
      J2.insert(std::upper_bound(J2.begin(), J2.end(), star), star);
      pi2[star - 1] -= 1;
      j2 = j + 1;
    }
    return {0, at_index(tuple_elem({j2}), pair_elem(tuple_elem(J2), tuple_elem(comp_to_bars(pi2))))};
  };
  return make_sij(dom, cod, fn, key3("cv", a, b, c));
}

SSet bset(i64 n, i64 i) {
  std::string label = "B:" + std::to_string(n) + ":" + std::to_string(i);
  std::vector<std::pair<Ints, int>> out;
  std::vector<std::pair<Ints, int>> all;
  Ints cur;
  subsets_rec(3 * n - 2, 2 * n - 1, 1, cur, all);
  for (auto& [v, sg] : all)
    if (v[n - 1] == n + i - 1) out.push_back({v, 1});
  return tuples_set(std::move(out), label);
}

SSet bset_full(i64 n) {
  std::string label = "B:" + std::to_string(n);
  std::vector<std::pair<Ints, int>> out;
  Ints cur;
  subsets_rec(3 * n - 2, 2 * n - 1, 1, cur, out);
  return tuples_set(std::move(out), label);
}

Sij b_split(i64 n, i64 i) {
  ASMBIJ_CHECK(1 <= i && i <= n, "b_split: i out of range");
  SSet dom = bset(n, i);
  SSet cod = prod(binom_set(n + i - 2, n - 1), binom_set(2 * n - i - 1, n - 1));
  i64 med = n + i - 1;
  auto fwd = [n, med](const Elem& e) {
    Ints lo(e->values.begin(), e->values.begin() + (n - 1));
    Ints hi;
    for (auto it = e->values.begin() + n; it != e->values.end(); ++it) hi.push_back(*it - med);
    return pair_elem(tuple_elem(lo), tuple_elem(hi));
  };
  auto bwd = [med](const Elem& e) {
    Ints v = e->a->values;
    v.push_back(med);
    for (i64 x : e->b->values) v.push_back(x + med);
    return tuple_elem(v);
  };
  return reshape_sij(dom, cod, fwd, bwd, "bsplit:" + std::to_string(n) + ":" + std::to_string(i));
}

Sij binom_complement_sij(i64 m, i64 k) {
  ASMBIJ_CHECK(m >= 0 && k >= 0 && k <= m, "binom_complement: bad parameters");
  auto f = [m](const Elem& e) { return tuple_elem(complement_in(e->values, m)); };
  return reshape_sij(binom_set(m, k), binom_set(m, m - k), f, f,
                     "compl:" + std::to_string(m) + ":" + std::to_string(k));
}

SSet b_recurrence_dom(i64 n, i64 i) {
  std::vector<std::pair<Ints, int>> idx;
  for (i64 j = 1; j <= n; ++j) idx.push_back({{j}, (j % 2 == 1) ? 1 : -1});
  SSet jr = tuples_set(std::move(idx), key3("brecj", n, i, 0));
  return indexed_union(key3("brecdom", n, i, 0), jr, [n, i](const Elem& t) {
    i64 j = t->values[0];
    return prod(binom_set(2 * n - i - 1, n - i - j + 1), bset(n, j));
  });
}

Sij b_recurrence(i64 n, i64 i) {
  ASMBIJ_CHECK(1 <= i && i <= n, "b_recurrence: i out of range");
  SSet dom = b_recurrence_dom(n, i);
  SSet K = binom_set(2 * n - i - 1, n - 1);

  // stage 1: split every B_{n,j} and reindex j -> j' = j-1
  std::vector<std::pair<Ints, int>> idx2;
  for (i64 jp = 0; jp <= n - 1; ++jp) idx2.push_back({{jp}, (jp % 2 == 0) ? 1 : -1});
  SSet jr2 = tuples_set(std::move(idx2), key3("brecj2", n, i, 0));
  SSet mid1 = indexed_union(key3("brecmid1", n, i, 0), jr2, [n, i](const Elem& t) {
    i64 jp = t->values[0];
    return prod(binom_set(2 * n - i - 1, n - i - jp),
                prod(binom_set(n + jp - 1, n - 1), binom_set(2 * n - jp - 2, n - 1)));
  });
  Sij s1 = make_sij(
      dom, mid1,
      [n, i, dom, mid1](const SElem& x) -> SElem {
        if (x.side == 0) {
          i64 j = x.e->a->values[0];
          Sij bs = b_split(n, j);
          Elem split = bs->fwd(x.e->b->b);
          return {1, at_index(tuple_elem({j - 1}), pair_elem(x.e->b->a, split))};
        }
        i64 jp = x.e->a->values[0];
        Sij bs = b_split(n, jp + 1);
        SElem back = bs->apply({1, x.e->b->b});
        return {0, at_index(tuple_elem({jp + 1}), pair_elem(x.e->b->a, back.e))};
      },
      key3("brec-split", n, i, 0));

  // stage 2: trinomial on the first two factors, fiberwise over j'
  auto fam_mid1 = [n, i](const Elem& t) {
    i64 jp = t->values[0];
    return prod(binom_set(2 * n - i - 1, n - i - jp),
                prod(binom_set(n + jp - 1, n - 1), binom_set(2 * n - jp - 2, n - 1)));
  };
  auto fam_mid2 = [n, i](const Elem& t) {
    i64 jp = t->values[0];
    return prod(binom_set(2 * n - i - 1, n - 1),
                prod(binom_set(n - i, jp), binom_set(2 * n - jp - 2, n - 1)));
  };
  auto provider = [n, i, fam_mid1, fam_mid2](const Elem& t) -> Sij {
    i64 jp = t->values[0];
    i64 a = n - i - jp, b = n - 1, c = jp;
    SSet C1 = binom_set(2 * n - i - 1, a), P = binom_set(n + jp - 1, n - 1),
         Q = binom_set(2 * n - jp - 2, n - 1);
    if (a < 0) return empty_sij(fam_mid1(t), fam_mid2(t));
    Sij tri = trinomial(a, b, c);
    return compose_chain({invert_sij(assoc_prod_sij(C1, P, Q)), product_sij(tri, identity_sij(Q)),
                          assoc_prod_sij(binom_set(2 * n - i - 1, b), binom_set(a + c, c), Q)});
  };
  Sij s2 = fiberwise_union_sij(jr2, fam_mid1, fam_mid2, provider, key3("brecmid1", n, i, 0),
                               key3("brecmid2", n, i, 0));

  // stage 3: pull the constant factor out of the union; the rest is cv's LHS
  SSet lhs = cv_lhs(n, n - i, n - 1);
  SSet mid3 = prod(K, lhs);
  SSet mid2 = s2->cod;
  Sij s3 = reshape_sij(
      mid2, mid3,
      [](const Elem& e) { return pair_elem(e->b->a, at_index(e->a, e->b->b)); },
      [](const Elem& e) { return at_index(e->b->a, pair_elem(e->a, e->b->b)); },
      key3("brec-pull", n, i, 0));

  // stage 4: Chu-Vandermonde, then back through the B_{n,i} split
  Sij cv = chu_vandermonde(n, n - i, n - 1);
  Sij s4 = product_sij(identity_sij(K), cv);
  SSet rhs = cv_rhs(n, n - i, n - 1);
  Sij s5 = comm_prod_sij(K, rhs);
  Sij s6 = invert_sij(b_split(n, i));
  return compose_chain({s1, s2, s3, s4, s5, s6});
}

}  // namespace asmbij
