#include "asmbij/linalg.hpp"

#include <algorithm>

namespace asmbij {

SMatrix make_matrix(i64 m, std::string uid, const std::function<SSet(i64, i64)>& entry) {
  SMatrix M;
  M.m = m;
  M.uid = std::move(uid);
  M.e.assign(m, std::vector<SSet>(m));
  for (i64 r = 0; r < m; ++r)
    for (i64 c = 0; c < m; ++c) M.e[r][c] = entry(r, c);
  return M;
}

int perm_parity(const Ints& pi) {
  int inv = 0;
  for (size_t a = 0; a < pi.size(); ++a)
    for (size_t b = a + 1; b < pi.size(); ++b)
      if (pi[a] > pi[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

SSet perms_set(i64 m) {
  std::string label = "Perm:" + std::to_string(m);
  Ints pi(m);
  for (i64 r = 0; r < m; ++r) pi[r] = r + 1;
  std::vector<std::pair<Ints, int>> out;
  do {
    out.push_back({pi, perm_parity(pi)});
  } while (std::next_permutation(pi.begin(), pi.end()));
  return tuples_set(std::move(out), label);
}

namespace {

SSet det_fiber(const SMatrix& M, const Ints& pi) {
  std::vector<SSet> fs;
  for (i64 r = 0; r < M.m; ++r) fs.push_back(M.e[r][pi[r] - 1]);
  return prod_many(fs);
}

}  // namespace

SSet det_set(const SMatrix& M) {
  SMatrix Mc = M;
  return indexed_union("det:" + M.uid, perms_set(M.m),
                       [Mc](const Elem& t) { return det_fiber(Mc, t->values); });
}

std::vector<Elem> prod_unpack(const Elem& e, i64 m) {
  std::vector<Elem> out;
  if (m == 0) return out;
  Elem cur = e;
  for (i64 r = m - 1; r >= 1; --r) {
    out.push_back(cur->b);
    cur = cur->a;
  }
  out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return out;
}

Elem prod_repack(const std::vector<Elem>& xs) {
  if (xs.empty()) return tuple_elem({});
  Elem acc = xs[0];
  for (size_t r = 1; r < xs.size(); ++r) acc = pair_elem(acc, xs[r]);
  return acc;
}

SMatrix matrix_product(const SMatrix& P, const SMatrix& Q) {
  ASMBIJ_CHECK(P.m == Q.m, "matrix_product: dimension mismatch");
  i64 m = P.m;
  std::vector<std::pair<Ints, int>> pr;
  for (i64 p = 1; p <= m; ++p) pr.push_back({{p}, 1});
  SSet prange = tuples_set(std::move(pr), "range1:" + std::to_string(m));
  SMatrix P2 = P, Q2 = Q;
  return make_matrix(m, "mm(" + P.uid + "," + Q.uid + ")", [=](i64 r, i64 c) {
    return indexed_union("mm:" + P2.uid + ":" + Q2.uid + ":" + std::to_string(r) + ":" +
                             std::to_string(c),
                         prange, [P2, Q2, r, c](const Elem& t) {
                           i64 p = t->values[0];
                           return prod(P2.e[r][p - 1], Q2.e[p - 1][c]);
                         });
  });
}

Sij det_product_sij(const SMatrix& P, const SMatrix& Q) {
  SMatrix R = matrix_product(P, Q);
  i64 m = P.m;
  SSet dom = det_set(R);
  SSet cod = prod(det_set(P), det_set(Q));
  SMatrix Pc = P, Qc = Q;
  auto fn = [m, Pc, Qc](const SElem& x) -> SElem {
    if (x.side == 0) {
      Ints pi = x.e->a->values;
      std::vector<Elem> ent = prod_unpack(x.e->b, m);
      Ints l(m);
      std::vector<Elem> xs(m), ys(m);
      for (i64 r = 0; r < m; ++r) {
        l[r] = ent[r]->a->values[0];
        xs[r] = ent[r]->b->a;
        ys[r] = ent[r]->b->b;
      }
      // smallest repeated pair (i,j), lexicographic
      for (i64 a = 0; a < m; ++a)
        for (i64 b = a + 1; b < m; ++b)
          if (l[a] == l[b]) {
            Ints sigma = pi;
            std::swap(sigma[a], sigma[b]);
            std::vector<Elem> ent2 = ent;
            ent2[a] = at_index(tuple_elem({l[a]}), pair_elem(xs[a], ys[b]));
            ent2[b] = at_index(tuple_elem({l[b]}), pair_elem(xs[b], ys[a]));
            return {0, at_index(tuple_elem(sigma), prod_repack(ent2))};
          }
      // l is a permutation: cross over
      Ints linv(m);
      for (i64 r = 0; r < m; ++r) linv[l[r] - 1] = r + 1;
      Ints tau(m);
      std::vector<Elem> yperm(m);
      for (i64 r = 0; r < m; ++r) {
        tau[l[r] - 1] = pi[r];
        yperm[l[r] - 1] = ys[r];
      }
      Elem pe = at_index(tuple_elem(l), prod_repack(xs));
      Elem qe = at_index(tuple_elem(tau), prod_repack(yperm));
      return {1, pair_elem(pe, qe)};
    }
    Ints rho = x.e->a->a->values;
    Ints tau = x.e->b->a->values;
    std::vector<Elem> xs = prod_unpack(x.e->a->b, m);
    std::vector<Elem> yp = prod_unpack(x.e->b->b, m);
    Ints pi(m);
    std::vector<Elem> ent(m);
    for (i64 r = 0; r < m; ++r) {
      pi[r] = tau[rho[r] - 1];
      ent[r] = at_index(tuple_elem({rho[r]}), pair_elem(xs[r], yp[rho[r] - 1]));
    }
    return {0, at_index(tuple_elem(pi), prod_repack(ent))};
  };
  return make_sij(dom, cod, fn, "detprod(" + P.uid + "," + Q.uid + ")");
}

SSet row_dom(const SMatrix& P, const std::vector<SSet>& X, i64 i, const std::string& tag) {
  i64 m = P.m;
  std::vector<std::pair<Ints, int>> qr;
  for (i64 q = 1; q <= m; ++q) qr.push_back({{q}, 1});
  SSet qrange = tuples_set(std::move(qr), "range1:" + std::to_string(m));
  SMatrix Pc = P;
  std::vector<SSet> Xc = X;
  return indexed_union("rowdom:" + P.uid + ":" + tag + ":" + std::to_string(i), qrange,
                       [Pc, Xc, i](const Elem& t) {
                         i64 q = t->values[0];
                         return prod(Pc.e[i][q - 1], Xc[q - 1]);
                       });
}

SMatrix column_replace(const SMatrix& P, i64 j, const std::vector<SSet>& Y,
                       const std::string& uid) {
  SMatrix Pc = P;
  std::vector<SSet> Yc = Y;
  return make_matrix(P.m, uid, [Pc, Yc, j](i64 r, i64 c) {
    return c == j ? Yc[r] : Pc.e[r][c];
  });
}

Sij cramer_sij(const SMatrix& P, const std::vector<SSet>& X, const std::vector<SSet>& Y,
               const std::vector<Sij>& rows, i64 j, const std::string& tag) {
  i64 m = P.m;
  ASMBIJ_CHECK(0 <= j && j < m, "cramer: column out of range");
  SMatrix Pj = column_replace(P, j, Y, P.uid + ":col" + std::to_string(j) + ":" + tag);

  // index pairs (i, pi) with pi(i) = j+1, sign = parity(pi)
  std::vector<std::pair<Ints, int>> ipr;
  {
    Ints pi(m);
    for (i64 r = 0; r < m; ++r) pi[r] = r + 1;
    do {
      for (i64 i = 0; i < m; ++i)
        if (pi[i] == j + 1) {
          Ints v{i + 1};
          v.insert(v.end(), pi.begin(), pi.end());
          ipr.push_back({v, perm_parity(pi)});
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
  std::sort(ipr.begin(), ipr.end());
  SSet ip = tuples_set(std::move(ipr), "cramIP:" + P.uid + ":" + tag + ":" + std::to_string(j));

  SMatrix Pc = P;
  std::vector<SSet> Xc = X;
  auto rest_prod = [Pc, m](i64 i, const Ints& pi) {
    std::vector<SSet> fs;
    for (i64 r = 0; r < m; ++r)
      if (r != i) fs.push_back(Pc.e[r][pi[r] - 1]);
    return prod_many(fs);
  };
  std::string tagc = tag;
  auto omega_fiber_dom = [Pc, Xc, rest_prod, m, tagc](const Elem& t) {
    i64 i = t->values[0] - 1;
    Ints pi(t->values.begin() + 1, t->values.end());
    return prod(rest_prod(i, pi), row_dom(Pc, Xc, i, tagc));
  };
  SSet omega = indexed_union("cramOm:" + P.uid + ":" + tag + ":" + std::to_string(j), ip,
                             omega_fiber_dom);

  // Theta: det(P) x X_j => Omega
  SSet th_dom = prod(det_set(P), X[j]);
  auto theta_fn = [m, j](const SElem& x) -> SElem {
    if (x.side == 0) {
      Ints pi = x.e->a->a->values;
      std::vector<Elem> xs = prod_unpack(x.e->a->b, m);
      i64 i = 0;
      while (pi[i] != j + 1) ++i;
      std::vector<Elem> rest;
      for (i64 r = 0; r < m; ++r)
        if (r != i) rest.push_back(xs[r]);
      Ints v{i + 1};
      v.insert(v.end(), pi.begin(), pi.end());
      Elem row = at_index(tuple_elem({j + 1}), pair_elem(xs[i], x.e->b));
      return {1, at_index(tuple_elem(v), pair_elem(prod_repack(rest), row))};
    }
    i64 i = x.e->a->values[0] - 1;
    Ints pi(x.e->a->values.begin() + 1, x.e->a->values.end());
    std::vector<Elem> rest = prod_unpack(x.e->b->a, m - 1);
    i64 q = x.e->b->b->a->values[0];
    Elem xi = x.e->b->b->b->a;
    Elem ksi = x.e->b->b->b->b;
    if (q == j + 1) {  // cross back into det(P) x X_j
      std::vector<Elem> xs;
      i64 rr = 0;
      for (i64 r = 0; r < m; ++r) {
        if (r == i) {
          xs.push_back(xi);
        } else {
          xs.push_back(rest[rr++]);
        }
      }
      return {0, pair_elem(at_index(tuple_elem(pi), prod_repack(xs)), ksi)};
    }
    // internal pairing: swap the distinguished row with row p = pi^{-1}(q)
    i64 p = 0;
    while (pi[p] != q) ++p;
    Ints sigma = pi;
    std::swap(sigma[i], sigma[p]);
    std::vector<Elem> xs(m);
    i64 rr = 0;
    for (i64 r = 0; r < m; ++r) {
      if (r == i) continue;
      xs[r] = rest[rr++];
    }
    Elem xp_old = xs[p];
    xs[i] = xi;  // row i becomes regular, with entry in P_{i,q}
    std::vector<Elem> rest2;
    for (i64 r = 0; r < m; ++r)
      if (r != p) rest2.push_back(xs[r]);
    Ints v{p + 1};
    v.insert(v.end(), sigma.begin(), sigma.end());
    Elem row = at_index(tuple_elem({q}), pair_elem(xp_old, ksi));
    return {1, at_index(tuple_elem(v), pair_elem(prod_repack(rest2), row))};
  };
  Sij theta = make_sij(th_dom, omega, theta_fn, "cramTheta:" + P.uid + ":" + std::to_string(j));

  // Lambda: apply the row sijections fiberwise
  auto omega_fiber_cod = [rest_prod, Y](const Elem& t) {
    i64 i = t->values[0] - 1;
    Ints pi(t->values.begin() + 1, t->values.end());
    return prod(rest_prod(i, pi), Y[i]);
  };
  std::vector<Sij> rowsc = rows;
  auto provider = [rest_prod, rowsc](const Elem& t) -> Sij {
    i64 i = t->values[0] - 1;
    Ints pi(t->values.begin() + 1, t->values.end());
    return product_sij(identity_sij(rest_prod(i, pi)), rowsc[i]);
  };
  Sij lambda =
      fiberwise_union_sij(ip, omega_fiber_dom, omega_fiber_cod, provider,
                          "cramOm:" + P.uid + ":" + tag + ":" + std::to_string(j),
                          "cramOmY:" + P.uid + ":" + tag + ":" + std::to_string(j));

  // Xi: reassemble det(P^j)
  SSet pj_det = det_set(Pj);
  auto xi_fn = [m, j](const SElem& x) -> SElem {
    if (x.side == 0) {
      i64 i = x.e->a->values[0] - 1;
      Ints pi(x.e->a->values.begin() + 1, x.e->a->values.end());
      std::vector<Elem> rest = prod_unpack(x.e->b->a, m - 1);
      Elem y = x.e->b->b;
      std::vector<Elem> xs;
      i64 rr = 0;
      for (i64 r = 0; r < m; ++r) xs.push_back(r == (i64)i ? y : rest[rr++]);
      return {1, at_index(tuple_elem(pi), prod_repack(xs))};
    }
    Ints pi = x.e->a->values;
    std::vector<Elem> xs = prod_unpack(x.e->b, m);
    i64 i = 0;
    while (pi[i] != j + 1) ++i;
    std::vector<Elem> rest;
    for (i64 r = 0; r < m; ++r)
      if (r != i) rest.push_back(xs[r]);
    Ints v{i + 1};
    v.insert(v.end(), pi.begin(), pi.end());
    return {0, at_index(tuple_elem(v), pair_elem(prod_repack(rest), xs[i]))};
  };
  Sij xi = make_sij(lambda->cod, pj_det, xi_fn, "cramXi:" + P.uid + ":" + std::to_string(j));
  return compose_chain({theta, lambda, xi});
}

Sij solve_zero_sij(const SMatrix& P, const std::vector<SSet>& X, const std::vector<Sij>& rows,
                   i64 j, const std::string& tag) {
  std::vector<SSet> Y(P.m, empty_set());
  Sij cr = cramer_sij(P, X, Y, rows, j, tag);
  return compose(cr, empty_sij(cr->cod, empty_set()));
}

Sij det_entrywise_sij(const SMatrix& A, const SMatrix& B,
                      const std::function<Sij(i64, i64)>& entry_sij) {
  ASMBIJ_CHECK(A.m == B.m, "det_entrywise: dimension mismatch");
  i64 m = A.m;
  SMatrix Ac = A, Bc = B;
  auto fam_dom = [Ac](const Elem& t) { return det_fiber(Ac, t->values); };
  auto fam_cod = [Bc](const Elem& t) { return det_fiber(Bc, t->values); };
  auto provider = [entry_sij, m](const Elem& t) -> Sij {
    const Ints& pi = t->values;
    if (m == 0) return identity_sij(unit_set());
    Sij acc = entry_sij(0, pi[0] - 1);
    for (i64 r = 1; r < m; ++r) acc = product_sij(acc, entry_sij(r, pi[r] - 1));
    return acc;
  };
  return fiberwise_union_sij(perms_set(m), fam_dom, fam_cod, provider, "det:" + A.uid,
                             "det:" + B.uid);
}

SMatrix matrix_minor(const SMatrix& T, i64 r0, i64 c0, const std::string& uid) {
  SMatrix Tc = T;
  return make_matrix(T.m - 1, uid, [Tc, r0, c0](i64 r, i64 c) {
    return Tc.e[r < r0 ? r : r + 1][c < c0 ? c : c + 1];
  });
}

Sij det_extract_sij(const SMatrix& T, i64 r0, i64 c0, const SMatrix& minor) {
  i64 m = T.m;
  int par = ((r0 + c0) % 2 == 0) ? 1 : -1;
  SSet dom = det_set(T);
  SSet cod = wrap_sign(par, prod(det_set(minor), T.e[r0][c0]));
  auto fwd = [m, r0, c0](const Elem& e) {
    Ints pi = e->a->values;
    ASMBIJ_CHECK(pi[r0] == c0 + 1, "det_extract: permutation misses the forced cell");
    std::vector<Elem> xs = prod_unpack(e->b, m);
    Ints mpi;
    std::vector<Elem> rest;
    for (i64 r = 0; r < m; ++r) {
      if (r == r0) continue;
      i64 c = pi[r] - 1;
      mpi.push_back(c < c0 ? c + 1 : c);
      rest.push_back(xs[r]);
    }
    return pair_elem(at_index(tuple_elem(mpi), prod_repack(rest)), xs[r0]);
  };
  auto bwd = [m, r0, c0](const Elem& e) {
    Ints mpi = e->a->a->values;
    std::vector<Elem> rest = prod_unpack(e->a->b, m - 1);
    Ints pi(m);
    std::vector<Elem> xs(m);
    i64 rr = 0;
    for (i64 r = 0; r < m; ++r) {
      if (r == r0) {
        pi[r] = c0 + 1;
        xs[r] = e->b;
        continue;
      }
      i64 c = mpi[rr] - 1;
      pi[r] = (c < c0 ? c : c + 1) + 1;
      xs[r] = rest[rr];
      ++rr;
    }
    return at_index(tuple_elem(pi), prod_repack(xs));
  };
  return reshape_sij(dom, cod, fwd, bwd, "extract:" + T.uid);
}

i64 numeric_det(const SMatrix& M) {
  i64 m = M.m;
  std::vector<Ints> a(m, Ints(m));
  for (i64 r = 0; r < m; ++r)
    for (i64 c = 0; c < m; ++c) a[r][c] = sset_size(M.e[r][c]);
  // expansion over permutations; desk scale only
  Ints pi(m);
  for (i64 r = 0; r < m; ++r) pi[r] = r;
  i64 out = 0;
  std::sort(pi.begin(), pi.end());
  do {
    Ints pi1(m);
    for (i64 r = 0; r < m; ++r) pi1[r] = pi[r] + 1;
    i64 t = perm_parity(pi1);
    for (i64 r = 0; r < m; ++r) t *= a[r][pi[r]];
    out += t;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return m == 0 ? 1 : out;
}

}  // namespace asmbij
