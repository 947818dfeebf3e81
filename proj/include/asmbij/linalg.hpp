#pragma once

// Determinants of matrices of signed sets: det(P) = ⊔_{pi} P_{1,pi(1)} x ... ,
// the product rule det(R) => det(P) x det(Q) for R = P*Q, Cramer-style column
// substitution, and solving homogeneous systems.

#include "asmbij/sijection.hpp"

namespace asmbij {

struct SMatrix {
  i64 m = 0;
  std::vector<std::vector<SSet>> e;  // m x m entries
  std::string uid;                   // interning key for det and row sets
};

SMatrix make_matrix(i64 m, std::string uid, const std::function<SSet(i64, i64)>& entry);

// Signed permutations of [m], one-line notation, lexicographic order.
SSet perms_set(i64 m);
int perm_parity(const Ints& pi);

SSet det_set(const SMatrix& M);

// Flatten / rebuild elements of left-nested products of m factors.
std::vector<Elem> prod_unpack(const Elem& e, i64 m);
Elem prod_repack(const std::vector<Elem>& xs);

// R with R_{i,j} = ⊔_p P_{i,p} x Q_{p,j}.
SMatrix matrix_product(const SMatrix& P, const SMatrix& Q);
// det(R) => det(P) x det(Q) for R = matrix_product(P, Q).
Sij det_product_sij(const SMatrix& P, const SMatrix& Q);

// ⊔_q P_{i,q} x X_q, the domain every row sijection must use.  The tag keeps
// unions for different X families apart.
SSet row_dom(const SMatrix& P, const std::vector<SSet>& X, i64 i, const std::string& tag);

// Given row sijections rows[i] : row_dom(P,X,i,tag) => Y_i, the sijection
// det(P) x X_j => det(P^j), where column j of P^j is Y.
Sij cramer_sij(const SMatrix& P, const std::vector<SSet>& X, const std::vector<SSet>& Y,
               const std::vector<Sij>& rows, i64 j, const std::string& tag);
SMatrix column_replace(const SMatrix& P, i64 j, const std::vector<SSet>& Y,
                       const std::string& uid);

// Same with Y_i all empty: det(P) x X_j => Empty.
Sij solve_zero_sij(const SMatrix& P, const std::vector<SSet>& X, const std::vector<Sij>& rows,
                   i64 j, const std::string& tag);

// det(A) => det(B) from per-entry sijections A_{i,j} => B_{i,j}.
Sij det_entrywise_sij(const SMatrix& A, const SMatrix& B,
                      const std::function<Sij(i64, i64)>& entry_sij);

// When every element of det(T) uses cell (r0,c0) (the rest of that row or
// column carries no elements), split it off:
// det(T) => (-1)^{r0+c0} (det(minor) x T_{r0,c0}).
Sij det_extract_sij(const SMatrix& T, i64 r0, i64 c0, const SMatrix& minor);
SMatrix matrix_minor(const SMatrix& T, i64 r0, i64 c0, const std::string& uid);

// Integer determinant of the size matrix (test oracle lives in tests; this
// is used for internal sanity checks).
i64 numeric_det(const SMatrix& M);

}  // namespace asmbij
