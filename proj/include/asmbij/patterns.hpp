#pragma once

// Gelfand-Tsetlin patterns over arbitrary bottom rows, monotone triangles
// with signs, arrow patterns / rows and the SGT decomposition, and the
// contracts of pi and Gamma (backed here by the canonical enumerative
// matcher; a faithful port of their original constructions could be slotted
// in behind the same interface).

#include "asmbij/sijection.hpp"

namespace asmbij {

// GT(k), recursively: GT(k) = ⊔_{l in [k1,k2]x...x[k_{n-1},k_n]} GT(l).
SSet gt(const Ints& k);
SSet gt_index(const Ints& k);  // the product of signed intervals
i64 gt_size(const Ints& k);

// l interlaces k (conditions (a)-(d)).
bool interlaces(const Ints& l, const Ints& k);

// Monotone triangles with bottom row k, as flattened row-major tuples
// (T_{1,1}, T_{2,1}, T_{2,2}, ..., T_{n,n}) with the triangle sign.
SSet mt(const Ints& k);
int mt_sign(const std::vector<Ints>& rows);
std::vector<Ints> mt_rows_from_tuple(const Ints& flat);
Ints mt_tuple_from_rows(const std::vector<Ints>& rows);
// All rows l that interlace k, in lexicographic order.
std::vector<Ints> interlacing_rows(const Ints& k);

// MT_i(k): k_1 sits in the first column of exactly the last i rows;
// MT^i(k): k_n sits at the right end of exactly the last i rows.
SSet mt_i_set(const Ints& k, i64 i);
SSet mt_upper_i_set(const Ints& k, i64 i);

// Arrow patterns of order n (entries 0 = SW, 1 = SE, 2 = both; positions
// (p,q), 1<=p<q<=n in lexicographic order) and arrow rows of order n.
SSet ap_set(i64 n);
SSet ar_set(i64 n);
Ints ap_c(const Ints& t, i64 n);            // (c_1(T),...,c_n(T))
Ints deform(const Ints& k, const Ints& t);  // d(k,T)
// Glue an arrow row onto an arrow pattern of order n-1 (arrows reflected):
// as the leftmost NE diagonal (mu T') or the rightmost SE diagonal (T' mu).
Ints mu_T(const Ints& mu, const Ints& tp, i64 n);
Ints T_mu(const Ints& tp, const Ints& mu, i64 n);

// SGT(k) = ⊔_{T in AP_n} GT(d(k,T)).
SSet sgt(const Ints& k);

// GT(k) => -GT(k_1,...,k_{i-1},k_{i+1}+1,k_i-1,...,k_n); enumerative matcher.
Sij pi_sij(const Ints& k, i64 i);
// MT(k) => SGT(k); enumerative matcher (x is accepted for interface
// compatibility and ignored by this implementation).
Sij gamma_sij(const Ints& k, i64 x);

// ASM <-> monotone triangle with bottom row (1..n) via partial column sums.
std::vector<Ints> asm_from_mt_rows(const std::vector<Ints>& rows);
std::vector<Ints> mt_rows_from_asm(const std::vector<Ints>& a);

// Entry-wise shift of all GT entries by -1: GT(k + 1) => GT(k).
Sij gt_shift_sij(const Ints& k);

}  // namespace asmbij
