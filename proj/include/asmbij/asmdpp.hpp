#pragma once

// The concrete families (ASMs, DPPs, B-sets), the ASM recurrence, the
// determinant-to-DPP sijection via non-intersecting lattice paths, and the
// two headline bijections.

#include "asmbij/linalg.hpp"
#include "asmbij/patterns.hpp"
#include "asmbij/sijection.hpp"
#include "asmbij/subsets.hpp"

namespace asmbij {

// ASMs as flattened n x n matrices over {-1,0,1}; all positive.
SSet asm_set(i64 n);
SSet asm_set_i(i64 n, i64 i);  // top-row 1 in column i (empty when i > n)
std::vector<std::vector<Ints>> enumerate_asm(i64 n);
bool is_asm(const std::vector<Ints>& a);

// DPPs with parts <= n, encoded (len_1, row_1..., len_2, row_2, ...).
SSet dpp_set(i64 n);
SSet dpp_set_i(i64 n, i64 i);  // exactly i-1 parts equal to n
std::vector<std::vector<Ints>> enumerate_dpp(i64 n);
bool is_dpp(const std::vector<Ints>& rows, i64 maxpart);
Ints dpp_tuple(const std::vector<Ints>& rows);
std::vector<Ints> dpp_rows_from_tuple(const Ints& t);

i64 asm_formula(i64 n);
i64 asm_refined_formula(i64 n, i64 i);

std::vector<Ints> asm_reflect_cols(const std::vector<Ints>& a);
std::vector<Ints> asm_rotate90(const std::vector<Ints>& a, bool ccw);

// ASM_{n,i} => ASM_{n,n+1-i} by column reversal.
Sij asm_reflect_sij(i64 n, i64 i);
// ASM_{n,i} <-> MT_i(1..n) (rotate ccw, then partial column sums), and the
// mirrored MT^i variant.
Sij asm_to_mti_sij(i64 n, i64 i);
Sij asm_to_mt_upper_sij(i64 n, i64 i);

// MT_i(k) => ⊔_j (-1)^j C([i-1],j) x MT(k_1+j+1,k_2,...), and the MT^i mirror.
SSet mti_target(const Ints& k, i64 i);
SSet mti_upper_target(const Ints& k, i64 i);
Sij mti_sij(const Ints& k, i64 i);
Sij mti_upper_sij(const Ints& k, i64 i);

// ⊔_{j=1}^n (-1)^{j+1} C([2n-i-1],n-i-j+1) x ASM_{n,j}  =>  ASM_{n,i}.
SSet asm_recurrence_dom(i64 n, i64 i);
Sij asm_recurrence(i64 n, i64 i);

// The P/S/T/W matrices of the determinant pipeline.
SMatrix p_matrix(i64 n);
SMatrix s_matrix(i64 m, i64 n);
SMatrix t_matrix(i64 n);
SMatrix w_matrix(i64 n);            // (n-2) x (n-2)
SMatrix w_matrix_refined(i64 n, i64 j);  // (n-1) x (n-1), bottom row special

// det(W) => DPP_{n-1} by the tail-swap involution on lattice-path families.
Sij lgv_dpp_sij(i64 n);
// det(W^j) => DPP_{n,j}.
Sij lgv_dpp_refined_sij(i64 n, i64 j);

// det(P) => (-1)^{n-1} DPP_{n-1}.
Sij from_det(i64 n);

// DPP_{n-1} x B_{n,1} x ASM_{n,i}  =>  DPP_{n-1} x ASM_{n,1} x B_{n,i}.
Sij main_bijection(i64 n, i64 i, i64 x);
// DPP_{n-1} x ASM_{n,i}  =>  ASM_{n,1} x DPP_{n,i}.
Sij asm_to_dpp(i64 n, i64 i, i64 x);

}  // namespace asmbij
