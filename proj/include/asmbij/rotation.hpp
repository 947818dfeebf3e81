#pragma once

// The rotation machinery: the prepelementary sijection on interval products,
// the vanishing sijections E_j(k) => 0 and F_j(k) => 0, their primed
// variants, the left-to-right exchange over arrow rows, and finally
// MT(k) => (-1)^{n-1} MT(rot(k)).

#include "asmbij/sijection.hpp"

namespace asmbij {

// Masks encode (V,U): per position 0 = outside V, 1 = in V only, 2 = in U.
// vu_set(n,j): masks of length n with j nonzero entries, sign (-1)^{#2s}.
SSet vu_set(i64 n, i64 j);

// Domain of the prepelementary sijection: over (V,U) the product of the
// signed intervals [k_i + d eps_i(U), k_{i+1} + d eps_{i+1}(U)].  d = +1 for
// the E family, -1 for F.
SSet prep_dom(i64 n, i64 j, const Ints& k, int d);
// Codomain, built by the induction (branches: last element outside V /
// in V only / in U, plus the two singleton-pair branches whose GT fibers
// vanish).
SSet prep_cod(i64 n, i64 j, const Ints& k, int d);
Sij prep_elementary(i64 n, i64 j, const Ints& k, int d);

// Decode an element of prep_cod into (mask over [n-1], bottom row); nullopt
// for the dead singleton-pair branches.
struct PrepDecoded {
  Ints mask;
  Ints row;
};
std::optional<PrepDecoded> prep_decode(i64 n, i64 j, const Ints& k, int d, const Elem& e);
Elem prep_encode(i64 n, i64 j, const Ints& k, int d, const Ints& mask, const Elem& row_elem);

// E_j(k) (d=+1) resp. F_j(k) (d=-1) over the ground set [n].
SSet e_family_set(const Ints& k, i64 j, int d);
// E'_j / F'_j over the ground set [2,n].
SSet e_prime_set(const Ints& k, i64 j, int d);
// Target of the primed expansion: ⊔_i (-1)^{j-i} C([j],i) x GT(k_1 + d i, ...).
SSet e_prime_target(const Ints& k, i64 j, int d);

Sij e_zero(const Ints& k, i64 j, int d);   // E_j(k) => Empty (j >= 1)
Sij e_prime(const Ints& k, i64 j, int d);  // E'_j(k) => target

// ⊔_{mu in AR_{n-1}} GT(k + c(mu T')) => ⊔_{mu} GT(rotated shift per T' mu).
SSet l2r_dom(const Ints& k, const Ints& tp);
SSet l2r_cod(const Ints& k, const Ints& tp);
Sij left_to_right(const Ints& k, const Ints& tp);

// MT(k) => (-1)^{n-1} MT(k_2,...,k_n,k_1-n).
Ints rot_vec(const Ints& k);
Sij rotate_mt(const Ints& k, i64 x);

}  // namespace asmbij
