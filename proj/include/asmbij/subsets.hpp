#pragma once

// Interval splitting and the binomial-set constructions: alpha, the
// trinomial-coefficient bijection, the Chu-Vandermonde sijection, B-sets and
// their recurrence.

#include "asmbij/sijection.hpp"

namespace asmbij {

// k-subsets of [m] as sorted tuples.  k=0 yields the one empty subset (the
// ground may degenerate to m=-1 in Chu-Vandermonde outputs); k<0 or k>m is
// empty.
SSet binom_set(i64 m, i64 k);
i64 binom_count(i64 m, i64 k);

// alpha_{a,b,c} : [a,c] => [a,b] ⊔ [b+1,c], the normal value matcher.
Sij alpha(i64 a, i64 b, i64 c);

// C([a+b+c],a) x C([b+c],b) -> C([a+b+c],b) x C([a+c],c), a,b,c >= 0.
Sij trinomial(i64 a, i64 b, i64 c);

// LHS set of the Chu-Vandermonde sijection (shared with its users).
SSet cv_lhs(i64 a, i64 b, i64 c);
SSet cv_rhs(i64 a, i64 b, i64 c);
// ⊔_{j=0}^{c} (-1)^j C([b],j) x C([a+c-j-1],a-1)  =>  C([a+c-b-1],c)   (a>=b)
//                                                 or (-1)^c C([b-a],c) (a<b)
// Requires a >= 1.
Sij chu_vandermonde(i64 a, i64 b, i64 c);

// B_{n,i}: (2n-1)-subsets of [3n-2] with median n+i-1; rendered as digit
// strings elsewhere.  bset_full(n) is all of B_n.
SSet bset(i64 n, i64 i);
SSet bset_full(i64 n);

// B_{n,i} -> C([n+i-2],n-1) x C([2n-i-1],n-1).
Sij b_split(i64 n, i64 i);

// C([m],k) -> C([m],m-k).
Sij binom_complement_sij(i64 m, i64 k);

// ⊔_{j=1}^n (-1)^{j+1} C([2n-i-1],n-i-j+1) x B_{n,j}  =>  B_{n,i}.
Sij b_recurrence(i64 n, i64 i);
SSet b_recurrence_dom(i64 n, i64 i);

// Stars-and-bars order isomorphism between weak compositions of `total`
// with `parts` parts and (parts-1)-subsets of [total+parts-1]:
// bar i sits at pi_1+...+pi_i + i.
Ints comp_to_bars(const Ints& comp);
Ints bars_to_comp(const Ints& bars, i64 parts, i64 total);

}  // namespace asmbij
