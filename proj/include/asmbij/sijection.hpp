#pragma once

// Sijections: computable involutions phi on dom ⊔ cod with
// phi(dom+ ⊔ cod-) = dom- ⊔ cod+.  Equivalently, writing
// tau(x) = sign(x) on the domain side and -sign(x) on the codomain side,
// phi is a perfect tau-reversing matching.  Combinators below follow the
// standard toolkit: opposite, product, disjoint union over a sijection of
// index sets, inversion, and Garsia-Milne composition.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asmbij/signed_set.hpp"

namespace asmbij {

struct SElem {
  int side = 0;  // 0 = domain, 1 = codomain
  Elem e;
};

inline std::string selem_key(const SElem& x) { return (x.side ? "c" : "d") + x.e->key; }

struct Sijection;
using Sij = std::shared_ptr<const Sijection>;

struct Sijection {
  SSet dom, cod;
  std::string name;
  std::function<SElem(const SElem&)> f;
  bool memoize = false;
  mutable std::map<std::string, SElem> memo;

  SElem apply(const SElem& x) const;
  // Evaluate as a map dom -> cod; throws if the image stays inside dom.
  Elem fwd(const Elem& e) const;
};

struct VerifyReport {
  bool ok = true;
  i64 checked = 0;
  std::string message;
};

Sij make_sij(SSet dom, SSet cod, std::function<SElem(const SElem&)> f, std::string name,
             bool memoize = false);

// A sijection given by a sign-preserving bijection dom -> cod.
Sij reshape_sij(SSet dom, SSet cod, std::function<Elem(const Elem&)> fwd,
                std::function<Elem(const Elem&)> bwd, std::string name);

Sij identity_sij(SSet s);
Sij opposite_sij(const Sij& phi);
Sij invert_sij(const Sij& phi);
Sij product_sij(const Sij& phi, const Sij& psi);
Sij union2_sij(const Sij& phi, const Sij& psi);
Sij compose(const Sij& phi, const Sij& psi);
Sij compose_chain(const std::vector<Sij>& stages);

// S ⊔ (-S) => Empty, matching the two copies.
Sij cancel_sij(const SSet& s);
// Both sets enumerate to nothing.
Sij empty_sij(SSet dom, SSet cod);

// Disjoint union of sijections over psi : T => T~.  fam_fiber(t) gives the
// fiber set F(t) for t in T ⊔ T~ (as an SElem over psi), fam_phi(t) gives
// phi_t : F(t) => F(psi(t)); the family must satisfy phi_{psi(t)} = phi_t^{-1}.
Sij union_sij(const Sij& psi, std::function<SSet(const SElem&)> fam_fiber,
              std::function<Sij(const SElem&)> fam_phi, const std::string& uid_dom,
              const std::string& uid_cod);

// Common special case: identity on the index set, per-index fibers.
Sij fiberwise_union_sij(const SSet& idx, std::function<SSet(const Elem&)> fam_dom,
                        std::function<SSet(const Elem&)> fam_cod,
                        std::function<Sij(const Elem&)> provider, const std::string& uid_dom,
                        const std::string& uid_cod);

// Union over a normal sijection psi with identity fibers: fibers depend on
// the projection xi only.  Throws if psi is not normal.
Sij normal_union_sij(const Sij& psi, std::function<SSet(const Ints&)> fam_by_xi,
                     const std::string& uid_dom, const std::string& uid_cod);

// Canonical enumerative matcher: cancels +/- pairs inside each side in
// canonical key order, then matches the survivors across in key order.
// With by_fiber set, does this per xi-fiber (yielding a normal sijection).
// Throws if the two sides cannot be matched.
Sij matcher_sij(const SSet& dom, const SSet& cod, bool by_fiber, std::string name);

// phi : A => B   reinterpreted as   A ⊔ (-B) => Empty.
Sij to_empty_from(const Sij& phi);
// sigma : A ⊔ B => Empty  (dom literally Union(A,B))  reinterpreted as  A => -B.
Sij split_from_empty(const Sij& sigma);

// Structural reshapes: associativity, commutativity, units.
Sij assoc_prod_sij(const SSet& a, const SSet& b, const SSet& c);   // (a*b)*c => a*(b*c)
Sij comm_prod_sij(const SSet& a, const SSet& b);                   // a*b => b*a
Sij unit_prod_left_sij(const SSet& u, const SSet& a);              // {t}*a => a
Sij assoc_union_sij(const SSet& a, const SSet& b, const SSet& c);  // (a⊔b)⊔c => a⊔(b⊔c)
Sij comm_union_sij(const SSet& a, const SSet& b);                  // a⊔b => b⊔a
Sij unit_union_left_sij(const SSet& a);                            // Empty⊔a => a
Sij unit_union_right_sij(const SSet& a);                           // a⊔Empty => a

int tau(const SElem& x, const Sij& phi);
VerifyReport verify_sij(const Sij& phi);
bool is_normal(const Sij& phi);

}  // namespace asmbij
