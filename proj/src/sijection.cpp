#include "asmbij/sijection.hpp"

#include <algorithm>
#include <cstdlib>

namespace asmbij {

namespace {

bool size_checks_enabled() {
  static bool on = std::getenv("ASMBIJ_NO_SIZE_CHECK") == nullptr;
  return on;
}

}  // namespace

SElem Sijection::apply(const SElem& x) const {
  if (!memoize) return f(x);
  std::string k = selem_key(x);
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  SElem y = f(x);
  memo.emplace(std::move(k), y);
  return y;
}

Elem Sijection::fwd(const Elem& e) const {
  SElem y = apply({0, e});
  ASMBIJ_CHECK(y.side == 1, name + ": fwd image stayed in the domain for " + e->key);
  return y.e;
}

Sij make_sij(SSet dom, SSet cod, std::function<SElem(const SElem&)> f, std::string name,
             bool memoize) {
  auto s = std::make_shared<Sijection>();
  s->dom = std::move(dom);
  s->cod = std::move(cod);
  s->f = std::move(f);
  s->name = std::move(name);
  s->memoize = memoize;
  if (size_checks_enabled())
    ASMBIJ_CHECK(sset_size(s->dom) == sset_size(s->cod),
                 s->name + ": size mismatch " + std::to_string(sset_size(s->dom)) + " vs " +
                     std::to_string(sset_size(s->cod)));
  return s;
}

Sij reshape_sij(SSet dom, SSet cod, std::function<Elem(const Elem&)> fwd,
                std::function<Elem(const Elem&)> bwd, std::string name) {
  auto fn = [fwd, bwd](const SElem& x) -> SElem {
    return x.side == 0 ? SElem{1, fwd(x.e)} : SElem{0, bwd(x.e)};
  };
  return make_sij(std::move(dom), std::move(cod), fn, std::move(name));
}

Sij identity_sij(SSet s) {
  auto fn = [](const SElem& x) -> SElem { return {1 - x.side, x.e}; };
  SSet d = s;
  return make_sij(std::move(d), std::move(s), fn, "id");
}

Sij opposite_sij(const Sij& phi) {
  Sij p = phi;
  return make_sij(opp(phi->dom), opp(phi->cod), [p](const SElem& x) { return p->apply(x); },
                  "opp(" + phi->name + ")");
}

Sij invert_sij(const Sij& phi) {
  Sij p = phi;
  auto fn = [p](const SElem& x) -> SElem {
    SElem y = p->apply({1 - x.side, x.e});
    return {1 - y.side, y.e};
  };
  return make_sij(phi->cod, phi->dom, fn, "inv(" + phi->name + ")");
}

Sij product_sij(const Sij& phi, const Sij& psi) {
  Sij a = phi, b = psi;
  auto fn = [a, b](const SElem& x) -> SElem {
    const Elem& l = x.e->a;
    const Elem& r = x.e->b;
    SElem u = a->apply({x.side, l});
    if (u.side == x.side) return {x.side, pair_elem(u.e, r)};
    SElem v = b->apply({x.side, r});
    if (v.side == x.side) return {x.side, pair_elem(l, v.e)};
    return {1 - x.side, pair_elem(u.e, v.e)};
  };
  return make_sij(prod(phi->dom, psi->dom), prod(phi->cod, psi->cod), fn,
                  "(" + phi->name + "*" + psi->name + ")");
}

Sij union2_sij(const Sij& phi, const Sij& psi) {
  Sij a = phi, b = psi;
  auto fn = [a, b](const SElem& x) -> SElem {
    if (x.e->kind == ElemNode::Kind::InLeft) {
      SElem y = a->apply({x.side, x.e->a});
      return {y.side, in_left(y.e)};
    }
    SElem y = b->apply({x.side, x.e->a});
    return {y.side, in_right(y.e)};
  };
  return make_sij(union2(phi->dom, psi->dom), union2(phi->cod, psi->cod), fn,
                  "(" + phi->name + "+" + psi->name + ")");
}

Sij compose(const Sij& phi, const Sij& psi) {
  ASMBIJ_CHECK(set_equal(phi->cod, psi->dom),
               "compose: middle sets differ (" + phi->name + " ; " + psi->name + ")");
  Sij a = phi, b = psi;
  auto fn = [a, b](const SElem& x) -> SElem {
    // Garsia-Milne chase; alternate until we exit into dom(a) or cod(b).
    bool in_first = x.side == 0;
    SElem cur = in_first ? a->apply({0, x.e}) : b->apply({1, x.e});
    i64 steps = 1;
    for (;;) {
      ASMBIJ_CHECK(steps < (i64)1e7, "compose: chase did not terminate");
      if (in_first) {
        if (cur.side == 0) return {0, cur.e};
        cur = b->apply({0, cur.e});
        in_first = false;
      } else {
        if (cur.side == 1) return {1, cur.e};
        cur = a->apply({1, cur.e});
        in_first = true;
      }
      ++steps;
    }
  };
  return make_sij(phi->dom, psi->cod, fn, "(" + phi->name + ";" + psi->name + ")", true);
}

Sij compose_chain(const std::vector<Sij>& stages) {
  ASMBIJ_CHECK(!stages.empty(), "compose_chain: empty");
  Sij acc = stages[0];
  for (size_t i = 1; i < stages.size(); ++i) acc = compose(acc, stages[i]);
  return acc;
}

Sij cancel_sij(const SSet& s) {
  auto fn = [](const SElem& x) -> SElem {
    ASMBIJ_CHECK(x.side == 0, "cancel: codomain is empty");
    if (x.e->kind == ElemNode::Kind::InLeft) return {0, in_right(x.e->a)};
    return {0, in_left(x.e->a)};
  };
  return make_sij(union2(s, opp(s)), empty_set(), fn, "cancel");
}

Sij empty_sij(SSet dom, SSet cod) {
  ASMBIJ_CHECK(enumerate_set(dom).empty() && enumerate_set(cod).empty(),
               "empty_sij: sets are not element-free");
  auto fn = [](const SElem&) -> SElem { fail("empty_sij applied"); };
  return make_sij(std::move(dom), std::move(cod), fn, "empty");
}

Sij union_sij(const Sij& psi, std::function<SSet(const SElem&)> fam_fiber,
              std::function<Sij(const SElem&)> fam_phi, const std::string& uid_dom,
              const std::string& uid_cod) {
  Sij p = psi;
  SSet dom = indexed_union(uid_dom, psi->dom, [fam_fiber](const Elem& t) {
    return fam_fiber({0, t});
  });
  SSet cod = indexed_union(uid_cod, psi->cod, [fam_fiber](const Elem& t) {
    return fam_fiber({1, t});
  });
  auto fn = [p, fam_phi](const SElem& x) -> SElem {
    SElem t{x.side, x.e->a};
    const Elem& s = x.e->b;
    Sij phi_t = fam_phi(t);
    SElem u = phi_t->apply({0, s});
    if (u.side == 0) return {x.side, at_index(t.e, u.e)};  // fiber-internal reversal
    SElem t2 = p->apply(t);
    return {t2.side, at_index(t2.e, u.e)};
  };
  return make_sij(std::move(dom), std::move(cod), fn, "union(" + psi->name + ")");
}

Sij fiberwise_union_sij(const SSet& idx, std::function<SSet(const Elem&)> fam_dom,
                        std::function<SSet(const Elem&)> fam_cod,
                        std::function<Sij(const Elem&)> provider, const std::string& uid_dom,
                        const std::string& uid_cod) {
  Sij psi = identity_sij(idx);
  auto fam_fiber = [fam_dom, fam_cod](const SElem& t) {
    return t.side == 0 ? fam_dom(t.e) : fam_cod(t.e);
  };
  auto fam_phi = [provider](const SElem& t) {
    Sij s = provider(t.e);
    return t.side == 0 ? s : invert_sij(s);
  };
  return union_sij(psi, fam_fiber, fam_phi, uid_dom, uid_cod);
}

Sij normal_union_sij(const Sij& psi, std::function<SSet(const Ints&)> fam_by_xi,
                     const std::string& uid_dom, const std::string& uid_cod) {
  ASMBIJ_CHECK(is_normal(psi), "normal_union_sij: " + psi->name + " is not normal");
  auto fam_fiber = [fam_by_xi](const SElem& t) { return fam_by_xi(project(t.e)); };
  auto fam_phi = [fam_by_xi](const SElem& t) { return identity_sij(fam_by_xi(project(t.e))); };
  return union_sij(psi, fam_fiber, fam_phi, uid_dom, uid_cod);
}

Sij matcher_sij(const SSet& dom, const SSet& cod, bool by_fiber, std::string name) {
  // group key -> (positives, negatives) per side, in canonical key order
  struct Fiber {
    std::vector<Elem> pos[2], neg[2];
  };
  auto table = std::make_shared<std::map<std::string, SElem>>();
  std::map<std::string, Fiber> fibers;
  auto collect = [&](const SSet& s, int side) {
    for (const Elem& e : enumerate_set(s)) {
      std::string k = by_fiber ? ints_to_string(project(e)) : std::string();
      Fiber& fb = fibers[k];
      (elem_sign(e, s) > 0 ? fb.pos[side] : fb.neg[side]).push_back(e);
    }
  };
  collect(dom, 0);
  collect(cod, 1);
  auto bykey = [](const Elem& x, const Elem& y) { return x->key < y->key; };
  for (auto& [k, fb] : fibers) {
    for (int side = 0; side < 2; ++side) {
      std::sort(fb.pos[side].begin(), fb.pos[side].end(), bykey);
      std::sort(fb.neg[side].begin(), fb.neg[side].end(), bykey);
      size_t m = std::min(fb.pos[side].size(), fb.neg[side].size());
      for (size_t i = 0; i < m; ++i) {  // internal cancellation
        SElem a{side, fb.pos[side][i]}, b{side, fb.neg[side][i]};
        table->emplace(selem_key(a), b);
        table->emplace(selem_key(b), a);
      }
      fb.pos[side].erase(fb.pos[side].begin(), fb.pos[side].begin() + m);
      fb.neg[side].erase(fb.neg[side].begin(), fb.neg[side].begin() + m);
    }
    ASMBIJ_CHECK(fb.pos[0].size() == fb.pos[1].size() && fb.neg[0].size() == fb.neg[1].size(),
                 name + ": fiber survivor mismatch at " + (k.empty() ? "<global>" : k));
    for (size_t i = 0; i < fb.pos[0].size(); ++i) {  // sign-preserving crossing
      SElem a{0, fb.pos[0][i]}, b{1, fb.pos[1][i]};
      table->emplace(selem_key(a), b);
      table->emplace(selem_key(b), a);
    }
    for (size_t i = 0; i < fb.neg[0].size(); ++i) {
      SElem a{0, fb.neg[0][i]}, b{1, fb.neg[1][i]};
      table->emplace(selem_key(a), b);
      table->emplace(selem_key(b), a);
    }
  }
  auto fn = [table, name](const SElem& x) -> SElem {
    auto it = table->find(selem_key(x));
    ASMBIJ_CHECK(it != table->end(), name + ": element not in match table: " + selem_key(x));
    return it->second;
  };
  return make_sij(dom, cod, fn, std::move(name));
}

Sij to_empty_from(const Sij& phi) {
  Sij p = phi;
  auto fn = [p](const SElem& x) -> SElem {
    ASMBIJ_CHECK(x.side == 0, "to_empty_from: codomain empty");
    SElem in = x.e->kind == ElemNode::Kind::InLeft ? SElem{0, x.e->a} : SElem{1, x.e->a};
    SElem y = p->apply(in);
    return {0, y.side == 0 ? in_left(y.e) : in_right(y.e)};
  };
  return make_sij(union2(phi->dom, opp(phi->cod)), empty_set(), fn, "[" + phi->name + "]=>0");
}

Sij split_from_empty(const Sij& sigma) {
  ASMBIJ_CHECK(sigma->dom->kind == SignedSet::Kind::Union, "split_from_empty: domain not a union");
  SSet a = sigma->dom->left, b = sigma->dom->right;
  Sij s = sigma;
  auto fn = [s](const SElem& x) -> SElem {
    Elem packed = x.side == 0 ? in_left(x.e) : in_right(x.e);
    SElem y = s->apply({0, packed});
    ASMBIJ_CHECK(y.side == 0, "split_from_empty: escaped to empty codomain");
    if (y.e->kind == ElemNode::Kind::InLeft) return {0, y.e->a};
    return {1, y.e->a};
  };
  return make_sij(a, opp(b), fn, "split(" + sigma->name + ")");
}

Sij assoc_prod_sij(const SSet& a, const SSet& b, const SSet& c) {
  return reshape_sij(
      prod(prod(a, b), c), prod(a, prod(b, c)),
      [](const Elem& e) { return pair_elem(e->a->a, pair_elem(e->a->b, e->b)); },
      [](const Elem& e) { return pair_elem(pair_elem(e->a, e->b->a), e->b->b); }, "assoc*");
}

Sij comm_prod_sij(const SSet& a, const SSet& b) {
  return reshape_sij(
      prod(a, b), prod(b, a), [](const Elem& e) { return pair_elem(e->b, e->a); },
      [](const Elem& e) { return pair_elem(e->b, e->a); }, "comm*");
}

Sij unit_prod_left_sij(const SSet& u, const SSet& a) {
  const auto& us = enumerate_set(u);
  ASMBIJ_CHECK(us.size() == 1 && sset_size(u) == 1, "unit_prod_left: not a positive singleton");
  Elem t = us[0];
  return reshape_sij(
      prod(u, a), a, [](const Elem& e) { return e->b; },
      [t](const Elem& e) { return pair_elem(t, e); }, "unit*");
}

Sij assoc_union_sij(const SSet& a, const SSet& b, const SSet& c) {
  return reshape_sij(
      union2(union2(a, b), c), union2(a, union2(b, c)),
      [](const Elem& e) {
        if (e->kind == ElemNode::Kind::InRight) return in_right(in_right(e->a));
        const Elem& i = e->a;
        return i->kind == ElemNode::Kind::InLeft ? in_left(i->a) : in_right(in_left(i->a));
      },
      [](const Elem& e) {
        if (e->kind == ElemNode::Kind::InLeft) return in_left(in_left(e->a));
        const Elem& i = e->a;
        return i->kind == ElemNode::Kind::InLeft ? in_left(in_right(i->a)) : in_right(i->a);
      },
      "assoc+");
}

Sij comm_union_sij(const SSet& a, const SSet& b) {
  auto flip = [](const Elem& e) {
    return e->kind == ElemNode::Kind::InLeft ? in_right(e->a) : in_left(e->a);
  };
  return reshape_sij(union2(a, b), union2(b, a), flip, flip, "comm+");
}

Sij unit_union_left_sij(const SSet& a) {
  return reshape_sij(
      union2(empty_set(), a), a, [](const Elem& e) { return e->a; },
      [](const Elem& e) { return in_right(e); }, "unit+l");
}

Sij unit_union_right_sij(const SSet& a) {
  return reshape_sij(
      union2(a, empty_set()), a, [](const Elem& e) { return e->a; },
      [](const Elem& e) { return in_left(e); }, "unit+r");
}

int tau(const SElem& x, const Sij& phi) {
  int s = elem_sign(x.e, x.side == 0 ? phi->dom : phi->cod);
  return x.side == 0 ? s : -s;
}

VerifyReport verify_sij(const Sij& phi) {
  VerifyReport r;
  if (sset_size(phi->dom) != sset_size(phi->cod)) {
    r.ok = false;
    r.message = "size mismatch";
    return r;
  }
  auto check_side = [&](const SSet& s, int side) {
    for (const Elem& e : enumerate_set(s)) {
      SElem x{side, e};
      SElem y;
      try {
        y = phi->apply(x);
      } catch (const std::exception& ex) {
        r.ok = false;
        r.message = std::string("apply failed at ") + selem_key(x) + ": " + ex.what();
        return;
      }
      const SSet& target = y.side == 0 ? phi->dom : phi->cod;
      if (!elem_valid(y.e, target)) {
        r.ok = false;
        r.message = "image not in carrier: " + selem_key(x) + " -> " + selem_key(y);
        return;
      }
      if (tau(y, phi) != -tau(x, phi)) {
        r.ok = false;
        r.message = "sign-crossing violated at " + selem_key(x) + " -> " + selem_key(y);
        return;
      }
      SElem z = phi->apply(y);
      if (z.side != x.side || !elem_eq(z.e, x.e)) {
        r.ok = false;
        r.message = "not an involution at " + selem_key(x);
        return;
      }
      ++r.checked;
    }
  };
  check_side(phi->dom, 0);
  if (r.ok) check_side(phi->cod, 1);
  return r;
}

bool is_normal(const Sij& phi) {
  auto same_xi = [&](const SSet& s, int side) {
    for (const Elem& e : enumerate_set(s)) {
      SElem y = phi->apply({side, e});
      if (project(e) != project(y.e)) return false;
    }
    return true;
  };
  return same_xi(phi->dom, 0) && same_xi(phi->cod, 1);
}

}  // namespace asmbij
