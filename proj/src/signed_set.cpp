#include "asmbij/signed_set.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace asmbij {

void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string ints_to_string(const Ints& xs) {
  std::string s = "(";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  s += ')';
  return s;
}

Elem tuple_elem(Ints xs) {
  auto n = std::make_shared<ElemNode>();
  n->kind = ElemNode::Kind::Tuple;
  n->key = ints_to_string(xs);
  n->values = std::move(xs);
  return n;
}

Elem in_left(Elem e) {
  auto n = std::make_shared<ElemNode>();
  n->kind = ElemNode::Kind::InLeft;
  n->key = "L" + e->key;
  n->a = std::move(e);
  return n;
}

Elem in_right(Elem e) {
  auto n = std::make_shared<ElemNode>();
  n->kind = ElemNode::Kind::InRight;
  n->key = "R" + e->key;
  n->a = std::move(e);
  return n;
}

Elem pair_elem(Elem x, Elem y) {
  auto n = std::make_shared<ElemNode>();
  n->kind = ElemNode::Kind::Pair;
  n->key = "[" + x->key + "|" + y->key + "]";
  n->a = std::move(x);
  n->b = std::move(y);
  return n;
}

Elem at_index(Elem idx, Elem fiber) {
  auto n = std::make_shared<ElemNode>();
  n->kind = ElemNode::Kind::AtIndex;
  n->key = "{" + idx->key + ":" + fiber->key + "}";
  n->a = std::move(idx);
  n->b = std::move(fiber);
  return n;
}

namespace {

std::unordered_map<std::string, SSet>& intern_table() {
  static std::unordered_map<std::string, SSet> tbl;
  return tbl;
}

SSet make_node() { return std::make_shared<SignedSet>(); }

}  // namespace

SSet empty_set() {
  static SSet e = [] {
    auto n = std::make_shared<SignedSet>();
    n->kind = SignedSet::Kind::Empty;
    return SSet(n);
  }();
  return e;
}

SSet interval(i64 a, i64 b) {
  if (b == a - 1) return empty_set();  // forced by the definition
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::Interval;
  n->lo = a;
  n->hi = b;
  return n;
}

SSet singleton(Ints v, int sign) {
  return tuples_set({{std::move(v), sign}});
}

SSet tuples_set(std::vector<std::pair<Ints, int>> t, const std::string& label) {
  if (!label.empty()) {
    auto& tbl = intern_table();
    auto it = tbl.find("T#" + label);
    if (it != tbl.end()) return it->second;
    auto n = std::make_shared<SignedSet>();
    n->kind = SignedSet::Kind::Tuples;
    n->tups = std::move(t);
    n->uid = label;
    tbl.emplace("T#" + label, n);
    return n;
  }
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::Tuples;
  n->tups = std::move(t);
  return n;
}

SSet unit_set() {
  static SSet u = singleton(Ints{}, 1);
  return u;
}

SSet opp(SSet s) {
  if (s->kind == SignedSet::Kind::Opposite) return s->left;
  if (s->kind == SignedSet::Kind::Empty) return s;
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::Opposite;
  n->left = std::move(s);
  return n;
}

SSet wrap_sign(int sign, SSet s) { return sign >= 0 ? s : opp(std::move(s)); }

SSet prod(SSet a, SSet b) {
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::Product;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

SSet union2(SSet a, SSet b) {
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::Union;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

SSet prod_many(const std::vector<SSet>& xs) {
  if (xs.empty()) return unit_set();
  SSet acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = prod(acc, xs[i]);
  return acc;
}

SSet union_many(const std::vector<SSet>& xs) {
  if (xs.empty()) return empty_set();
  SSet acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = union2(acc, xs[i]);
  return acc;
}

SSet indexed_union(const std::string& uid, SSet index, std::function<SSet(const Elem&)> family) {
  ASMBIJ_CHECK(!uid.empty(), "indexed_union needs an interning key");
  auto& tbl = intern_table();
  auto it = tbl.find("U#" + uid);
  if (it != tbl.end()) return it->second;
  auto n = std::make_shared<SignedSet>();
  n->kind = SignedSet::Kind::IndexedUnion;
  n->index = std::move(index);
  n->family = std::move(family);
  n->uid = uid;
  tbl.emplace("U#" + uid, n);
  return n;
}

SSet iu_fiber(const SSet& s, const Elem& idx) {
  ASMBIJ_CHECK(s->kind == SignedSet::Kind::IndexedUnion, "iu_fiber: not an indexed union");
  auto it = s->family_memo.find(idx->key);
  if (it != s->family_memo.end()) return it->second;
  SSet f = s->family(idx);
  s->family_memo.emplace(idx->key, f);
  return f;
}

bool set_equal(const SSet& a, const SSet& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SignedSet::Kind::Empty:
      return true;
    case SignedSet::Kind::Interval:
      return a->lo == b->lo && a->hi == b->hi;
    case SignedSet::Kind::Tuples:
      if (!a->uid.empty() || !b->uid.empty()) return a->uid == b->uid;
      return a->tups == b->tups;
    case SignedSet::Kind::Opposite:
      return set_equal(a->left, b->left);
    case SignedSet::Kind::Product:
    case SignedSet::Kind::Union:
      return set_equal(a->left, b->left) && set_equal(a->right, b->right);
    case SignedSet::Kind::IndexedUnion:
      return a->uid == b->uid;
  }
  return false;
}

i64 sset_size(const SSet& s) {
  if (s->size_cache) return *s->size_cache;
  i64 r = 0;
  switch (s->kind) {
    case SignedSet::Kind::Empty:
      r = 0;
      break;
    case SignedSet::Kind::Interval:
      r = s->hi - s->lo + 1;  // negative case included
      break;
    case SignedSet::Kind::Tuples:
      for (auto& [v, sg] : s->tups) r += sg;
      break;
    case SignedSet::Kind::Opposite:
      r = -sset_size(s->left);
      break;
    case SignedSet::Kind::Product:
      r = sset_size(s->left) * sset_size(s->right);
      break;
    case SignedSet::Kind::Union:
      r = sset_size(s->left) + sset_size(s->right);
      break;
    case SignedSet::Kind::IndexedUnion:
      for (const Elem& t : enumerate_set(s->index))
        r += elem_sign(t, s->index) * sset_size(iu_fiber(s, t));
      break;
  }
  s->size_cache = r;
  return r;
}

int elem_sign(const Elem& e, const SSet& s) {
  switch (s->kind) {
    case SignedSet::Kind::Empty:
      fail("elem_sign on empty set");
    case SignedSet::Kind::Interval:
      return s->lo <= s->hi ? 1 : -1;
    case SignedSet::Kind::Tuples: {
      for (auto& [v, sg] : s->tups)
        if (v == e->values) return sg;
      fail("elem_sign: tuple not in set " + e->key);
    }
    case SignedSet::Kind::Opposite:
      return -elem_sign(e, s->left);
    case SignedSet::Kind::Product:
      return elem_sign(e->a, s->left) * elem_sign(e->b, s->right);
    case SignedSet::Kind::Union:
      return e->kind == ElemNode::Kind::InLeft ? elem_sign(e->a, s->left)
                                               : elem_sign(e->a, s->right);
    case SignedSet::Kind::IndexedUnion:
      return elem_sign(e->a, s->index) * elem_sign(e->b, iu_fiber(s, e->a));
  }
  fail("elem_sign: bad kind");
}

bool elem_valid(const Elem& e, const SSet& s) {
  switch (s->kind) {
    case SignedSet::Kind::Empty:
      return false;
    case SignedSet::Kind::Interval: {
      if (e->kind != ElemNode::Kind::Tuple || e->values.size() != 1) return false;
      i64 v = e->values[0];
      if (s->lo <= s->hi) return s->lo <= v && v <= s->hi;
      return s->hi + 1 <= v && v <= s->lo - 1;
    }
    case SignedSet::Kind::Tuples: {
      if (e->kind != ElemNode::Kind::Tuple) return false;
      for (auto& [v, sg] : s->tups)
        if (v == e->values) return true;
      return false;
    }
    case SignedSet::Kind::Opposite:
      return elem_valid(e, s->left);
    case SignedSet::Kind::Product:
      return e->kind == ElemNode::Kind::Pair && elem_valid(e->a, s->left) &&
             elem_valid(e->b, s->right);
    case SignedSet::Kind::Union:
      if (e->kind == ElemNode::Kind::InLeft) return elem_valid(e->a, s->left);
      if (e->kind == ElemNode::Kind::InRight) return elem_valid(e->a, s->right);
      return false;
    case SignedSet::Kind::IndexedUnion:
      return e->kind == ElemNode::Kind::AtIndex && elem_valid(e->a, s->index) &&
             elem_valid(e->b, iu_fiber(s, e->a));
  }
  return false;
}

void for_each_elem(const SSet& s, const std::function<void(const Elem&)>& fn) {
  switch (s->kind) {
    case SignedSet::Kind::Empty:
      return;
    case SignedSet::Kind::Interval: {
      i64 a = s->lo <= s->hi ? s->lo : s->hi + 1;
      i64 b = s->lo <= s->hi ? s->hi : s->lo - 1;
      for (i64 v = a; v <= b; ++v) fn(tuple_elem({v}));
      return;
    }
    case SignedSet::Kind::Tuples:
      for (auto& [v, sg] : s->tups) fn(tuple_elem(v));
      return;
    case SignedSet::Kind::Opposite:
      for_each_elem(s->left, fn);
      return;
    case SignedSet::Kind::Product:
      for_each_elem(s->left, [&](const Elem& x) {
        for_each_elem(s->right, [&](const Elem& y) { fn(pair_elem(x, y)); });
      });
      return;
    case SignedSet::Kind::Union:
      for_each_elem(s->left, [&](const Elem& x) { fn(in_left(x)); });
      for_each_elem(s->right, [&](const Elem& x) { fn(in_right(x)); });
      return;
    case SignedSet::Kind::IndexedUnion:
      for_each_elem(s->index, [&](const Elem& t) {
        for_each_elem(iu_fiber(s, t), [&](const Elem& x) { fn(at_index(t, x)); });
      });
      return;
  }
}

const std::vector<Elem>& enumerate_set(const SSet& s) {
  if (!s->enum_cache) {
    std::vector<Elem> out;
    for_each_elem(s, [&](const Elem& e) { out.push_back(e); });
    s->enum_cache = std::move(out);
  }
  return *s->enum_cache;
}

Ints project(const Elem& e) {
  switch (e->kind) {
    case ElemNode::Kind::Tuple:
      return e->values;
    case ElemNode::Kind::InLeft:
    case ElemNode::Kind::InRight:
      return project(e->a);
    case ElemNode::Kind::Pair: {
      Ints l = project(e->a), r = project(e->b);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case ElemNode::Kind::AtIndex:
      return project(e->b);
  }
  fail("project: bad element");
}

int elementary_dim(const SSet& s) {
  switch (s->kind) {
    case SignedSet::Kind::Empty:
      return 0;
    case SignedSet::Kind::Interval:
      return 1;
    case SignedSet::Kind::Tuples: {
      if (s->tups.empty()) return 0;
      size_t d = s->tups[0].first.size();
      for (auto& [v, sg] : s->tups)
        ASMBIJ_CHECK(v.size() == d, "elementary_dim: ragged tuple family");
      return (int)d;
    }
    case SignedSet::Kind::Opposite:
      return elementary_dim(s->left);
    case SignedSet::Kind::Product:
      return elementary_dim(s->left) + elementary_dim(s->right);
    case SignedSet::Kind::Union: {
      bool le = sset_size(s->left) == 0 && enumerate_set(s->left).empty();
      bool re = sset_size(s->right) == 0 && enumerate_set(s->right).empty();
      if (le && !re) return elementary_dim(s->right);
      if (re && !le) return elementary_dim(s->left);
      if (le && re) return 0;
      int a = elementary_dim(s->left), b = elementary_dim(s->right);
      ASMBIJ_CHECK(a == b, "elementary_dim: union branches disagree");
      return a;
    }
    case SignedSet::Kind::IndexedUnion: {
      int d = -1;
      for (const Elem& t : enumerate_set(s->index)) {
        SSet f = iu_fiber(s, t);
        if (enumerate_set(f).empty()) continue;
        int fd = elementary_dim(f);
        if (d < 0) d = fd;
        ASMBIJ_CHECK(d == fd, "elementary_dim: fibers disagree");
      }
      return d < 0 ? 0 : d;
    }
  }
  fail("elementary_dim: bad kind");
}

}  // namespace asmbij
