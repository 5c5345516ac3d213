#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/category.hpp"
#include "descent/equivalence.hpp"

namespace descent {

/// (c, d, phi: F c -> G d). For pseudopullbacks phi is invertible and
/// phi_inv is its inverse; for comma objects phi_inv is unused.
template <class C, class D, class E>
struct BiObject {
  ObjectOf<C> c;
  ObjectOf<D> d;
  MorphismOf<E> phi;
  MorphismOf<E> phi_inv;

  friend bool operator==(const BiObject& a, const BiObject& b) {
    return a.phi == b.phi && a.c == b.c && a.d == b.d;
  }
  friend bool operator<(const BiObject& a, const BiObject& b) {
    if (!(a.c == b.c)) return a.c < b.c;
    if (!(a.d == b.d)) return a.d < b.d;
    return a.phi < b.phi;
  }
};

/// (u, v) with G(v)∘phi = phi'∘F(u).
template <class C, class D, class E>
struct BiMorphism {
  BiObject<C, D, E> source;
  BiObject<C, D, E> target;
  MorphismOf<C> u;
  MorphismOf<D> v;

  friend bool operator==(const BiMorphism& a, const BiMorphism& b) {
    return a.u == b.u && a.v == b.v && a.source == b.source && a.target == b.target;
  }
  friend bool operator<(const BiMorphism& a, const BiMorphism& b) {
    if (!(a.u == b.u)) return a.u < b.u;
    if (!(a.v == b.v)) return a.v < b.v;
    if (!(a.source == b.source)) return a.source < b.source;
    return a.target < b.target;
  }
};

template <class C, class D, class E>
std::string show(const BiObject<C, D, E>& x) {
  return "(" + show(x.c) + ", " + show(x.d) + ", " + show(x.phi) + ")";
}
template <class C, class D, class E>
std::string show(const BiMorphism<C, D, E>& f) {
  return "(" + show(f.u) + ", " + show(f.v) + ")";
}

template <class C, class D, class E>
using BiCategory = Category<BiObject<C, D, E>, BiMorphism<C, D, E>>;

/// The category with its two projections and the filler F∘P1 ⇒ G∘P2.
template <class C, class D, class E>
struct BilimitCone {
  BiCategory<C, D, E> category;
  Functor<BiCategory<C, D, E>, C> p1;
  Functor<BiCategory<C, D, E>, D> p2;
  NatTrans<BiCategory<C, D, E>, E> filler;
  std::optional<NatIso<BiCategory<C, D, E>, E>> filler_iso;  // pseudopullbacks only
};

namespace detail {

template <class C, class D, class E>
BilimitCone<C, D, E> bilimit(const Functor<C, E>& f, const Functor<D, E>& g, bool invertible) {
  using Obj = BiObject<C, D, E>;
  using Mor = BiMorphism<C, D, E>;
  struct Data {
    Functor<C, E> f;
    Functor<D, E> g;
  };
  auto fg = std::make_shared<const Data>(Data{f, g});
  auto commutes = [fg](const Obj& x, const Obj& y, const MorphismOf<C>& u, const MorphismOf<D>& v) {
    const auto& e = fg->f.target;
    return e.compose(fg->g.mor(v), x.phi) == e.compose(y.phi, fg->f.mor(u));
  };
  BiCategory<C, D, E> cat;
  cat.name = (invertible ? "PsPb(" : "Comma(") + f.name + ", " + g.name + ")";
  cat.finite = f.source.finite && g.source.finite;
  cat.objects = [fg, invertible](std::size_t bound) {
    std::vector<Obj> out;
    const auto cs = fg->f.source.objects(bound);
    const auto ds = fg->g.source.objects(bound);
    for (const auto& c : cs)
      for (const auto& d : ds) {
        const auto fc = fg->f.obj(c);
        const auto gd = fg->g.obj(d);
        if (invertible) {
          for (const auto& [phi, inv] : isomorphisms(fg->f.target, fc, gd)) out.push_back({c, d, phi, inv});
        } else {
          for (const auto& phi : fg->f.target.hom(fc, gd)) out.push_back({c, d, phi, phi});
        }
      }
    return out;
  };
  cat.hom = [fg, commutes](const Obj& x, const Obj& y) {
    std::vector<Mor> out;
    const auto us = fg->f.source.hom(x.c, y.c);
    if (us.empty()) return out;
    const auto vs = fg->g.source.hom(x.d, y.d);
    for (const auto& u : us)
      for (const auto& v : vs)
        if (commutes(x, y, u, v)) out.push_back({x, y, u, v});
    return out;
  };
  cat.identity = [fg](const Obj& x) {
    return Mor{x, x, fg->f.source.identity(x.c), fg->g.source.identity(x.d)};
  };
  cat.compose = [fg](const Mor& b, const Mor& a) {
    return Mor{a.source, b.target, fg->f.source.compose(b.u, a.u), fg->g.source.compose(b.v, a.v)};
  };
  cat.dom = [](const Mor& m) { return m.source; };
  cat.cod = [](const Mor& m) { return m.target; };
  cat.isos = [fg, commutes](const Obj& x, const Obj& y) {
    std::vector<std::pair<Mor, Mor>> out;
    const auto us = isomorphisms(fg->f.source, x.c, y.c);
    if (us.empty()) return out;
    const auto vs = isomorphisms(fg->g.source, x.d, y.d);
    for (const auto& [u, ui] : us)
      for (const auto& [v, vi] : vs)
        if (commutes(x, y, u, v)) out.emplace_back(Mor{x, y, u, v}, Mor{y, x, ui, vi});
    return out;
  };
  Functor<BiCategory<C, D, E>, C> p1{"P1", cat, f.source, [](const Obj& x) { return x.c; },
                                     [](const Mor& m) { return m.u; }};
  Functor<BiCategory<C, D, E>, D> p2{"P2", cat, g.source, [](const Obj& x) { return x.d; },
                                     [](const Mor& m) { return m.v; }};
  NatTrans<BiCategory<C, D, E>, E> filler{"φ", compose(f, p1), compose(g, p2),
                                          [](const Obj& x) { return x.phi; }};
  BilimitCone<C, D, E> r{cat, p1, p2, filler, std::nullopt};
  if (invertible) r.filler_iso = NatIso<BiCategory<C, D, E>, E>{filler, [](const Obj& x) { return x.phi_inv; }};
  return r;
}

}  // namespace detail

template <class C, class D, class E>
BilimitCone<C, D, E> pseudopullback(const Functor<C, E>& f, const Functor<D, E>& g) {
  if (f.target.name != g.target.name)
    throw std::invalid_argument("pseudopullback: " + f.name + " and " + g.name + " have different codomains");
  return detail::bilimit(f, g, true);
}

template <class C, class D, class E>
BilimitCone<C, D, E> comma(const Functor<C, E>& f, const Functor<D, E>& g) {
  if (f.target.name != g.target.name)
    throw std::invalid_argument("comma: " + f.name + " and " + g.name + " have different codomains");
  return detail::bilimit(f, g, false);
}

/// A square  A --top--> C, A --left--> D, C --f--> E, D --g--> E  filled by
/// psi: f∘top ≅ g∘left.
template <class A, class C, class D, class E>
struct BiSquare {
  Functor<A, C> top;
  Functor<A, D> left;
  Functor<C, E> f;
  Functor<D, E> g;
  NatIso<A, E> psi;
};

/// a ↦ (top a, left a, psi_a).
template <class A, class C, class D, class E>
Functor<A, BiCategory<C, D, E>> pseudopullback_comparison(const BiSquare<A, C, D, E>& sq,
                                                          const BilimitCone<C, D, E>& pp) {
  using Obj = BiObject<C, D, E>;
  auto obj = [sq](const ObjectOf<A>& a) {
    return Obj{sq.top.obj(a), sq.left.obj(a), sq.psi.at(a), sq.psi.inverse_at(a)};
  };
  return {"comparison", sq.top.source, pp.category, obj, [sq, obj](const MorphismOf<A>& m) {
            const auto& a = sq.top.source;
            return BiMorphism<C, D, E>{obj(a.dom(m)), obj(a.cod(m)), sq.top.mor(m), sq.left.mor(m)};
          }};
}

template <class A, class C, class D, class E>
struct PseudopullbackVerdict {
  bool holds = false;
  EquivalenceResult<A, BiCategory<C, D, E>> detail;
};

/// The square is a pseudopullback iff its comparison into the constructed
/// pseudopullback is an equivalence (within the bound).
template <class A, class C, class D, class E>
PseudopullbackVerdict<A, C, D, E> is_pseudopullback_square(const BiSquare<A, C, D, E>& sq,
                                                           std::size_t bound) {
  const auto pp = pseudopullback(sq.f, sq.g);
  const auto k = pseudopullback_comparison(sq, pp);
  PseudopullbackVerdict<A, C, D, E> r;
  r.detail = is_equivalence(k, bound);
  r.holds = r.detail.level == EquivalenceLevel::Equivalence;
  return r;
}

}  // namespace descent
