#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace descent {

inline std::string show(const std::string& s) { return s; }

/// A category given by enumerators rather than tables.
///
/// `objects(bound)` lists objects of size at most `bound` in a deterministic
/// order; what "size" means is up to the category (carrier size for slices,
/// ignored for table-backed categories, which set `finite`). Hom-sets are
/// always complete. Composition is applicative: `compose(g, f)` is "f then g".
template <class O, class M>
struct Category {
  using object_type = O;
  using morphism_type = M;

  std::string name;
  std::function<std::vector<O>(std::size_t)> objects;
  std::function<std::vector<M>(const O&, const O&)> hom;
  std::function<M(const O&)> identity;
  std::function<M(const M&, const M&)> compose;
  std::function<O(const M&)> dom;
  std::function<O(const M&)> cod;
  // Optional accelerator: all isomorphisms a -> b as (forward, inverse).
  std::function<std::vector<std::pair<M, M>>(const O&, const O&)> isos;
  // True when objects(bound) is the whole category for every bound.
  bool finite = false;
};

template <class C>
using ObjectOf = typename C::object_type;
template <class C>
using MorphismOf = typename C::morphism_type;

template <class C>
std::vector<std::pair<MorphismOf<C>, MorphismOf<C>>> isomorphisms(
    const C& cat, const ObjectOf<C>& a, const ObjectOf<C>& b) {
  if (cat.isos) return cat.isos(a, b);
  std::vector<std::pair<MorphismOf<C>, MorphismOf<C>>> out;
  const auto forward = cat.hom(a, b);
  if (forward.empty()) return out;
  const auto backward = cat.hom(b, a);
  const auto id_a = cat.identity(a);
  const auto id_b = cat.identity(b);
  for (const auto& f : forward)
    for (const auto& g : backward)
      if (cat.compose(g, f) == id_a && cat.compose(f, g) == id_b) {
        out.emplace_back(f, g);
        break;
      }
  return out;
}

template <class C, class D>
struct Functor {
  using source_category = C;
  using target_category = D;

  std::string name;
  C source;
  D target;
  std::function<ObjectOf<D>(const ObjectOf<C>&)> on_object;
  std::function<MorphismOf<D>(const MorphismOf<C>&)> on_morphism;

  ObjectOf<D> obj(const ObjectOf<C>& x) const { return on_object(x); }
  MorphismOf<D> mor(const MorphismOf<C>& f) const { return on_morphism(f); }
};

template <class C>
Functor<C, C> identity_functor(const C& cat) {
  return {"Id", cat, cat, [](const ObjectOf<C>& x) { return x; },
          [](const MorphismOf<C>& f) { return f; }};
}

/// G after F.
template <class C, class D, class E>
Functor<C, E> compose(const Functor<D, E>& g, const Functor<C, D>& f) {
  return {g.name + "∘" + f.name, f.source, g.target,
          [g, f](const ObjectOf<C>& x) { return g.on_object(f.on_object(x)); },
          [g, f](const MorphismOf<C>& m) {
            return g.on_morphism(f.on_morphism(m));
          }};
}

template <class C, class D>
struct NatTrans {
  std::string name;
  Functor<C, D> source;
  Functor<C, D> target;
  std::function<MorphismOf<D>(const ObjectOf<C>&)> component;

  MorphismOf<D> at(const ObjectOf<C>& x) const { return component(x); }
};

template <class C, class D>
struct NatIso {
  NatTrans<C, D> forward;
  std::function<MorphismOf<D>(const ObjectOf<C>&)> inverse_component;

  const std::string& name() const { return forward.name; }
  MorphismOf<D> at(const ObjectOf<C>& x) const { return forward.component(x); }
  MorphismOf<D> inverse_at(const ObjectOf<C>& x) const {
    return inverse_component(x);
  }
  NatIso inverse() const {
    return {{forward.name + "⁻¹", forward.target, forward.source,
             inverse_component},
            forward.component};
  }
};

template <class C, class D>
NatIso<C, D> identity_iso(const Functor<C, D>& f) {
  auto id = [f](const ObjectOf<C>& x) { return f.target.identity(f.obj(x)); };
  return {{"id_" + f.name, f, f, id}, id};
}

/// Left adjoint `left: C -> D`, right adjoint `right: D -> C`.
template <class C, class D>
struct Adjunction {
  Functor<C, D> left;
  Functor<D, C> right;
  NatTrans<C, C> unit;    // Id => right∘left
  NatTrans<D, D> counit;  // left∘right => Id
};

/// One failed law, with printable evidence.
struct Violation {
  std::string law;
  std::string where;
  std::string detail;
};

inline std::string describe(const std::vector<Violation>& vs) {
  std::ostringstream os;
  for (const auto& v : vs) os << v.law << " at " << v.where << ": " << v.detail << "\n";
  return os.str();
}

/// Checks identities and composition on every enumerated pair/triple.
template <class C, class D>
std::vector<Violation> check_functor(const Functor<C, D>& f, std::size_t bound) {
  std::vector<Violation> out;
  const auto objs = f.source.objects(bound);
  for (const auto& x : objs) {
    if (f.mor(f.source.identity(x)) != f.target.identity(f.obj(x)))
      out.push_back({"identity", show(x), f.name + " does not preserve the identity"});
  }
  for (const auto& x : objs)
    for (const auto& y : objs) {
      const auto xy = f.source.hom(x, y);
      for (const auto& m : xy) {
        const auto fm = f.mor(m);
        if (f.target.dom(fm) != f.obj(x) || f.target.cod(fm) != f.obj(y))
          out.push_back({"dom/cod", show(m), f.name + " image has wrong endpoints"});
      }
      for (const auto& z : objs)
        for (const auto& m : xy)
          for (const auto& n : f.source.hom(y, z)) {
            if (f.mor(f.source.compose(n, m)) !=
                f.target.compose(f.mor(n), f.mor(m)))
              out.push_back({"composition", show(n) + "∘" + show(m),
                             f.name + " does not preserve composition"});
          }
    }
  return out;
}

/// Naturality G(f)∘α_x = α_y∘F(f) and endpoint typing of every component.
template <class C, class D>
std::vector<Violation> check_natural(const NatTrans<C, D>& a, std::size_t bound) {
  std::vector<Violation> out;
  const auto& src = a.source.source;
  const auto& tgt = a.source.target;
  const auto objs = src.objects(bound);
  for (const auto& x : objs) {
    try {
      const auto c = a.at(x);
      if (tgt.dom(c) != a.source.obj(x) || tgt.cod(c) != a.target.obj(x))
        out.push_back({"typing", show(x),
                       a.name + " component is not a morphism " + a.source.name +
                           "(x) -> " + a.target.name + "(x)"});
    } catch (const std::exception& e) {
      out.push_back({"typing", show(x), a.name + " component undefined: " + e.what()});
    }
  }
  if (!out.empty()) return out;
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& m : src.hom(x, y)) {
        const auto lhs = tgt.compose(a.target.mor(m), a.at(x));
        const auto rhs = tgt.compose(a.at(y), a.source.mor(m));
        if (lhs != rhs)
          out.push_back({"naturality", show(m), a.name + ": " + show(lhs) + " != " + show(rhs)});
      }
  return out;
}

/// Naturality of the forward part plus two-sided inverse laws.
template <class C, class D>
std::vector<Violation> check_natural_iso(const NatIso<C, D>& a, std::size_t bound) {
  auto out = check_natural(a.forward, bound);
  if (!out.empty()) return out;
  const auto& tgt = a.forward.source.target;
  for (const auto& x : a.forward.source.source.objects(bound)) {
    try {
      const auto f = a.at(x);
      const auto g = a.inverse_at(x);
      if (tgt.compose(g, f) != tgt.identity(tgt.dom(f)) ||
          tgt.compose(f, g) != tgt.identity(tgt.cod(f)))
        out.push_back({"invertibility", show(x), a.name() + " component is not inverted"});
    } catch (const std::exception& e) {
      out.push_back({"invertibility", show(x), a.name() + ": " + e.what()});
    }
  }
  return out;
}

/// Both triangle identities, componentwise.
template <class C, class D>
std::vector<Violation> check_triangles(const Adjunction<C, D>& adj, std::size_t bound) {
  std::vector<Violation> out;
  const auto& c = adj.left.source;
  const auto& d = adj.right.source;
  for (const auto& y : d.objects(bound)) {
    // R ε_y ∘ η_{R y} = id_{R y}
    const auto ry = adj.right.obj(y);
    const auto lhs = c.compose(adj.right.mor(adj.counit.at(y)), adj.unit.at(ry));
    if (lhs != c.identity(ry))
      out.push_back({"triangle (Rε)(ηR)", show(y), show(lhs)});
  }
  for (const auto& x : c.objects(bound)) {
    // ε_{L x} ∘ L η_x = id_{L x}
    const auto lx = adj.left.obj(x);
    const auto lhs = d.compose(adj.counit.at(lx), adj.left.mor(adj.unit.at(x)));
    if (lhs != d.identity(lx))
      out.push_back({"triangle (εL)(Lη)", show(x), show(lhs)});
  }
  return out;
}

}  // namespace descent
