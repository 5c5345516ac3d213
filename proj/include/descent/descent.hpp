#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/category.hpp"
#include "descent/cosimplicial.hpp"
#include "descent/equivalence.hpp"
#include "descent/finset.hpp"
#include "descent/mutation.hpp"
#include "descent/slices.hpp"

namespace descent {

/// (W, rho) with rho: d1(W) -> d0(W) an isomorphism in C2.
template <class C>
struct DescentDatum {
  ObjectOf<C> w;
  MorphismOf<C> rho;
  MorphismOf<C> rho_inv;

  friend bool operator==(const DescentDatum& a, const DescentDatum& b) {
    return a.rho == b.rho && a.w == b.w;
  }
  friend bool operator<(const DescentDatum& a, const DescentDatum& b) {
    if (!(a.w == b.w)) return a.w < b.w;
    return a.rho < b.rho;
  }
};

template <class C>
struct DescMorphism {
  DescentDatum<C> source;
  DescentDatum<C> target;
  MorphismOf<C> m;

  friend bool operator==(const DescMorphism& a, const DescMorphism& b) {
    return a.m == b.m && a.source == b.source && a.target == b.target;
  }
  friend bool operator<(const DescMorphism& a, const DescMorphism& b) {
    if (!(a.m == b.m)) return a.m < b.m;
    if (!(a.source == b.source)) return a.source < b.source;
    return a.target < b.target;
  }
};

template <class C>
std::string show(const DescentDatum<C>& x) {
  return "(" + show(x.w) + ", ρ=" + show(x.rho) + ")";
}
template <class C>
std::string show(const DescMorphism<C>& f) {
  return show(f.m);
}

template <class C>
using DescCategory = Category<DescentDatum<C>, DescMorphism<C>>;

struct DatumCheck {
  bool ok = true;
  std::string equation;  // "typing", "associativity" or "identity"
  std::string lhs;
  std::string rhs;
};

/// Evaluates the cocycle and unit equations as morphism equalities.
template <class C>
DatumCheck is_descent_datum(const AugCosimplicial3<C>& D, const ObjectOf<C>& w,
                            const MorphismOf<C>& rho, bool check_cocycle = true) {
  DatumCheck r;
  try {
    if (!(D.c2.dom(rho) == D.d1.obj(w)) || !(D.c2.cod(rho) == D.d0.obj(w))) {
      r = {false, "typing", show(rho), "not a morphism d1(W) -> d0(W)"};
      return r;
    }
    if (check_cocycle) {
      const auto a = cocycle_sides(D, w, rho);
      if (a.lhs != a.rhs) return {false, "associativity", show(a.lhs), show(a.rhs)};
    }
    const auto u = unit_sides(D, w, rho);
    if (u.lhs != u.rhs) return {false, "identity", show(u.lhs), show(u.rhs)};
  } catch (const std::exception& e) {
    return {false, "typing", e.what(), ""};
  }
  return r;
}

template <class C>
bool is_desc_morphism(const AugCosimplicial3<C>& D, const DescentDatum<C>& x,
                      const DescentDatum<C>& y, const MorphismOf<C>& m) {
  return D.c2.compose(D.d0.mor(m), x.rho) == D.c2.compose(y.rho, D.d1.mor(m));
}

/// Every valid (W, rho) with W among the enumerated C1 objects, without
/// de-duplication, in enumeration order.
template <class C>
std::vector<DescentDatum<C>> raw_descent_data(const AugCosimplicial3<C>& D, std::size_t bound,
                                              Mutation mutation = Mutation::None) {
  std::vector<DescentDatum<C>> out;
  for (const auto& w : D.c1.objects(bound))
    for (const auto& [rho, inv] : isomorphisms(D.c2, D.d1.obj(w), D.d0.obj(w)))
      if (is_descent_datum(D, w, rho, mutation != Mutation::DroppedCocycle).ok)
        out.push_back({w, rho, inv});
  return out;
}

/// rho transported along an automorphism of W.
template <class C>
MorphismOf<C> transport(const AugCosimplicial3<C>& D, const MorphismOf<C>& rho,
                        const MorphismOf<C>& fwd, const MorphismOf<C>& inv) {
  return D.c2.compose(D.d0.mor(fwd), D.c2.compose(rho, D.d1.mor(inv)));
}

/// Keeps a datum only if its rho is least among all transports by
/// automorphisms of W.
template <class C>
std::vector<DescentDatum<C>> canonical_descent_data(const AugCosimplicial3<C>& D,
                                                    std::vector<DescentDatum<C>> raw) {
  std::vector<DescentDatum<C>> out;
  for (auto& x : raw) {
    bool least = true;
    for (const auto& [f, g] : isomorphisms(D.c1, x.w, x.w))
      if (transport(D, x.rho, f, g) < x.rho) {
        least = false;
        break;
      }
    if (least) out.push_back(std::move(x));
  }
  return out;
}

/// Descent data up to the bound (deduplicated by canonical form) and the
/// morphisms between them.
template <class C>
DescCategory<C> descent_category(const AugCosimplicial3<C>& D, Mutation mutation = Mutation::None) {
  using Datum = DescentDatum<C>;
  using Mor = DescMorphism<C>;
  auto dd = std::make_shared<const AugCosimplicial3<C>>(D);
  struct Memo {
    std::mutex mutex;
    std::map<std::size_t, std::vector<Datum>> by_bound;
  };
  auto memo = std::make_shared<Memo>();
  DescCategory<C> c;
  c.name = "Desc(" + D.name + ")";
  c.finite = D.c1.finite;
  c.objects = [dd, memo, mutation](std::size_t bound) {
    {
      std::lock_guard lock(memo->mutex);
      auto it = memo->by_bound.find(bound);
      if (it != memo->by_bound.end()) return it->second;
    }
    auto data = canonical_descent_data(*dd, raw_descent_data(*dd, bound, mutation));
    std::lock_guard lock(memo->mutex);
    return memo->by_bound.emplace(bound, std::move(data)).first->second;
  };
  c.hom = [dd, mutation](const Datum& x, const Datum& y) {
    std::vector<Mor> out;
    if (mutation == Mutation::NonNaturalRho) {
      for (auto& m : dd->c1.hom(x.w, y.w)) out.push_back({x, y, std::move(m)});
    } else if (dd->descent_hom) {
      for (auto& m : dd->descent_hom(x.w, x.rho, y.w, y.rho)) out.push_back({x, y, std::move(m)});
    } else {
      for (auto& m : dd->c1.hom(x.w, y.w))
        if (is_desc_morphism(*dd, x, y, m)) out.push_back({x, y, std::move(m)});
    }
    return out;
  };
  c.identity = [dd](const Datum& x) { return Mor{x, x, dd->c1.identity(x.w)}; };
  c.compose = [dd](const Mor& g, const Mor& f) {
    return Mor{f.source, g.target, dd->c1.compose(g.m, f.m)};
  };
  c.dom = [](const Mor& f) { return f.source; };
  c.cod = [](const Mor& f) { return f.target; };
  c.isos = [dd, mutation](const Datum& x, const Datum& y) {
    std::vector<std::pair<Mor, Mor>> out;
    for (const auto& [f, g] : isomorphisms(dd->c1, x.w, y.w))
      if (mutation == Mutation::NonNaturalRho || is_desc_morphism(*dd, x, y, f))
        out.emplace_back(Mor{x, y, f}, Mor{y, x, g});
    return out;
  };
  return c;
}

/// U: Desc -> C1.
template <class C>
Functor<DescCategory<C>, C> forget_descent(const DescCategory<C>& desc, const C& c1) {
  return {"U", desc, c1, [](const DescentDatum<C>& x) { return x.w; },
          [](const DescMorphism<C>& f) { return f.m; }};
}

/// Fails when the presentation equations do not hold at (d(B0), theta_B0).
template <class C>
void require_coherent(const AugCosimplicial3<C>& D, std::size_t bound) {
  if (!D.augmented()) throw std::invalid_argument("comparison needs an augmented diagram");
  for (const auto& b0 : D.c0->objects(bound)) {
    const auto w = D.d->obj(b0);
    std::optional<MorphismOf<C>> rho;
    try {
      rho = D.theta->at(b0);
    } catch (const std::exception& e) {
      throw std::domain_error("incoherent diagram: θ undefined at " + show(b0) + ": " + e.what());
    }
    const auto check = is_descent_datum(D, w, *rho);
    if (!check.ok)
      throw std::domain_error("incoherent diagram: " + check.equation + " fails at " + show(b0) +
                              (check.lhs.empty() ? "" : ": " + check.lhs) +
                              (check.rhs.empty() ? "" : " vs " + check.rhs));
  }
}

/// Φ: C0 -> Desc, B0 ↦ (d B0, theta_B0), f ↦ d f.
template <class C>
Functor<C, DescCategory<C>> comparison(const AugCosimplicial3<C>& D, const DescCategory<C>& desc,
                                       std::size_t bound) {
  require_coherent(D, bound);
  auto dd = std::make_shared<const AugCosimplicial3<C>>(D);
  auto obj = [dd](const ObjectOf<C>& x) {
    return DescentDatum<C>{dd->d->obj(x), dd->theta->at(x), dd->theta->inverse_at(x)};
  };
  return {"Φ", *D.c0, desc, obj, [dd, obj](const MorphismOf<C>& f) {
            return DescMorphism<C>{obj(dd->c0->dom(f)), obj(dd->c0->cod(f)), dd->d->mor(f)};
          }};
}

enum class DescentClass { Effective, Descent, Almost, NotAlmost };

inline std::string to_string(DescentClass c) {
  switch (c) {
    case DescentClass::Effective: return "Effective";
    case DescentClass::Descent: return "Descent";
    case DescentClass::Almost: return "Almost";
    case DescentClass::NotAlmost: return "NotAlmost";
  }
  return "?";
}

inline DescentClass to_descent_class(EquivalenceLevel l) {
  switch (l) {
    case EquivalenceLevel::Equivalence: return DescentClass::Effective;
    case EquivalenceLevel::FullyFaithfulOnly: return DescentClass::Descent;
    case EquivalenceLevel::FaithfulOnly: return DescentClass::Almost;
    case EquivalenceLevel::None: return DescentClass::NotAlmost;
  }
  return DescentClass::NotAlmost;
}

/// How far up the ladder a class reaches: NotAlmost 0 ... Effective 3.
inline int rank(DescentClass c) {
  switch (c) {
    case DescentClass::Effective: return 3;
    case DescentClass::Descent: return 2;
    case DescentClass::Almost: return 1;
    case DescentClass::NotAlmost: return 0;
  }
  return 0;
}

template <class C>
struct Classification {
  DescentClass level = DescentClass::NotAlmost;
  std::size_t bound = 0;
  EquivalenceResult<C, DescCategory<C>> detail;
};

/// Classifies the diagram by the strongest property of Φ within the bound.
template <class C>
Classification<C> classify(const AugCosimplicial3<C>& D, std::size_t bound,
                           const std::function<std::optional<ObjectOf<C>>(const DescentDatum<C>&)>& lift = {},
                           Mutation mutation = Mutation::None) {
  const auto desc = descent_category(D, mutation);
  const auto phi = comparison(D, desc, bound);
  Classification<C> r;
  r.bound = bound;
  r.detail = is_equivalence(phi, bound, lift);
  r.level = to_descent_class(r.detail.level);
  return r;
}

// ---------------------------------------------------------------------------
// Gluing along maps of finite sets.

using SliceDatum = DescentDatum<SliceCategory>;

struct DescendResult {
  SliceObject glued;   // over B
  Quotient quotient;   // W -> carrier of glued
  SliceMorphism iso;   // W -> d(glued), w ↦ ([w], q(w)); a descent isomorphism
  bool partial = false;
};

/// Glues W along rho: w is identified with its rho-image over every pair
/// (e, e'). The result lives over B; when p is not surjective it only covers
/// the image of p and `partial` is set.
inline DescendResult descend(const SliceDiagram& D, const FinFunction& p, const SliceDatum& x) {
  const auto check = is_descent_datum(D, x.w, x.rho);
  if (!check.ok) throw std::invalid_argument("descend: not a descent datum (" + check.equation + ")");
  const auto& w = x.w;
  const auto e2 = pullback(p, p);
  const auto over_first = pullback(w, e2.pr1);   // d1 W
  const auto over_second = pullback(w, e2.pr2);  // d0 W
  if (!(over_first.pr2 == x.rho.source) || !(over_second.pr2 == x.rho.target))
    throw std::invalid_argument("descend: rho is not a map d1(W) -> d0(W) for this p");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < over_first.object.size(); ++j)
    pairs.emplace_back(over_first.pr1.map[j], over_second.pr1.map[x.rho.map[j]]);
  DescendResult r;
  r.quotient = quotient(w.dom, pairs);
  std::vector<std::size_t> base(r.quotient.object.size());
  for (std::size_t i = 0; i < w.dom.size(); ++i) base[r.quotient.proj.map[i]] = p.map[w.map[i]];
  r.glued = {r.quotient.object, p.cod, std::move(base)};
  r.partial = !is_surjective(p);
  const auto back = pullback(r.glued, p);
  std::vector<std::size_t> m(w.dom.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = back.at(r.quotient.proj.map[i], w.map[i]);
  r.iso = {w, back.pr2, std::move(m)};
  return r;
}

/// descend(Φ X) -> X, [(x, e)] ↦ x, when that is a well defined bijection.
inline std::optional<SliceMorphism> descend_counit(const FinFunction& p, const SliceObject& x,
                                                   const DescendResult& g) {
  const auto pb = pullback(x, p);
  std::vector<std::size_t> m(g.glued.dom.size(), Pullback::npos);
  for (std::size_t k = 0; k < pb.object.size(); ++k) {
    auto& slot = m[g.quotient.proj.map[k]];
    if (slot != Pullback::npos && slot != pb.pr1.map[k]) return std::nullopt;
    slot = pb.pr1.map[k];
  }
  SliceMorphism f{g.glued, x, std::move(m)};
  if (!is_slice_morphism(f) || !is_bijective(f.as_function())) return std::nullopt;
  return f;
}

/// Classification of p: E -> B through its diagram D_p, with essential
/// surjectivity decided by gluing.
inline Classification<SliceCategory> classify(const FinFunction& p, std::size_t bound,
                                              Mutation mutation = Mutation::None) {
  const auto D = basic_fibration(p, mutation);
  std::function<std::optional<SliceObject>(const SliceDatum&)> lift;
  if (is_surjective(p))
    lift = [D, p](const SliceDatum& x) -> std::optional<SliceObject> {
      if (!is_descent_datum(D, x.w, x.rho).ok) return std::nullopt;
      return descend(D, p, x).glued;
    };
  return classify(D, bound, lift, mutation);
}

}  // namespace descent
