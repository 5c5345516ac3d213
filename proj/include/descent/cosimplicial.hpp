#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/category.hpp"
#include "descent/finset.hpp"
#include "descent/mutation.hpp"
#include "descent/slices.hpp"

namespace descent {

/// Truncated augmented pseudo-cosimplicial diagram
///
///   C0 --d--> C1 ==d0,d1==> C2 ==del0,del1,del2==> C3,   s0: C2 -> C1
///
/// with constraint isomorphisms
///   sigma01: del1∘d0 ⇒ del0∘d0    sigma02: del2∘d0 ⇒ del0∘d1
///   sigma12: del2∘d1 ⇒ del1∘d1    n0: s0∘d0 ⇒ Id    n1: s0∘d1 ⇒ Id
///   theta:   d1∘d ⇒ d0∘d          (augmented only)
template <class C>
struct AugCosimplicial3 {
  using category_type = C;
  using O = ObjectOf<C>;
  using M = MorphismOf<C>;
  using F = Functor<C, C>;
  using Iso = NatIso<C, C>;

  std::string name;
  std::optional<C> c0;
  C c1, c2, c3;
  std::optional<F> d;
  F d0, d1, s0, del0, del1, del2;
  Iso sigma01, sigma02, sigma12, n0, n1;
  std::optional<Iso> theta;

  // Optional accelerator: every m: w -> x in C1 with d0(m)∘rho_w = rho_x∘d1(m).
  std::function<std::vector<M>(const O& w, const M& rho_w, const O& x, const M& rho_x)> descent_hom;

  bool augmented() const { return c0.has_value() && d.has_value() && theta.has_value(); }
};

template <class C>
struct EquationSides {
  MorphismOf<C> lhs;
  MorphismOf<C> rhs;
};

/// del0(rho) ∘ sigma02_W ∘ del2(rho) ∘ sigma12_W⁻¹  vs  sigma01_W ∘ del1(rho).
template <class C>
EquationSides<C> cocycle_sides(const AugCosimplicial3<C>& D, const ObjectOf<C>& w,
                               const MorphismOf<C>& rho) {
  const auto& c3 = D.c3;
  auto lhs = c3.compose(D.del0.mor(rho),
                        c3.compose(D.sigma02.at(w),
                                   c3.compose(D.del2.mor(rho), D.sigma12.inverse_at(w))));
  auto rhs = c3.compose(D.sigma01.at(w), D.del1.mor(rho));
  return {std::move(lhs), std::move(rhs)};
}

/// n0_W ∘ s0(rho)  vs  n1_W.
template <class C>
EquationSides<C> unit_sides(const AugCosimplicial3<C>& D, const ObjectOf<C>& w,
                            const MorphismOf<C>& rho) {
  return {D.c1.compose(D.n0.at(w), D.s0.mor(rho)), D.n1.at(w)};
}

struct CoherenceFailure {
  std::string equation;
  std::string object;
  std::string lhs;
  std::string rhs;
};

struct CoherenceReport {
  std::vector<CoherenceFailure> failures;
  std::size_t objects_checked = 0;
  std::size_t bound = 0;
  bool within_bound = true;

  bool ok() const { return failures.empty(); }
};

namespace detail {

template <class C>
void collect_iso(CoherenceReport& r, const NatIso<C, C>& a, std::size_t bound) {
  for (const auto& v : check_natural_iso(a, bound))
    r.failures.push_back({v.law + " of " + a.name(), v.where, v.detail, ""});
}

}  // namespace detail

/// Both presentation equations at (d(B0), theta_B0) for every enumerated B0,
/// plus naturality and invertibility of every constraint cell.
template <class C>
CoherenceReport validate_coherence(const AugCosimplicial3<C>& D, std::size_t bound) {
  CoherenceReport r;
  r.bound = bound;
  r.within_bound = !D.c1.finite || (D.c0 && !D.c0->finite);
  detail::collect_iso(r, D.sigma01, bound);
  detail::collect_iso(r, D.sigma02, bound);
  detail::collect_iso(r, D.sigma12, bound);
  detail::collect_iso(r, D.n0, bound);
  detail::collect_iso(r, D.n1, bound);
  if (!D.augmented()) return r;
  detail::collect_iso(r, *D.theta, bound);
  if (!r.failures.empty()) return r;
  for (const auto& b0 : D.c0->objects(bound)) {
    ++r.objects_checked;
    const auto w = D.d->obj(b0);
    const auto rho = D.theta->at(b0);
    try {
      const auto a = cocycle_sides(D, w, rho);
      if (a.lhs != a.rhs) r.failures.push_back({"associativity", show(b0), show(a.lhs), show(a.rhs)});
      const auto u = unit_sides(D, w, rho);
      if (u.lhs != u.rhs) r.failures.push_back({"identity", show(b0), show(u.lhs), show(u.rhs)});
    } catch (const std::exception& e) {
      r.failures.push_back({"associativity/identity", show(b0), e.what(), ""});
    }
  }
  return r;
}

/// Same functor with its source and target categories replaced (used when
/// restricting to full subcategories).
template <class C>
Functor<C, C> retarget(const Functor<C, C>& f, const C& src, const C& tgt) {
  return {f.name, src, tgt, f.on_object, f.on_morphism};
}

template <class C>
NatIso<C, C> retarget(const NatIso<C, C>& a, const Functor<C, C>& s, const Functor<C, C>& t) {
  return {{a.forward.name, s, t, a.forward.component}, a.inverse_component};
}

template <class C>
C full_subcategory(const C& c, std::function<bool(const ObjectOf<C>&)> keep, std::string name) {
  C s = c;
  s.name = std::move(name);
  s.objects = [objects = c.objects, keep](std::size_t bound) {
    std::vector<ObjectOf<C>> out;
    for (auto& x : objects(bound))
      if (keep(x)) out.push_back(std::move(x));
    return out;
  };
  return s;
}

/// Levelwise full subdiagram. Every predicate must be stable under the face
/// and degeneracy functors (checked on enumerated objects by the caller).
template <class C>
struct LevelPredicates {
  std::function<bool(const ObjectOf<C>&)> level0, level1, level2, level3;
};

template <class C>
AugCosimplicial3<C> restrict_diagram(const AugCosimplicial3<C>& D, const LevelPredicates<C>& keep,
                                     std::string name) {
  auto all = [](const ObjectOf<C>&) { return true; };
  auto pick = [&](const auto& f) -> std::function<bool(const ObjectOf<C>&)> {
    if (f) return f;
    return all;
  };
  AugCosimplicial3<C> R;
  R.name = std::move(name);
  if (D.c0) R.c0 = full_subcategory(*D.c0, pick(keep.level0), D.c0->name + "'");
  R.c1 = full_subcategory(D.c1, pick(keep.level1), D.c1.name + "'");
  R.c2 = full_subcategory(D.c2, pick(keep.level2), D.c2.name + "'");
  R.c3 = full_subcategory(D.c3, pick(keep.level3), D.c3.name + "'");
  if (D.d) R.d = retarget(*D.d, *R.c0, R.c1);
  R.d0 = retarget(D.d0, R.c1, R.c2);
  R.d1 = retarget(D.d1, R.c1, R.c2);
  R.s0 = retarget(D.s0, R.c2, R.c1);
  R.del0 = retarget(D.del0, R.c2, R.c3);
  R.del1 = retarget(D.del1, R.c2, R.c3);
  R.del2 = retarget(D.del2, R.c2, R.c3);
  R.sigma01 = retarget(D.sigma01, compose(R.del1, R.d0), compose(R.del0, R.d0));
  R.sigma02 = retarget(D.sigma02, compose(R.del2, R.d0), compose(R.del0, R.d1));
  R.sigma12 = retarget(D.sigma12, compose(R.del2, R.d1), compose(R.del1, R.d1));
  R.n0 = retarget(D.n0, compose(R.s0, R.d0), identity_functor(R.c1));
  R.n1 = retarget(D.n1, compose(R.s0, R.d1), identity_functor(R.c1));
  if (D.theta) R.theta = retarget(*D.theta, compose(R.d1, *R.d), compose(R.d0, *R.d));
  R.descent_hom = D.descent_hom;
  return R;
}

using SliceDiagram = AugCosimplicial3<SliceCategory>;

/// The base sets of the diagram of a map p: E -> B.
struct KernelData {
  FinFunction p;
  Pullback e2;        // pairs (e, e') with p(e) = p(e')
  Pullback e3;        // triples ((e, e'), e'')
  FinFunction omit0;  // E3 -> E2, (e', e'')
  FinFunction omit1;  // (e, e'')
  FinFunction omit2;  // (e, e')
  FinFunction diagonal;
};

inline KernelData kernel_data(const FinFunction& p) {
  KernelData k{p, pullback(p, p), {}, {}, {}, {}, {}};
  k.e3 = pullback(compose(p, k.e2.pr2), p);
  const auto& t = k.e3.object;
  std::vector<std::size_t> o0(t.size()), o1(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto pair = k.e3.pr1.map[i];
    const auto e = k.e2.pr1.map[pair], e1 = k.e2.pr2.map[pair], e2 = k.e3.pr2.map[i];
    o0[i] = k.e2.at(e1, e2);
    o1[i] = k.e2.at(e, e2);
  }
  k.omit0 = {t, k.e2.object, std::move(o0)};
  k.omit1 = {t, k.e2.object, std::move(o1)};
  k.omit2 = k.e3.pr1;
  std::vector<std::size_t> diag(p.dom.size());
  for (std::size_t e = 0; e < diag.size(); ++e) diag[e] = k.e2.at(e, e);
  k.diagonal = {p.dom, k.e2.object, std::move(diag)};
  return k;
}

namespace detail {

// An iterated pullback of w together with its projection back to w.
struct Pulled {
  SliceObject object;
  std::vector<std::size_t> to_base;
};

inline Pulled pull_through(const std::vector<ChangeOfBase>& innermost_first, const SliceObject& w) {
  Pulled r{w, identity_function(w.dom).map};
  for (const auto& f : innermost_first) {
    const auto& proj = f.projection(r.object);
    std::vector<std::size_t> next(proj.size());
    for (std::size_t i = 0; i < proj.size(); ++i) next[i] = r.to_base[proj[i]];
    r.object = f.obj(r.object);
    r.to_base = std::move(next);
  }
  return r;
}

// Canonical iso between two iterated pullbacks of the same object.
inline NatIso<SliceCategory, SliceCategory> comparison_iso(
    std::string name, const Functor<SliceCategory, SliceCategory>& source,
    const Functor<SliceCategory, SliceCategory>& target, std::vector<ChangeOfBase> from,
    std::vector<ChangeOfBase> to, bool swap = false) {
  auto build = [from, to](const SliceObject& w, bool forward) {
    const auto a = pull_through(forward ? from : to, w);
    const auto b = pull_through(forward ? to : from, w);
    return canonical_comparison(a.object, a.to_base, b.object, b.to_base, w.dom.size());
  };
  std::function<SliceMorphism(const SliceObject&)> fwd = [build](const SliceObject& w) { return build(w, true); };
  std::function<SliceMorphism(const SliceObject&)> bwd = [build](const SliceObject& w) { return build(w, false); };
  if (swap) std::swap(fwd, bwd);
  return {{std::move(name), source, target, fwd}, bwd};
}

// Propagates m from one representative fiber per class of the kernel pair,
// then keeps the candidates that commute with rho everywhere.
inline std::vector<SliceMorphism> slice_descent_hom(const KernelData& k, const ChangeOfBase& d0,
                                                    const ChangeOfBase& d1, const SliceObject& w,
                                                    const SliceMorphism& rho_w, const SliceObject& x,
                                                    const SliceMorphism& rho_x) {
  std::vector<SliceMorphism> out;
  const auto n_e = k.p.dom.size();
  const auto& a = d1.along().map;  // rho_k : W_{a(k)} -> W_{b(k)}
  const auto& b = d0.along().map;
  const auto pw1 = d1.pullback_of(w), pw0 = d0.pullback_of(w);
  const auto px1 = d1.pullback_of(x), px0 = d0.pullback_of(x);
  auto apply = [](const Pullback& src, const Pullback& dst, const SliceMorphism& rho,
                  std::size_t elem, std::size_t kk) {
    return dst.pr1.map[rho.map[src.at(elem, kk)]];
  };
  const auto fw = fibers(w), fx = fibers(x);
  // representative of each fiber of p and the pair leading to each member
  std::vector<std::size_t> rep(n_e), via(n_e, Pullback::npos);
  for (std::size_t e = 0; e < n_e; ++e) {
    rep[e] = e;
    for (std::size_t f = 0; f < e; ++f)
      if (k.p.map[f] == k.p.map[e]) {
        rep[e] = f;
        break;
      }
    for (std::size_t kk = 0; kk < k.e2.object.size(); ++kk)
      if (a[kk] == rep[e] && b[kk] == e) via[e] = kk;
    if (via[e] == Pullback::npos) return out;  // faces are not the kernel-pair projections
  }
  std::vector<std::size_t> reps;
  for (std::size_t e = 0; e < n_e; ++e)
    if (rep[e] == e) reps.push_back(e);
  std::vector<const std::vector<std::size_t>*> choices;
  std::vector<std::size_t> slots;
  for (auto r : reps)
    for (auto wi : fw[r]) {
      choices.push_back(&fx[r]);
      slots.push_back(wi);
    }
  auto visit = [&](const std::vector<std::size_t>& v) {
    std::vector<std::size_t> m(w.dom.size(), Pullback::npos);
    for (std::size_t i = 0; i < slots.size(); ++i) m[slots[i]] = v[i];
    for (std::size_t e = 0; e < n_e; ++e) {
      if (rep[e] == e) continue;
      const auto kk = via[e];
      // m_e = rho^X_k ∘ m_rep ∘ (rho^W_k)⁻¹
      for (auto wi : fw[rep[e]]) {
        const auto image = apply(*pw1, *pw0, rho_w, wi, kk);
        m[image] = apply(*px1, *px0, rho_x, m[wi], kk);
      }
    }
    for (auto mi : m)
      if (mi == Pullback::npos) return;
    for (std::size_t kk = 0; kk < k.e2.object.size(); ++kk)
      for (auto wi : fw[a[kk]])
        if (m[apply(*pw1, *pw0, rho_w, wi, kk)] != apply(*px1, *px0, rho_x, m[wi], kk)) return;
    out.push_back({w, x, std::move(m)});
  };
  if (choices.empty())
    visit({});
  else
    detail::odometer(choices, visit);
  return out;
}

}  // namespace detail

/// The diagram D_p of slices over the kernel pair of p and its triple
/// version, with change of base as faces and degeneracy and the canonical
/// comparisons of iterated chosen pullbacks as constraints.
inline SliceDiagram basic_fibration(const FinFunction& p, Mutation mutation = Mutation::None) {
  const auto k = kernel_data(p);
  ChangeOfBase d(p);
  ChangeOfBase d0(k.e2.pr2), d1(k.e2.pr1);
  if (mutation == Mutation::WrongFaceConvention) std::swap(d0, d1);
  ChangeOfBase s0(k.diagonal), del0(k.omit0), del1(k.omit1), del2(k.omit2);

  SliceDiagram D;
  D.name = "D(p)";
  D.c0 = slice(p.cod);
  D.c1 = slice(p.dom);
  D.c2 = slice(k.e2.object);
  D.c3 = slice(k.e3.object);
  D.d = d.functor("d");
  D.d0 = d0.functor("d0");
  D.d1 = d1.functor("d1");
  D.s0 = s0.functor("s0");
  D.del0 = del0.functor("del0");
  D.del1 = del1.functor("del1");
  D.del2 = del2.functor("del2");

  const std::vector<ChangeOfBase> fn = {d, d0, d1, s0, del0, del1, del2};
  enum { D_ = 0, D0 = 1, D1 = 2, S0 = 3, DEL0 = 4, DEL1 = 5, DEL2 = 6 };
  auto cmp = [&](std::string name, const Functor<SliceCategory, SliceCategory>& src,
                 const Functor<SliceCategory, SliceCategory>& tgt, std::vector<int> from,
                 std::vector<int> to, bool swap = false) {
    std::vector<ChangeOfBase> f, t;
    for (int i : from) f.push_back(fn[static_cast<std::size_t>(i)]);
    for (int i : to) t.push_back(fn[static_cast<std::size_t>(i)]);
    return detail::comparison_iso(std::move(name), src, tgt, f, t, swap);
  };
  D.sigma01 = cmp("σ01", compose(D.del1, D.d0), compose(D.del0, D.d0), {D0, DEL1}, {D0, DEL0});
  D.sigma02 = cmp("σ02", compose(D.del2, D.d0), compose(D.del0, D.d1), {D0, DEL2}, {D1, DEL0});
  D.sigma12 = cmp("σ12", compose(D.del2, D.d1), compose(D.del1, D.d1), {D1, DEL2}, {D1, DEL1});
  D.n0 = cmp("n0", compose(D.s0, D.d0), identity_functor(D.c1), {D0, S0}, {});
  D.n1 = cmp("n1", compose(D.s0, D.d1), identity_functor(D.c1), {D1, S0}, {});
  D.theta = cmp("θ", compose(D.d1, *D.d), compose(D.d0, *D.d), {D_, D1}, {D_, D0},
                mutation == Mutation::InvertedTheta);
  D.descent_hom = [k, d0, d1](const SliceObject& w, const SliceMorphism& rw, const SliceObject& x,
                              const SliceMorphism& rx) {
    return detail::slice_descent_hom(k, d0, d1, w, rw, x, rx);
  };
  return D;
}

}  // namespace descent
