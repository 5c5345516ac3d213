#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "descent/bilimits.hpp"
#include "descent/cosimplicial.hpp"
#include "descent/descent.hpp"
#include "descent/monadic.hpp"
#include "descent/parallel.hpp"
#include "descent/table_diagrams.hpp"

namespace descent {

// ---------------------------------------------------------------------------
// Full subdiagrams of D_p

/// A full subdiagram of D_p: objects whose fibers all have sizes in
/// `fiber_sizes` (at every level), minus the level-0 iso class with fiber
/// sizes `deleted`.
struct SliceRestriction {
  std::optional<std::set<std::size_t>> fiber_sizes;
  std::optional<std::vector<std::size_t>> deleted;

  bool keeps(const SliceObject& x, bool level0) const {
    const auto sizes = descent::fiber_sizes(x);
    if (fiber_sizes)
      for (auto s : sizes)
        if (!fiber_sizes->count(s)) return false;
    if (level0 && deleted && sizes == *deleted) return false;
    return true;
  }
  bool trivial() const { return !fiber_sizes && !deleted; }
};

inline std::string describe(const SliceRestriction& r) {
  if (r.trivial()) return "all";
  std::string s;
  if (r.fiber_sizes) {
    s += "fibers in {";
    bool first = true;
    for (auto k : *r.fiber_sizes) {
      s += (first ? "" : ",") + std::to_string(k);
      first = false;
    }
    s += "}";
  }
  if (r.deleted) {
    if (!s.empty()) s += ", ";
    s += "without class (";
    for (std::size_t i = 0; i < r.deleted->size(); ++i) s += (i ? "," : "") + std::to_string((*r.deleted)[i]);
    s += ")";
  }
  return s;
}

inline SliceDiagram restricted_fibration(const FinFunction& p, const SliceRestriction& r,
                                         Mutation mutation = Mutation::None) {
  const auto D = basic_fibration(p, mutation);
  if (r.trivial()) return D;
  LevelPredicates<SliceCategory> keep;
  keep.level0 = [r](const SliceObject& x) { return r.keeps(x, true); };
  if (r.fiber_sizes) {
    auto any_level = [r](const SliceObject& x) { return r.keeps(x, false); };
    keep.level1 = keep.level2 = keep.level3 = any_level;
  }
  return restrict_diagram(D, keep, "D(p)|" + describe(r));
}

/// Proposes gluing as the preimage of a datum, when the glued object is
/// kept at level 0.
inline std::function<std::optional<SliceObject>(const SliceDatum&)> gluing_lift(
    const SliceDiagram& D, const FinFunction& p, std::function<bool(const SliceObject&)> keep0 = {}) {
  if (!is_surjective(p)) return {};
  return [D, p, keep0](const SliceDatum& x) -> std::optional<SliceObject> {
    if (!is_descent_datum(D, x.w, x.rho).ok) return std::nullopt;
    auto g = descend(D, p, x).glued;
    if (keep0 && !keep0(g)) return std::nullopt;
    return g;
  };
}

/// Inclusion of a full subcategory as a functor.
template <class C>
Functor<C, C> inclusion_functor(const C& sub, const C& whole) {
  return {"incl", sub, whole, [](const ObjectOf<C>& x) { return x; },
          [](const MorphismOf<C>& m) { return m; }};
}

// ---------------------------------------------------------------------------
// Levelwise pseudopullbacks of diagrams

/// A levelwise functor between diagrams commuting with every face,
/// degeneracy and constraint on the nose.
template <class C>
struct StrictMap {
  Functor<C, C> at0, at1, at2, at3;
};

template <class C>
using PseudopullbackDiagram = AugCosimplicial3<BiCategory<C, C, C>>;

namespace detail {

template <class C>
Functor<BiCategory<C, C, C>, BiCategory<C, C, C>> lift_face(
    std::string name, const BiCategory<C, C, C>& src, const BiCategory<C, C, C>& tgt,
    const Functor<C, C>& fa, const Functor<C, C>& fo, const Functor<C, C>& fe) {
  using Obj = BiObject<C, C, C>;
  using Mor = BiMorphism<C, C, C>;
  auto obj = [fa, fo, fe](const Obj& x) { return Obj{fa.obj(x.c), fe.obj(x.d), fo.mor(x.phi), fo.mor(x.phi_inv)}; };
  return {std::move(name), src, tgt, obj, [obj, fa, fe](const Mor& m) {
            return Mor{obj(m.source), obj(m.target), fa.mor(m.u), fe.mor(m.v)};
          }};
}

template <class C>
NatIso<BiCategory<C, C, C>, BiCategory<C, C, C>> lift_constraint(
    const Functor<BiCategory<C, C, C>, BiCategory<C, C, C>>& s,
    const Functor<BiCategory<C, C, C>, BiCategory<C, C, C>>& t, const NatIso<C, C>& ia,
    const NatIso<C, C>& ie) {
  using Obj = BiObject<C, C, C>;
  using Mor = BiMorphism<C, C, C>;
  return {{ia.name(), s, t, [s, t, ia, ie](const Obj& x) { return Mor{s.obj(x), t.obj(x), ia.at(x.c), ie.at(x.d)}; }},
          [s, t, ia, ie](const Obj& x) {
            return Mor{t.obj(x), s.obj(x), ia.inverse_at(x.c), ie.inverse_at(x.d)};
          }};
}

}  // namespace detail

/// X_n = pseudopullback(alpha_n, beta_n) with faces and constraints acting
/// componentwise. Requires alpha and beta to be strict maps.
template <class C>
PseudopullbackDiagram<C> pseudopullback_diagram(const AugCosimplicial3<C>& a, const AugCosimplicial3<C>& o,
                                                const AugCosimplicial3<C>& e, const StrictMap<C>& alpha,
                                                const StrictMap<C>& beta) {
  if (!a.augmented() || !o.augmented() || !e.augmented())
    throw std::invalid_argument("pseudopullback_diagram: augmented diagrams expected");
  const auto x0 = pseudopullback(alpha.at0, beta.at0);
  const auto x1 = pseudopullback(alpha.at1, beta.at1);
  const auto x2 = pseudopullback(alpha.at2, beta.at2);
  const auto x3 = pseudopullback(alpha.at3, beta.at3);
  PseudopullbackDiagram<C> X;
  X.name = "PsPb(" + a.name + ", " + e.name + ")";
  X.c0 = x0.category;
  X.c1 = x1.category;
  X.c2 = x2.category;
  X.c3 = x3.category;
  using detail::lift_face;
  X.d = lift_face("d", *X.c0, X.c1, *a.d, *o.d, *e.d);
  X.d0 = lift_face("d0", X.c1, X.c2, a.d0, o.d0, e.d0);
  X.d1 = lift_face("d1", X.c1, X.c2, a.d1, o.d1, e.d1);
  X.s0 = lift_face("s0", X.c2, X.c1, a.s0, o.s0, e.s0);
  X.del0 = lift_face("del0", X.c2, X.c3, a.del0, o.del0, e.del0);
  X.del1 = lift_face("del1", X.c2, X.c3, a.del1, o.del1, e.del1);
  X.del2 = lift_face("del2", X.c2, X.c3, a.del2, o.del2, e.del2);
  using detail::lift_constraint;
  X.sigma01 = lift_constraint(compose(X.del1, X.d0), compose(X.del0, X.d0), a.sigma01, e.sigma01);
  X.sigma02 = lift_constraint(compose(X.del2, X.d0), compose(X.del0, X.d1), a.sigma02, e.sigma02);
  X.sigma12 = lift_constraint(compose(X.del2, X.d1), compose(X.del1, X.d1), a.sigma12, e.sigma12);
  X.n0 = lift_constraint(compose(X.s0, X.d0), identity_functor(X.c1), a.n0, e.n0);
  X.n1 = lift_constraint(compose(X.s0, X.d1), identity_functor(X.c1), a.n1, e.n1);
  X.theta = lift_constraint(compose(X.d1, *X.d), compose(X.d0, *X.d), *a.theta, *e.theta);
  if (a.descent_hom && e.descent_hom) {
    const auto o1 = o.c1;
    const auto al = alpha.at1, be = beta.at1;
    X.descent_hom = [a, e, o1, al, be](const BiObject<C, C, C>& w, const BiMorphism<C, C, C>& rw,
                                       const BiObject<C, C, C>& x, const BiMorphism<C, C, C>& rx) {
      std::vector<BiMorphism<C, C, C>> out;
      const auto us = a.descent_hom(w.c, rw.u, x.c, rx.u);
      if (us.empty()) return out;
      const auto vs = e.descent_hom(w.d, rw.v, x.d, rx.v);
      for (const auto& u : us)
        for (const auto& v : vs)
          if (o1.compose(be.mor(v), w.phi) == o1.compose(x.phi, al.mor(u))) out.push_back({w, x, u, v});
      return out;
    };
  }
  return X;
}

// ---------------------------------------------------------------------------
// Instances

/// A map p: E -> B. Also drives the effective, non-surjective and coherence
/// suites.
struct BRInstance {
  FinFunction p;
};

struct SubdiagramEmbedding {
  FinFunction p;
  SliceRestriction restriction;
};

/// alpha_n = pi_n^*: D_p -> D_{p×K}, pulling back along the projections that
/// forget K. Faithful; not full once |K| >= 2.
struct ProductEmbedding {
  FinFunction p;
  std::size_t k = 1;
};

/// A strict table diagram together with its subcategory lists; the check
/// result for the whole diagram is computed once and shared.
struct TableSweepEntry {
  TableDiagram diagram;
  std::array<std::vector<SubcategoryChoice>, 4> subcategories;
  mutable std::once_flag once;
  mutable std::optional<DescentClass> level;

  explicit TableSweepEntry(TableDiagram t) : diagram(std::move(t)) {
    subcategories = {descent::subcategories(diagram.c0), descent::subcategories(diagram.c1),
                     descent::subcategories(diagram.c2), descent::subcategories(diagram.c3)};
  }
  DescentClass classification() const {
    std::call_once(once, [this] { level = classify(to_diagram(diagram), 0).level; });
    return *level;
  }
  SubDiagramChoice choice(const std::array<std::size_t, 4>& pick) const {
    return {subcategories[0][pick[0]], subcategories[1][pick[1]], subcategories[2][pick[2]],
            subcategories[3][pick[3]]};
  }
};

struct TableEmbedding {
  std::shared_ptr<const TableSweepEntry> whole;
  std::array<std::size_t, 4> pick{};
};

struct EmbeddingInstance {
  std::variant<SubdiagramEmbedding, ProductEmbedding, TableEmbedding> shape;
};

struct GaloisInstance {
  FinFunction p;
  SliceRestriction restriction;
};

/// The levelwise pseudopullback of D_p|left -> D_p <- D_p|right.
struct PseudoPullbackInstance {
  FinFunction p;
  SliceRestriction left, right;
  std::string label;
};

/// A cospan X -h-> Z <-g- Y of finite sets, completed by its chosen pullback.
struct SquareInstance {
  FinFunction h, g;
};

struct MutationInstance {
  Mutation mutation = Mutation::None;
};

using Instance = std::variant<BRInstance, EmbeddingInstance, GaloisInstance, PseudoPullbackInstance,
                              SquareInstance, MutationInstance>;

inline std::string show_map(const FinFunction& p) {
  return std::to_string(p.dom.size()) + "→" + std::to_string(p.cod.size()) + " " + show(p);
}

inline std::string describe(const Instance& inst) {
  struct V {
    std::string operator()(const BRInstance& i) const { return "p = " + show_map(i.p); }
    std::string operator()(const EmbeddingInstance& i) const {
      struct S {
        std::string operator()(const SubdiagramEmbedding& s) const {
          return "D(p)|" + describe(s.restriction) + " ⊆ D(p), p = " + show_map(s.p);
        }
        std::string operator()(const ProductEmbedding& s) const {
          return "D(p) → D(p×K), |K| = " + std::to_string(s.k) + ", p = " + show_map(s.p);
        }
        std::string operator()(const TableEmbedding& s) const {
          const auto c = s.whole->choice(s.pick);
          auto set = [](const std::set<std::string>& xs) {
            std::string r = "{";
            bool first = true;
            for (const auto& x : xs) {
              r += (first ? "" : ",") + x;
              first = false;
            }
            return r + "}";
          };
          return "sub-diagram of " + s.whole->diagram.name + " on objects " + set(c.c0.objects) + " " +
                 set(c.c1.objects) + " " + set(c.c2.objects) + " " + set(c.c3.objects) + ", morphisms " +
                 set(c.c0.morphisms) + " " + set(c.c1.morphisms) + " " + set(c.c2.morphisms) + " " +
                 set(c.c3.morphisms);
        }
      };
      return std::visit(S{}, i.shape);
    }
    std::string operator()(const GaloisInstance& i) const {
      return "D(p)|" + describe(i.restriction) + " ⊆ D(p), p = " + show_map(i.p);
    }
    std::string operator()(const PseudoPullbackInstance& i) const {
      return (i.label.empty() ? "" : i.label + ": ") + "D(p)|" + describe(i.left) + " → D(p) ← D(p)|" +
             describe(i.right) + ", p = " + show_map(i.p);
    }
    std::string operator()(const SquareInstance& i) const {
      return "h = " + show_map(i.h) + ", g = " + show_map(i.g);
    }
    std::string operator()(const MutationInstance& i) const { return to_string(i.mutation); }
  };
  return std::visit(V{}, inst);
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Verdict { Pass, Fail, Skip };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

struct CheckResult {
  Verdict verdict = Verdict::Skip;
  std::string instance;
  std::string detail;
  std::vector<std::string> witnesses;
  double seconds = 0;
};

namespace detail {

inline DescentClass cached_class(const FinFunction& p, std::size_t bound) {
  static std::mutex mutex;
  static std::map<std::pair<FinFunction, std::size_t>, DescentClass> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({p, bound});
    if (it != cache.end()) return it->second;
  }
  const auto level = classify(p, bound).level;
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{p, bound}, level);
  return level;
}

// Bound for the direct faithfulness and fullness checks on levels 2 and 3,
// whose base sets are squares and cubes of E.
constexpr std::size_t upper_level_bound = 1;

template <class C>
struct LevelFlags {
  bool faithful = true;
  bool full = true;
  std::string detail;
};

template <class C>
void add_level(LevelFlags<C>& flags, const Functor<C, C>& f, std::size_t bound, int level) {
  const auto faithful = is_faithful(f, bound);
  if (!faithful.holds) {
    flags.faithful = false;
    flags.detail += "α" + std::to_string(level) + " not faithful; ";
  }
  const auto full = is_full(f, bound);
  if (!full.holds) {
    flags.full = false;
    flags.detail += "α" + std::to_string(level) + " not full; ";
  }
}

inline std::string level_name(DescentClass c) { return to_string(c); }

inline CheckResult embedding_verdict(DescentClass a, DescentClass b, bool faithful, bool full,
                                     const std::string& flags) {
  CheckResult r;
  r.detail = "A " + level_name(a) + ", B " + level_name(b) + (flags.empty() ? "" : "; " + flags);
  const bool faithful_clause = faithful && rank(b) >= rank(DescentClass::Almost);
  const bool full_clause = faithful && full && rank(b) >= rank(DescentClass::Descent);
  if (!faithful_clause && !full_clause) {
    r.verdict = Verdict::Skip;
    r.detail += faithful ? "; skipped: B is not almost descent" : "; skipped: α is not objectwise faithful";
    return r;
  }
  r.verdict = Verdict::Pass;
  if (faithful_clause && rank(a) < rank(DescentClass::Almost)) {
    r.verdict = Verdict::Fail;
    r.detail += "; faithful α and almost-descent B but A is not almost descent";
  }
  if (full_clause && rank(a) < rank(DescentClass::Descent)) {
    r.verdict = Verdict::Fail;
    r.detail += "; fully faithful α and descent B but A is not descent";
  }
  return r;
}

// pi_n: (E×K)_n -> E_n for the kernel data of p×K and of p.
struct ProductProjections {
  FinFunction product_map;
  FinFunction pi0, pi1, pi2, pi3;
};

inline ProductProjections product_projections(const FinFunction& p, std::size_t k) {
  const auto kset = FinSet::range(k);
  const auto eb = product(p.dom, kset), bb = product(p.cod, kset);
  ProductProjections r{product_map(p, identity_function(kset), eb, bb), bb.pr1, eb.pr1, {}, {}};
  const auto kp = kernel_data(p), kq = kernel_data(r.product_map);
  r.pi2 = mediating_map(kp.e2, compose(r.pi1, kq.e2.pr1), compose(r.pi1, kq.e2.pr2));
  r.pi3 = mediating_map(kp.e3, compose(r.pi2, kq.e3.pr1), compose(r.pi1, kq.e3.pr2));
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorem checks

inline CheckResult check_embedding(const EmbeddingInstance& inst, std::size_t bound) {
  const auto bounded = std::min(bound, detail::upper_level_bound);
  struct V {
    std::size_t bound, bounded;
    CheckResult operator()(const SubdiagramEmbedding& s) const {
      const auto B = basic_fibration(s.p);
      const auto A = restricted_fibration(s.p, s.restriction);
      detail::LevelFlags<SliceCategory> flags;
      detail::add_level(flags, inclusion_functor(*A.c0, *B.c0), bound, 0);
      detail::add_level(flags, inclusion_functor(A.c1, B.c1), bound, 1);
      detail::add_level(flags, inclusion_functor(A.c2, B.c2), bounded, 2);
      detail::add_level(flags, inclusion_functor(A.c3, B.c3), bounded, 3);
      const auto b = detail::cached_class(s.p, bound);
      const auto r = s.restriction;
      const auto a = classify(A, bound, gluing_lift(A, s.p, [r](const SliceObject& x) { return r.keeps(x, true); }))
                         .level;
      return detail::embedding_verdict(a, b, flags.faithful, flags.full, flags.detail);
    }
    CheckResult operator()(const ProductEmbedding& s) const {
      if (s.k == 0) return {Verdict::Skip, "", "skipped: K is empty", {}, 0};
      const auto pr = detail::product_projections(s.p, s.k);
      const auto A = basic_fibration(s.p);
      const auto B = basic_fibration(pr.product_map);
      const std::array<FinFunction, 4> pis = {pr.pi0, pr.pi1, pr.pi2, pr.pi3};
      const std::array<std::size_t, 4> bounds = {bound, bound, bounded, bounded};
      detail::LevelFlags<SliceCategory> flags;
      for (int n = 0; n < 4; ++n) {
        const auto f = ChangeOfBase(pis[static_cast<std::size_t>(n)]).functor("π*");
        detail::add_level(flags, f, bounds[static_cast<std::size_t>(n)], n);
      }
      // pseudonaturality at the augmentation: α1∘d ≅ d'∘α0
      const ChangeOfBase a0(pr.pi0), a1(pr.pi1), d(s.p), dq(pr.product_map);
      for (const auto& x : A.c0->objects(bound))
        if (!are_isomorphic(B.c1, a1.obj(d.obj(x)), dq.obj(a0.obj(x))))
          return {Verdict::Skip, "", "skipped: α is not pseudonatural at " + show(x), {}, 0};
      const auto a = detail::cached_class(s.p, bound);
      const auto b = detail::cached_class(pr.product_map, bound);
      return detail::embedding_verdict(a, b, flags.faithful, flags.full, flags.detail);
    }
    CheckResult operator()(const TableEmbedding& s) const {
      const auto sub = sub_diagram(s.whole->diagram, s.whole->choice(s.pick));
      if (!sub) return {Verdict::Skip, "", "skipped: not a sub-diagram", {}, 0};
      const auto inc = inclusion(*sub, s.whole->diagram);
      detail::LevelFlags<TableCategory> flags;
      detail::add_level(flags, inc.at0, 0, 0);
      detail::add_level(flags, inc.at1, 0, 1);
      detail::add_level(flags, inc.at2, 0, 2);
      detail::add_level(flags, inc.at3, 0, 3);
      const auto a = classify(to_diagram(*sub), 0).level;
      return detail::embedding_verdict(a, s.whole->classification(), flags.faithful, flags.full, flags.detail);
    }
  };
  return std::visit(V{bound, bounded}, inst.shape);
}

/// The square  A0 --A(d)--> A1,  A0 --α0--> B0,  α1: A1 -> B1,  B(d): B0 -> B1
/// for an inclusion of full subdiagrams, filled by identities.
inline BiSquare<SliceCategory, SliceCategory, SliceCategory, SliceCategory> galois_square(const SliceDiagram& A,
                                                                                         const SliceDiagram& B) {
  const auto alpha0 = inclusion_functor(*A.c0, *B.c0);
  const auto alpha1 = inclusion_functor(A.c1, B.c1);
  const auto top = *A.d;
  const auto bottom = *B.d;
  auto id = [bottom](const SliceObject& x) { return bottom.target.identity(bottom.obj(x)); };
  NatIso<SliceCategory, SliceCategory> psi{{"id", compose(alpha1, top), compose(bottom, alpha0), id}, id};
  return {top, alpha0, alpha1, bottom, psi};
}

inline CheckResult check_galois(const GaloisInstance& inst, std::size_t bound) {
  CheckResult r;
  const auto b = detail::cached_class(inst.p, bound);
  if (b != DescentClass::Effective) {
    r.detail = "skipped: B is " + to_string(b) + ", not effective";
    return r;
  }
  const auto B = basic_fibration(inst.p);
  const auto A = restricted_fibration(inst.p, inst.restriction);
  detail::LevelFlags<SliceCategory> flags;
  const auto bounded = std::min(bound, detail::upper_level_bound);
  detail::add_level(flags, inclusion_functor(*A.c0, *B.c0), bound, 0);
  detail::add_level(flags, inclusion_functor(A.c1, B.c1), bound, 1);
  detail::add_level(flags, inclusion_functor(A.c2, B.c2), bounded, 2);
  detail::add_level(flags, inclusion_functor(A.c3, B.c3), bounded, 3);
  if (!flags.faithful || !flags.full) {
    r.detail = "skipped: " + flags.detail;
    return r;
  }
  const auto rs = inst.restriction;
  const auto ca = classify(A, bound, gluing_lift(A, inst.p, [rs](const SliceObject& x) { return rs.keeps(x, true); }));
  const bool effective = ca.level == DescentClass::Effective;
  const auto square = is_pseudopullback_square(galois_square(A, B), bound);
  r.detail = std::string("A effective: ") + (effective ? "yes" : "no") +
             ", square is a pseudopullback: " + (square.holds ? "yes" : "no");
  if (ca.detail.essentially_surjective && ca.detail.essentially_surjective->witness)
    r.witnesses.push_back("datum not in the image of Φ: " + show(*ca.detail.essentially_surjective->witness));
  if (square.detail.essentially_surjective && square.detail.essentially_surjective->witness)
    r.witnesses.push_back("pseudopullback object not reached: " + show(*square.detail.essentially_surjective->witness));
  r.verdict = effective == square.holds ? Verdict::Pass : Verdict::Fail;
  return r;
}

/// Builds X = levelwise pseudopullback for the instance.
inline PseudopullbackDiagram<SliceCategory> pseudopullback_instance_diagram(const PseudoPullbackInstance& inst) {
  const auto O = basic_fibration(inst.p);
  const auto A = restricted_fibration(inst.p, inst.left);
  const auto E = restricted_fibration(inst.p, inst.right);
  StrictMap<SliceCategory> alpha{inclusion_functor(*A.c0, *O.c0), inclusion_functor(A.c1, O.c1),
                                 inclusion_functor(A.c2, O.c2), inclusion_functor(A.c3, O.c3)};
  StrictMap<SliceCategory> beta{inclusion_functor(*E.c0, *O.c0), inclusion_functor(E.c1, O.c1),
                                inclusion_functor(E.c2, O.c2), inclusion_functor(E.c3, O.c3)};
  return pseudopullback_diagram(A, O, E, alpha, beta);
}

namespace detail {

// Both restrictions must be stable under faces so that the inclusions are
// strict maps of diagrams.
inline std::optional<std::string> unstable_restriction(const SliceDiagram& A, std::size_t bound,
                                                       const SliceRestriction& r) {
  for (const auto& x : A.c0->objects(bound))
    if (!r.keeps(A.d->obj(x), false)) return "d leaves the restriction at " + show(x);
  for (const auto& x : A.c1.objects(bound)) {
    if (!r.keeps(A.d0.obj(x), false) || !r.keeps(A.d1.obj(x), false))
      return "d0/d1 leave the restriction at " + show(x);
  }
  return std::nullopt;
}

}  // namespace detail

inline CheckResult check_pseudopullback_theorem(const PseudoPullbackInstance& inst, std::size_t bound) {
  CheckResult r;
  const auto O = basic_fibration(inst.p);
  const auto A = restricted_fibration(inst.p, inst.left);
  const auto E = restricted_fibration(inst.p, inst.right);
  for (const auto& [side, restriction] : {std::pair{&A, &inst.left}, std::pair{&E, &inst.right}})
    if (auto why = detail::unstable_restriction(*side, bound, *restriction)) {
      r.detail = "skipped: " + *why;
      return r;
    }
  auto keep = [](const SliceRestriction& s) { return [s](const SliceObject& x) { return s.keeps(x, true); }; };
  const auto ca = classify(A, bound, gluing_lift(A, inst.p, keep(inst.left))).level;
  const auto ce = classify(E, bound, gluing_lift(E, inst.p, keep(inst.right))).level;
  const auto co = detail::cached_class(inst.p, bound);
  std::string hyp = "left " + to_string(ca) + ", right " + to_string(ce) + ", middle " + to_string(co);
  if (ca != DescentClass::Effective || ce != DescentClass::Effective || rank(co) < rank(DescentClass::Descent)) {
    r.detail = "skipped: hypotheses fail (" + hyp + ")";
    return r;
  }
  const auto X = pseudopullback_instance_diagram(inst);
  // the corner at level 0 is the pseudopullback of the two inclusions
  using Cat = BiCategory<SliceCategory, SliceCategory, SliceCategory>;
  const auto pp0 = pseudopullback(inclusion_functor(*A.c0, *O.c0), inclusion_functor(*E.c0, *O.c0));
  BiSquare<Cat, SliceCategory, SliceCategory, SliceCategory> corner{
      pp0.p1, pp0.p2, inclusion_functor(*A.c0, *O.c0), inclusion_functor(*E.c0, *O.c0), *pp0.filler_iso};
  if (!is_pseudopullback_square(corner, bound).holds) {
    r.detail = "skipped: the level-0 corner is not a pseudopullback";
    return r;
  }
  // glue both components and descend the connecting iso
  const auto p = inst.p;
  std::function<std::optional<ObjectOf<Cat>>(const DescentDatum<Cat>&)> lift;
  if (is_surjective(p))
    lift = [A, E, p, inst](const DescentDatum<Cat>& x) -> std::optional<ObjectOf<Cat>> {
      const SliceDatum xc{x.w.c, x.rho.u, x.rho_inv.u}, xe{x.w.d, x.rho.v, x.rho_inv.v};
      if (!is_descent_datum(A, xc.w, xc.rho).ok || !is_descent_datum(E, xe.w, xe.rho).ok) return std::nullopt;
      const auto gc = descend(A, p, xc), ge = descend(E, p, xe);
      if (!inst.left.keeps(gc.glued, true) || !inst.right.keeps(ge.glued, true)) return std::nullopt;
      std::vector<std::size_t> m(gc.glued.dom.size(), Pullback::npos);
      for (std::size_t i = 0; i < x.w.c.dom.size(); ++i)
        m[gc.quotient.proj.map[i]] = ge.quotient.proj.map[x.w.phi.map[i]];
      SliceMorphism phi{gc.glued, ge.glued, m};
      auto phi_inv = slice_inverse(phi);
      if (!is_slice_morphism(phi) || !phi_inv) return std::nullopt;
      return ObjectOf<Cat>{gc.glued, ge.glued, phi, *phi_inv};
    };
  const auto cx = classify(X, bound, lift);
  r.detail = hyp + "; pseudopullback " + to_string(cx.level);
  if (cx.detail.essentially_surjective && cx.detail.essentially_surjective->witness)
    r.witnesses.push_back("datum not reached: " + show(*cx.detail.essentially_surjective->witness));
  r.verdict = cx.level == DescentClass::Effective ? Verdict::Pass : Verdict::Fail;
  return r;
}

// ---------------------------------------------------------------------------
// Suites over single maps

/// classify(p) = Effective, and both round trips hold with explicit isos:
/// every datum x is isomorphic to Φ(descend x) through w ↦ ([w], q(w)), and
/// every X is isomorphic to descend(Φ X) through [(x, e)] ↦ x.
inline CheckResult check_effective(const FinFunction& p, std::size_t bound, Mutation mutation = Mutation::None) {
  CheckResult r;
  if (!is_surjective(p)) {
    r.detail = "skipped: p is not surjective";
    return r;
  }
  try {
    const auto c = classify(p, bound, mutation);
    if (c.level != DescentClass::Effective) {
      r.verdict = Verdict::Fail;
      r.detail = "classified " + to_string(c.level);
      if (c.detail.full && c.detail.full->witness)
        r.witnesses.push_back("Desc morphism not in the image: " + show(std::get<2>(*c.detail.full->witness)));
      if (c.detail.essentially_surjective && c.detail.essentially_surjective->witness)
        r.witnesses.push_back("datum not reached: " + show(*c.detail.essentially_surjective->witness));
      return r;
    }
    const auto D = basic_fibration(p, mutation);
    const auto desc = descent_category(D, mutation);
    const auto phi = comparison(D, desc, bound);
    std::size_t data = 0, objects = 0;
    for (const auto& x : desc.objects(bound)) {
      ++data;
      const auto g = descend(D, p, x);
      const auto back = phi.obj(g.glued);
      if (!is_slice_morphism(g.iso) || !is_bijective(g.iso.as_function()) || !(g.iso.target == back.w) ||
          !is_desc_morphism(D, x, back, g.iso)) {
        r.verdict = Verdict::Fail;
        r.detail = "x → Φ(descend x) is not a descent isomorphism";
        r.witnesses.push_back(show(x));
        return r;
      }
    }
    for (const auto& x : D.c0->objects(bound)) {
      ++objects;
      const auto g = descend(D, p, phi.obj(x));
      if (!descend_counit(p, x, g)) {
        r.verdict = Verdict::Fail;
        r.detail = "descend(Φ X) → X is not an isomorphism";
        r.witnesses.push_back(show(x));
        return r;
      }
    }
    r.verdict = Verdict::Pass;
    r.detail = "Effective; round trips on " + std::to_string(data) + " data and " + std::to_string(objects) +
               " objects";
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = std::string("incident: ") + e.what();
  }
  return r;
}

/// The pullback of f: X -> Y along p computed directly, as (x, e) ↦ (f x, e).
inline std::vector<std::pair<std::size_t, std::size_t>> pulled_back_graph(const FinFunction& p,
                                                                         const SliceMorphism& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < f.source.dom.size(); ++x)
    for (std::size_t e = 0; e < p.dom.size(); ++e)
      if (p.map[e] == f.source.map[x]) out.emplace_back(f.map[x], e);
  return out;
}

/// classify(p) = NotAlmost with a pair of distinct parallel morphisms that
/// have the same pullback along p, re-verified without the diagram.
inline CheckResult check_nonsurjective(const FinFunction& p, std::size_t bound, Mutation mutation = Mutation::None) {
  CheckResult r;
  if (is_surjective(p)) {
    r.detail = "skipped: p is surjective";
    return r;
  }
  try {
    const auto c = classify(p, bound, mutation);
    if (c.level != DescentClass::NotAlmost || !c.detail.faithful.witness) {
      r.verdict = Verdict::Fail;
      r.detail = "classified " + to_string(c.level) + (c.detail.faithful.witness ? "" : " without a witness");
      return r;
    }
    const auto& [f, g] = *c.detail.faithful.witness;
    r.witnesses = {show(f), show(g)};
    const bool distinct = !(f == g);
    const bool parallel = f.source == g.source && f.target == g.target;
    const bool same_image = pulled_back_graph(p, f) == pulled_back_graph(p, g);
    r.verdict = distinct && parallel && same_image && is_slice_morphism(f) && is_slice_morphism(g) ? Verdict::Pass
                                                                                                  : Verdict::Fail;
    r.detail = std::string("NotAlmost; witness ") + (distinct ? "distinct" : "NOT distinct") + ", " +
               (parallel ? "parallel" : "NOT parallel") + ", " + (same_image ? "equal under Φ" : "NOT equal under Φ");
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = std::string("incident: ") + e.what();
  }
  return r;
}

inline CheckResult check_coherence(const FinFunction& p, std::size_t bound, Mutation mutation = Mutation::None) {
  CheckResult r;
  const auto report = validate_coherence(basic_fibration(p, mutation), bound);
  r.verdict = report.ok() ? Verdict::Pass : Verdict::Fail;
  r.detail = std::to_string(report.objects_checked) + " objects checked, " + std::to_string(report.failures.size()) +
             " failures";
  for (const auto& f : report.failures)
    r.witnesses.push_back(f.equation + " at " + f.object + ": " + f.lhs + (f.rhs.empty() ? "" : " vs " + f.rhs));
  return r;
}

inline CheckResult check_br(const BRInstance& inst, std::size_t bound, Mutation mutation = Mutation::None) {
  CheckResult r;
  try {
    const auto br = benabou_roubaud(inst.p, bound, mutation);
    r.verdict = br.ok() ? Verdict::Pass : Verdict::Fail;
    r.detail = "Ψ " + to_string(br.level) + "; " + std::to_string(br.desc_classes) + " Desc classes, " +
               std::to_string(br.em_classes) + " EM classes; factorizations " +
               (br.factorizations_agree ? "agree" : "differ");
    for (const auto& v : br.incidents) r.witnesses.push_back(v.law + " at " + v.where + ": " + v.detail);
    if (br.witness) r.witnesses.push_back(*br.witness);
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = std::string("incident: ") + e.what();
  }
  return r;
}

inline CheckResult check_beck_chevalley(const SquareInstance& inst, std::size_t bound) {
  CheckResult r;
  const auto bc = is_beck_chevalley(pullback_square(inst.h, inst.g), bound);
  r.verdict = bc.holds && bc.naturality.empty() ? Verdict::Pass : Verdict::Fail;
  r.detail = std::to_string(bc.components_checked) + " mate components checked";
  if (bc.witness) r.witnesses.push_back("non-invertible mate at " + show(*bc.witness) + ": " + show(*bc.component));
  for (const auto& v : bc.naturality) r.witnesses.push_back(v.law + " at " + v.where);
  return r;
}

// ---------------------------------------------------------------------------
// Mutation sensitivity

struct SuiteOutcome {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;
};

/// Every map p: E -> B with |E|, |B| <= n, ordered by |B|, |E|, then map.
inline std::vector<FinFunction> all_maps(std::size_t n) {
  std::vector<FinFunction> out;
  for (std::size_t nb = 0; nb <= n; ++nb)
    for (std::size_t ne = 0; ne <= n; ++ne)
      for (auto& f : all_functions(FinSet::range(ne), FinSet::range(nb))) out.push_back(std::move(f));
  return out;
}

/// Runs the map suites (effective, non-surjective, Bénabou–Roubaud,
/// coherence) on all maps of size <= n with the mutation injected.
inline std::vector<SuiteOutcome> run_map_suites(Mutation mutation, std::size_t n = 2) {
  std::vector<SuiteOutcome> out;
  const auto maps = all_maps(n);
  auto run = [&](std::string name, auto check) {
    SuiteOutcome o{std::move(name), 0, 0, std::nullopt};
    for (const auto& p : maps) {
      const auto c = check(p);
      if (c.verdict == Verdict::Skip) continue;
      ++o.cases;
      if (c.verdict == Verdict::Fail) {
        ++o.failures;
        if (!o.first_failure) o.first_failure = show_map(p) + ": " + c.detail;
      }
    }
    out.push_back(std::move(o));
  };
  run("effective", [&](const FinFunction& p) { return check_effective(p, 4, mutation); });
  run("nonsurjective", [&](const FinFunction& p) { return check_nonsurjective(p, 4, mutation); });
  run("br", [&](const FinFunction& p) { return check_br({p}, 3, mutation); });
  run("coherence", [&](const FinFunction& p) { return check_coherence(p, 4, mutation); });
  return out;
}

/// PASS when at least one suite notices the mutation.
inline CheckResult check_mutation(const MutationInstance& inst) {
  CheckResult r;
  std::vector<std::string> caught;
  for (const auto& o : run_map_suites(inst.mutation)) {
    if (o.failures) {
      caught.push_back(o.suite);
      r.witnesses.push_back(o.suite + ": " + std::to_string(o.failures) + "/" + std::to_string(o.cases) +
                            " cases fail, first " + *o.first_failure);
    }
  }
  r.verdict = caught.empty() ? Verdict::Fail : Verdict::Pass;
  if (caught.empty()) {
    r.detail = "not detected";
  } else {
    r.detail = "detected by";
    for (const auto& s : caught) r.detail += " " + s;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generators and the harness

enum class HarnessKind {
  Effective,
  NonSurjective,
  BenabouRoubaud,
  BeckChevalley,
  Coherence,
  Galois,
  Embedding,
  Pseudopullback,
  Mutation
};

inline const std::vector<std::pair<HarnessKind, std::string>>& harness_kinds() {
  static const std::vector<std::pair<HarnessKind, std::string>> kinds = {
      {HarnessKind::Effective, "effective"},   {HarnessKind::NonSurjective, "nonsurjective"},
      {HarnessKind::BenabouRoubaud, "br"},     {HarnessKind::BeckChevalley, "bc"},
      {HarnessKind::Coherence, "coherence"},   {HarnessKind::Galois, "galois"},
      {HarnessKind::Embedding, "embedding"},   {HarnessKind::Pseudopullback, "pseudopullback"},
      {HarnessKind::Mutation, "mutation"}};
  return kinds;
}

inline std::string to_string(HarnessKind k) {
  for (const auto& [kind, name] : harness_kinds())
    if (kind == k) return name;
  return "?";
}

inline std::optional<HarnessKind> parse_harness_kind(const std::string& s) {
  for (const auto& [kind, name] : harness_kinds())
    if (name == s) return kind;
  return std::nullopt;
}

/// The bound each kind uses unless told otherwise.
inline std::size_t default_bound(HarnessKind k) {
  switch (k) {
    case HarnessKind::BenabouRoubaud:
    case HarnessKind::BeckChevalley:
    case HarnessKind::Galois:
    case HarnessKind::Embedding: return 3;
    case HarnessKind::Pseudopullback: return 2;
    default: return 4;
  }
}

struct GeneratorOptions {
  std::size_t sizes = 3;     // largest carrier
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::size_t count = 32;    // instances drawn in random mode
  std::size_t bound = 3;     // largest object used to build restrictions
};

/// Largest carrier accepted in exhaustive mode.
constexpr std::size_t exhaustive_ceiling = 3;

/// Restrictions of D_p used by the Galois and embedding sweeps: everything,
/// each nonempty set of allowed fiber sizes up to the bound, and the removal
/// of each level-0 iso class of size at most the bound.
inline std::vector<SliceRestriction> restriction_menu(std::size_t base_size, std::size_t bound) {
  std::vector<SliceRestriction> out;
  out.push_back({});
  const std::size_t top = std::min<std::size_t>(bound, exhaustive_ceiling);
  for (std::size_t mask = 1; mask < (std::size_t{1} << (top + 1)); ++mask) {
    std::set<std::size_t> allowed;
    for (std::size_t k = 0; k <= top; ++k)
      if (mask & (std::size_t{1} << k)) allowed.insert(k);
    out.push_back({allowed, std::nullopt});
  }
  for (auto& v : fiber_size_vectors(base_size, top)) out.push_back({std::nullopt, std::move(v)});
  return out;
}

/// Restrictions for the pseudopullback sweep: everything, or fibers in a
/// nonempty subset of {0, 1, 2}.
inline std::vector<SliceRestriction> pseudopullback_menu() {
  std::vector<SliceRestriction> out;
  out.push_back({});
  for (std::size_t mask = 1; mask < 8; ++mask) {
    std::set<std::size_t> allowed;
    for (std::size_t k = 0; k < 3; ++k)
      if (mask & (std::size_t{1} << k)) allowed.insert(k);
    out.push_back({allowed, std::nullopt});
  }
  return out;
}

/// J: subsets of B (fibers of size at most one) into all of C/B, pulled back
/// along the identity, over the fold map 2 -> 1.
inline PseudoPullbackInstance discrete_into_sets_instance() {
  return {make_function(FinSet::range(2), FinSet::range(1), {0, 0}), {std::set<std::size_t>{0, 1}, std::nullopt},
          {}, "J"};
}

/// A category viewed as a constant diagram: every level is the
/// chain, every functor the identity, theta the identity.
inline TableDiagram constant_diagram(const FinCategory& c) {
  const auto id = identity_table(c);
  TableDiagram t{"const(" + c.name + ")", c, c, c, c, id, id, id, id, id, id, id, {}};
  for (const auto& o : c.objects) t.theta[o] = c.identity.at(o);
  return t;
}

/// Embedding instances from the full subcategory inclusions of c into its
/// constant diagram: one per subset of objects.
inline std::vector<EmbeddingInstance> constant_embeddings(const FinCategory& c) {
  auto entry = std::make_shared<const TableSweepEntry>(constant_diagram(c));
  std::vector<EmbeddingInstance> out;
  const auto& subs = entry->subcategories[0];
  for (std::size_t i = 0; i < subs.size(); ++i) {
    // full: every morphism of c between chosen objects
    std::size_t between = 0;
    for (const auto& m : c.morphisms)
      if (subs[i].objects.count(m.dom) && subs[i].objects.count(m.cod)) ++between;
    if (subs[i].morphisms.size() != between) continue;
    out.push_back({TableEmbedding{entry, {i, i, i, i}}});
  }
  return out;
}

/// Every valid sub-diagram of every generated strict table diagram.
inline std::vector<EmbeddingInstance> table_embeddings() {
  std::vector<EmbeddingInstance> out;
  for (auto& t : strict_table_diagrams()) {
    auto entry = std::make_shared<const TableSweepEntry>(std::move(t));
    const auto& s = entry->subcategories;
    for (std::size_t a = 0; a < s[0].size(); ++a)
      for (std::size_t b = 0; b < s[1].size(); ++b)
        for (std::size_t c = 0; c < s[2].size(); ++c)
          for (std::size_t d = 0; d < s[3].size(); ++d)
            if (sub_diagram(entry->diagram, {s[0][a], s[1][b], s[2][c], s[3][d]}))
              out.push_back({TableEmbedding{entry, {a, b, c, d}}});
  }
  return out;
}

namespace detail {

inline FinFunction random_map(std::mt19937_64& rng, std::size_t sizes, bool surjective_only) {
  std::uniform_int_distribution<std::size_t> size(0, sizes);
  while (true) {
    const auto nb = size(rng);
    const auto ne = nb == 0 ? 0 : size(rng);
    std::vector<std::size_t> m(ne);
    if (nb > 0) {
      std::uniform_int_distribution<std::size_t> pick(0, nb - 1);
      for (auto& x : m) x = pick(rng);
    }
    FinFunction f{FinSet::range(ne), FinSet::range(nb), std::move(m)};
    if (!surjective_only || is_surjective(f)) return f;
  }
}

template <class T>
const T& pick_one(std::mt19937_64& rng, const std::vector<T>& xs) {
  std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
  return xs[d(rng)];
}

}  // namespace detail

/// Deterministic instance stream. Exhaustive mode enumerates everything up to
/// `sizes` (at most the ceiling); otherwise `count` instances are drawn from
/// a mt19937_64 seeded with `seed`.
inline std::vector<Instance> generate_instances(HarnessKind kind, const GeneratorOptions& opt) {
  if (opt.exhaustive && opt.sizes > exhaustive_ceiling)
    throw std::invalid_argument("exhaustive mode is limited to sizes <= " + std::to_string(exhaustive_ceiling));
  std::vector<Instance> out;
  std::mt19937_64 rng(opt.seed);
  auto maps = [&](auto keep) {
    std::vector<FinFunction> ms;
    if (opt.exhaustive) {
      for (auto& p : all_maps(opt.sizes))
        if (keep(p)) ms.push_back(std::move(p));
    } else {
      for (std::size_t i = 0; i < opt.count;) {
        auto p = detail::random_map(rng, opt.sizes, false);
        if (!keep(p)) continue;
        ms.push_back(std::move(p));
        ++i;
      }
    }
    return ms;
  };
  auto any = [](const FinFunction&) { return true; };
  switch (kind) {
    case HarnessKind::Effective:
      for (auto& p : maps([](const FinFunction& p) { return is_surjective(p); })) out.push_back(BRInstance{p});
      break;
    case HarnessKind::NonSurjective:
      for (auto& p : maps([](const FinFunction& p) { return !is_surjective(p); })) out.push_back(BRInstance{p});
      break;
    case HarnessKind::BenabouRoubaud:
    case HarnessKind::Coherence:
      for (auto& p : maps(any)) out.push_back(BRInstance{p});
      break;
    case HarnessKind::BeckChevalley:
      if (opt.exhaustive) {
        for (std::size_t nz = 0; nz <= opt.sizes; ++nz)
          for (std::size_t nx = 0; nx <= opt.sizes; ++nx)
            for (const auto& h : all_functions(FinSet::range(nx), FinSet::range(nz)))
              for (std::size_t ny = 0; ny <= opt.sizes; ++ny)
                for (const auto& g : all_functions(FinSet::range(ny), FinSet::range(nz)))
                  out.push_back(SquareInstance{h, g});
      } else {
        for (std::size_t i = 0; i < opt.count; ++i) {
          auto h = detail::random_map(rng, opt.sizes, false);
          std::uniform_int_distribution<std::size_t> size(0, opt.sizes);
          const auto ny = h.cod.size() == 0 ? 0 : size(rng);
          std::vector<std::size_t> m(ny);
          if (ny) {
            std::uniform_int_distribution<std::size_t> pick(0, h.cod.size() - 1);
            for (auto& x : m) x = pick(rng);
          }
          out.push_back(SquareInstance{h, FinFunction{FinSet::range(ny), h.cod, std::move(m)}});
        }
      }
      break;
    case HarnessKind::Galois:
      if (opt.exhaustive) {
        for (auto& p : all_maps(opt.sizes))
          for (auto& r : restriction_menu(p.cod.size(), opt.bound)) out.push_back(GaloisInstance{p, r});
      } else {
        for (std::size_t i = 0; i < opt.count; ++i) {
          auto p = detail::random_map(rng, opt.sizes, true);
          out.push_back(GaloisInstance{p, detail::pick_one(rng, restriction_menu(p.cod.size(), opt.bound))});
        }
      }
      break;
    case HarnessKind::Embedding:
      if (opt.exhaustive) {
        for (auto& p : all_maps(opt.sizes))
          for (auto& r : restriction_menu(p.cod.size(), opt.bound))
            out.push_back(EmbeddingInstance{SubdiagramEmbedding{p, r}});
        for (auto& p : all_maps(std::min<std::size_t>(opt.sizes, 2)))
          for (std::size_t k = 1; k <= 2; ++k) out.push_back(EmbeddingInstance{ProductEmbedding{p, k}});
        for (auto& e : constant_embeddings(chain_category(3))) out.push_back(std::move(e));
        for (auto& e : table_embeddings()) out.push_back(std::move(e));
      } else {
        const auto tables = strict_table_diagrams();
        std::uniform_int_distribution<int> shape(0, 2);
        for (std::size_t i = 0; i < opt.count; ++i) {
          const int s = shape(rng);
          if (s == 0) {
            auto p = detail::random_map(rng, opt.sizes, false);
            out.push_back(EmbeddingInstance{SubdiagramEmbedding{p, detail::pick_one(rng, restriction_menu(p.cod.size(), opt.bound))}});
          } else if (s == 1) {
            std::uniform_int_distribution<std::size_t> k(1, 2);
            out.push_back(EmbeddingInstance{ProductEmbedding{detail::random_map(rng, std::min<std::size_t>(opt.sizes, 2), false), k(rng)}});
          } else {
            auto entry = std::make_shared<const TableSweepEntry>(detail::pick_one(rng, tables));
            std::array<std::size_t, 4> pick{};
            do {
              for (std::size_t l = 0; l < 4; ++l) {
                std::uniform_int_distribution<std::size_t> d(0, entry->subcategories[l].size() - 1);
                pick[l] = d(rng);
              }
            } while (!sub_diagram(entry->diagram, entry->choice(pick)));
            out.push_back(EmbeddingInstance{TableEmbedding{entry, pick}});
          }
        }
      }
      break;
    case HarnessKind::Pseudopullback: {
      const auto menu = pseudopullback_menu();
      if (opt.exhaustive) {
        for (auto& p : all_maps(std::min<std::size_t>(opt.sizes, 2)))
          for (const auto& a : menu)
            for (const auto& b : menu) out.push_back(PseudoPullbackInstance{p, a, b, ""});
        out.push_back(discrete_into_sets_instance());
      } else {
        for (std::size_t i = 0; i < opt.count; ++i)
          out.push_back(PseudoPullbackInstance{detail::random_map(rng, std::min<std::size_t>(opt.sizes, 2), true),
                                               detail::pick_one(rng, menu), detail::pick_one(rng, menu), ""});
      }
      break;
    }
    case HarnessKind::Mutation:
      for (auto m : all_mutations) out.push_back(MutationInstance{m});
      break;
  }
  return out;
}

/// The check a kind runs on one of its instances.
inline CheckResult run_check(HarnessKind kind, const Instance& inst, std::size_t bound) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    switch (kind) {
      case HarnessKind::Effective: r = check_effective(std::get<BRInstance>(inst).p, bound); break;
      case HarnessKind::NonSurjective: r = check_nonsurjective(std::get<BRInstance>(inst).p, bound); break;
      case HarnessKind::BenabouRoubaud: r = check_br(std::get<BRInstance>(inst), bound); break;
      case HarnessKind::Coherence: r = check_coherence(std::get<BRInstance>(inst).p, bound); break;
      case HarnessKind::BeckChevalley: r = check_beck_chevalley(std::get<SquareInstance>(inst), bound); break;
      case HarnessKind::Galois: r = check_galois(std::get<GaloisInstance>(inst), bound); break;
      case HarnessKind::Embedding: r = check_embedding(std::get<EmbeddingInstance>(inst), bound); break;
      case HarnessKind::Pseudopullback:
        r = check_pseudopullback_theorem(std::get<PseudoPullbackInstance>(inst), bound);
        break;
      case HarnessKind::Mutation: r = check_mutation(std::get<MutationInstance>(inst)); break;
    }
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.detail = std::string("incident: ") + e.what();
  }
  r.instance = describe(inst);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct HarnessReport {
  HarnessKind kind = HarnessKind::Effective;
  GeneratorOptions options;
  std::size_t bound = 0;
  std::vector<CheckResult> results;
  double seconds = 0;

  std::size_t count(Verdict v) const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.verdict == v;
    return n;
  }
  bool ok() const { return count(Verdict::Fail) == 0; }
};

/// Generates, checks in parallel, and reports in generation order.
inline HarnessReport run_harness(HarnessKind kind, GeneratorOptions opt, std::optional<std::size_t> bound = {}) {
  const auto start = std::chrono::steady_clock::now();
  HarnessReport rep;
  rep.kind = kind;
  rep.bound = bound.value_or(default_bound(kind));
  opt.bound = std::min(rep.bound, opt.bound);
  rep.options = opt;
  const auto instances = generate_instances(kind, opt);
  rep.results = parallel_map(instances, [&](const Instance& i) { return run_check(kind, i, rep.bound); });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace descent
