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
#include "descent/cosimplicial.hpp"
#include "descent/descent.hpp"
#include "descent/equivalence.hpp"
#include "descent/fincat.hpp"
#include "descent/finset.hpp"
#include "descent/mutation.hpp"
#include "descent/slices.hpp"

namespace descent {

template <class C>
struct Monad {
  Functor<C, C> t;
  NatTrans<C, C> eta;  // Id ⇒ T
  NatTrans<C, C> mu;   // TT ⇒ T
};

/// Unit and associativity laws at every enumerated object.
template <class C>
std::vector<Violation> check_monad(const Monad<C>& m, std::size_t bound) {
  std::vector<Violation> out;
  const auto& c = m.t.source;
  for (const auto& x : c.objects(bound)) {
    try {
      const auto tx = m.t.obj(x);
      const auto id = c.identity(tx);
      if (c.compose(m.mu.at(x), m.eta.at(tx)) != id)
        out.push_back({"left unit μ∘ηT", show(x), "not the identity"});
      if (c.compose(m.mu.at(x), m.t.mor(m.eta.at(x))) != id)
        out.push_back({"right unit μ∘Tη", show(x), "not the identity"});
      if (c.compose(m.mu.at(x), m.t.mor(m.mu.at(x))) != c.compose(m.mu.at(x), m.mu.at(tx)))
        out.push_back({"associativity μ∘Tμ = μ∘μT", show(x), "composites differ"});
    } catch (const std::exception& e) {
      out.push_back({"typing", show(x), e.what()});
    }
  }
  return out;
}

/// T = RL, η the unit, μ = RεL. `twist`, when set, is post-composed with μ
/// (used to inject a broken multiplication).
template <class C>
Monad<C> induced_monad(const Adjunction<C, C>& adj,
                       std::function<MorphismOf<C>(const ObjectOf<C>&)> twist = {}) {
  auto t = compose(adj.right, adj.left);
  auto mu_at = [adj, twist](const ObjectOf<C>& x) {
    auto m = adj.right.mor(adj.counit.at(adj.left.obj(x)));
    if (twist) m = adj.right.source.compose(twist(adj.right.obj(adj.left.obj(x))), m);
    return m;
  };
  return {t, adj.unit, {"μ", compose(t, t), t, mu_at}};
}

template <class C>
struct Algebra {
  ObjectOf<C> x;
  MorphismOf<C> a;

  friend bool operator==(const Algebra& l, const Algebra& r) { return l.a == r.a && l.x == r.x; }
  friend bool operator<(const Algebra& l, const Algebra& r) {
    if (!(l.x == r.x)) return l.x < r.x;
    return l.a < r.a;
  }
};

template <class C>
struct AlgebraMorphism {
  Algebra<C> source;
  Algebra<C> target;
  MorphismOf<C> h;

  friend bool operator==(const AlgebraMorphism& l, const AlgebraMorphism& r) {
    return l.h == r.h && l.source == r.source && l.target == r.target;
  }
  friend bool operator<(const AlgebraMorphism& l, const AlgebraMorphism& r) {
    if (!(l.h == r.h)) return l.h < r.h;
    if (!(l.source == r.source)) return l.source < r.source;
    return l.target < r.target;
  }
};

template <class C>
std::string show(const Algebra<C>& a) {
  return "(" + show(a.x) + ", a=" + show(a.a) + ")";
}
template <class C>
std::string show(const AlgebraMorphism<C>& h) {
  return show(h.h);
}

template <class C>
using EMCategory = Category<Algebra<C>, AlgebraMorphism<C>>;

template <class C>
bool is_algebra(const Monad<C>& m, const ObjectOf<C>& x, const MorphismOf<C>& a) {
  const auto& c = m.t.source;
  if (!(c.dom(a) == m.t.obj(x)) || !(c.cod(a) == x)) return false;
  if (c.compose(a, m.eta.at(x)) != c.identity(x)) return false;
  return c.compose(a, m.mu.at(x)) == c.compose(a, m.t.mor(a));
}

template <class C>
bool is_algebra_morphism(const Monad<C>& m, const Algebra<C>& s, const Algebra<C>& t,
                         const MorphismOf<C>& h) {
  const auto& c = m.t.source;
  return c.compose(h, s.a) == c.compose(t.a, m.t.mor(h));
}

/// Algebras on enumerated objects, found by filtering every candidate
/// structure map.
template <class C>
EMCategory<C> em_category(const Monad<C>& m) {
  using A = Algebra<C>;
  using H = AlgebraMorphism<C>;
  auto mm = std::make_shared<const Monad<C>>(m);
  EMCategory<C> e;
  e.name = "EM(" + m.t.name + ")";
  e.finite = m.t.source.finite;
  e.objects = [mm](std::size_t bound) {
    std::vector<A> out;
    const auto& c = mm->t.source;
    for (const auto& x : c.objects(bound))
      for (auto& a : c.hom(mm->t.obj(x), x))
        if (is_algebra(*mm, x, a)) out.push_back({x, std::move(a)});
    return out;
  };
  e.hom = [mm](const A& s, const A& t) {
    std::vector<H> out;
    for (auto& h : mm->t.source.hom(s.x, t.x))
      if (is_algebra_morphism(*mm, s, t, h)) out.push_back({s, t, std::move(h)});
    return out;
  };
  e.identity = [mm](const A& s) { return H{s, s, mm->t.source.identity(s.x)}; };
  e.compose = [mm](const H& g, const H& f) {
    return H{f.source, g.target, mm->t.source.compose(g.h, f.h)};
  };
  e.dom = [](const H& f) { return f.source; };
  e.cod = [](const H& f) { return f.target; };
  e.isos = [mm](const A& s, const A& t) {
    std::vector<std::pair<H, H>> out;
    for (const auto& [f, g] : isomorphisms(mm->t.source, s.x, t.x))
      if (is_algebra_morphism(*mm, s, t, f)) out.emplace_back(H{s, t, f}, H{t, s, g});
    return out;
  };
  return e;
}

template <class C>
Functor<EMCategory<C>, C> forget_algebra(const EMCategory<C>& em, const C& c) {
  return {"U", em, c, [](const Algebra<C>& a) { return a.x; },
          [](const AlgebraMorphism<C>& h) { return h.h; }};
}

/// K(Y) = (R Y, R ε_Y), K(f) = R f.
template <class C>
Functor<C, EMCategory<C>> em_comparison(const Adjunction<C, C>& adj, const EMCategory<C>& em) {
  auto obj = [adj](const ObjectOf<C>& y) {
    return Algebra<C>{adj.right.obj(y), adj.right.mor(adj.counit.at(y))};
  };
  return {"K", adj.right.source, em, obj, [adj, obj](const MorphismOf<C>& f) {
            const auto& d = adj.right.source;
            return AlgebraMorphism<C>{obj(d.dom(f)), obj(d.cod(f)), adj.right.mor(f)};
          }};
}

// ---------------------------------------------------------------------------
// Beck–Chevalley

/// A square
///
///        top
///    P -------> Q
///    |          |
///  left       right        alpha: right∘top ≅ bottom∘left
///    v          v
///    R -------> S
///       bottom
///
/// with left adjoints L_l ⊣ left and L_r ⊣ right.
template <class C>
struct BCSquare {
  Functor<C, C> top, left, right, bottom;
  NatIso<C, C> alpha;
  Adjunction<C, C> left_adj;   // .left = L_l: R -> P, .right = left
  Adjunction<C, C> right_adj;  // .left = L_r: S -> Q, .right = right
};

/// The mate L_r∘bottom ⇒ top∘L_l, with component at r
///   ε^r_{top L_l r} ∘ L_r(alpha⁻¹_{L_l r}) ∘ L_r(bottom(η^l_r)).
template <class C>
NatTrans<C, C> mate(const BCSquare<C>& sq) {
  auto component = [sq](const ObjectOf<C>& r) {
    const auto& lr = sq.right_adj.left;
    const auto& ll = sq.left_adj.left;
    const auto& q = sq.top.target;
    const auto llr = ll.obj(r);
    const auto step1 = lr.mor(sq.bottom.mor(sq.left_adj.unit.at(r)));
    const auto step2 = lr.mor(sq.alpha.inverse_at(llr));
    const auto step3 = sq.right_adj.counit.at(sq.top.obj(llr));
    return q.compose(step3, q.compose(step2, step1));
  };
  return {"mate", compose(sq.right_adj.left, sq.bottom), compose(sq.top, sq.left_adj.left),
          component};
}

template <class C>
bool is_invertible(const C& cat, const MorphismOf<C>& f) {
  for (const auto& [g, h] : isomorphisms(cat, cat.dom(f), cat.cod(f)))
    if (g == f) return true;
  return false;
}

template <class C>
struct BeckChevalleyResult {
  bool holds = true;
  std::size_t components_checked = 0;
  std::optional<ObjectOf<C>> witness;
  std::optional<MorphismOf<C>> component;
  std::vector<Violation> naturality;
};

/// Componentwise invertibility of the mate on enumerated objects of R.
template <class C>
BeckChevalleyResult<C> is_beck_chevalley(const BCSquare<C>& sq, std::size_t bound) {
  BeckChevalleyResult<C> r;
  const auto m = mate(sq);
  r.naturality = check_natural(m, bound);
  for (const auto& x : sq.left.target.objects(bound)) {
    ++r.components_checked;
    const auto c = m.at(x);
    if (!is_invertible(sq.top.target, c)) {
      r.holds = false;
      r.witness = x;
      r.component = c;
      return r;
    }
  }
  return r;
}

/// The slice square of a commuting square of finite sets
///
///    P --a--> X
///    |        |
///    b        h         h∘a = g∘b
///    v        v
///    Y --g--> Z
///
/// top = h*, left = g*, right = a*, bottom = b*, with Σ ⊣ pullback on the
/// two vertical sides. alpha is the canonical comparison a* h* ≅ b* g*.
inline BCSquare<SliceCategory> slice_square(const FinFunction& h, const FinFunction& g,
                                            const FinFunction& a, const FinFunction& b) {
  if (!(compose(h, a) == compose(g, b))) throw std::invalid_argument("slice_square: square does not commute");
  ChangeOfBase hs(h), gs(g), as(a), bs(b);
  BCSquare<SliceCategory> sq{hs.functor("h*"), gs.functor("g*"), as.functor("a*"), bs.functor("b*"),
                             {}, sigma_pullback_adjunction(g), sigma_pullback_adjunction(a)};
  sq.alpha = detail::comparison_iso("α", compose(sq.right, sq.top), compose(sq.bottom, sq.left),
                                    {hs, as}, {gs, bs});
  return sq;
}

/// The square on the chosen pullback of h and g.
inline BCSquare<SliceCategory> pullback_square(const FinFunction& h, const FinFunction& g) {
  const auto pb = pullback(h, g);
  return slice_square(h, g, pb.pr1, pb.pr2);
}

/// Table-backed square whose mate is not invertible: P = Q = 0 -> 1,
/// R = S = 1, left = right = !, top constant at 1, bottom = id. The left
/// adjoint of ! picks 0, so the mate component is the arrow 0 -> 1.
inline BCSquare<TableCategory> broken_table_square() {
  const auto two = to_category(arrow_category());
  const auto one = to_category(terminal_category());
  FunctorTable bang{"!", {{"0", "*"}, {"1", "*"}}, {{"id_0", "id_*"}, {"id_1", "id_*"}, {"u", "id_*"}}};
  FunctorTable pick0{"0", {{"*", "0"}}, {{"id_*", "id_0"}}};
  FunctorTable const1{"1", {{"0", "1"}, {"1", "1"}}, {{"id_0", "id_1"}, {"id_1", "id_1"}, {"u", "id_1"}}};
  auto b = to_functor(bang, two, one);
  auto l = to_functor(pick0, one, two);
  auto top = to_functor(const1, two, two);
  auto bottom = identity_functor(one);
  auto star_id = [](const std::string&) { return std::string("id_*"); };
  auto counit = [](const std::string& x) { return x == "0" ? std::string("id_0") : std::string("u"); };
  Adjunction<TableCategory, TableCategory> adj{
      l, b, {"η", identity_functor(one), compose(b, l), star_id},
      {"ε", compose(l, b), identity_functor(two), counit}};
  NatIso<TableCategory, TableCategory> alpha{{"α", compose(b, top), compose(bottom, b), star_id}, star_id};
  return {top, b, b, bottom, alpha, adj, adj};
}

// ---------------------------------------------------------------------------
// Descent data versus algebras for the monad p*Σ_p

/// The monad of Σ_p ⊣ p*; BrokenMu twists μ by a fiber swap and
/// BrokenTriangle twists the counit it is built from.
inline Monad<SliceCategory> pullback_monad(const FinFunction& p, Mutation mutation = Mutation::None) {
  const auto adj = sigma_pullback_adjunction(p, mutation);
  std::function<SliceMorphism(const SliceObject&)> twist;
  if (mutation == Mutation::BrokenMu) twist = fiber_swap;
  return induced_monad(adj, twist);
}

/// a_rho = ε ∘ Σ_{π2}(rho) ∘ c, where c: p*Σ_p W ≅ Σ_{π2} π1* W is the
/// canonical iso (w, e') ↦ (w, (q(w), e')) and ε the counit of Σ_{π2} ⊣ π2*.
inline SliceMorphism algebra_of_datum(const FinFunction& p, const SliceDatum& x) {
  const auto& w = x.w;
  const auto e2 = pullback(p, p);
  const auto tw = pullback(compose(p, w), p);
  const auto d1w = pullback(w, e2.pr1);
  const auto d0w = pullback(w, e2.pr2);
  std::vector<std::size_t> c(tw.object.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto wi = tw.pr1.map[k], e1 = tw.pr2.map[k];
    c[k] = d1w.at(wi, e2.at(w.map[wi], e1));
  }
  const auto sigma_rho = x.rho.map;  // Σ_{π2} leaves carrier maps unchanged
  const auto& counit = d0w.pr1.map;
  std::vector<std::size_t> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) a[k] = counit[sigma_rho[c[k]]];
  return {tw.pr2, w, std::move(a)};
}

/// The inverse construction: rho_a(w, (e, e')) = (a(w, e'), (e, e')).
inline std::optional<SliceMorphism> datum_of_algebra(const FinFunction& p, const Algebra<SliceCategory>& alg) {
  const auto& w = alg.x;
  const auto e2 = pullback(p, p);
  const auto tw = pullback(compose(p, w), p);
  if (!(alg.a.source == tw.pr2)) return std::nullopt;
  const auto d1w = pullback(w, e2.pr1);
  const auto d0w = pullback(w, e2.pr2);
  std::vector<std::size_t> rho(d1w.object.size());
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const auto wi = d1w.pr1.map[j], k = d1w.pr2.map[j];
    const auto image = alg.a.map[tw.at(wi, e2.pr2.map[k])];
    rho[j] = d0w.at(image, k);
    if (rho[j] == Pullback::npos) return std::nullopt;
  }
  return SliceMorphism{d1w.pr2, d0w.pr2, std::move(rho)};
}

struct BenabouRoubaudReport {
  EquivalenceLevel level = EquivalenceLevel::None;
  std::size_t bound = 0;
  std::size_t desc_objects = 0;
  std::size_t em_objects = 0;
  std::size_t desc_classes = 0;
  std::size_t em_classes = 0;
  bool factorizations_agree = true;
  std::vector<Violation> incidents;  // law failures; expected empty
  std::optional<std::string> witness;

  bool ok() const { return incidents.empty() && level == EquivalenceLevel::Equivalence && factorizations_agree; }
};

/// Builds Ψ: Desc(p) -> EM(p*Σ_p) datum by datum and checks that it is an
/// equivalence, that U_EM∘Ψ = U_Desc, and that Ψ∘Φ ≅ K.
inline BenabouRoubaudReport benabou_roubaud(const FinFunction& p, std::size_t bound,
                                            Mutation mutation = Mutation::None) {
  BenabouRoubaudReport r;
  r.bound = bound;
  const auto D = basic_fibration(p, mutation);
  const auto adj = sigma_pullback_adjunction(p, mutation);
  const auto monad = pullback_monad(p, mutation);
  for (auto& v : check_triangles(adj, bound)) r.incidents.push_back(std::move(v));
  for (auto& v : check_monad(monad, bound)) r.incidents.push_back(std::move(v));
  if (!r.incidents.empty()) return r;

  const auto desc = descent_category(D, mutation);
  const auto em = em_category(monad);
  using Cat = SliceCategory;
  Functor<DescCategory<Cat>, EMCategory<Cat>> psi{
      "Ψ", desc, em,
      [p](const SliceDatum& x) { return Algebra<Cat>{x.w, algebra_of_datum(p, x)}; },
      [p](const DescMorphism<Cat>& f) {
        return AlgebraMorphism<Cat>{{f.source.w, algebra_of_datum(p, f.source)},
                                    {f.target.w, algebra_of_datum(p, f.target)},
                                    f.m};
      }};

  const auto data = desc.objects(bound);
  const auto algebras = em.objects(bound);
  r.desc_objects = data.size();
  r.em_objects = algebras.size();
  r.desc_classes = iso_class_representatives(desc, data).size();
  r.em_classes = iso_class_representatives(em, algebras).size();

  for (const auto& x : data) {
    const auto a = psi.obj(x);
    if (!is_algebra(monad, a.x, a.a)) r.incidents.push_back({"algebra laws", show(x.w), show(a.a)});
    for (const auto& y : data)
      for (const auto& f : desc.hom(x, y)) {
        const auto pf = psi.mor(f);
        if (!is_algebra_morphism(monad, pf.source, pf.target, pf.h))
          r.incidents.push_back({"Ψ on morphisms", show(f.m), "not an algebra morphism"});
      }
  }
  for (auto& v : check_functor(psi, bound)) r.incidents.push_back(std::move(v));
  if (!r.incidents.empty()) return r;

  std::function<std::optional<SliceDatum>(const Algebra<Cat>&)> lift =
      [p, D](const Algebra<Cat>& a) -> std::optional<SliceDatum> {
    auto rho = datum_of_algebra(p, a);
    if (!rho) return std::nullopt;
    auto inv = slice_inverse(*rho);
    if (!inv) return std::nullopt;
    return SliceDatum{a.x, *rho, *inv};
  };
  const auto eq = is_equivalence(psi, bound, lift);
  r.level = eq.level;
  if (!eq.faithful.holds)
    r.witness = "Ψ identifies " + show(eq.faithful.witness->first) + " and " + show(eq.faithful.witness->second);
  else if (eq.full && !eq.full->holds)
    r.witness = "algebra morphism " + show(std::get<2>(*eq.full->witness)) + " not hit";
  else if (eq.essentially_surjective && !eq.essentially_surjective->holds)
    r.witness = "algebra " + show(*eq.essentially_surjective->witness) + " not reached";

  // U_EM∘Ψ = U_Desc on the nose.
  for (const auto& x : data)
    if (!(psi.obj(x).x == x.w)) {
      r.factorizations_agree = false;
      r.incidents.push_back({"U∘Ψ = U", show(x), "carriers differ"});
    }
  // Ψ∘Φ ≅ K through the identity components.
  const auto phi = comparison(D, desc, bound);
  const auto k = em_comparison(adj, em);
  const auto lhs = compose(psi, phi);
  NatIso<Cat, EMCategory<Cat>> cmp{
      {"Ψ∘Φ ≅ K", lhs, k,
       [lhs, k, em](const SliceObject& x) {
         auto iso = find_isomorphism(em, lhs.obj(x), k.obj(x));
         if (!iso) throw std::domain_error("Ψ∘Φ(X) and K(X) are not isomorphic");
         return iso->first;
       }},
      [lhs, k, em](const SliceObject& x) {
        auto iso = find_isomorphism(em, lhs.obj(x), k.obj(x));
        if (!iso) throw std::domain_error("Ψ∘Φ(X) and K(X) are not isomorphic");
        return iso->second;
      }};
  for (auto& v : check_natural_iso(cmp, bound)) {
    r.factorizations_agree = false;
    r.incidents.push_back(std::move(v));
  }
  return r;
}

}  // namespace descent
