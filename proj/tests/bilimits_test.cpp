#include <gtest/gtest.h>

#include <set>

#include "descent/bilimits.hpp"
#include "descent/fincat.hpp"
#include "descent/slices.hpp"

using namespace descent;

namespace {

using TFunctor = Functor<TableCategory, TableCategory>;

TFunctor table_functor(const FinCategory& s, const FinCategory& t, const FunctorTable& f) {
  return to_functor(f, to_category(s), to_category(t));
}

FunctorTable pick_object(const std::string& x, const FinCategory& t) {
  return {"pick " + x, {{"*", x}}, {{"id_*", t.identity.at(x)}}};
}

// The same objects with identities only.
SliceCategory discrete_core(const SliceCategory& c) {
  SliceCategory d = c;
  d.name = "core(" + c.name + ")";
  d.hom = [c](const SliceObject& x, const SliceObject& y) {
    return x == y ? std::vector<SliceMorphism>{c.identity(x)} : std::vector<SliceMorphism>{};
  };
  d.isos = [c](const SliceObject& x, const SliceObject& y) {
    std::vector<std::pair<SliceMorphism, SliceMorphism>> out;
    if (x == y) out.emplace_back(c.identity(x), c.identity(x));
    return out;
  };
  return d;
}

std::vector<FinCategory> small_tables() {
  return {terminal_category(), discrete_category(2), arrow_category(), iso_category(),
          parallel_pair_category()};
}

}  // namespace

TEST(Pseudopullback, AlongIdentityIsTheGraph) {
  const auto c = arrow_category(), e = iso_category();
  for (const auto& ft : all_functors(c, e)) {
    const auto f = table_functor(c, e, ft);
    const auto pp = pseudopullback(f, identity_functor(to_category(e)));
    EXPECT_TRUE(check_functor(pp.p1, 0).empty());
    EXPECT_EQ(is_equivalence(pp.p1, 0).level, EquivalenceLevel::Equivalence);
  }
}

TEST(Pseudopullback, PointsGiveIsomorphisms) {
  const auto one = terminal_category();
  const auto e = iso_category();
  for (const auto& x : e.objects)
    for (const auto& y : e.objects) {
      const auto pp = pseudopullback(table_functor(one, e, pick_object(x, e)),
                                     table_functor(one, e, pick_object(y, e)));
      const auto objs = pp.category.objects(0);
      ASSERT_EQ(objs.size(), 1u);
      EXPECT_EQ(objs[0].phi, x == y ? "id_" + x : (x == "0" ? "u" : "v"));
    }
  // in finite sets the isos of a two-element set with itself are its two permutations
  const auto s = slice(FinSet::range(1));
  const auto two = canonical_object(FinSet::range(1), {2});
  const auto one_cat = to_category(one);
  Functor<TableCategory, SliceCategory> at_two{"two", one_cat, s, [two](const std::string&) { return two; },
                                               [two](const std::string&) { return slice_identity(two); }};
  EXPECT_EQ(pseudopullback(at_two, at_two).category.objects(0).size(), 2u);
}

TEST(Pseudopullback, DiscreteSetsIntoSets) {
  const auto s = slice(FinSet::range(1));
  const auto core = discrete_core(s);
  Functor<SliceCategory, SliceCategory> j{"J", core, s, [](const SliceObject& x) { return x; },
                                          [](const SliceMorphism& m) { return m; }};
  const auto pp = pseudopullback(j, identity_functor(s));
  // sum over k <= 3 of k! triples (k, k, bijection)
  const auto objs = pp.category.objects(3);
  EXPECT_EQ(objs.size(), 10u);
  // (id, v) needs v = phi'∘phi⁻¹: one arrow between triples over the same set
  for (const auto& x : objs)
    for (const auto& y : objs) EXPECT_EQ(pp.category.hom(x, y).size(), x.c == y.c ? 1u : 0u);
  EXPECT_EQ(is_equivalence(pp.p1, 3).level, EquivalenceLevel::Equivalence);
  const auto cm = comma(j, identity_functor(s));
  // arbitrary maps k -> l for k, l <= 3: sum of l^k
  std::size_t maps = 0;
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::size_t l = 0; l <= 3; ++l) maps += all_functions(FinSet::range(k), FinSet::range(l)).size();
  EXPECT_EQ(maps, 60u);
  EXPECT_EQ(cm.category.objects(3).size(), maps);
}

TEST(Pseudopullback, CodomainMismatch) {
  const auto c = arrow_category(), e = iso_category();
  const auto f = table_functor(c, c, identity_table(c));
  const auto g = table_functor(e, e, identity_table(e));
  EXPECT_THROW(pseudopullback(f, g), std::invalid_argument);
  EXPECT_THROW(comma(f, g), std::invalid_argument);
}

TEST(Pseudopullback, CategoryLawsAndFiller) {
  const auto c = arrow_category(), d = iso_category(), e = iso_category();
  for (const auto& ft : all_functors(c, e))
    for (const auto& gt : all_functors(d, e)) {
      const auto pp = pseudopullback(table_functor(c, e, ft), table_functor(d, e, gt));
      const auto& cat = pp.category;
      const auto objs = cat.objects(0);
      for (const auto& x : objs)
        for (const auto& y : objs)
          for (const auto& m : cat.hom(x, y)) {
            EXPECT_EQ(cat.compose(m, cat.identity(x)), m);
            EXPECT_EQ(cat.compose(cat.identity(y), m), m);
            for (const auto& z : objs)
              for (const auto& n : cat.hom(y, z)) {
                const auto nm = cat.compose(n, m);
                const auto h = cat.hom(x, z);
                EXPECT_NE(std::find(h.begin(), h.end(), nm), h.end());
              }
          }
      EXPECT_TRUE(check_functor(pp.p1, 0).empty());
      EXPECT_TRUE(check_functor(pp.p2, 0).empty());
      ASSERT_TRUE(pp.filler_iso);
      EXPECT_TRUE(check_natural_iso(*pp.filler_iso, 0).empty());
    }
}

TEST(Pseudopullback, SymmetricUpToEquivalence) {
  const auto c = arrow_category(), d = discrete_category(2), e = iso_category();
  for (const auto& ft : all_functors(c, e))
    for (const auto& gt : all_functors(d, e)) {
      const auto f = table_functor(c, e, ft), g = table_functor(d, e, gt);
      const auto fg = pseudopullback(f, g), gf = pseudopullback(g, f);
      using A = BiObject<TableCategory, TableCategory, TableCategory>;
      using AM = BiMorphism<TableCategory, TableCategory, TableCategory>;
      auto rev = [](const A& x) { return A{x.d, x.c, x.phi_inv, x.phi}; };
      Functor<BiCategory<TableCategory, TableCategory, TableCategory>,
              BiCategory<TableCategory, TableCategory, TableCategory>>
          swap{"swap", fg.category, gf.category, rev,
               [rev](const AM& m) { return AM{rev(m.source), rev(m.target), m.v, m.u}; }};
      EXPECT_TRUE(check_functor(swap, 0).empty());
      EXPECT_EQ(is_equivalence(swap, 0).level, EquivalenceLevel::Equivalence);
    }
}

TEST(Comma, InvertibleFilterIsThePseudopullback) {
  const auto c = arrow_category(), d = arrow_category(), e = chain_category(3);
  for (const auto& ft : all_functors(c, e))
    for (const auto& gt : all_functors(d, e)) {
      const auto f = table_functor(c, e, ft), g = table_functor(d, e, gt);
      const auto cm = comma(f, g), pp = pseudopullback(f, g);
      std::vector<BiObject<TableCategory, TableCategory, TableCategory>> filtered;
      const auto ec = to_category(e);
      for (const auto& x : cm.category.objects(0))
        for (const auto& back : ec.hom(ec.cod(x.phi), ec.dom(x.phi)))
          if (ec.compose(back, x.phi) == ec.identity(ec.dom(x.phi)) &&
              ec.compose(x.phi, back) == ec.identity(ec.cod(x.phi)))
            filtered.push_back(x);
      const auto objs = pp.category.objects(0);
      ASSERT_EQ(filtered.size(), objs.size());
      for (std::size_t i = 0; i < objs.size(); ++i) {
        EXPECT_EQ(filtered[i].c, objs[i].c);
        EXPECT_EQ(filtered[i].phi, objs[i].phi);
      }
      EXPECT_TRUE(check_natural(cm.filler, 0).empty());
    }
}

TEST(Pseudopullback, FullyFaithfulLegGivesFullyFaithfulProjection) {
  const auto e = chain_category(3);
  const auto c = arrow_category();
  for (const auto& sub : subcategories(e)) {
    const auto s = subcategory(e, sub.objects, sub.morphisms);
    const auto g = table_functor(s, e, inclusion_table(s));
    if (!is_full(g, 0).holds) continue;
    for (const auto& ft : all_functors(c, e)) {
      const auto pp = pseudopullback(table_functor(c, e, ft), g);
      EXPECT_TRUE(is_faithful(pp.p1, 0).holds);
      EXPECT_TRUE(is_full(pp.p1, 0).holds);
    }
  }
}

TEST(Pseudopullback, UniversalPropertyAgainstSmallCategories) {
  const auto c = arrow_category(), d = iso_category(), e = iso_category();
  const auto ft = all_functors(c, e).at(1), gt = identity_table(e);
  const auto f = table_functor(c, e, ft), g = table_functor(d, e, gt);
  const auto pp = pseudopullback(f, g);
  std::size_t cones = 0;
  for (const auto& t : small_tables()) {
    const auto tc = to_category(t);
    for (const auto& ht : all_functors(t, c))
      for (const auto& kt : all_functors(t, d)) {
        const auto h = to_functor(ht, tc, to_category(c));
        const auto k = to_functor(kt, tc, to_category(d));
        for (const auto& psi : natural_isomorphisms(compose(f, h), compose(g, k))) {
          ++cones;
          using A = BiObject<TableCategory, TableCategory, TableCategory>;
          using AM = BiMorphism<TableCategory, TableCategory, TableCategory>;
          auto obj = [h, k, psi](const std::string& x) { return A{h.obj(x), k.obj(x), psi.at(x), psi.inverse_at(x)}; };
          Functor<TableCategory, BiCategory<TableCategory, TableCategory, TableCategory>> m{
              "M", tc, pp.category, obj, [h, k, obj, tc](const std::string& u) {
                return AM{obj(tc.dom(u)), obj(tc.cod(u)), h.mor(u), k.mor(u)};
              }};
          EXPECT_TRUE(check_functor(m, 0).empty()) << t.name;
          for (const auto& x : t.objects) {
            EXPECT_EQ(pp.p1.obj(m.obj(x)), h.obj(x));
            EXPECT_EQ(pp.p2.obj(m.obj(x)), k.obj(x));
            EXPECT_EQ(pp.filler.at(m.obj(x)), psi.at(x));
          }
          // mediating morphisms are genuine morphisms of the pseudopullback
          for (const auto& u : t.morphisms) {
            const auto hs = pp.category.hom(m.obj(u.dom), m.obj(u.cod));
            EXPECT_EQ(std::count(hs.begin(), hs.end(), m.mor(u.id)), 1);
          }
        }
      }
  }
  EXPECT_GT(cones, 0u);
}

TEST(PseudopullbackSquare, ConstructedCornerHolds) {
  const auto c = arrow_category(), e = iso_category();
  const auto f = table_functor(c, e, all_functors(c, e).at(1));
  const auto g = table_functor(e, e, identity_table(e));
  const auto pp = pseudopullback(f, g);
  using P = BiCategory<TableCategory, TableCategory, TableCategory>;
  BiSquare<P, TableCategory, TableCategory, TableCategory> sq{pp.p1, pp.p2, f, g, *pp.filler_iso};
  EXPECT_TRUE(is_pseudopullback_square(sq, 0).holds);

  // drop one whole iso class of the corner
  const auto objs = pp.category.objects(0);
  const auto removed = objs.front();
  auto keep = [cat = pp.category, removed](const ObjectOf<P>& x) { return !are_isomorphic(cat, x, removed); };
  P sub = pp.category;
  sub.objects = [all = pp.category.objects, keep](std::size_t b) {
    std::vector<ObjectOf<P>> out;
    for (const auto& x : all(b))
      if (keep(x)) out.push_back(x);
    return out;
  };
  auto restrict_to = [&](auto fn) {
    fn.source = sub;
    return fn;
  };
  auto psi = *pp.filler_iso;
  psi.forward.source = compose(f, restrict_to(pp.p1));
  psi.forward.target = compose(g, restrict_to(pp.p2));
  BiSquare<P, TableCategory, TableCategory, TableCategory> bad{restrict_to(pp.p1), restrict_to(pp.p2), f, g, psi};
  const auto v = is_pseudopullback_square(bad, 0);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.detail.essentially_surjective);
  ASSERT_TRUE(v.detail.essentially_surjective->witness);
  const auto w = *v.detail.essentially_surjective->witness;
  EXPECT_TRUE(are_isomorphic(pp.category, w, removed));
}
