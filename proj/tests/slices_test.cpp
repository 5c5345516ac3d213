#include <gtest/gtest.h>

#include <set>

#include "descent/slices.hpp"

using namespace descent;

namespace {

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Every function into the base, as a slice object; the generator for the
// exhaustive properties below.
std::vector<SliceObject> objects_over(const FinSet& b, std::size_t max_size) {
  std::vector<SliceObject> out;
  for (std::size_t n = 0; n <= max_size; ++n)
    for (const auto& f : all_functions(FinSet::range(n), b)) out.push_back(f);
  return out;
}

}  // namespace

TEST(Slice, FiberSizeVectorsAreCounted) {
  // vectors of length n with sum at most k: C(n + k, n)
  EXPECT_EQ(fiber_size_vectors(2, 3).size(), 10u);
  EXPECT_EQ(fiber_size_vectors(3, 2).size(), 10u);
  EXPECT_EQ(fiber_size_vectors(0, 5).size(), 1u);
  for (const auto& v : fiber_size_vectors(3, 3)) {
    const auto x = canonical_object(FinSet::range(3), v);
    EXPECT_EQ(fiber_sizes(x), v);
  }
}

TEST(Slice, HomCountsAreProductsOverFibers) {
  const auto b = FinSet::range(2);
  for (const auto& x : objects_over(b, 3))
    for (const auto& y : objects_over(b, 3)) {
      const auto sx = fiber_sizes(x), sy = fiber_sizes(y);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < sx.size(); ++i) expected *= power(sy[i], sx[i]);
      const auto homs = slice_hom(x, y);
      ASSERT_EQ(homs.size(), expected);
      for (const auto& m : homs) EXPECT_TRUE(is_slice_morphism(m));
      EXPECT_EQ(std::set<SliceMorphism>(homs.begin(), homs.end()).size(), homs.size());
    }
}

TEST(Slice, IsomorphismsArePermutationsWithinFibers) {
  const auto b = FinSet::range(2);
  for (const auto& x : objects_over(b, 4)) {
    std::size_t expected = 1;
    for (auto n : fiber_sizes(x)) expected *= factorial(n);
    const auto isos = slice_isos(x, canonical_object(b, fiber_sizes(x)));
    ASSERT_EQ(isos.size(), expected);
    for (const auto& [f, g] : isos) {
      EXPECT_EQ(slice_compose(g, f), slice_identity(x));
      EXPECT_EQ(slice_compose(f, g), slice_identity(f.target));
      EXPECT_TRUE(slice_inverse(f).has_value());
    }
  }
  EXPECT_TRUE(slice_isos(canonical_object(b, {1, 0}), canonical_object(b, {0, 1})).empty());
}

TEST(Slice, CategoryLaws) {
  const auto c = slice(FinSet::range(2));
  EXPECT_TRUE(check_functor(identity_functor(c), 2).empty());
  const auto objs = c.objects(2);
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& z : objs)
        for (const auto& f : c.hom(x, y))
          for (const auto& g : c.hom(y, z)) {
            const auto gf = c.compose(g, f);
            EXPECT_EQ(gf.source, x);
            EXPECT_EQ(gf.target, z);
            EXPECT_EQ(gf.as_function(), compose(g.as_function(), f.as_function()));
          }
}

TEST(Slice, FiberSwap) {
  const auto b = FinSet::range(2);
  const auto x = canonical_object(b, {1, 3});
  const auto s = fiber_swap(x);
  EXPECT_TRUE(is_slice_morphism(s));
  EXPECT_NE(s, slice_identity(x));
  EXPECT_EQ(slice_compose(s, s), slice_identity(x));
  EXPECT_EQ(fiber_swap(canonical_object(b, {1, 1})), slice_identity(canonical_object(b, {1, 1})));
}

TEST(ChangeOfBase, FiberSizesArePulledBack) {
  const auto e = FinSet::range(2);
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& p : all_functions(FinSet::range(n), e)) {
      ChangeOfBase pull(p);
      for (const auto& x : objects_over(e, 3)) {
        const auto px = pull.obj(x);
        const auto sx = fiber_sizes(x);
        const auto s = fiber_sizes(px);
        ASSERT_EQ(px.cod, p.dom);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s[i], sx[p(i)]);
        // the projection lands in the matching fiber
        const auto& pr = pull.projection(x);
        for (std::size_t j = 0; j < px.dom.size(); ++j) EXPECT_EQ(x(pr[j]), p(px(j)));
      }
      EXPECT_TRUE(check_functor(pull.functor("p*"), 2).empty());
    }
}

TEST(ChangeOfBase, ChosenPullbackIsStable) {
  const auto p = make_function(FinSet::range(3), FinSet::range(2), {0, 1, 1});
  ChangeOfBase pull(p);
  const auto x = canonical_object(FinSet::range(2), {2, 1});
  EXPECT_EQ(pull.pullback_of(x).get(), pull.pullback_of(x).get());
  EXPECT_EQ(pull.obj(x), ChangeOfBase(p).obj(x));
}

TEST(SigmaPullback, HomBijection) {
  // |Hom(Σ_p W, Y)| = |Hom(W, p*Y)|, and the transpose through the
  // adjunction is a bijection
  const auto e = FinSet::range(2);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& p : all_functions(FinSet::range(n), e)) {
      const auto adj = sigma_pullback_adjunction(p);
      for (const auto& w : objects_over(p.dom, 2))
        for (const auto& y : objects_over(e, 2)) {
          const auto left = slice_hom(adj.left.obj(w), y);
          const auto right = slice_hom(w, adj.right.obj(y));
          ASSERT_EQ(left.size(), right.size());
          std::set<SliceMorphism> transposes;
          for (const auto& h : left)
            transposes.insert(slice_compose(adj.right.mor(h), adj.unit.at(w)));
          EXPECT_EQ(transposes.size(), right.size());
        }
    }
}

TEST(SigmaPullback, TrianglesHold) {
  const auto e = FinSet::range(2);
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& p : all_functions(FinSet::range(n), e)) {
      const auto adj = sigma_pullback_adjunction(p);
      EXPECT_TRUE(check_natural(adj.unit, 2).empty());
      EXPECT_TRUE(check_natural(adj.counit, 2).empty());
      EXPECT_TRUE(check_triangles(adj, 2).empty()) << show(p);
    }
}

TEST(SigmaPullback, BrokenTriangleIsCaught) {
  const auto p = make_function(FinSet::range(1), FinSet::range(1), {0});
  const auto adj = sigma_pullback_adjunction(p, Mutation::BrokenTriangle);
  EXPECT_FALSE(check_triangles(adj, 2).empty());
}

TEST(CanonicalComparison, MatchesPartners) {
  const auto p = make_function(FinSet::range(2), FinSet::range(1), {0, 0});
  ChangeOfBase pull(p);
  const auto x = canonical_object(FinSet::range(1), {2});
  const auto a = pull.obj(x), b = ChangeOfBase(p).obj(x);
  const auto m = canonical_comparison(a, pull.projection(x), b, pull.projection(x), x.dom.size());
  EXPECT_EQ(m, slice_identity(a));
  EXPECT_THROW(canonical_comparison(a, pull.projection(x), canonical_object(FinSet::range(2), {1, 1}),
                                    {0, 1}, 2),
               std::invalid_argument);
}
