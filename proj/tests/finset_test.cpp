#include <gtest/gtest.h>

#include <set>

#include "descent/finset.hpp"
#include "descent/label.hpp"

using namespace descent;

namespace {

FinFunction fn(const FinSet& a, const FinSet& b, std::vector<std::size_t> m) {
  return make_function(a, b, std::move(m));
}

// Every finite set of size n for the exhaustive properties.
FinSet set_of(std::size_t n) { return FinSet::range(n); }

}  // namespace

TEST(Label, PairsRoundTrip) {
  const auto a = escape_atom("x,(y)");
  EXPECT_TRUE(is_valid_label(a));
  const auto p = pair_label(a, pair_label("u", "v"));
  ASSERT_TRUE(is_valid_label(p));
  const auto parts = split_pair(p);
  ASSERT_TRUE(parts);
  EXPECT_EQ(parts->first, a);
  EXPECT_EQ(parts->second, "(u,v)");
  EXPECT_EQ(unescape_atom(parts->first), "x,(y)");
  EXPECT_FALSE(is_valid_label("(a,b"));
  EXPECT_FALSE(is_valid_label("a,b"));
  EXPECT_FALSE(is_valid_label(""));
  EXPECT_FALSE(split_pair("abc"));
}

TEST(FinSet, RejectsDuplicates) {
  EXPECT_THROW(FinSet({"a", "a"}), std::invalid_argument);
  EXPECT_EQ(FinSet().size(), 0u);
}

TEST(Pullback, OverAPointIsTheProduct) {
  FinSet e({"a", "b"}), one({"*"});
  auto f = fn(e, one, {0, 0});
  auto pb = pullback(f, f);
  EXPECT_EQ(pb.object.labels(), (std::vector<std::string>{"(a,a)", "(a,b)", "(b,a)", "(b,b)"}));
}

TEST(Pullback, AlongIdentity) {
  FinSet z({"x", "y"}), y({"c", "d", "e"});
  auto g = fn(y, z, {1, 0, 1});
  auto pb = pullback(identity_function(z), g);
  EXPECT_TRUE(is_bijective(pb.pr2));
}

TEST(Pullback, FiltersMatchingPairs) {
  FinSet a({"a", "b"}), z({"x", "y"}), c({"c"});
  auto pb = pullback(fn(a, z, {0, 1}), fn(c, z, {0}));
  ASSERT_EQ(pb.object.size(), 1u);
  EXPECT_EQ(pb.object.label(0), "(a,c)");
}

TEST(Pullback, CodomainMismatch) {
  FinSet a({"a"}), z({"x"}), w({"y"});
  EXPECT_THROW(pullback(fn(a, z, {0}), fn(a, w, {0})), std::invalid_argument);
}

TEST(MediatingMap, IdentityAndDiagonal) {
  FinSet e({"a", "b"}), one({"*"});
  auto f = fn(e, one, {0, 0});
  auto pb = pullback(f, f);
  EXPECT_EQ(mediating_map(pb, pb.pr1, pb.pr2), identity_function(pb.object));
  auto diag = mediating_map(pb, identity_function(e), identity_function(e));
  EXPECT_EQ(pb.object.label(diag(0)), "(a,a)");
  EXPECT_EQ(pb.object.label(diag(1)), "(b,b)");
  FinSet pt({"w"});
  auto u = mediating_map(pb, fn(pt, e, {1}), fn(pt, e, {0}));
  EXPECT_EQ(pb.object.label(u(0)), "(b,a)");
}

TEST(MediatingMap, NonCommutingCone) {
  FinSet a({"a", "b"}), z({"x", "y"});
  auto f = fn(a, z, {0, 1});
  auto pb = pullback(f, f);
  FinSet pt({"w"});
  EXPECT_THROW(mediating_map(pb, fn(pt, a, {0}), fn(pt, a, {1})), std::invalid_argument);
}

TEST(Quotient, Examples) {
  FinSet x({"a", "b", "c"});
  EXPECT_EQ(quotient(x, {}).object, x);
  FinSet ab({"a", "b"});
  auto q = quotient(ab, {{0, 1}});
  EXPECT_EQ(q.object.labels(), (std::vector<std::string>{"a"}));
  auto q3 = quotient(x, {{0, 1}, {1, 2}});
  EXPECT_EQ(q3.object.size(), 1u);
  EXPECT_TRUE(is_surjective(q3.proj));
}

TEST(Quotient, KernelPairRecoversTheRelation) {
  // oracle: closure by repeated squaring of the relation matrix
  FinSet x = set_of(5);
  std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 3}, {3, 4}, {1, 1}};
  bool rel[5][5] = {};
  for (int i = 0; i < 5; ++i) rel[i][i] = true;
  for (auto [a, b] : pairs) rel[a][b] = rel[b][a] = true;
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  auto q = quotient(x, pairs);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(q.proj(i) == q.proj(j), rel[i][j]);
}

TEST(Limits, ProductEqualizerCoproduct) {
  FinSet a({"a"}), x({"p", "q"});
  auto pr = product(a, x);
  EXPECT_EQ(pr.object.size(), 2u);
  EXPECT_TRUE(is_bijective(pr.pr2));
  auto f = fn(x, x, {0, 1});
  EXPECT_EQ(equalizer(f, f).object, x);
  FinSet uv({"u", "v"});
  auto eq = equalizer(fn(x, uv, {0, 1}), fn(x, uv, {0, 0}));
  EXPECT_EQ(eq.object.labels(), (std::vector<std::string>{"p"}));
  auto co = coproduct(a, x);
  EXPECT_EQ(co.object.size(), 3u);
  EXPECT_TRUE(is_injective(co.in1) && is_injective(co.in2));
}

TEST(Properties, PullbackOfSurjectionIsSurjective) {
  for (std::size_t nz = 0; nz <= 3; ++nz)
    for (std::size_t nx = 0; nx <= 3; ++nx)
      for (std::size_t ny = 0; ny <= 3; ++ny)
        for (const auto& f : all_functions(set_of(nx), set_of(nz))) {
          if (!is_surjective(f)) continue;
          for (const auto& g : all_functions(set_of(ny), set_of(nz)))
            EXPECT_TRUE(is_surjective(pullback(f, g).pr2));
        }
}

TEST(Properties, PullbackIsSymmetricUpToSwap) {
  for (std::size_t nz = 1; nz <= 2; ++nz)
    for (const auto& f : all_functions(set_of(2), set_of(nz)))
      for (const auto& g : all_functions(set_of(3), set_of(nz))) {
        auto pfg = pullback(f, g), pgf = pullback(g, f);
        auto swap = mediating_map(pgf, pfg.pr2, pfg.pr1);
        EXPECT_TRUE(is_bijective(swap));
      }
}

TEST(Properties, MediatingMapIsUnique) {
  for (const auto& f : all_functions(set_of(2), set_of(2)))
    for (const auto& g : all_functions(set_of(2), set_of(2))) {
      auto pb = pullback(f, g);
      for (const auto& q1 : all_functions(set_of(2), set_of(2)))
        for (const auto& q2 : all_functions(set_of(2), set_of(2))) {
          if (!(compose(f, q1) == compose(g, q2))) continue;
          auto u = mediating_map(pb, q1, q2);
          int matches = 0;
          for (const auto& v : all_functions(set_of(2), pb.object))
            if (compose(pb.pr1, v) == q1 && compose(pb.pr2, v) == q2) ++matches;
          EXPECT_EQ(matches, 1);
          EXPECT_EQ(compose(pb.pr1, u), q1);
        }
    }
}

TEST(Functions, Enumeration) {
  EXPECT_EQ(all_functions(set_of(2), set_of(3)).size(), 9u);
  EXPECT_EQ(all_functions(set_of(0), set_of(0)).size(), 1u);
  EXPECT_EQ(all_functions(set_of(1), set_of(0)).size(), 0u);
}
