#include <gtest/gtest.h>

#include <stdexcept>

#include "descent/theorems.hpp"

using namespace descent;

namespace {

FinFunction map_of(std::size_t ne, std::size_t nb, std::vector<std::size_t> m) {
  return make_function(FinSet::range(ne), FinSet::range(nb), std::move(m));
}

std::size_t stirling2(std::size_t n, std::size_t k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::string> descriptions(const std::vector<Instance>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(describe(x));
  return out;
}

}  // namespace

TEST(Generators, SameSeedSameStream) {
  for (auto kind : {HarnessKind::Effective, HarnessKind::Galois, HarnessKind::BeckChevalley}) {
    GeneratorOptions a;
    a.seed = 7;
    a.count = 12;
    auto b = a;
    b.seed = 8;
    EXPECT_EQ(descriptions(generate_instances(kind, a)), descriptions(generate_instances(kind, a)));
    EXPECT_NE(descriptions(generate_instances(kind, a)), descriptions(generate_instances(kind, b)));
    EXPECT_EQ(generate_instances(kind, a).size(), 12u);
  }
}

TEST(Generators, ExhaustiveSurjectionsMatchStirlingNumbers) {
  GeneratorOptions o;
  o.exhaustive = true;
  for (std::size_t n = 0; n <= 3; ++n) {
    o.sizes = n;
    std::size_t expected = 0;
    for (std::size_t b = 0; b <= n; ++b)
      for (std::size_t e = 0; e <= n; ++e) expected += factorial(b) * stirling2(e, b);
    EXPECT_EQ(generate_instances(HarnessKind::Effective, o).size(), expected);
  }
  o.sizes = 3;
  EXPECT_EQ(generate_instances(HarnessKind::Effective, o).size(), 18u);
}

TEST(Generators, ExhaustiveCeiling) {
  GeneratorOptions o;
  o.exhaustive = true;
  o.sizes = exhaustive_ceiling + 1;
  EXPECT_THROW(generate_instances(HarnessKind::Coherence, o), std::invalid_argument);
}

TEST(Generators, HarnessKindNames) {
  for (const auto& [kind, name] : harness_kinds()) {
    EXPECT_EQ(to_string(kind), name);
    EXPECT_EQ(parse_harness_kind(name), kind);
  }
  EXPECT_FALSE(parse_harness_kind("bogus"));
}

TEST(Generators, ConstantChainEmbeddings) {
  // one full subcategory per subset of the three objects
  const auto es = constant_embeddings(chain_category(3));
  EXPECT_EQ(es.size(), 8u);
  for (const auto& e : es) EXPECT_EQ(check_embedding(e, 0).verdict, Verdict::Pass);
}

TEST(MapSuites, EffectiveAndNonSurjective) {
  const auto fold = map_of(2, 1, {0, 0});
  EXPECT_EQ(check_effective(fold, 4).verdict, Verdict::Pass);
  EXPECT_EQ(check_nonsurjective(fold, 4).verdict, Verdict::Skip);
  const auto into = map_of(1, 2, {0});
  const auto r = check_nonsurjective(into, 4);
  EXPECT_EQ(r.verdict, Verdict::Pass) << r.detail;
  EXPECT_EQ(r.witnesses.size(), 2u);
  EXPECT_EQ(check_effective(into, 4).verdict, Verdict::Skip);
}

TEST(MapSuites, BrAndCoherence) {
  const auto p = map_of(3, 2, {0, 1, 1});
  EXPECT_EQ(check_br({p}, 3).verdict, Verdict::Pass);
  EXPECT_EQ(check_coherence(p, 3).verdict, Verdict::Pass);
  EXPECT_EQ(check_beck_chevalley({p, map_of(2, 2, {1, 1})}, 2).verdict, Verdict::Pass);
}

TEST(Galois, FullRestrictionIsEffectiveAndPullback) {
  const auto r = check_galois({map_of(2, 1, {0, 0}), {}}, 3);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.detail, "A effective: yes, square is a pseudopullback: yes");
}

TEST(Galois, DeletedClassFailsBothSides) {
  const auto r = check_galois({map_of(2, 1, {0, 0}), {std::nullopt, std::vector<std::size_t>{1}}}, 3);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.detail, "A effective: no, square is a pseudopullback: no");
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(Galois, SkipsCarryReasons) {
  const auto r = check_galois({map_of(1, 2, {0}), {}}, 3);
  EXPECT_EQ(r.verdict, Verdict::Skip);
  EXPECT_NE(r.detail.find("skipped"), std::string::npos);
}

TEST(Embedding, ProductWithTwoPointsIsFaithfulButNotFull) {
  const auto r = check_embedding({ProductEmbedding{map_of(2, 1, {0, 0}), 2}}, 3);
  EXPECT_EQ(r.verdict, Verdict::Pass) << r.detail;
  EXPECT_NE(r.detail.find("not full"), std::string::npos);
  EXPECT_EQ(r.detail.find("not faithful"), std::string::npos);
  const auto one = check_embedding({ProductEmbedding{map_of(2, 1, {0, 0}), 1}}, 3);
  EXPECT_EQ(one.verdict, Verdict::Pass);
  EXPECT_EQ(one.detail.find("not full"), std::string::npos);
}

TEST(Embedding, Subdiagrams) {
  const auto p = map_of(2, 1, {0, 0});
  for (const auto& r : restriction_menu(1, 2)) {
    const auto c = check_embedding({SubdiagramEmbedding{p, r}}, 3);
    EXPECT_NE(c.verdict, Verdict::Fail) << describe(r) << ": " << c.detail;
  }
}

TEST(Pseudopullback, TrivialRestrictionsAndJ) {
  const auto trivial = check_pseudopullback_theorem({map_of(2, 1, {0, 0}), {}, {}, ""}, 2);
  EXPECT_EQ(trivial.verdict, Verdict::Pass) << trivial.detail;
  const auto j = check_pseudopullback_theorem(discrete_into_sets_instance(), 2);
  EXPECT_EQ(j.verdict, Verdict::Pass) << j.detail;
}

TEST(Pseudopullback, NonSurjectiveMapIsSkipped) {
  const auto r = check_pseudopullback_theorem({map_of(1, 2, {0}), {}, {}, ""}, 2);
  EXPECT_EQ(r.verdict, Verdict::Skip);
  EXPECT_NE(r.detail.find("hypotheses"), std::string::npos);
}

TEST(Mutations, BrokenTriangleIsDetected) {
  const auto r = check_mutation({Mutation::BrokenTriangle});
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_NE(r.detail.find("br"), std::string::npos);
}

TEST(Mutations, UnmutatedSuitesAreClean) {
  for (const auto& o : run_map_suites(Mutation::None, 1)) EXPECT_EQ(o.failures, 0u) << o.suite;
}

TEST(ParallelMap, KeepsInputOrder) {
  std::vector<int> xs(200);
  for (int i = 0; i < 200; ++i) xs[static_cast<std::size_t>(i)] = i;
  const auto ys = parallel_map(xs, [](int x) { return x * x; }, 4);
  ASSERT_EQ(ys.size(), xs.size());
  for (std::size_t i = 0; i < ys.size(); ++i) EXPECT_EQ(ys[i], xs[i] * xs[i]);
  EXPECT_TRUE(parallel_map(std::vector<int>{}, [](int x) { return x; }, 4).empty());
}

TEST(ParallelMap, RethrowsFirstFailureByPosition) {
  std::vector<int> xs = {0, 1, 2, 3, 4, 5};
  try {
    parallel_map(xs, [](int x) -> int {
      if (x >= 2) throw std::runtime_error(std::to_string(x));
      return x;
    }, 3);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "2");
  }
}

TEST(Harness, ReportsAreOrderedAndCounted) {
  GeneratorOptions o;
  o.exhaustive = true;
  o.sizes = 2;
  const auto rep = run_harness(HarnessKind::Coherence, o);
  const auto expected = descriptions(generate_instances(HarnessKind::Coherence, o));
  ASSERT_EQ(rep.results.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(rep.results[i].instance, expected[i]);
  EXPECT_EQ(rep.count(Verdict::Pass), rep.results.size());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.bound, default_bound(HarnessKind::Coherence));
}
