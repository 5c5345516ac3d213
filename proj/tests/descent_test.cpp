#include <gtest/gtest.h>

#include "descent/descent.hpp"

using namespace descent;

namespace {

FinFunction map_of(std::size_t ne, std::size_t nb, std::vector<std::size_t> m) {
  return make_function(FinSet::range(ne), FinSet::range(nb), std::move(m));
}

// rho as a family of bijections rho_(e,e'): W_e -> W_e', read elementwise.
struct Elementwise {
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, std::size_t>> at;
};

Elementwise elementwise(const FinFunction& p, const SliceDatum& x) {
  const auto e2 = pullback(p, p);
  const auto d1 = pullback(x.w, e2.pr1);
  const auto d0 = pullback(x.w, e2.pr2);
  Elementwise r;
  for (std::size_t j = 0; j < d1.object.size(); ++j) {
    const auto k = d1.pr2.map[j];
    r.at[{e2.pr1.map[k], e2.pr2.map[k]}][d1.pr1.map[j]] = d0.pr1.map[x.rho.map[j]];
  }
  return r;
}

// Independent oracle: rho_(e,e) = id and rho_(e',e'') ∘ rho_(e,e') = rho_(e,e'').
bool oracle_is_datum(const FinFunction& p, const SliceDatum& x) {
  const auto r = elementwise(p, x);
  const auto fw = fibers(x.w);
  for (std::size_t e = 0; e < p.dom.size(); ++e)
    for (auto w : fw[e])
      if (r.at.at({e, e}).at(w) != w) return false;
  for (std::size_t a = 0; a < p.dom.size(); ++a)
    for (std::size_t b = 0; b < p.dom.size(); ++b)
      for (std::size_t c = 0; c < p.dom.size(); ++c) {
        if (p(a) != p(b) || p(b) != p(c)) continue;
        for (auto w : fw[a])
          if (r.at.at({b, c}).at(r.at.at({a, b}).at(w)) != r.at.at({a, c}).at(w)) return false;
      }
  return true;
}

}  // namespace

TEST(DescentDatum, ThetaIsADatum) {
  const auto p = map_of(3, 2, {0, 0, 1});
  const auto D = basic_fibration(p);
  for (const auto& x : D.c0->objects(3)) {
    auto check = is_descent_datum(D, D.d->obj(x), D.theta->at(x));
    EXPECT_TRUE(check.ok) << check.equation;
  }
}

TEST(DescentDatum, AgreesWithElementwiseOracle) {
  for (const auto& p : {map_of(2, 1, {0, 0}), map_of(3, 2, {0, 1, 1}), map_of(3, 1, {0, 0, 0})}) {
    const auto D = basic_fibration(p);
    std::size_t agreed = 0;
    for (const auto& w : D.c1.objects(4))
      for (const auto& [rho, inv] : isomorphisms(D.c2, D.d1.obj(w), D.d0.obj(w))) {
        SliceDatum x{w, rho, inv};
        EXPECT_EQ(is_descent_datum(D, w, rho).ok, oracle_is_datum(p, x)) << show(rho);
        ++agreed;
      }
    EXPECT_GT(agreed, 0u);
  }
}

TEST(DescentCategory, TwoToOneCounts) {
  const auto p = map_of(2, 1, {0, 0});
  const auto D = basic_fibration(p);
  // raw data with |W| <= 4: fibers (0,0), (1,1), (2,2) with 1, 1, 2 choices
  EXPECT_EQ(raw_descent_data(D, 4).size(), 4u);
  const auto desc = descent_category(D);
  EXPECT_EQ(desc.objects(4).size(), 3u);
  EXPECT_EQ(desc.objects(2).size(), 2u);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(identity_function(FinSet::range(2)), 3).level, DescentClass::Effective);
  EXPECT_EQ(classify(map_of(2, 1, {0, 0}), 4).level, DescentClass::Effective);
  auto c = classify(map_of(1, 2, {0}), 4);
  EXPECT_EQ(c.level, DescentClass::NotAlmost);
  ASSERT_TRUE(c.detail.faithful.witness);
}

TEST(Descend, Examples) {
  const auto p = map_of(2, 1, {0, 0});
  const auto D = basic_fibration(p);
  const auto desc = descent_category(D);
  for (const auto& x : desc.objects(4)) {
    const auto g = descend(D, p, x);
    EXPECT_EQ(g.glued.dom.size() * 2, x.w.dom.size());
  }
}
