#include "lts/elliptic.hpp"
#include "lts/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace lts;

namespace {
RootDatum cat(const std::string& name) { return *catalog_datum(name); }
IntMatrix mat(std::vector<IntVec> rows) { return IntMatrix::from_rows(rows); }
TorusPoint pt(RatVec v) { return make_torus_point(std::move(v)); }
}  // namespace

TEST(Elliptic, TorusPointOrder) {
  auto t = pt({Rational(3, 2), Rational(-1, 3)});
  EXPECT_EQ(t.coords, (RatVec{Rational(1, 2), Rational(2, 3)}));
  EXPECT_EQ(t.order, 6);
}

TEST(Elliptic, Centralizers) {
  auto sl2 = untwisted_component(cat("sl2"));
  auto [c0, p0] = centralizer(sl2, pt({0}));
  EXPECT_EQ(cartan_type(c0), "A1");
  EXPECT_EQ(p0, 1);
  auto [c1, p1] = centralizer(sl2, pt({Rational(1, 2)}));
  EXPECT_EQ(cartan_type(c1), "A1");
  EXPECT_EQ(p1, 1);
  auto [c2, p2] = centralizer(untwisted_component(cat("pgl2")), pt({Rational(1, 2)}));
  EXPECT_EQ(cartan_type(c2), "T1");
  EXPECT_EQ(p2, 2);
  EXPECT_TRUE(is_elliptic(sl2, pt({Rational(1, 2)})));
  EXPECT_FALSE(is_elliptic(untwisted_component(cat("pgl2")), pt({Rational(1, 2)})));
  EXPECT_FALSE(is_elliptic(untwisted_component(cat("gl1")), pt({0})));
}

TEST(Elliptic, SmallCases) {
  auto sl2 = elliptic_classes(untwisted_component(cat("sl2")));
  ASSERT_EQ(sl2.size(), 2u);
  EXPECT_EQ(sl2[0].rep.coords, RatVec{0});
  EXPECT_EQ(sl2[1].rep.coords, RatVec{Rational(1, 2)});
  for (const auto& s : sl2) {
    EXPECT_EQ(s.pi0, 1);
    EXPECT_TRUE(s.central);
  }
  auto pgl2 = elliptic_classes(untwisted_component(cat("pgl2")));
  ASSERT_EQ(pgl2.size(), 1u);
  EXPECT_EQ(pgl2[0].rep.coords, RatVec{0});
  EXPECT_TRUE(elliptic_classes(untwisted_component(cat("gl1"))).empty());
  EXPECT_TRUE(elliptic_classes(untwisted_component(cat("gl2"))).empty());
  auto triv = elliptic_classes(untwisted_component(cat("trivial")));
  ASSERT_EQ(triv.size(), 1u);
  EXPECT_TRUE(triv[0].central);
}

TEST(Elliptic, O2Component) {
  auto o2 = elliptic_classes(component(cat("gl1"), mat({{-1}})));
  ASSERT_EQ(o2.size(), 1u);
  EXPECT_EQ(o2[0].pi0, 2);
  EXPECT_EQ(o2[0].centralizer_datum.rank(), 0u);
  EXPECT_TRUE(o2[0].elliptic);
  EXPECT_TRUE(in_centralizer_torus(o2[0], {0}));
  EXPECT_FALSE(in_centralizer_torus(o2[0], {Rational(1, 2)}));
  // Rank-2 torus with -1: a single class with 4 components.
  auto t2 = elliptic_classes(component(build_root_datum(2, {}, {}), mat({{-1, 0}, {0, -1}})));
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2[0].pi0, 4);
  // theta with a fixed direction: nothing elliptic.
  EXPECT_TRUE(elliptic_classes(component(build_root_datum(2, {}, {}), mat({{0, 1}, {1, 0}}))).empty());
}

TEST(Elliptic, SwapComponentFoldsToDiagonal) {
  auto c = component(cat("sl2xsl2"), mat({{0, 1}, {1, 0}}));
  auto classes = elliptic_classes(c);
  ASSERT_EQ(classes.size(), 2u);
  for (const auto& s : classes) {
    EXPECT_EQ(cartan_type(s.centralizer_datum), "A1");
    EXPECT_EQ(s.pi0, 1);
    EXPECT_EQ(s.torus_embedding, mat({{1}, {1}}));
    EXPECT_TRUE(in_centralizer_torus(s, {Rational(1, 2), Rational(1, 2)}));
    EXPECT_FALSE(in_centralizer_torus(s, {Rational(1, 2), 0}));
  }
  // Twisted by a Weyl element first: same classes.
  auto c2 = component(cat("sl2xsl2"), mat({{0, -1}, {1, 0}}));
  EXPECT_EQ(elliptic_classes(c2).size(), 2u);
}

TEST(Elliptic, InnerTwistIsUntwisted) {
  auto c = component(cat("sl2"), mat({{-1}}));
  auto classes = elliptic_classes(c);
  EXPECT_EQ(classes.size(), 2u);
}

TEST(Elliptic, UnsupportedTwist) {
  // Diagram automorphism of A2.
  auto d = cat("sl3");
  try {
    elliptic_classes(component(d, mat({{0, 1}, {1, 0}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TwistedUnsupported);
  }
  EXPECT_THROW(is_elliptic(component(cat("gl1"), mat({{-1}})), pt({0})), Error);
}

TEST(Elliptic, SimplyConnectedHaveConnectedCentralizers) {
  for (const auto& name : {"sl2", "sl3", "sp4"})
    for (const auto& s : elliptic_classes(untwisted_component(cat(name)))) EXPECT_EQ(s.pi0, 1) << name;
}

TEST(Elliptic, InvariantsOnCatalog) {
  for (const auto& name : catalog_datum_names()) {
    auto d = cat(name);
    const auto w = weyl_group_order(d);
    for (const auto& s : elliptic_classes(untwisted_component(d))) {
      EXPECT_TRUE(s.elliptic);
      EXPECT_EQ(s.centralizer_datum.semisimple_rank(), d.semisimple_rank());
      EXPECT_GE(s.pi0, 1);
      EXPECT_EQ(w % s.pi0, 0);
    }
  }
}

TEST(Elliptic, BasisChangeInvariantCount) {
  const IntMatrix g = mat({{2, 1}, {1, 1}});
  for (const auto& name : {"sl3", "pgl3", "so5", "g2"}) {
    auto d = cat(name);
    EXPECT_EQ(elliptic_classes(untwisted_component(transform_cocharacters(d, g))).size(),
              elliptic_classes(untwisted_component(d)).size())
        << name;
  }
}

TEST(Elliptic, MatchesGridOracle) {
  // lcm(1..8); every elliptic point of a rank <= 2 catalog datum has order dividing 6.
  for (const auto& name : catalog_datum_names()) {
    auto d = cat(name);
    const auto expected = oracle::elliptic_grid(d, 840);
    const auto got = elliptic_classes(untwisted_component(d));
    ASSERT_EQ(got.size(), expected.size()) << name;
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].rep.coords, expected[k].rep) << name;
      EXPECT_EQ(got[k].pi0, expected[k].pi0) << name;
      EXPECT_EQ(cartan_type(got[k].centralizer_datum), expected[k].type) << name;
    }
  }
}
