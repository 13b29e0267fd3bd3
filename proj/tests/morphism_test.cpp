#include <gtest/gtest.h>

#include "generators.hpp"
#include "rsg/morphism.hpp"

using namespace rsg;

namespace {

FinRelation lagrangian_as_relation(const FinSet& pt, const FinSet& x, const std::vector<std::uint32_t>& lag) {
  std::vector<FinRelation::Tuple> t;
  for (auto l : lag) t.push_back({0, l});
  return FinRelation({pt}, {x}, t);
}

}  // namespace

TEST(Morphism, IdentityIsSelfEquivalence) {
  const auto g = from_group(groups::dihedral(3));
  const auto r = check_equivalence(g, g, FiniteCarrier::identity(g.carrier));
  EXPECT_TRUE(r.preconditions);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
}

// For a groupoid L2 is the identity on arrows.
TEST(Morphism, L2IsSelfEquivalence) {
  for (const auto& g : {from_groupoid(pair_groupoid("p3", {"a", "b", "c"})), parity_counterexample(6)}) {
    const auto d = derive(g);
    const auto r = check_equivalence(g, g, d.L2);
    EXPECT_TRUE(r.pass()) << g.name << "\n" << r.to_json().dump(2);
  }
}

TEST(Morphism, InversionToOpposite) {
  for (const auto& t : {groups::dihedral(3), groups::quaternion(), groups::abelian({2, 2})}) {
    const auto g = from_group(t);
    const auto opp = opposite(g);
    EXPECT_TRUE(check_axioms(opp).premises_hold());
    const auto r = check_equivalence(g, opp, inversion_map(g));
    EXPECT_TRUE(r.pass()) << t.name << "\n" << r.to_json().dump(2);
    // The identity map is not a morphism onto the opposite of a non-abelian group.
    const bool abelian = t.name == "Z2xZ2";
    const auto id = FinRelation(g.carrier, opp.carrier, FiniteCarrier::identity(g.carrier).tuples());
    EXPECT_EQ(check_morphism(g, opp, id).pass(), abelian) << t.name;
  }
}

TEST(Morphism, LinearInversionToOpposite) {
  const auto g = linear_pair_groupoid(SymplecticSpace::standard(1));
  const auto r = check_equivalence(g, opposite(g), inversion_map(g));
  EXPECT_TRUE(r.preconditions);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
}

TEST(Morphism, ArbitraryRelationFailsWithWitness) {
  const auto g = from_group(groups::abelian({5}));
  const FinRelation f(g.carrier, g.carrier, {{0, 1}});
  const auto r = check_morphism(g, g, f);
  EXPECT_TRUE(r.preconditions);
  EXPECT_FALSE(r.pass());
  // F o I = {(0, 1)} while I o F = {(0, 4)}.
  const auto& inv = r.verdict.at("morphism.inversion");
  EXPECT_FALSE(inv.pass);
  EXPECT_EQ(inv.witness["only_lhs"], nlohmann::json::array({{"0", "1"}}));
  EXPECT_EQ(inv.witness["only_rhs"], nlohmann::json::array({{"0", "4"}}));
}

TEST(Morphism, PreconditionsReportFailingAxioms) {
  const auto g = counterexample_zk(5);
  const auto r = check_morphism(g, g, FiniteCarrier::identity(g.carrier));
  EXPECT_FALSE(r.preconditions);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.to_json()["preconditions"]);
}

TEST(Morphism, RejectsMistypedRelation) {
  const auto g = from_group(groups::abelian({3}));
  const auto h = from_group(groups::abelian({4}));
  EXPECT_THROW(check_morphism(g, h, FiniteCarrier::identity(g.carrier)), Error);
}

TEST(Equivalence, LagrangianExampleToPoint) {
  const FinSet x("X", {"a", "b", "c", "d"});
  const auto g = lagrangian_example("lag", x, {1, 3}, {0, 3, 2, 1});
  const auto pt = finite_point();
  const auto f = lagrangian_as_relation(pt.carrier.at(0), x, {1, 3});
  const auto r = check_equivalence(pt, g, f);
  EXPECT_TRUE(r.preconditions);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  // A different subset is not an equivalence.
  EXPECT_FALSE(check_equivalence(pt, g, lagrangian_as_relation(pt.carrier.at(0), x, {1})).pass());
}

TEST(Equivalence, LinearLagrangianExampleToPoint) {
  const auto v = SymplecticSpace::standard(1);
  const Subspace lag = Subspace::span({Vector{1, 0}}, 2);
  const auto g = lagrangian_example("lag", v, lag, Matrix::from_rows({Vector{1, 0}, Vector{0, -1}}, 2));
  const auto pt = linear_point();
  const auto r = check_equivalence(pt, g, LinearRelation(pt.carrier, v, lag));
  EXPECT_TRUE(r.preconditions);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
}

TEST(Equivalence, CompositeOfEquivalences) {
  const auto pt = finite_point();
  const FinSet x("X", {"a", "b", "c"}), y("Y", {"u", "v", "w", "z"});
  const auto gx = lagrangian_example("lx", x, {0, 2}, {2, 1, 0});
  const auto gy = lagrangian_example("ly", y, {3}, {0, 1, 2, 3});
  const auto fx = lagrangian_as_relation(pt.carrier.at(0), x, {0, 2});
  const auto fy = lagrangian_as_relation(pt.carrier.at(0), y, {3});
  const auto f = compose(transpose(fx), fy);
  const auto r = check_equivalence(gx, gy, f);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);

  const auto g = from_group(groups::dihedral(3));
  const auto opp = opposite(g), opp2 = opposite(opp);
  const auto twice = compose(inversion_map(g), inversion_map(opp));
  EXPECT_TRUE(check_equivalence(g, opp2, twice).pass());
  EXPECT_EQ(twice.tuples(), FiniteCarrier::identity(g.carrier).tuples());
}

TEST(Projection, FinitePairGroupoidOntoQuotient) {
  const auto g = from_groupoid(pair_groupoid("p3", {"1", "2", "3"}));
  const auto reg = check_regular(g);
  const auto q = build_quotient(g, reg);
  const auto pr = projection_equivalence(g, reg, q);
  const auto r = check_equivalence(g, pr.quotient, pr.projection);
  EXPECT_TRUE(r.preconditions);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
}

TEST(Projection, FiniteParityOntoQuotient) {
  for (long k : {4L, 6L}) {
    const auto g = parity_counterexample(k);
    const auto reg = check_regular(g);
    const auto q = build_quotient(g, reg);
    const auto pr = projection_equivalence(g, reg, q);
    const auto r = check_equivalence(g, pr.quotient, pr.projection);
    EXPECT_TRUE(r.pass()) << k << "\n" << r.to_json().dump(2);
  }
}

TEST(Projection, LagrangianExampleOntoQuotient) {
  const auto g = lagrangian_example("lag", FinSet("X", {"a", "b", "c"}), {0, 1}, {1, 0, 2});
  const auto reg = check_regular(g);
  const auto pr = projection_equivalence(g, reg, build_quotient(g, reg));
  EXPECT_EQ(pr.quotient.carrier.at(0).size(), 1u);
  EXPECT_TRUE(check_equivalence(g, pr.quotient, pr.projection).pass());
}

TEST(Projection, LinearOntoQuotient) {
  gen::Rng rng(11);
  std::vector<LinearRsg> cases = {
      linear_pair_groupoid(SymplecticSpace::standard(1)),
      lagrangian_example("lag", SymplecticSpace::standard(1), Subspace::span({Vector{1, 0}}, 2),
                         Matrix::from_rows({Vector{1, 0}, Vector{0, -1}}, 2)),
      linear_pair_groupoid(gen::random_space(rng, 1))};
  for (const auto& g : cases) {
    const auto reg = check_regular(g);
    const auto q = build_quotient(g, reg);
    const auto pr = projection_equivalence(g, reg, q);
    const auto r = check_equivalence(g, pr.quotient, pr.projection);
    EXPECT_TRUE(r.preconditions) << g.name;
    EXPECT_TRUE(r.pass()) << g.name << "\n" << r.to_json().dump(2);
  }
}

// I on G^n is conj(p) ; I ; p^T, whose square is p^T p rather than the
// identity once n > 1, so only the n = 1 case meets the preconditions.
TEST(Equivalence, ReducedPowerAlongIteratedProduct) {
  const auto g = linear_pair_groupoid(SymplecticSpace::standard(1));
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto rp = reduced_power(g, n);
    ASSERT_TRUE(rp.verdict.pass()) << rp.verdict.to_json().dump(2);
    const auto r = check_equivalence(rp.rsg, g, rp.p);
    EXPECT_TRUE(r.pass()) << n << "\n" << r.to_json().dump(2);
    EXPECT_EQ(r.preconditions, n == 1) << n;
    const auto ax = check_axioms(rp.rsg);
    EXPECT_EQ(ax.axioms.at("A2").pass(), n == 1);
    for (const char* a : {"A1", "A3", "A4", "A5", "A6"}) EXPECT_TRUE(ax.axioms.at(a).pass()) << n << " " << a;
  }
}
