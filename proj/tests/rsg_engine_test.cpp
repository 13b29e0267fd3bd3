#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "rsg/rsg.hpp"

using namespace rsg;

namespace {

using Tuple = FinRelation::Tuple;

FinSet zmod(std::uint32_t k) {
  std::vector<std::string> e;
  for (std::uint32_t i = 0; i < k; ++i) e.push_back(std::to_string(i));
  return FinSet("Z/" + std::to_string(k), e);
}

std::uint32_t mod(long v, long k) { return static_cast<std::uint32_t>(((v % k) + k) % k); }

// L = {(n, m, -n - m - c)} with I = -n on Z/k.
FiniteRsg shifted(long k, long c) {
  const FinSet z = zmod(static_cast<std::uint32_t>(k));
  std::vector<std::array<std::uint32_t, 3>> l;
  std::vector<std::uint32_t> inv;
  for (long n = 0; n < k; ++n) {
    inv.push_back(mod(-n, k));
    for (long m = 0; m < k; ++m) l.push_back({mod(n, k), mod(m, k), mod(-n - m - c, k)});
  }
  return finite_rsg("shifted", z, l, inv);
}

FinRelation closed_form(const FinSignature& src, const FinSet& z, long k, const std::vector<std::vector<long>>& rows) {
  std::vector<Tuple> t;
  for (const auto& r : rows) {
    Tuple u;
    for (long v : r) u.push_back(mod(v, k));
    t.push_back(u);
  }
  FinSignature tgt{z};
  return {src, tgt, t};
}

// S3 as permutations of {0,1,2}, (a*b)(i) = a(b(i)).
struct S3 {
  std::vector<std::array<int, 3>> perms;
  S3() {
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::uint32_t index(const std::array<int, 3>& p) const {
    return static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::array<int, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
    return index(r);
  }
  std::uint32_t inv(std::uint32_t a) const {
    std::array<int, 3> r;
    for (int i = 0; i < 3; ++i) r[perms[a][i]] = i;
    return index(r);
  }
  FinSet set() const {
    std::vector<std::string> e;
    for (const auto& p : perms) e.push_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
    return FinSet("S3", e);
  }
};

// Pair groupoid of V: G = Vbar + V, L = {((x,y),(y,z),(z,x))}, I(x,y) = (y,x).
struct PairGroupoid {
  SymplecticSpace v, g;
  std::size_t n;
  explicit PairGroupoid(const SymplecticSpace& base) : v(base), g(direct_sum(base.conjugate(), base)), n(base.dim()) {}

  // Coordinates of (x, y) in slot `slot` of G^k.
  void place(Vector& out, std::size_t slot, std::size_t half, std::size_t i) const { out[slot * 2 * n + half * n + i] = 1; }

  Subspace triple() const {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Vector x(6 * n), y(6 * n), z(6 * n);
      place(x, 0, 0, i), place(x, 2, 1, i);
      place(y, 0, 1, i), place(y, 1, 0, i);
      place(z, 1, 1, i), place(z, 2, 0, i);
      rows.insert(rows.end(), {x, y, z});
    }
    return Subspace::span(rows, 6 * n);
  }

  Matrix flip() const {
    Matrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, n + i) = 1, m(n + i, i) = 1;
    return m;
  }

  LinearRsg rsg() const { return linear_rsg("pair", g, triple(), flip()); }

  // ((x,y),(y,z)) -> (x,z) as a subspace of G x G x G.
  Subspace multiplication() const {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Vector x(6 * n), y(6 * n), z(6 * n);
      place(x, 0, 0, i), place(x, 2, 0, i);
      place(y, 0, 1, i), place(y, 1, 0, i);
      place(z, 1, 1, i), place(z, 2, 1, i);
      rows.insert(rows.end(), {x, y, z});
    }
    return Subspace::span(rows, 6 * n);
  }

  Subspace diagonal() const {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Vector x(2 * n);
      x[i] = 1, x[n + i] = 1;
      rows.push_back(x);
    }
    return Subspace::span(rows, 2 * n);
  }
};

bool all_axioms(const AxiomReport& r) { return r.premises_hold(); }

}  // namespace

TEST(Validate, RejectsMisshapenData) {
  const FinSet z = zmod(3);
  EXPECT_THROW(finite_rsg("bad", z, {{0, 0, 0}}, {0, 0, 1}), Error);
  FiniteRsg g = shifted(3, 1);
  g.triple = FinRelation({}, {z, z}, {});
  EXPECT_THROW(g.validate(), Error);
  EXPECT_THROW(linear_rsg("bad", SymplecticSpace::standard(1), Subspace::zero(6), Matrix(2, 2)), Error);
}

TEST(Derive, CounterexampleClosedForms) {
  const auto g = shifted(5, 1);
  const auto d = derive(g);
  const FinSet z = zmod(5);
  EXPECT_EQ(d.L1, FinRelation({}, {z}, {{1}}));
  std::vector<std::vector<long>> l2, l3;
  for (long m = 0; m < 5; ++m) {
    l2.push_back({m, m + 2});
    for (long n = 0; n < 5; ++n) l3.push_back({m, n, m + n + 1});
  }
  EXPECT_EQ(d.L2, closed_form({z}, z, 5, l2));
  EXPECT_EQ(d.L3, closed_form({z, z}, z, 5, l3));
}

TEST(Axioms, CounterexampleOnZ5) {
  const auto r = check_axioms(shifted(5, 1));
  EXPECT_TRUE(r.axioms.at("A1").pass());
  EXPECT_TRUE(r.axioms.at("A2").pass());
  EXPECT_TRUE(r.axioms.at("A4").pass());
  EXPECT_FALSE(r.axioms.at("A5").pass());
  EXPECT_FALSE(r.axioms.at("A6").pass());
  EXPECT_FALSE(r.premises_hold());

  // A.3: I o L gives a + b + 1 while the flipped side gives a + b - 1.
  const Check& a3 = r.axioms.at("A3").at("A3.compatibility");
  EXPECT_FALSE(a3.pass);
  EXPECT_TRUE(a3.witness["only_lhs"].size() == 25u);

  const Check& unit = r.axioms.at("A5").at("A5.unit");
  EXPECT_EQ(unit.witness["lhs"], nlohmann::json::parse(R"([["3"]])"));
  EXPECT_EQ(unit.witness["rhs"], nlohmann::json::parse(R"([["1"]])"));

  const Verdict& a6 = r.axioms.at("A6");
  EXPECT_FALSE(a6.at("A6.unit_invariance").pass);
  EXPECT_FALSE(a6.at("A6.idempotent").pass);
  EXPECT_FALSE(a6.at("A6.product_invariance_left").pass);
  EXPECT_FALSE(a6.at("A6.product_invariance_right").pass);
  EXPECT_TRUE(a6.at("A6.right_unit").pass);
  EXPECT_TRUE(a6.at("A6.lagrangian_left").vacuous);
  // L2 o L2 = {(m, m + 4)}.
  EXPECT_EQ(a6.at("A6.idempotent").witness["lhs"][0], nlohmann::json::parse(R"(["0", "4"])"));
}

TEST(Axioms, S3SatisfiesEverything) {
  const S3 s;
  const FinSet x = s.set();
  std::vector<std::array<std::uint32_t, 3>> l;
  std::vector<std::uint32_t> inv;
  for (std::uint32_t a = 0; a < 6; ++a) {
    inv.push_back(s.inv(a));
    for (std::uint32_t b = 0; b < 6; ++b) l.push_back({a, b, s.inv(s.mul(a, b))});
  }
  const auto g = finite_rsg("S3", x, l, inv);
  const auto r = check_axioms(g);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);

  const auto d = derive(g);
  EXPECT_EQ(d.L1, FinRelation({}, {x}, {{s.index({0, 1, 2})}}));
  EXPECT_EQ(d.L2, diagonal(x));
  std::vector<Tuple> mult;
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) mult.push_back({a, b, s.mul(a, b)});
  EXPECT_EQ(d.L3, FinRelation({x, x}, {x}, mult));
}

TEST(Axioms, LinearPairGroupoid) {
  const PairGroupoid p(SymplecticSpace::standard(1));
  const auto g = p.rsg();
  const auto r = check_axioms(g);
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  EXPECT_FALSE(r.axioms.at("A1").at("A1.lagrangian").vacuous);
  EXPECT_TRUE(r.axioms.at("A6").at("A6.reduction_route").pass);

  const auto d = derive(g);
  EXPECT_EQ(d.L1.graph(), p.diagonal());
  EXPECT_EQ(d.L2, LinearRelation::identity(p.g));
  EXPECT_EQ(d.L3.graph(), p.multiplication());
}

TEST(Axioms, IdentityIsNotAntisymplectic) {
  const PairGroupoid p(SymplecticSpace::standard(1));
  const auto g = linear_rsg("id", p.g, p.triple(), Matrix::identity(4));
  const auto r = check_axioms(g);
  EXPECT_FALSE(r.axioms.at("A2").at("A2.antisymplectic").pass);
  EXPECT_EQ(r.axioms.at("A2").at("A2.antisymplectic").witness["kind"], "symplectic");
  EXPECT_TRUE(r.axioms.at("A2").at("A2.involution").pass);
}

TEST(Axioms, NonLagrangianTripleIsReported) {
  const PairGroupoid p(SymplecticSpace::standard(1));
  const auto g = linear_rsg("full", p.g, Subspace::full(12), p.flip());
  const auto r = check_axioms(g);
  EXPECT_FALSE(r.axioms.at("A1").at("A1.lagrangian").pass);
  EXPECT_TRUE(r.axioms.at("A1").at("A1.cyclic").pass);
}

TEST(Report, JsonListsWitnessesOfFailures) {
  const auto j = check_axioms(shifted(5, 1)).to_json();
  EXPECT_FALSE(j["axioms"]["A5"]["pass"].get<bool>());
  EXPECT_EQ(j["axioms"]["A5"]["witnesses"][0]["check"], "A5.unit");
  EXPECT_TRUE(j["axioms"]["A1"]["witnesses"].empty());
  EXPECT_FALSE(j["corollaries"]["premises_hold"].get<bool>());
}

// A.3 separates the two sides exactly when 2c != 0 mod k; the unit axiom
// fails exactly when c != 0 mod k (L1 = {c}, L3(L1, L1) = {3c}).
TEST(Properties, ShiftedFamilyAgainstClosedForms) {
  for (long k = 2; k <= 7; ++k)
    for (long c = 0; c < k; ++c) {
      const auto r = check_axioms(shifted(k, c));
      EXPECT_TRUE(r.axioms.at("A1").pass());
      EXPECT_TRUE(r.axioms.at("A2").pass());
      EXPECT_TRUE(r.axioms.at("A4").pass());
      EXPECT_EQ(r.axioms.at("A3").pass(), mod(2 * c, k) == 0) << k << " " << c;
      EXPECT_EQ(r.axioms.at("A5").pass(), mod(2 * c, k) == 0) << k << " " << c;
      EXPECT_EQ(r.pass(), mod(2 * c, k) == 0) << k << " " << c;
    }
}

// Cyclic groups Z/a x Z/b as RSGs with L = {(x, y, -(x + y))}.
TEST(Properties, AbelianGroupsSatisfyAllAxioms) {
  for (std::uint32_t a = 1; a <= 4; ++a)
    for (std::uint32_t b = 1; b <= 3; ++b) {
      const std::uint32_t n = a * b;
      std::vector<std::string> e;
      for (std::uint32_t i = 0; i < n; ++i) e.push_back(std::to_string(i / b) + "," + std::to_string(i % b));
      const FinSet x("G", e);
      auto add = [&](std::uint32_t u, std::uint32_t v) { return ((u / b + v / b) % a) * b + (u % b + v % b) % b; };
      auto neg = [&](std::uint32_t u) { return ((a - u / b) % a) * b + (b - u % b) % b; };
      std::vector<std::array<std::uint32_t, 3>> l;
      std::vector<std::uint32_t> inv;
      for (std::uint32_t u = 0; u < n; ++u) {
        inv.push_back(neg(u));
        for (std::uint32_t v = 0; v < n; ++v) l.push_back({u, v, neg(add(u, v))});
      }
      EXPECT_TRUE(all_axioms(check_axioms(finite_rsg("G", x, l, inv)))) << a << "x" << b;
    }
}

// Transporting the pair groupoid along a random symplectomorphism phi of G
// keeps every axiom; breaking I by a non-involutive symplectic factor fails A.2.
TEST(Properties, TransportedPairGroupoid) {
  gen::Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const PairGroupoid p(gen::random_space(rng, 1 + trial % 2));
    const Matrix phi = gen::random_symplectic(rng, p.g);
    const Matrix phi_inv = *inverse(phi);
    const Subspace l = image(p.triple(), block_diagonal(block_diagonal(phi, phi), phi));
    const Matrix inv = phi * p.flip() * phi_inv;
    const auto r = check_axioms(linear_rsg("t", p.g, l, inv));
    EXPECT_TRUE(r.pass()) << r.to_json().dump();

    const Matrix twist = gen::random_symplectic(rng, p.g);
    const Matrix bad = inv * twist;
    const auto broken = check_axioms(linear_rsg("b", p.g, l, bad));
    EXPECT_EQ(broken.axioms.at("A2").at("A2.involution").pass, bad * bad == Matrix::identity(p.g.dim()));
  }
}
