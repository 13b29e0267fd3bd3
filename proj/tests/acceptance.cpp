// Acceptance run: one line per criterion, all comparisons exact (tolerance 0).
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 exactly when every selected criterion passes.

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "rsg/morphism.hpp"
#include "rsg/report.hpp"

using namespace rsg;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "ok " : "FAILED ") + what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

using Labels = std::set<std::vector<std::string>>;

Labels labels(const FinRelation& r) {
  Labels out;
  for (const auto& t : r.tuples()) out.insert(r.labels(t));
  return out;
}

Labels labels(const nlohmann::json& tuples) {
  Labels out;
  for (const auto& t : tuples) out.insert(t.get<std::vector<std::string>>());
  return out;
}

std::string z(long v, long k) { return std::to_string(((v % k) + k) % k); }

// ---- 1: Z/5 counterexample -------------------------------------------------

// Closed forms from L = {(n, m, -n-m-1)}, I = -n: L3 = {(m, n, m+n+1)},
// L1 = {1}, L2 = {(m, m+2)}; then L3 o (L1 x L1) = {3}, L2 o L1 = {3},
// L2 o L2 = {(m, m+4)}, L2 o L3 = {(m, n, m+n+3)}.
Outcome criterion_1() {
  Outcome o;
  const long k = 5;
  const auto g = counterexample_zk(k);
  const auto d = derive(g);
  Labels l2, l3, l2l2, l2l3;
  for (long m = 0; m < k; ++m) {
    l2.insert({z(m, k), z(m + 2, k)});
    l2l2.insert({z(m, k), z(m + 4, k)});
    for (long n = 0; n < k; ++n) {
      l3.insert({z(m, k), z(n, k), z(m + n + 1, k)});
      l2l3.insert({z(m, k), z(n, k), z(m + n + 3, k)});
    }
  }
  o.require(labels(d.L1) == Labels{{"1"}}, "L1 = {1}");
  o.require(labels(d.L2) == l2, "L2 = {(m, m+2)}");
  o.require(labels(d.L3) == l3, "L3 = {(m, n, m+n+1)}");

  const auto rep = check_axioms(g);
  for (const char* a : {"A1", "A2", "A3", "A4"}) o.require(rep.axioms.at(a).pass(), std::string(a) + " passes");

  const auto& unit = rep.axioms.at("A5").at("A5.unit");
  o.require(!rep.axioms.at("A5").pass() && !unit.pass && labels(unit.witness["lhs"]) == Labels{{"3"}},
            "A5 fails with L3 o (L1 x L1) = {3}");
  const auto& a6 = rep.axioms.at("A6");
  const auto& ui = a6.at("A6.unit_invariance");
  const auto& id = a6.at("A6.idempotent");
  const auto& pl = a6.at("A6.product_invariance_left");
  const auto& inv = a6.at("A6.inversion");
  o.require(!a6.pass(), "A6 fails");
  o.require(!ui.pass && labels(ui.witness["lhs"]) == Labels{{"3"}}, "L2 o L1 = {3}");
  o.require(!id.pass && labels(id.witness["lhs"]) == l2l2, "L2 o L2 = {(m, m+4)}");
  o.require(!pl.pass && labels(pl.witness["lhs"]) == l2l3, "L2 o L3 = {(m, n, m+n+3)}");
  o.require(!inv.pass, "Ibar o L2 != L2bar o Ibar");
  if (!rep.axioms.at("A3").pass()) {
    const auto& c = rep.axioms.at("A3").at("A3.compatibility");
    o.note("A3 witness: I o L has " + std::to_string(c.witness["only_lhs"].size()) + " tuples outside the right side");
  }
  return o;
}

// ---- 2: parity counterexample ------------------------------------------------

Outcome criterion_2() {
  Outcome o;
  const auto g = parity_counterexample(6);
  const auto axioms = check_axioms(g);
  o.require(axioms.pass(), "A1-A6 and corollaries");
  if (!axioms.premises_hold()) return o;
  const auto reg = check_regular(g, axioms);
  o.require(reg.verdict.pass(), "A7-A9");
  if (!reg.verdict.pass()) return o;
  const auto q = build_quotient(g, reg);
  o.require(q.verdict.pass(), "quotient groupoid");
  o.require(q.arrows.classes.size() == 2, "C/L2 has 2 classes");
  o.require(reg.M.classes.size() == 1, "M has 1 class");
  return o;
}

// ---- 3: groupoid round trip --------------------------------------------------

bool round_trips(Outcome& o, const FiniteGroupoid& input, const FiniteRsg& g) {
  const auto axioms = check_axioms(g);
  if (!axioms.pass()) return false;
  const auto reg = check_regular(g, axioms);
  if (!reg.verdict.pass()) return false;
  const auto q = build_quotient(g, reg);
  const bool ok = q.verdict.pass() && q.groupoid && find_isomorphism(*q.groupoid, input).has_value();
  if (!ok) o.note(g.name + " does not round-trip");
  return ok;
}

Outcome criterion_3() {
  Outcome o;
  std::size_t groups = 0, pairs = 0, good = 0;
  for (const auto& t : groups::up_to_order_8()) {
    ++groups;
    const auto gr = group_groupoid(t);
    const bool a = round_trips(o, gr, from_group(t));
    const bool b = round_trips(o, gr, from_groupoid(gr));
    good += a && b;
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    ++pairs;
    std::vector<std::string> xs;
    for (std::size_t i = 1; i <= k; ++i) xs.push_back(std::to_string(i));
    const auto p = pair_groupoid("pair" + std::to_string(k), xs);
    good += round_trips(o, p, from_groupoid(p));
  }
  o.require(good == groups + pairs, std::to_string(groups) + " groups of order <= 8 and " + std::to_string(pairs) +
                                        " pair groupoids recovered up to isomorphism");
  return o;
}

// ---- 4: equivalences ---------------------------------------------------------

bool equivalence_holds(Outcome& o, const std::string& what, const MorphismReport& r) {
  const bool ok = r.preconditions && r.pass() && r.verdict.at("equivalence.round_trip_G").pass &&
                  r.verdict.at("equivalence.round_trip_H").pass;
  if (!ok) o.note(what + " fails: " + r.to_json()["witnesses"].dump());
  return ok;
}

Outcome criterion_4() {
  Outcome o;
  {
    const FinSet x("X", {"a", "b", "c"});
    const auto g = lagrangian_example("lagrangian-finite", x, {0, 1}, {1, 0, 2});
    const auto pt = finite_point();
    const FinRelation f(pt.carrier, g.carrier, {{0, 0}, {0, 1}});
    o.require(equivalence_holds(o, "finite Lagrangian example", check_equivalence(pt, g, f)),
              "finite Lagrangian-subset RSG equivalent to the point");
  }
  {
    const auto v = SymplecticSpace::standard(1);
    const Subspace lag = Subspace::span({Vector{1, 0}}, 2);
    const auto g = lagrangian_example("lagrangian-linear", v, lag, Matrix::from_rows({Vector{1, 0}, Vector{0, -1}}, 2));
    const auto pt = linear_point();
    o.require(equivalence_holds(o, "linear Lagrangian example", check_equivalence(pt, g, LinearRelation(pt.carrier, v, lag))),
              "linear Lagrangian-subset RSG equivalent to the point");
  }
  std::size_t regular = 0, self_ok = 0, proj_ok = 0;
  for (const auto& e : corpus()) {
    if (!e.expected.regular || !*e.expected.regular) continue;
    ++regular;
    const AnyRsg any = e.build();
    std::visit([&](const auto& g) {
      const auto axioms = check_axioms(g);
      const auto reg = check_regular(g, axioms);
      self_ok += equivalence_holds(o, e.name + " L2 self-equivalence", check_equivalence(g, g, derive(g).L2));
      const auto q = build_quotient(g, reg);
      const auto pr = projection_equivalence(g, reg, q);
      proj_ok += equivalence_holds(o, e.name + " projection", check_equivalence(g, pr.quotient, pr.projection));
    }, any);
  }
  o.require(self_ok == regular, "L2 self-equivalence on " + std::to_string(self_ok) + "/" + std::to_string(regular) +
                                    " regular corpus entries");
  o.require(proj_ok == regular, "projection onto C/L2 on " + std::to_string(proj_ok) + "/" + std::to_string(regular) +
                                    " regular corpus entries");
  return o;
}

// ---- 5: linear kernel properties ---------------------------------------------

Outcome criterion_5() {
  Outcome o;
  const int trials = 200;
  gen::Rng rng(5005);
  int perp = 0, dims = 0, canon = 0, transp = 0, red_lag = 0, red_id = 0, lift = 0;
  for (int t = 0; t < trials; ++t) {
    const SymplecticSpace v = gen::random_space(rng, gen::pick(rng, 1, 4));
    const Subspace w = Subspace::span(gen::random_low_rank(rng, v.dim(), v.dim()));
    const Subspace wp = omega_orthogonal(v, w);
    perp += omega_orthogonal(v, wp) == w;
    dims += w.dim() + wp.dim() == v.dim();
  }
  for (int t = 0; t < trials; ++t) {
    const SymplecticSpace a = gen::random_space(rng, gen::pick(rng, 0, 2));
    const SymplecticSpace b = gen::random_space(rng, gen::pick(rng, 0, 2));
    const SymplecticSpace c = gen::random_space(rng, gen::pick(rng, 0, 2));
    const LinearRelation r = gen::random_canonical(rng, a, b);
    const LinearRelation s = gen::random_canonical(rng, b, c);
    canon += is_canonical(compose(r, s)).is_lagrangian;
    transp += transpose(compose(r, s)) == compose(transpose(s), transpose(r));
  }
  for (int t = 0; t < trials; ++t) {
    const SymplecticSpace v = gen::random_space(rng, gen::pick(rng, 1, 4));
    const Subspace w = gen::random_coisotropic(rng, v);
    const auto rr = reduction_relations(v, w);
    const std::array<SymplecticSpace, 2> factors{rr.reduced.space, v};
    const SymplecticSpace ambient = signed_product(factors, std::array<int, 2>{-1, 1});
    red_lag += omega_orthogonal(ambient, rr.inclusion.graph()) == rr.inclusion.graph();
    red_id += compose(rr.inclusion, rr.projection) == LinearRelation::identity(rr.reduced.space);
    const LinearRelation lbar = gen::random_canonical(rng, rr.reduced.space, rr.reduced.space);
    lift += canonical_projection(rr, canonical_lift(rr, lbar)) == lbar;
  }
  auto line = [&](int n, const std::string& what) { o.require(n == trials, what + " " + std::to_string(n) + "/" + std::to_string(trials)); };
  line(perp, "(W^perp)^perp = W");
  line(dims, "dim W + dim W^perp = dim V");
  line(canon, "composite of canonical relations is canonical");
  line(transp, "(s o r)^T = r^T o s^T");
  line(red_lag, "I^perp = I for the reduction relation");
  line(red_id, "P o I = Id");
  line(lift, "p(l(L)) = L");

  // Stored regression witness: the diagonal of standard Q^4 reduced along
  // span{e1, e2, e3} does not lift back to itself.
  const auto q4 = SymplecticSpace::standard(2);
  const Subspace w3 = Subspace::span({Vector{1, 0, 0, 0}, Vector{0, 1, 0, 0}, Vector{0, 0, 1, 0}}, 4);
  const auto rr = reduction_relations(q4, w3);
  const LinearRelation diag = LinearRelation::identity(q4);
  o.require(canonical_lift(rr, canonical_projection(rr, diag)) != diag, "regression witness l(p(Id)) != Id on Q^4");
  return o;
}

// ---- 6: reduction lemma ------------------------------------------------------

// Sandwich C^perp <= L <= C: L is the preimage of a random subspace of the
// reduced space, Lagrangian there in about half the instances.
Outcome criterion_6() {
  Outcome o;
  const int trials = 120;
  gen::Rng rng(6006);
  int agree = 0, lemma = 0, converse = 0, lagrangian = 0;
  for (int t = 0; t < trials; ++t) {
    const SymplecticSpace v = gen::random_space(rng, gen::pick(rng, 1, 4));
    const Subspace c = gen::random_coisotropic(rng, v);
    const ReducedSpace red = reduce(v, c);
    const std::size_t r = red.space.dim();
    Subspace lbar = Subspace::zero(r);
    if (r > 0) lbar = t % 2 ? gen::random_lagrangian(rng, red.space) : Subspace::span(gen::random_low_rank(rng, r, r));
    std::vector<Vector> rows;
    const Subspace perp = omega_orthogonal(v, c);
    for (std::size_t i = 0; i < perp.dim(); ++i) rows.push_back(perp.basis_vector(i));
    for (std::size_t i = 0; i < lbar.dim(); ++i) rows.push_back(red.lift.transposed().apply(lbar.basis_vector(i)));
    const Subspace l = Subspace::span(rows, v.dim());
    const LemmaVerdict verdict = lagrangian_via_reduction(v, c, l);
    const bool reduced_lagrangian = verdict.holds();
    agree += reduced_lagrangian == verdict.direct_lagrangian;
    lemma += !reduced_lagrangian || verdict.direct_lagrangian;
    converse += !verdict.direct_lagrangian || reduced_lagrangian;
    lagrangian += verdict.direct_lagrangian;
  }
  auto line = [&](int n, const std::string& what) { o.require(n == trials, what + " " + std::to_string(n) + "/" + std::to_string(trials)); };
  line(agree, "reduction route equals direct verdict");
  line(lemma, "reduced Lagrangian implies Lagrangian");
  line(converse, "Lagrangian implies reduced Lagrangian");
  o.require(lagrangian > 0 && lagrangian < trials,
            "both outcomes exercised (" + std::to_string(lagrangian) + " Lagrangian, " +
                std::to_string(trials - lagrangian) + " not)");
  return o;
}

// ---- 7: Poisson induction ----------------------------------------------------

// Oracle: the base of the pair groupoid of V is the diagonal; with phi(x) the
// class of (x, x) the bracket on M is phi Omega_V^{-1} phi^T.
Matrix diagonal_chart(const LinearRegular& reg, std::size_t copies, std::size_t n) {
  const std::size_t d = copies * n;
  Matrix phi(reg.base_dim(), d);
  for (std::size_t j = 0; j < d; ++j) {
    Vector xx(2 * d);
    const std::size_t block = j / n, i = j % n;
    xx[block * 2 * n + i] = 1, xx[block * 2 * n + n + i] = 1;
    const Vector cls = reg.M.projection.apply(xx);
    for (std::size_t r = 0; r < reg.base_dim(); ++r) phi(r, j) = cls[r];
  }
  return phi;
}

Outcome criterion_7() {
  Outcome o;
  const auto v = SymplecticSpace::standard(1);
  const auto g = linear_pair_groupoid(v);
  const auto reg = check_regular(g);
  o.require(reg.verdict.pass(), "pair groupoid of Q^2 is regular");
  const auto p = induced_poisson(g, reg);
  o.require(p.verdict.pass(), "induced Poisson checks");
  const Matrix phi = diagonal_chart(reg, 1, 2);
  const Matrix oracle = phi * *inverse(v.omega()) * phi.transposed();
  o.require(oracle == Matrix::from_rows({Vector{0, -1}, Vector{1, 0}}, 2), "oracle is [[0, -1], [1, 0]] in the chart of M");

  bool induced = true, libermann = true;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const Vector a = unit_vector(2, i), b = unit_vector(2, j);
      induced = induced && p.pi.bracket(a, b) == dot(a, oracle.apply(b));
      libermann = libermann && p.libermann.bracket(a, b) == dot(a, oracle.apply(b));
    }
  o.require(induced, "induced_poisson equals the oracle on all basis covector pairs");
  o.require(libermann, "libermann_poisson equals the oracle on all basis covector pairs");
  o.require(p.pi.is_skew(), "Pi is skew");

  // {s*a, s*b}_G = s*(Pi(a, b)) with the bracket of G taken as -Omega_G^{-1}.
  const auto s = graphs::as_map(reg.S, g.carrier.dim());
  bool forward = s.has_value();
  if (s) {
    const Matrix pi_g = -*inverse(g.carrier.omega());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const Vector a = s->transposed().apply(unit_vector(2, i)), b = s->transposed().apply(unit_vector(2, j));
        forward = forward && dot(a, pi_g.apply(b)) == p.pi.bracket(unit_vector(2, i), unit_vector(2, j));
      }
  }
  o.require(forward, "{s*a, s*b} = s*Pi(a, b)");

  const auto g2 = power(g, 2);
  const auto reg2 = check_regular(g2);
  const Matrix phi2 = diagonal_chart(reg2, 2, 2);
  const Matrix pi2 = induced_poisson(g2, reg2).pi.pi;
  const Matrix in_v2 = *inverse(phi2) * pi2 * inverse(phi2)->transposed();
  const Matrix in_v1 = *inverse(phi) * p.pi.pi * inverse(phi)->transposed();
  o.require(in_v2 == block_diagonal(in_v1, in_v1), "n = 2 power is blockwise the n = 1 bracket");
  return o;
}

// ---- 8: powers ---------------------------------------------------------------

// Finite powers are run only while |G|^n and |L|^n stay small.
constexpr std::size_t finite_arrow_bound = 128;
constexpr std::size_t finite_triple_bound = 4096;

bool finite_base_is_product(const FiniteRegular& r1, const FiniteRegular& rn, std::size_t size, std::size_t n) {
  std::set<std::vector<std::uint32_t>> images;
  for (auto rep : rn.M.representatives) {
    std::vector<std::uint32_t> cls(n);
    std::uint32_t x = rep;
    for (std::size_t i = n; i-- > 0;) cls[i] = r1.M.projection.assignment[x % size], x /= size;
    images.insert(cls);
  }
  std::size_t expected = 1;
  for (std::size_t i = 0; i < n; ++i) expected *= r1.M.classes.size();
  return rn.M.classes.size() == expected && images.size() == expected;
}

Outcome criterion_8() {
  Outcome o;
  std::size_t runs = 0, good = 0, skipped = 0;
  for (const auto& e : corpus()) {
    if (!e.expected.regular || !*e.expected.regular) continue;
    const AnyRsg any = e.build();
    for (std::size_t n = 1; n <= 3; ++n) {
      bool ok = false;
      if (const auto* g = std::get_if<FiniteRsg>(&any)) {
        const std::size_t size = g->carrier[0].size();
        std::size_t arrows = 1, triple = 1;
        for (std::size_t i = 0; i < n; ++i) arrows *= size, triple *= g->triple.tuples().size();
        if (arrows > finite_arrow_bound || triple > finite_triple_bound) {
          ++skipped;
          continue;
        }
        const auto gn = power(*g, n);
        const auto ax = check_axioms(gn);
        if (ax.pass()) {
          const auto rn = check_regular(gn, ax);
          ok = rn.verdict.pass() && finite_base_is_product(check_regular(*g), rn, size, n);
        }
      } else {
        const auto& lg = std::get<LinearRsg>(any);
        const auto gn = power(lg, n);
        const auto ax = check_axioms(gn);
        if (ax.pass()) {
          const auto rn = check_regular(gn, ax);
          ok = rn.verdict.pass() && rn.base_dim() == n * check_regular(lg).base_dim();
        }
      }
      ++runs;
      good += ok;
      if (!ok) o.note(e.name + "^" + std::to_string(n) + " fails");
    }
  }
  o.require(good == runs, "G^n passes A1-A9 with M(G^n) = M^n on " + std::to_string(good) + "/" + std::to_string(runs) +
                              " (entry, n) pairs; " + std::to_string(skipped) + " finite pairs with |G|^n > " +
                              std::to_string(finite_arrow_bound) + " or |L|^n > " + std::to_string(finite_triple_bound) +
                              " not run");

  const auto g = linear_pair_groupoid(SymplecticSpace::standard(1));
  for (std::size_t n : {2u, 3u}) {
    const auto rp = reduced_power(g, n);
    o.require(rp.verdict.pass(), "G_(" + std::to_string(n) + ") coisotropic with reduction symplectomorphic to G");
    const auto r = check_equivalence(rp.rsg, g, rp.p);
    o.require(r.pass(), "reduced power n = " + std::to_string(n) + " equivalent to G along p_n");
    if (!r.preconditions) o.note("reduced power n = " + std::to_string(n) + ": I^(n) o I^(n) = p^T p, so A2 does not hold literally");
  }
  return o;
}

// ---- 9: corollaries ----------------------------------------------------------

Outcome criterion_9() {
  Outcome o;
  std::size_t premises = 0, good = 0;
  for (const auto& e : corpus()) {
    const auto rep = std::visit([](const auto& g) { return check_axioms(g); }, e.build());
    if (!rep.premises_hold()) continue;
    ++premises;
    const bool ok = rep.corollaries.pass();
    good += ok;
    if (!ok) o.note(e.name + ": " + rep.corollaries.to_json()["witnesses"].dump());
  }
  o.require(premises > 0 && good == premises,
            "Cor1, Cor2, L2 idempotent on " + std::to_string(good) + "/" + std::to_string(premises) +
                " corpus entries satisfying A1-A6");
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run one criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_flag("-v,--verbose", verbose, "print every sub-check");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"Z/5 counterexample values and verdicts", criterion_1},
      {"parity counterexample on Z/6", criterion_2},
      {"groupoid round trip", criterion_3},
      {"Lagrangian, L2 and projection equivalences", criterion_4},
      {"linear kernel properties", criterion_5},
      {"reduction lemma agreement", criterion_6},
      {"Poisson induction", criterion_7},
      {"powers and reduced powers", criterion_8},
      {"corollary closure", criterion_9},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream detail;
    for (const auto& n : o.notes)
      if (verbose || n.rfind("ok ", 0) != 0) detail << "\n    " << n;
    std::printf("criterion %zu: %s  %s  [tolerance: exact, %.2fs]%s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].title, secs, detail.str().c_str());
  }
  return all ? 0 : 1;
}
