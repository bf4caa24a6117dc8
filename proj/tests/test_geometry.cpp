// Tests for the geometric layer: run decomposition, triangle construction
// and painting, erasure energies, separation constants, contour clustering,
// and the anchored entropy sums.
//
// Reference values were computed independently at 40-digit precision
// (mpmath) and frozen here. The golden CSV cross-checks the enumeration
// counts against a file frozen in the repository.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rfim/core.hpp>
#include <rfim/geometry.hpp>
#include <rfim/rng.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace rfim;

namespace {

SpinWindow window_with(int lo, int hi, std::initializer_list<int> spins,
                       int boundary = +1) {
  SpinWindow w = make_window(lo, hi, +1, static_cast<signed char>(boundary));
  size_t k = 0;
  for (int s : spins) w.spins[k++] = static_cast<signed char>(s);
  return w;
}

SpinWindow window_from_mask(int lo, int hi, unsigned mask) {
  SpinWindow w = make_window(lo, hi);
  for (int i = 0; i < w.size(); ++i)
    w.spins[size_t(i)] = (mask >> i) & 1u ? +1 : -1;
  return w;
}

TriangleFamily family_of(std::initializer_list<Triangle> ts, int lo, int hi) {
  TriangleFamily f;
  f.triangles = ts;
  f.lo = lo;
  f.hi = hi;
  return f;
}

}  // namespace

TEST_CASE("run decomposition indexes blocks relative to the origin block") {
  // sites -3..3: + + - - + + +
  SpinWindow w = window_with(-3, 3, {+1, +1, -1, -1, +1, +1, +1});
  const auto d = runs(w, -3, 3);
  REQUIRE(d.blocks.size() == 3);
  CHECK(d.blocks[0] == Run{-3, -2, +1});
  CHECK(d.blocks[1] == Run{-1, 0, -1});
  CHECK(d.blocks[2] == Run{1, 3, +1});
  CHECK(d.origin_block == 1);
  CHECK(d.origin_sign() == -1);
  CHECK(d.index_of(1) == 1);       // the origin block carries index 1
  CHECK(d.position_of(2) == 2);
  CHECK(d.any_inside);
  CHECK(d.b_v == 0);  // leftmost block inside V = whole window
  CHECK(d.e_v == 2);
}

TEST_CASE("run decomposition with V strictly inside the window") {
  // sites -5..5: - - + + - - - + + + -
  SpinWindow w =
      window_with(-5, 5, {-1, -1, +1, +1, -1, -1, -1, +1, +1, +1, -1});
  const auto d = runs(w, -2, 3);
  REQUIRE(d.blocks.size() == 5);
  CHECK(d.origin_block == 2);
  // only the block [-1,1] lies entirely inside V = [-2,3]
  CHECK(d.any_inside);
  CHECK(d.b_v == 1);
  CHECK(d.e_v == 1);
  // contract: blocks alternate sign away from the origin block
  for (size_t p = 0; p < d.blocks.size(); ++p) {
    const long long j = d.index_of(static_cast<int>(p));
    const int expect = (j % 2 == 0 ? -1 : +1) * d.origin_sign();
    CHECK(d.blocks[p].sign == expect);
  }

  // V = [0,1] contains no whole block: empty contract range
  const auto e = runs(w, 0, 1);
  CHECK_FALSE(e.any_inside);
  CHECK(e.b_v > e.e_v);
}

TEST_CASE("run decomposition validates V") {
  SpinWindow w = make_window(-2, 2);
  CHECK_THROWS_AS(runs(w, 1, 2), std::domain_error);    // origin not in V
  CHECK_THROWS_AS(runs(w, -3, 2), std::domain_error);   // V exceeds the window
}

TEST_CASE("triangle construction: a single minus run becomes one triangle") {
  SpinWindow w = make_window(0, 9);
  for (int i = 2; i <= 4; ++i) w.set(i, -1);
  const auto f = triangles_from_spins(w);
  REQUIRE(f.triangles.size() == 1);
  CHECK(f.triangles[0] == Triangle{1, 4});
  CHECK(f.triangles[0].supp_lo() == 2);
  CHECK(f.triangles[0].supp_hi() == 4);
  CHECK(f.triangles[0].mass() == 3);
  CHECK(f.lo == 0);
  CHECK(f.hi == 9);
}

TEST_CASE("triangle construction: equal gaps collide leftmost first") {
  // sites 0..2: - + -  => interface gaps are all 1
  SpinWindow w = window_with(0, 2, {-1, +1, -1});
  const auto f = triangles_from_spins(w);
  REQUIRE(f.triangles.size() == 2);
  CHECK(f.triangles[0] == Triangle{-1, 0});
  CHECK(f.triangles[1] == Triangle{1, 2});
}

TEST_CASE("triangle construction: inner plus run nests a triangle") {
  // sites 0..9 minus except 4,5 plus: the short gap closes first and the
  // outer interfaces close over it
  SpinWindow w = make_window(0, 9, -1);
  w.set(4, +1);
  w.set(5, +1);
  const auto f = triangles_from_spins(w);
  REQUIRE(f.triangles.size() == 2);
  CHECK(f.triangles[0] == Triangle{-1, 9});
  CHECK(f.triangles[1] == Triangle{3, 5});
  CHECK(family_valid(f));
  // nested side distance: min(4 - 0, 9 - 5) = 4
  CHECK(triangle_distance(f.triangles[0], f.triangles[1]) == 4);
}

TEST_CASE("triangle construction requires a plus boundary") {
  SpinWindow w = make_window(0, 3, -1, -1);
  CHECK_THROWS_AS(triangles_from_spins(w), std::invalid_argument);
}

TEST_CASE("painting validates the family") {
  // zero mass
  CHECK_THROWS_AS(spins_from_triangles(family_of({Triangle{2, 2}}, 0, 5)),
                  std::invalid_argument);
  // support outside the window
  CHECK_THROWS_AS(spins_from_triangles(family_of({Triangle{4, 7}}, 0, 5)),
                  std::invalid_argument);
  // partially overlapping supports
  CHECK_THROWS_AS(
      spins_from_triangles(family_of({Triangle{-1, 4}, Triangle{2, 8}}, 0, 9)),
      std::invalid_argument);
  // nested supports paint by parity: the inner support flips back to +
  const auto w =
      spins_from_triangles(family_of({Triangle{-1, 9}, Triangle{3, 5}}, 0, 9));
  for (int i = 0; i <= 9; ++i) {
    const bool inner = i == 4 || i == 5;
    CHECK(w.at(i) == (inner ? +1 : -1));
  }
}

TEST_CASE("construction and painting are inverse on every 14-site configuration") {
  for (unsigned mask = 0; mask < (1u << 14); ++mask) {
    const SpinWindow w = window_from_mask(-7, 6, mask);
    const auto f = triangles_from_spins(w);
    if (!(spins_from_triangles(f) == w) || !compatible(f) || !family_valid(f)) {
      CAPTURE(mask);
      CHECK(spins_from_triangles(f) == w);
      CHECK(compatible(f));
      CHECK(family_valid(f));
      break;
    }
  }
}

TEST_CASE("triangle distances: disjoint, nested, overlapping") {
  CHECK(triangle_distance(Triangle{-1, 3}, Triangle{5, 9}) == 3);   // sites 3 vs 6
  CHECK(triangle_distance(Triangle{5, 9}, Triangle{-1, 3}) == 3);   // symmetric
  CHECK(triangle_distance(Triangle{-1, 9}, Triangle{3, 5}) == 4);   // nested
  CHECK(triangle_distance(Triangle{-1, 4}, Triangle{2, 8}) == 0);   // overlap
  CHECK(triangle_distance(Triangle{-1, 0}, Triangle{1, 2}) == 2);   // adjacent runs
}

TEST_CASE("compatibility requires distance at least the smaller mass") {
  // two far singletons: fine
  CHECK(compatible(family_of({Triangle{-1, 0}, Triangle{2, 3}}, 0, 3)));
  // two mass-4 triangles at distance 2 < 4: incompatible
  CHECK_FALSE(compatible(family_of({Triangle{-1, 3}, Triangle{4, 8}}, 0, 8)));
  // partial overlap: incompatible
  CHECK_FALSE(compatible(family_of({Triangle{-1, 4}, Triangle{2, 8}}, 0, 9)));
  // nested pairs carry no constraint here
  CHECK(compatible(family_of({Triangle{-1, 9}, Triangle{4, 5}}, 0, 9)));
}

TEST_CASE("family validity distinguishes construction-reachable families") {
  CHECK(family_valid(family_of({Triangle{-1, 9}, Triangle{3, 5}}, 0, 9)));
  CHECK(family_valid(family_of({Triangle{-1, 0}, Triangle{5, 6}}, 0, 9)));
  // adjacent mass-4 blocks repaint as one big run: not reachable
  CHECK_FALSE(family_valid(family_of({Triangle{-1, 3}, Triangle{4, 8}}, 0, 8)));
}

TEST_CASE("erasing a single minus site from its own family costs 4 K(1)") {
  CouplingTable t(0.0, 10.0);
  const auto fam = family_of({Triangle{-1, 0}}, -8, 7);
  const double cost = erase_energy(fam.triangles, fam, t);
  CHECK(cost == doctest::Approx(42.5797362673929).epsilon(1e-12));
  CHECK(erase_energy({}, fam, t) == 0.0);
}

TEST_CASE("erasure energies telescope over a partition of the family") {
  CouplingTable t(0.25, 10.0);
  const Triangle a{-1, 0}, b{5, 6};
  const auto fam = family_of({a, b}, -4, 10);
  const double whole = erase_energy({a, b}, fam, t);
  const double first = erase_energy({a}, fam, t);
  const auto rest = family_of({b}, -4, 10);
  const double second = erase_energy({b}, rest, t);
  CHECK(whole == doctest::Approx(first + second).epsilon(1e-9));
  // erasing a non-member is rejected
  CHECK_THROWS_AS(erase_energy({Triangle{2, 3}}, fam, t), std::invalid_argument);
}

TEST_CASE("zeta matches closed forms and enforces its domain") {
  CHECK(zeta(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zeta(0.5) == doctest::Approx(0.1715728752538099).epsilon(1e-14));
  CHECK(zeta(0.25) == doctest::Approx(0.6215857699945578).epsilon(1e-14));
  // domain boundary: log2(3) - 1 = 0.5849625007211562...
  CHECK_NOTHROW(zeta(0.5849));
  CHECK_THROWS_AS(zeta(std::log(3.0) / std::log(2.0) - 1.0), std::domain_error);
  CHECK_THROWS_AS(zeta(0.585), std::domain_error);
  CHECK_THROWS_AS(zeta(-0.1), std::domain_error);
}

TEST_CASE("weight exponent: power law for positive alpha, shifted log at zero") {
  CHECK(peierls_phi(1, 0.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(peierls_phi(8, 0.0) == doctest::Approx(std::log(8.0) + 4.0).epsilon(1e-15));
  CHECK(peierls_phi(16, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(peierls_phi(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(peierls_phi(0, 0.0), std::domain_error);
}

TEST_CASE("erasure-cost margins for a single minus site") {
  CouplingTable t(0.0, 10.0);
  const auto fam = family_of({Triangle{-1, 0}}, -8, 7);
  const auto r = peierls_check(fam, t, 0.0);
  REQUIRE(r.sequential_margins.size() == 1);
  REQUIRE(r.contour_margins.size() == 1);
  // erase cost 42.5797... minus zeta(0) * phi(1) = 4, resp. half of it
  CHECK(r.sequential_margins[0] == doctest::Approx(38.5797362673929).epsilon(1e-12));
  CHECK(r.contour_margins[0] == doctest::Approx(40.5797362673929).epsilon(1e-12));
  CHECK(r.min_margin == doctest::Approx(38.5797362673929).epsilon(1e-12));
  CHECK(r.pass);

  // empty family: vacuous pass with infinite margin
  const auto empty = peierls_check(family_of({}, 0, 3), t, 0.0);
  CHECK(empty.pass);
  CHECK(std::isinf(empty.min_margin));

  // mismatched table alpha is rejected
  CouplingTable t5(0.5, 10.0);
  CHECK_THROWS_AS(peierls_check(fam, t5, 0.0), std::invalid_argument);
}

TEST_CASE("erasure-cost margins are nonnegative on random configurations") {
  CouplingTable t0(0.0, 10.0);
  CouplingTable t5(0.5, 10.0);
  Rng rng(derive_seed(0x6E0CE55AULL, 3, 0));
  for (int rep = 0; rep < 60; ++rep) {
    SpinWindow w = make_window(-10, 9);
    for (auto& s : w.spins) s = static_cast<signed char>(rng.pm1());
    const auto f = triangles_from_spins(w);
    for (const auto* t : {&t0, &t5}) {
      const auto r = peierls_check(f, *t, t->alpha());
      CAPTURE(rep);
      CAPTURE(t->alpha());
      CHECK(r.pass);
      CHECK(r.min_margin >= -1e-9);
    }
  }
}

TEST_CASE("minimal separation constant and its defining series") {
  CHECK(min_separation_constant() == 3);
  // sum_m 4m/(Cm)^3 = (4/C^3) zeta(2): C=2 gives pi^2/12 > 1/2, C=3 passes
  const auto s2 = separation_series(2);
  CHECK(s2.first == doctest::Approx(0.8224670334241132).epsilon(1e-9));
  CHECK(s2.first - s2.second > 0.5);
  const auto s3 = separation_series(3);
  CHECK(s3.first == doctest::Approx(0.24369393582936688).epsilon(1e-9));
  CHECK(s3.first + s3.second <= 0.5);
  CHECK(s3.second <= 1e-9);
  CHECK_THROWS_AS(separation_series(0), std::invalid_argument);
}

TEST_CASE("contour clustering merges close triangles and keeps far ones apart") {
  // two singletons at support distance 3 = C * 1^3: merge
  {
    const auto f = family_of({Triangle{-1, 0}, Triangle{2, 3}}, -4, 7);
    const auto gs = decompose_contours(f);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].members.size() == 2);
    CHECK(gs[0].mass() == 2);
    CHECK(gs[0].cover_lo() == 0);
    CHECK(gs[0].cover_hi() == 3);
  }
  // two singletons at support distance 4 > 3: separate contours
  {
    const auto f = family_of({Triangle{-1, 0}, Triangle{3, 4}}, -4, 8);
    const auto gs = decompose_contours(f);
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].mass() == 1);
    CHECK(gs[1].mass() == 1);
  }
  // nested at side distance 4 <= C * inner_mass^3 = 24: merge
  {
    const auto f = family_of({Triangle{-1, 9}, Triangle{3, 5}}, -2, 11);
    const auto gs = decompose_contours(f);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].mass() == 12);
  }
  // nested mass-1 at side distance 4 > 3, outer member contains it: separate
  {
    const auto f = family_of({Triangle{-1, 9}, Triangle{4, 5}}, -2, 11);
    const auto gs = decompose_contours(f);
    REQUIRE(gs.size() == 2);
  }
  CHECK_THROWS_AS(decompose_contours(family_of({Triangle{-1, 0}}, -1, 1), 0),
                  std::invalid_argument);
}

TEST_CASE("contour partition audit passes on random configurations") {
  Rng rng(derive_seed(0x6E0CE55AULL, 4, 0));
  for (int rep = 0; rep < 200; ++rep) {
    SpinWindow w = make_window(-15, 14);
    for (auto& s : w.spins)
      s = static_cast<signed char>(rng.uniform01() < 0.4 ? -1 : +1);
    const auto f = triangles_from_spins(w);
    const auto report = verify_contours(f);
    CAPTURE(rep);
    CAPTURE(report.detail);
    CHECK(report.ok());
  }
}

TEST_CASE("contour weights multiply member factors") {
  Contour g;
  g.members = {Triangle{-1, 0}, Triangle{2, 4}};  // masses 1 and 2
  // alpha = 1/2: exp(-3 (1 + sqrt 2))
  CHECK(contour_weight(g, 3.0, 0.5) ==
        doctest::Approx(0.0007154200629732811).epsilon(1e-12));
  Contour single;
  single.members = {Triangle{-1, 0}};
  // alpha = 0: exp(-(log 1 + 4))
  CHECK(contour_weight(single, 1.0, 0.0) ==
        doctest::Approx(0.01831563888873418).epsilon(1e-12));
}

TEST_CASE("anchored entropy sums: enumeration counts and frozen values") {
  // counts are weight-independent: 1, 9, 41 families for mass 1, 2, 3
  CHECK(entropy_sum(1, 1.0, 0.0).family_count == 1);
  CHECK(entropy_sum(2, 1.0, 0.0).family_count == 9);
  CHECK(entropy_sum(3, 1.0, 0.0).family_count == 41);
  CHECK(entropy_sum(2, 1.0, 0.0).shape_count == 3);

  // cover-anchored sum at mass 2, b = 10, alpha = 1/2, against its bound
  const auto e = entropy_sum(2, 10.0, 0.5);
  CHECK(e.sum == doctest::Approx(1.4571363807504983e-06).epsilon(1e-9));
  CHECK(e.bound == doctest::Approx(2.885416610786857e-06).epsilon(1e-9));
  CHECK(e.sum <= e.bound);

  // member-anchored variant counts fewer translates
  const auto m = entropy_sum(2, 10.0, 0.5, 3, false);
  CHECK(m.family_count == 6);
  CHECK(m.sum == doctest::Approx(1.4509529198831828e-06).epsilon(1e-9));

  // alpha = 0 closed forms
  const auto z3 = entropy_sum(3, 5.0, 0.0);
  CHECK(z3.sum == doctest::Approx(2.544634287641517e-11).epsilon(1e-9));
  CHECK(z3.bound == doctest::Approx(5.0892682035519945e-11).epsilon(1e-9));
  CHECK(z3.sum <= z3.bound);
  const auto z2 = entropy_sum(2, 5.0, 0.0);
  CHECK(z2.sum == doctest::Approx(1.2882213114088966e-10).epsilon(1e-9));

  // decreasing in b
  CHECK(entropy_sum(2, 5.0, 0.0).sum > entropy_sum(2, 10.0, 0.0).sum);

  // enumeration guard
  CHECK_THROWS_AS(entropy_sum(0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy_sum(5, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy_sum(2, 1.0, 1.5), std::domain_error);
}

TEST_CASE("enumeration counts match the golden table") {
#ifdef RFIM_GOLDEN_DIR
  std::ifstream in(std::string(RFIM_GOLDEN_DIR) + "/entropy_counts.csv");
  REQUIRE(in.good());
  std::string line;
  bool header_seen = false;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      CHECK(line == "m,count");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string mtext, ctext;
    REQUIRE(std::getline(row, mtext, ','));
    REQUIRE(std::getline(row, ctext, ','));
    const int m = std::stoi(mtext);
    const long long count = std::stoll(ctext);
    CHECK(entropy_sum(m, 1.0, 0.0).family_count == count);
    ++rows;
  }
  CHECK(rows == 3);
#else
  FAIL("RFIM_GOLDEN_DIR was not defined at compile time");
#endif
}
