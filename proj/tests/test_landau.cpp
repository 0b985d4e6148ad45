#include <doctest.h>

#include <random>
#include <set>

#include "qlucas/landau.hpp"
#include "support/oracles.hpp"

using namespace qlucas;

namespace {

RatioSpec inverse_central() {
  RatioSpec s;
  s.e = {{1}, {1}};
  s.f = {{2}};
  return s;
}

Rational random_unit(std::mt19937_64& rng) {
  const long den = 1 + static_cast<long>(rng() % 97);
  Rational r(static_cast<long>(rng() % static_cast<unsigned long>(den)), den);
  r.canonicalize();
  return r;
}

std::vector<std::int64_t> ordered(const RatioSpec& spec, const std::map<IntVector, std::int64_t>& floors) {
  std::vector<std::int64_t> out;
  for (const auto* tuple : {&spec.e, &spec.f})
    for (const auto& t : *tuple) out.push_back(floors.at(t));
  return out;
}

}  // namespace

TEST_CASE("exact floors") {
  CHECK(floor_to_int(Rational(7, 2)) == 3);
  CHECK(floor_to_int(Rational(-7, 2)) == -4);
  CHECK(floor_to_int(Rational(4)) == 4);
  CHECK(to_string(Rational(6, 4)) == "3/2");
}

TEST_CASE("Landau function values") {
  const auto central = RatioSpec::central_binomial();
  CHECK(delta_at(central, {Rational(1, 2)}) == 1);
  CHECK(delta_at(RatioSpec::apery_a(), {Rational(1, 2), Rational(1, 2)}) == 2);
  CHECK(delta_at(RatioSpec::apery_a(), {Rational(3), Rational(-2)}) == 0);
  CHECK(delta_at(central, {Rational(5)}) == 0);
}

TEST_CASE("domain D membership") {
  const auto central = RatioSpec::central_binomial();
  CHECK(in_domain_D(central, RationalPoint{{Rational(1, 2)}}));
  CHECK_FALSE(in_domain_D(central, RationalPoint{{Rational(0)}}));
  CHECK_FALSE(in_domain_D(RatioSpec::apery_a(), RationalPoint{{Rational(0), Rational(0)}}));
  CHECK_FALSE(in_domain_D(RatioSpec::apery_a(), RationalPoint{{Rational(1, 3), Rational(1, 4)}}));
  CHECK_THROWS(in_domain_D(central, RationalPoint{{Rational(1)}}));
}

TEST_CASE("Fourier-Motzkin feasibility") {
  FourierMotzkin fm(2);
  // x > 0, y > 0, x + y < 1
  fm.add({{-1, 0}, 0, true});
  fm.add({{0, -1}, 0, true});
  fm.add({{1, 1}, 1, true});
  auto w = fm.solve();
  REQUIRE(w);
  CHECK((*w)[0] > 0);
  CHECK((*w)[1] > 0);
  CHECK((*w)[0] + (*w)[1] < 1);

  FourierMotzkin strict(1);
  strict.add({{-1}, -1, false});
  strict.add({{1}, 1, true});  // x >= 1 and x < 1
  CHECK_FALSE(strict.solve());

  FourierMotzkin closed(1);
  closed.add({{1}, 1, false});
  closed.add({{-1}, -1, false});  // x = 1
  auto pt = closed.solve();
  REQUIRE(pt);
  CHECK((*pt)[0] == 1);
}

TEST_CASE("cells of the central binomial ratio") {
  const auto cells = enumerate_cells(RatioSpec::central_binomial());
  REQUIRE(cells.size() == 2);
  std::set<std::int64_t> seen;
  for (const auto& c : cells) {
    CHECK(c.feasible);
    CHECK(c.floors.at({1}) == 0);
    seen.insert(c.floors.at({2}));
    REQUIRE(c.witness);
    CHECK(floor_signature(RatioSpec::central_binomial(), c.witness->coords) == c.floors);
    CHECK(c.delta == c.floors.at({2}));
  }
  CHECK(seen == std::set<std::int64_t>{0, 1});
}

TEST_CASE("all-zero vectors give a single cell") {
  RatioSpec s;
  s.dim = 2;
  s.e = {{0, 0}};
  s.f = {{0, 0}};
  const auto cells = enumerate_cells(s);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].floors.at({0, 0}) == 0);
}

TEST_CASE("cells of the two-variable Apery ratio match a grid scan") {
  const auto spec = RatioSpec::apery_a();
  const auto cells = enumerate_cells(spec);
  const auto grid = oracle::grid_cells(spec, 60);
  // The listed signatures (0,0),(1,0),(1,1),(2,1) of (2x+y, x+y) all occur;
  // (2,0) and (0,1) are infeasible, so there are exactly four.
  CHECK(grid.size() == 4);
  CHECK(cells.size() == grid.size());
  for (const auto& c : cells) {
    CHECK(grid.count(ordered(spec, c.floors)) == 1);
    CHECK(grid.at(ordered(spec, c.floors)) == c.delta);
  }
}

TEST_CASE("landau decisions") {
  const auto central = check_landau(RatioSpec::central_binomial());
  CHECK(central.integrality);
  CHECK(central.criterion_D);
  REQUIRE(central.min_value_on_D);
  CHECK(*central.min_value_on_D == 1);

  CHECK(check_landau(RatioSpec::apery_a()).criterion_D);
  CHECK(check_landau(RatioSpec::apery_b()).criterion_D);

  const auto inv = check_landau(inverse_central());
  CHECK_FALSE(inv.integrality);
  REQUIRE_FALSE(inv.violating_cells.empty());
  bool half_covered = false;
  for (const auto& c : inv.violating_cells) {
    REQUIRE(c.witness);
    CHECK(delta_at(inverse_central(), c.witness->coords) < 0);
    if (floor_signature(inverse_central(), {Rational(1, 2)}) == c.floors) half_covered = true;
  }
  CHECK(half_covered);
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_cells(RatioSpec::apery_a(), EnumerationOptions{2}), DimensionTooLarge);
}

TEST_CASE("periodicity, cover and D consistency on random points") {
  std::mt19937_64 rng(7);
  std::vector<RatioSpec> specs{RatioSpec::central_binomial(2), RatioSpec::apery_a(), RatioSpec::apery_b()};
  for (int i = 0; i < 5; ++i) specs.push_back(oracle::random_balanced_spec(rng, 1 + rng() % 3));
  for (const auto& spec : specs) {
    const auto cells = enumerate_cells(spec);
    std::map<std::map<IntVector, std::int64_t>, const CellSignature*> index;
    for (const auto& c : cells) index[c.floors] = &c;
    for (int k = 0; k < 1500; ++k) {
      RationalVector x(spec.dim);
      for (auto& c : x) c = random_unit(rng);
      const auto sig = floor_signature(spec, x);
      REQUIRE(index.count(sig) == 1);
      const auto* cell = index.at(sig);
      CHECK(cell->delta == delta_at(spec, x));
      CHECK(cell->in_domain_D == in_domain_D(spec, RationalPoint{x}));
      for (std::size_t j = 0; j < spec.dim; ++j) {
        auto shifted = x;
        shifted[j] += 1;
        CHECK(delta_at(spec, shifted) == delta_at(spec, x));
      }
    }
  }
}

TEST_CASE("integrality agrees with polynomial division") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    auto spec = oracle::random_balanced_spec(rng, 1 + rng() % 2);
    if (rng() % 2) std::swap(spec.e, spec.f);
    const bool integral = check_landau(spec).integrality;
    bool divides = true;
    try {
      IntVector box(spec.dim, 5);
      IntVector n(spec.dim, 0);
      while (true) {
        q_ratio(spec, n);
        std::size_t j = 0;
        while (j < spec.dim && n[j] == box[j]) n[j++] = 0;
        if (j == spec.dim) break;
        ++n[j];
      }
    } catch (const NotDivisible&) {
      divides = false;
    }
    CHECK(integral == divides);
  }
}
