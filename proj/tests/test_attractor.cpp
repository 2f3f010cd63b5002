#include <catch_amalgamated.hpp>
#include <cmath>

#include "ifslab/attractor.hpp"
#include "ifslab/errors.hpp"
#include "ifslab/pressure.hpp"
#include "oracles.hpp"

using namespace ifslab;

namespace {
  MoebiusMap affine(long num, long den, Rational shift) {
    return MoebiusMap(Matrix2{Rational(num), shift * den, Rational(0), Rational(den)});
  }
}  // namespace

TEST_CASE("box counting the two-map Cantor set") {
  auto ifs = make_ifs({affine(1, 4, Rational(0)), affine(1, 4, make_rational(3, 4))}, Interval(Rational(0), Rational(1)));
  auto est = box_counting(ifs, {3, 4, 5, 6, 7});
  CHECK(std::abs(est.slope - oracle::equal_ratio_dimension(2, 0.25)) <= 0.05);
  for (std::size_t i = 0; i < est.levels.size(); ++i) {
    CHECK(est.levels[i].epsilon == Rational(1) / pow_of(Rational(4), est.levels[i].level));
    if (i > 0) {
      CHECK(est.levels[i].count >= est.levels[i - 1].count);
    }
  }
  CHECK(std::isfinite(est.std_error));
}

TEST_CASE("box counting a single map gives slope 0") {
  auto ifs = make_ifs({affine(1, 4, Rational(0))}, Interval(Rational(0), Rational(1)));
  auto est = box_counting(ifs, {2, 3, 4, 5});
  CHECK(std::abs(est.slope) < 1e-12);
}

TEST_CASE("box counting the family stays below d_8 + 0.05") {
  auto fam = make_family(Rational(1));
  auto est = box_counting(fam, {4, 5, 6, 7, 8});
  CHECK(est.slope >= 0);
  CHECK(est.slope <= 1);
  CHECK(est.slope <= solve_level_dimension(fam, 8).d_n + 0.05);
  for (std::size_t i = 1; i < est.levels.size(); ++i) {
    CHECK(est.levels[i].count >= est.levels[i - 1].count);
  }
}

TEST_CASE("box counting argument checks") {
  auto fam = make_family(Rational(1));
  CHECK_THROWS_AS(box_counting(fam, {}), DomainError);
  CHECK_THROWS_AS(box_counting(fam, {0}), DomainError);
  CHECK_THROWS_AS(box_counting(fam, {13}), LevelCapError);
  auto one = box_counting(fam, {4});
  CHECK(one.slope == Catch::Approx(one.levels[0].log_count / one.levels[0].log_inv_eps));
  CHECK(std::isnan(one.std_error));
}

TEST_CASE("natural measure at t = 1") {
  for (std::size_t n : {1u, 4u, 8u}) {
    double s = solve_level_dimension(make_family(Rational(1)), n).d_n;
    auto   m = natural_measure_stats(Rational(1), n, s);
    CHECK(m.point_cylinders == (std::size_t{1} << n));
    CHECK(m.cylinders == static_cast<std::size_t>(std::pow(3, n)));
    CHECK(m.weight_sum == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(m.min_weight > 0);
    CHECK(m.ball_mass > 0);
    CHECK(m.ball_mass < 1);
    REQUIRE(m.lq.size() == 3);
    CHECK(m.lq[0].q == 2.0);
  }
}

TEST_CASE("natural measure on the affine toy system matches the closed form") {
  for (long t : {1, 3}) {
    auto fam = make_family(Rational(t));
    auto toy = make_ifs({fam.maps[1], fam.maps[1], fam.maps[2]}, fam.invariant_interval);
    for (unsigned n : {2u, 5u, 8u}) {
      auto m = natural_measure_stats(toy, n, std::log(3.0) / std::log(4.0));
      CHECK(m.point_cylinders == (std::size_t{1} << n));
      CHECK(m.ball_mass == Catch::Approx(std::pow(2.0 / 3.0, n)).epsilon(1e-12));
      CHECK(m.local_dimension_quotient
            == Catch::Approx(oracle::affine_toy_quotient(n, static_cast<double>(t))).epsilon(1e-12));
    }
  }
}

TEST_CASE("natural measure argument checks") {
  CHECK_THROWS_AS(natural_measure_stats(Rational(1), 0, 0.5), DomainError);
  CHECK_THROWS_AS(natural_measure_stats(Rational(1), 2, 0.0), DomainError);
  CHECK_THROWS_AS(natural_measure_stats(Rational(1), 2, 1.5), DomainError);
}
