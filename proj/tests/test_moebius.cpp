#include <catch_amalgamated.hpp>
#include <random>

#include "ifslab/errors.hpp"
#include "ifslab/moebius.hpp"
#include "ifslab/words.hpp"
#include "oracles.hpp"

using namespace ifslab;

namespace {
  Matrix2 to_matrix(oracle::M const& m) {
    return {m[0], m[1], m[2], m[3]};
  }
}  // namespace

TEST_CASE("make_family at t = 1") {
  auto fam = make_family(Rational(1));
  REQUIRE(fam.size() == 3);
  CHECK(fam.invariant_interval == Interval(Rational(0), make_rational(2, 3)));
  CHECK(fam.maps[0](Rational(1)) == make_rational(1, 8));
  CHECK(fam.maps[1](Rational(1)) == make_rational(1, 4));
  CHECK(fam.maps[2](Rational(0)) == make_rational(1, 2));
  CHECK(fam.gamma_upper == make_rational(1, 4));
  CHECK(fam.gamma_lower == make_rational(9, 100));
  CHECK(fam.is_hyperbolic());
}

TEST_CASE("make_family rejects t <= 0") {
  CHECK_THROWS_AS(make_family(Rational(0)), DomainError);
  CHECK_THROWS_AS(make_family(make_rational(-1, 2)), DomainError);
}

TEST_CASE("f3 fixes 2t/3") {
  for (long t : {1, 3, 7}) {
    auto fam = make_family(Rational(t));
    auto fp  = fixed_points(fam.maps[2]);
    REQUIRE(fp.size() == 1);
    CHECK(fp[0].exact);
    CHECK(fp[0].lo == make_rational(2 * t, 3));
  }
}

TEST_CASE("f1 image at t = 3") {
  auto fam = make_family(Rational(3));
  CHECK(fam.invariant_interval.right == 2);
  CHECK(image_interval(fam.maps[0], fam.invariant_interval) == Interval(Rational(0), make_rational(1, 6)));
}

TEST_CASE("compose") {
  MoebiusMap a(matrix_A());
  CHECK(compose(a, a).matrix() == Matrix2{make_rational(1, 4), Rational(0), Rational(5), Rational(4)});
  CHECK(compose(a, MoebiusMap()) == a);
  CHECK(compose(MoebiusMap(), a) == a);
  // closed form of A^2, bottom-left 2^4 (1 - 4^-2) / 3 = 5
  CHECK(compose(a, a).matrix() == to_matrix(oracle::a_power(2)));
}

TEST_CASE("eval") {
  auto fam = make_family(Rational(1));
  CHECK(eval(fam.maps[0], Rational(1)) == make_rational(1, 8));
  CHECK(eval(fam.maps[1], Rational(0)) == 0);
  CHECK(map_of_word(power(2, 3), Rational(1))(Rational(1)) == make_rational(1, 64));
  MoebiusMap inv(Matrix2{Rational(1), Rational(0), Rational(1), Rational(-1)});  // x / (x - 1)
  CHECK_THROWS_AS(inv(Rational(1)), PoleError);
}

TEST_CASE("derivative_bounds") {
  auto fam = make_family(Rational(1));
  auto b1  = derivative_bounds(fam.maps[0], fam.invariant_interval);
  CHECK(b1.sup == make_rational(1, 4));
  CHECK(b1.inf == make_rational(9, 100));
  for (long t : {1, 2, 5}) {
    auto f = make_family(Rational(t));
    for (std::size_t i : {1u, 2u}) {
      auto b = derivative_bounds(f.maps[i], f.invariant_interval);
      CHECK(b.inf == make_rational(1, 4));
      CHECK(b.sup == make_rational(1, 4));
    }
  }
  MoebiusMap pole(Matrix2{Rational(0), Rational(1), Rational(1), Rational(-1)});  // 1 / (x - 1)
  CHECK_THROWS_AS(derivative_bounds(pole, Interval(Rational(0), Rational(2))), PoleError);
  CHECK_THROWS_AS(image_interval(pole, Interval(Rational(0), Rational(2))), PoleError);
}

TEST_CASE("image_interval at t = 1") {
  auto        fam = make_family(Rational(1));
  auto const& I   = fam.invariant_interval;
  CHECK(image_interval(fam.maps[0], I) == Interval(Rational(0), make_rational(1, 10)));
  CHECK(image_interval(fam.maps[1], I) == Interval(Rational(0), make_rational(1, 6)));
  CHECK(image_interval(fam.maps[2], I) == Interval(make_rational(1, 2), make_rational(2, 3)));
}

TEST_CASE("fixed points of f1, f2 and an irrational case") {
  auto fam = make_family(Rational(1));
  auto f1  = fixed_points(fam.maps[0]);  // 4x^2 + 3x = 0
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].lo == make_rational(-3, 4));
  CHECK(f1[1].lo == 0);
  auto f2 = fixed_points(fam.maps[1]);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].lo == 0);

  // 1 / (x + 1): x^2 + x - 1 = 0
  MoebiusMap g(Matrix2{Rational(0), Rational(1), Rational(1), Rational(1)});
  auto       fp = fixed_points(g);
  REQUIRE(fp.size() == 2);
  auto const& root = fp[1];
  CHECK_FALSE(root.exact);
  CHECK(root.hi - root.lo <= default_enclosure_width());
  auto q = [](Rational const& x) { return Rational(x * x + x - 1); };
  CHECK(q(root.lo) <= 0);
  CHECK(q(root.hi) >= 0);

  CHECK_THROWS_AS(fixed_points(MoebiusMap()), DegenerateError);
  // translation: no finite fixed point
  CHECK(fixed_points(MoebiusMap(Matrix2{Rational(1), Rational(1), Rational(0), Rational(1)})).empty());
}

TEST_CASE("matrix inverse and degenerate matrices") {
  CHECK(matrix_A() * matrix_A().inverse() == Matrix2::identity());
  CHECK_THROWS_AS((Matrix2{Rational(1), Rational(2), Rational(2), Rational(4)}.inverse()), DegenerateError);
  CHECK_THROWS_AS(Interval(Rational(1), Rational(0)), DomainError);
}

TEST_CASE("make_ifs rejects maps leaving the interval") {
  std::vector<MoebiusMap> maps{MoebiusMap(Matrix2{Rational(1), Rational(1), Rational(0), Rational(2)})};  // (x+1)/2
  CHECK_THROWS_AS(make_ifs(maps, Interval(Rational(0), make_rational(1, 2))), DomainError);
  CHECK_NOTHROW(make_ifs(maps, Interval(Rational(0), Rational(1))));
}

// ---- properties ------------------------------------------------------------

TEST_CASE("homomorphism: word matrix evaluation equals folded evaluation") {
  std::mt19937_64 rng(20240611);
  for (Rational t : {make_rational(1, 2), Rational(1), Rational(3)}) {
    auto fam = make_family(t);
    for (int trial = 0; trial < 300; ++trial) {
      auto u = oracle::random_word(rng, 3, rng() % 9);
      auto x = oracle::random_rational(rng, Rational(0), fam.invariant_interval.right);
      CHECK(map_of_word(fam, Word(u))(x) == oracle::eval_word(u, t, x));
      CHECK(map_of_word(fam, Word(u)).matrix() == Matrix2{oracle::product(u, t)[0], oracle::product(u, t)[1],
                                                          oracle::product(u, t)[2], oracle::product(u, t)[3]});
    }
  }
}

TEST_CASE("chain rule for |u|, |v| <= 4") {
  std::mt19937_64 rng(7);
  auto            fam = make_family(Rational(1));
  for (int trial = 0; trial < 400; ++trial) {
    Word u(oracle::random_word(rng, 3, rng() % 5));
    Word v(oracle::random_word(rng, 3, rng() % 5));
    auto x   = oracle::random_rational(rng, Rational(0), fam.invariant_interval.right);
    auto fu  = map_of_word(fam, u);
    auto fv  = map_of_word(fam, v);
    auto fuv = map_of_word(fam, u + v);
    CHECK(abs_of(fuv.derivative(x)) == abs_of(fu.derivative(fv(x))) * abs_of(fv.derivative(x)));
  }
}

TEST_CASE("products of A, B, C_t have det 1 and nonnegative entries up to length 8") {
  for (Rational t : {make_rational(1, 2), Rational(1), Rational(3)}) {
    auto fam = make_family(t);
    for (std::size_t n = 0; n <= 8; ++n) {
      bool ok = true;
      for (WordEnumerator e(3, n); !e.done(); e.advance()) {
        Matrix2 m = map_of_word(fam, e.current()).matrix();
        ok               = ok && m.determinant() == 1 && sgn(m.a) >= 0 && sgn(m.b) >= 0 && sgn(m.c) >= 0 && sgn(m.d) >= 0;
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("contraction: sup |f'| <= 1/4 for every generator") {
  for (Rational t : {make_rational(1, 2), Rational(1), Rational(3)}) {
    auto fam = make_family(t);
    for (auto const& f : fam.maps) {
      CHECK(derivative_bounds(f, fam.invariant_interval).sup <= make_rational(1, 4));
    }
  }
}

TEST_CASE("derivative bounds bracket |f'| at interior samples") {
  std::mt19937_64 rng(99);
  auto            fam = make_family(Rational(2));
  auto const&     I   = fam.invariant_interval;
  for (int trial = 0; trial < 20; ++trial) {
    auto f = map_of_word(fam, Word(oracle::random_word(rng, 3, 1 + rng() % 4)));
    auto b = derivative_bounds(f, I);
    for (int j = 1; j <= 100; ++j) {
      Rational x = I.right * make_rational(j, 101);
      auto     d = abs_of(f.derivative(x));
      CHECK(b.inf <= d);
      CHECK(d <= b.sup);
    }
  }
}
