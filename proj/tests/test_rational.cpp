#include <catch_amalgamated.hpp>
#include <cmath>

#include "ifslab/errors.hpp"
#include "ifslab/rational.hpp"

using namespace ifslab;

TEST_CASE("make_rational canonicalizes") {
  auto x = make_rational(6, -4);
  CHECK(x.get_num() == -3);
  CHECK(x.get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
  CHECK_THROWS_AS(make_rational(Integer(3), Integer(0)), DomainError);
}

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
  CHECK(parse_rational("29/10") == make_rational(29, 10));
  CHECK(parse_rational("2.9") == make_rational(29, 10));
  CHECK(parse_rational("-0.25") == make_rational(-1, 4));
  CHECK(parse_rational("1.5e-6") == make_rational(3, 2000000));
  CHECK(parse_rational("2E3") == Rational(2000));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  // 0.1 has no finite binary expansion; the exact value must survive
  CHECK(parse_rational("0.1") == make_rational(1, 10));
}

TEST_CASE("parse_rational rejects junk") {
  for (char const* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "3/4/5", "1e", "--1"}) {
    CHECK_THROWS_AS(parse_rational(bad), DomainError);
  }
}

TEST_CASE("to_string always prints p/q and round-trips") {
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(make_rational(-5, 10)) == "-1/2");
  for (auto const& text : {"1/3", "-22/7", "0/1", "123456789012345678901234567891/7"}) {
    CHECK(to_string(parse_rational(text)) == text);
  }
}

TEST_CASE("log_of stays accurate outside the double range") {
  CHECK(log_of(make_rational(1, 4)) == Catch::Approx(std::log(0.25)).epsilon(1e-15));
  Rational tiny = pow_of(make_rational(1, 4), 2000);  // 4^-2000 underflows a double
  CHECK(log_of(tiny) == Catch::Approx(-2000 * std::log(4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_of(Rational(0)), DomainError);
  CHECK_THROWS_AS(log_of(Rational(-1)), DomainError);
}

TEST_CASE("floor, abs, pow, hash") {
  CHECK(floor_of(make_rational(-7, 2)) == -4);
  CHECK(floor_of(make_rational(7, 2)) == 3);
  CHECK(abs_of(make_rational(-7, 2)) == make_rational(7, 2));
  CHECK(pow_of(make_rational(2, 3), 3) == make_rational(8, 27));
  CHECK(pow_of(make_rational(2, 3), 0) == 1);
  CHECK(hash_of(make_rational(2, 4)) == hash_of(make_rational(1, 2)));
}
