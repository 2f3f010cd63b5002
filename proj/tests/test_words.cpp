#include <catch_amalgamated.hpp>
#include <algorithm>
#include <set>

#include "ifslab/errors.hpp"
#include "ifslab/words.hpp"
#include "oracles.hpp"

using namespace ifslab;

namespace {
  Word w(char const* text) {
    return parse_word(text);
  }
  std::vector<std::string> strings(std::vector<Word> const& ws) {
    std::vector<std::string> out;
    for (auto const& x : ws) {
      out.push_back(to_string(x));
    }
    return out;
  }
}  // namespace

TEST_CASE("enumerate") {
  CHECK(strings(enumerate(2, 2)) == std::vector<std::string>{"11", "12", "21", "22"});
  CHECK(strings(enumerate(3, 1)) == std::vector<std::string>{"1", "2", "3"});
  CHECK(enumerate(3, 5).size() == 243);
  CHECK(word_count(3, 5) == 243);
  CHECK(enumerate(3, 0).size() == 1);
  CHECK_THROWS_AS(word_count(3, 64), DomainError);
}

TEST_CASE("the streaming enumerator matches enumerate") {
  auto all = enumerate(3, 4);
  std::size_t i = 0;
  for (WordEnumerator e(3, 4); !e.done(); e.advance()) {
    REQUIRE(i < all.size());
    CHECK(e.current() == all[i++]);
  }
  CHECK(i == all.size());
}

TEST_CASE("parse_word and to_string") {
  CHECK(to_string(w("1213")) == "1213");
  CHECK(w("").empty());
  CHECK(power(2, 3) == w("222"));
  CHECK(w("12") + w("3") == w("123"));
  CHECK_THROWS_AS(parse_word("1x"), DomainError);
  CHECK_THROWS_AS(parse_word("102"), DomainError);
}

TEST_CASE("lex_compare compares from the last symbol") {
  CHECK(lex_compare(w("111"), w("211")) == std::strong_ordering::less);
  CHECK(lex_compare(w("122"), w("222")) == std::strong_ordering::less);
  CHECK(lex_compare(w("121"), w("121")) == std::strong_ordering::equal);
  CHECK(lex_compare(w("12"), w("21")) == std::strong_ordering::greater);
  CHECK_THROWS_AS(lex_compare(w("12"), w("1")), DomainError);
  CHECK_THROWS_AS(lex_compare(w("13"), w("12")), DomainError);
}

TEST_CASE("ordered words form the chain 1^k < 21^{k-1} < ... < 2^k") {
  auto ws = ordered_binary_words(3);
  REQUIRE(ws.size() == 8);
  CHECK(ws.front() == w("111"));
  CHECK(ws[1] == w("211"));
  CHECK(ws[2] == w("121"));
  CHECK(ws.back() == w("222"));
}

TEST_CASE("consecutive pairs have the shape (2^m 1 u, 1^m 2 u) for k <= 6") {
  for (std::size_t k = 1; k <= 6; ++k) {
    auto ws = ordered_binary_words(k);
    for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
      auto shape = consecutive_shape(ws[i], ws[i + 1]);
      REQUIRE(shape);
      CHECK(ws[i] == power(2, shape->m) + w("1") + shape->u);
      CHECK(ws[i + 1] == power(1, shape->m) + w("2") + shape->u);
    }
  }
  CHECK_FALSE(consecutive_shape(w("11"), w("22")));
}

TEST_CASE("map_of_word") {
  // 1^5 equals the closed form of A^5
  auto m5 = oracle::a_power(5);
  CHECK(map_of_word(power(1, 5), Rational(1)).matrix() == Matrix2{m5[0], m5[1], m5[2], m5[3]});
  // f_{2^2 1}(x) = x / (4^3 (1 + x))
  CHECK(map_of_word(w("221"), Rational(1))(Rational(1)) == make_rational(1, 128));
  CHECK(map_of_word(Word{}, Rational(1)).is_identity());
}

TEST_CASE("cylinder") {
  Rational one(1);
  CHECK(cylinder(w("3"), one) == Interval(make_rational(1, 2), make_rational(2, 3)));
  CHECK(cylinder(w("23"), one) == Interval(make_rational(1, 8), make_rational(1, 6)));
  CHECK(cylinder(w("13"), one) == Interval(make_rational(1, 12), make_rational(1, 10)));
  CHECK(cylinder(Word{}, one) == Interval(Rational(0), make_rational(2, 3)));
}

TEST_CASE("build_subsystem") {
  CHECK(strings(subsystem_words(SubsystemVariant::full_level_n_containing_3, 2))
        == std::vector<std::string>{"13", "23", "31", "32", "33"});
  CHECK(strings(subsystem_words(SubsystemVariant::tilde_v3, 3))
        == std::vector<std::string>{"3", "13", "23", "113", "123", "213", "223"});
  CHECK(strings(subsystem_words(SubsystemVariant::full_level_n_containing_3, 1)) == std::vector<std::string>{"3"});
  CHECK_THROWS_AS(subsystem_words(SubsystemVariant::tilde_v3, 0), DomainError);
  CHECK_THROWS_AS(build_subsystem({Rational(1), 0, SubsystemVariant::full_level_n_containing_3}), DomainError);

  auto sub = build_subsystem({Rational(1), 3, SubsystemVariant::full_level_n_containing_3});
  CHECK(sub.size() == 27 - 8);
}

TEST_CASE("subsystem cylinders are full-system cylinders") {
  for (auto variant : {SubsystemVariant::full_level_n_containing_3, SubsystemVariant::tilde_v3}) {
    auto sub   = build_subsystem({Rational(1), 3, variant});
    auto words = subsystem_words(variant, 3);
    auto fam   = make_family(Rational(1));
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto ci = image_interval(sub.maps[i], sub.invariant_interval);
      CHECK(ci == cylinder(fam, words[i]));
      CHECK(fam.invariant_interval.contains(ci));
    }
  }
}

TEST_CASE("cylinder nesting I_{uv} in I_u for |u|, |v| <= 4") {
  auto fam = make_family(Rational(1));
  bool ok  = true;
  for (std::size_t lu = 0; lu <= 4; ++lu) {
    for (auto const& u : enumerate(3, lu)) {
      Interval iu = cylinder(fam, u);
      for (std::size_t lv = 0; lv <= 4; ++lv) {
        for (auto const& v : enumerate(3, lv)) {
          ok = ok && iu.contains(cylinder(fam, u + v));
        }
      }
    }
  }
  CHECK(ok);
}

TEST_CASE("cylinders agree with the direct oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto     u = oracle::random_word(rng, 3, rng() % 7);
    Rational t = oracle::random_rational(rng, make_rational(1, 10), Rational(10));
    if (sgn(t) == 0) {
      continue;
    }
    auto [l, r] = oracle::cylinder(u, t);
    CHECK(cylinder(Word(u), t) == Interval(l, r));
  }
}

TEST_CASE("decomposition into blocks ending in a single 3 (n = 2)") {
  auto const alphabet = subsystem_words(SubsystemVariant::full_level_n_containing_3, 2);
  // All concatenations of up to four generating words, total length <= 8.
  std::vector<Word> frontier{Word{}};
  std::size_t       checked = 0;
  for (int depth = 0; depth < 4; ++depth) {
    std::vector<Word> next;
    for (auto const& p : frontier) {
      for (auto const& a : alphabet) {
        Word x      = p + a;
        auto blocks = split_at_threes(x);
        Word joined;
        for (auto const& b : blocks.blocks) {
          CHECK(b.size() <= 3);
          CHECK(std::count(b.symbols.begin(), b.symbols.end(), 3) == 1);
          CHECK(b.symbols.back() == 3);
          joined = joined + b;
        }
        CHECK_FALSE(blocks.tail.contains(3));
        CHECK(blocks.tail.size() <= 1);
        CHECK(joined + blocks.tail == x);
        next.push_back(std::move(x));
        ++checked;
      }
    }
    frontier = std::move(next);
  }
  CHECK(checked == 5 + 25 + 125 + 625);
}
