#ifndef IFSLAB_WORDS_HPP
#define IFSLAB_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifslab/moebius.hpp"

namespace ifslab {

  // Finite word over {1, ..., K}. Symbols are 1-based so that words print the
  // way they are written by hand ("123"). The empty word addresses the identity.
  struct Word {
    std::vector<std::uint8_t> symbols;

    Word() = default;
    explicit Word(std::vector<std::uint8_t> s) : symbols(std::move(s)) {}

    std::size_t size() const {
      return symbols.size();
    }
    bool empty() const {
      return symbols.empty();
    }
    std::uint8_t operator[](std::size_t i) const {
      return symbols[i];
    }

    bool contains(std::uint8_t symbol) const;

    // Standard lexicographic order with 1 < 2 < 3 (shorter prefix first); this
    // is the enumeration order, not the order of lex_compare below.
    friend auto operator<=>(Word const&, Word const&) = default;
    friend bool operator==(Word const&, Word const&)  = default;
  };

  Word operator+(Word const& lhs, Word const& rhs);

  // alpha^k
  Word power(std::uint8_t symbol, std::size_t k);

  // Digit string such as "1213"; symbols above 9 are dot-separated.
  std::string to_string(Word const& w);
  Word        parse_word(std::string_view text);  // throws DomainError

  // Streams {1..K}^n in lexicographic order without materializing it.
  class WordEnumerator {
   public:
    WordEnumerator(std::size_t alphabet_size, std::size_t n);

    Word const& current() const {
      return current_;
    }
    bool done() const {
      return done_;
    }
    void advance();

   private:
    std::size_t alphabet_size_;
    Word        current_;
    bool        done_;
  };

  // All |alphabet|^n words in lexicographic order.
  std::vector<Word> enumerate(std::size_t alphabet_size, std::size_t n);

  // Number of words K^n, throwing DomainError on overflow.
  std::size_t word_count(std::size_t alphabet_size, std::size_t n);

  // The ordering on {1,2}^k used for the v3-cylinders: words are compared
  // from the LAST symbol backwards, which yields the chain
  //   1^k < 21^{k-1} < 121^{k-2} < ... < 12^{k-1} < 2^k.
  // Throws DomainError on unequal lengths or any symbol other than 1, 2.
  std::strong_ordering lex_compare(Word const& v, Word const& w);

  // {1,2}^k sorted by lex_compare.
  std::vector<Word> ordered_binary_words(std::size_t k);

  // For consecutive v < w the pair has the form (2^m 1 u, 1^m 2 u).
  struct ConsecutiveShape {
    std::size_t m;
    Word        u;
  };
  std::optional<ConsecutiveShape> consecutive_shape(Word const& v, Word const& w);

  // f_{u_1} o ... o f_{u_n}; the empty word gives the identity.
  MoebiusMap map_of_word(IFSInstance const& ifs, Word const& u);
  MoebiusMap map_of_word(Word const& u, Rational const& t);

  // f_u(I)
  Interval cylinder(IFSInstance const& ifs, Word const& u);
  Interval cylinder(Word const& u, Rational const& t);

  enum class SubsystemVariant {
    full_level_n_containing_3,  // all u in {1,2,3}^n with at least one 3
    tilde_v3,                   // all u = v3 with |u| <= n, v in {1,2}*
  };

  struct SubsystemSpec {
    Rational         t;
    std::size_t      n;
    SubsystemVariant variant;
  };

  // Generating words in enumeration order (tilde: by length, then lexicographic).
  std::vector<Word> subsystem_words(SubsystemVariant variant, std::size_t n);
  IFSInstance       build_subsystem(SubsystemSpec const& spec);

  // Splits a word over {1,2,3} into blocks that each end in their only 3,
  // plus a trailing remainder without a 3.
  struct ThreeBlocks {
    std::vector<Word> blocks;
    Word              tail;
  };
  ThreeBlocks split_at_threes(Word const& w);

}  // namespace ifslab

#endif  // IFSLAB_WORDS_HPP
