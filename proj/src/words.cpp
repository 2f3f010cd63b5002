#include "ifslab/words.hpp"

#include <algorithm>
#include <limits>

#include "ifslab/errors.hpp"

namespace ifslab {

  bool Word::contains(std::uint8_t symbol) const {
    return std::find(symbols.begin(), symbols.end(), symbol) != symbols.end();
  }

  Word operator+(Word const& lhs, Word const& rhs) {
    Word out = lhs;
    out.symbols.insert(out.symbols.end(), rhs.symbols.begin(), rhs.symbols.end());
    return out;
  }

  Word power(std::uint8_t symbol, std::size_t k) {
    return Word(std::vector<std::uint8_t>(k, symbol));
  }

  std::string to_string(Word const& w) {
    bool        wide = std::any_of(w.symbols.begin(), w.symbols.end(), [](auto s) { return s > 9; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (wide && i > 0) {
        out.push_back('.');
      }
      out += std::to_string(static_cast<int>(w[i]));
    }
    return out;
  }

  Word parse_word(std::string_view text) {
    Word w;
    if (text.find('.') != std::string_view::npos) {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        auto        next  = text.find('.', pos);
        auto        token = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        int         value = 0;
        if (token.empty() || token.size() > 3) {
          throw DomainError("bad word '" + std::string(text) + "'");
        }
        for (char c : token) {
          if (c < '0' || c > '9') {
            throw DomainError("bad word '" + std::string(text) + "'");
          }
          value = value * 10 + (c - '0');
        }
        if (value < 1 || value > 255) {
          throw DomainError("bad symbol in word '" + std::string(text) + "'");
        }
        w.symbols.push_back(static_cast<std::uint8_t>(value));
        if (next == std::string_view::npos) {
          break;
        }
        pos = next + 1;
      }
      return w;
    }
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw DomainError("bad symbol '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
      }
      w.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
  }

  WordEnumerator::WordEnumerator(std::size_t alphabet_size, std::size_t n)
      : alphabet_size_(alphabet_size), current_(power(1, n)), done_(alphabet_size == 0 && n > 0) {
    if (alphabet_size > 255) {
      throw DomainError("alphabet too large");
    }
  }

  void WordEnumerator::advance() {
    for (std::size_t i = current_.size(); i-- > 0;) {
      if (current_.symbols[i] < alphabet_size_) {
        ++current_.symbols[i];
        return;
      }
      current_.symbols[i] = 1;
    }
    done_ = true;
  }

  std::size_t word_count(std::size_t alphabet_size, std::size_t n) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (alphabet_size != 0 && count > std::numeric_limits<std::size_t>::max() / alphabet_size) {
        throw DomainError("word count overflow");
      }
      count *= alphabet_size;
    }
    return count;
  }

  std::vector<Word> enumerate(std::size_t alphabet_size, std::size_t n) {
    std::vector<Word> out;
    out.reserve(word_count(alphabet_size, n));
    for (WordEnumerator it(alphabet_size, n); !it.done(); it.advance()) {
      out.push_back(it.current());
    }
    return out;
  }

  std::strong_ordering lex_compare(Word const& v, Word const& w) {
    if (v.size() != w.size()) {
      throw DomainError("lex_compare needs words of equal length: " + to_string(v) + " vs " + to_string(w));
    }
    auto binary = [](Word const& x) {
      return std::all_of(x.symbols.begin(), x.symbols.end(), [](auto s) { return s == 1 || s == 2; });
    };
    if (!binary(v) || !binary(w)) {
      throw DomainError("lex_compare is defined on {1,2}^k only: " + to_string(v) + " vs " + to_string(w));
    }
    for (std::size_t i = v.size(); i-- > 0;) {
      if (v[i] != w[i]) {
        return v[i] <=> w[i];
      }
    }
    return std::strong_ordering::equal;
  }

  std::vector<Word> ordered_binary_words(std::size_t k) {
    auto words = enumerate(2, k);
    std::sort(words.begin(), words.end(), [](Word const& x, Word const& y) { return lex_compare(x, y) < 0; });
    return words;
  }

  std::optional<ConsecutiveShape> consecutive_shape(Word const& v, Word const& w) {
    if (v.size() != w.size()) {
      return std::nullopt;
    }
    std::size_t m = 0;
    while (m < v.size() && v[m] == 2 && w[m] == 1) {
      ++m;
    }
    if (m >= v.size() || v[m] != 1 || w[m] != 2) {
      return std::nullopt;
    }
    Word u(std::vector<std::uint8_t>(v.symbols.begin() + static_cast<long>(m) + 1, v.symbols.end()));
    if (!std::equal(u.symbols.begin(), u.symbols.end(), w.symbols.begin() + static_cast<long>(m) + 1)) {
      return std::nullopt;
    }
    return ConsecutiveShape{m, std::move(u)};
  }

  MoebiusMap map_of_word(IFSInstance const& ifs, Word const& u) {
    Matrix2 m = Matrix2::identity();
    for (auto s : u.symbols) {
      if (s < 1 || s > ifs.size()) {
        throw DomainError("symbol " + std::to_string(s) + " outside the alphabet of size " + std::to_string(ifs.size()));
      }
      m = m * ifs.maps[s - 1].matrix();
    }
    return MoebiusMap(std::move(m));
  }

  MoebiusMap map_of_word(Word const& u, Rational const& t) {
    return map_of_word(make_family(t), u);
  }

  Interval cylinder(IFSInstance const& ifs, Word const& u) {
    return image_interval(map_of_word(ifs, u), ifs.invariant_interval);
  }

  Interval cylinder(Word const& u, Rational const& t) {
    return cylinder(make_family(t), u);
  }

  std::vector<Word> subsystem_words(SubsystemVariant variant, std::size_t n) {
    if (n == 0) {
      throw DomainError("subsystem level must be at least 1");
    }
    std::vector<Word> out;
    if (variant == SubsystemVariant::full_level_n_containing_3) {
      for (WordEnumerator it(3, n); !it.done(); it.advance()) {
        if (it.current().contains(3)) {
          out.push_back(it.current());
        }
      }
    } else {
      for (std::size_t len = 0; len < n; ++len) {
        for (auto const& v : enumerate(2, len)) {
          out.push_back(v + power(3, 1));
        }
      }
    }
    return out;
  }

  IFSInstance build_subsystem(SubsystemSpec const& spec) {
    auto                    base  = make_family(spec.t);
    auto                    words = subsystem_words(spec.variant, spec.n);
    std::vector<MoebiusMap> maps;
    maps.reserve(words.size());
    for (auto const& u : words) {
      maps.push_back(map_of_word(base, u));
    }
    return make_ifs(std::move(maps), base.invariant_interval);
  }

  ThreeBlocks split_at_threes(Word const& w) {
    ThreeBlocks out;
    Word        block;
    for (auto s : w.symbols) {
      block.symbols.push_back(s);
      if (s == 3) {
        out.blocks.push_back(std::move(block));
        block = Word();
      }
    }
    out.tail = std::move(block);
    return out;
  }

}  // namespace ifslab
