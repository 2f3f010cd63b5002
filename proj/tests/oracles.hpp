#ifndef IFSLAB_TESTS_ORACLES_HPP
#define IFSLAB_TESTS_ORACLES_HPP

// Reference computations written directly from the formulas of the family,
// sharing no code with the library beyond the GMP rational type.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

  using Q = mpq_class;
  using M = std::array<Q, 4>;  // a, b, c, d

  inline Q f(int symbol, Q const& t, Q const& x) {
    switch (symbol) {
      case 1:
        return x / (4 * x + 4);
      case 2:
        return x / 4;
      default:
        return x / 4 + t / 2;
    }
  }

  // f_{u_1} o ... o f_{u_n}(x): innermost symbol is applied first.
  inline Q eval_word(std::vector<std::uint8_t> const& u, Q const& t, Q const& x) {
    Q y = x;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
      y = f(*it, t, y);
    }
    return y;
  }

  // Every generator is increasing on [0, 2t/3].
  inline std::pair<Q, Q> cylinder(std::vector<std::uint8_t> const& u, Q const& t) {
    return {eval_word(u, t, Q(0)), eval_word(u, t, Q(2 * t / 3))};
  }

  inline M mul(M const& x, M const& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
  }

  inline M generator(int symbol, Q const& t) {
    switch (symbol) {
      case 1:
        return {Q(1, 2), 0, 2, 2};
      case 2:
        return {Q(1, 2), 0, 0, 2};
      default:
        return {Q(1, 2), t, 0, 2};
    }
  }

  inline M product(std::vector<std::uint8_t> const& u, Q const& t) {
    M m{1, 0, 0, 1};
    for (auto s : u) {
      m = mul(m, generator(s, t));
    }
    return m;
  }

  // A^m = [[2^-m, 0], [2^{m+2}(1 - 4^-m)/3, 2^m]]
  inline M a_power(unsigned m) {
    mpz_class two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, m);
    Q p(two_m);
    Q four_m = p * p;
    return {1 / p, 0, 4 * p * (1 - 1 / four_m) / 3, p};
  }

  // 3 / (1 - 4^-k)
  inline Q lemma4_threshold(unsigned k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 4, k);
    return Q(3) / (1 - Q(1) / Q(p));
  }

  // Similarity dimension of K maps with common ratio r.
  inline double equal_ratio_dimension(double k, double r) {
    return std::log(k) / std::log(1.0 / r);
  }

  // Local-dimension quotient at 0 for {x/4, x/4, x/4 + t/2} on [0, 2t/3]:
  // every level-n cylinder has length 4^-n 2t/3 and 2^n of them contain 0.
  inline double affine_toy_quotient(unsigned n, double t) {
    return n * std::log(1.5) / (n * std::log(4.0) - std::log(2.0 * t / 3.0));
  }

  inline std::vector<std::uint8_t> random_word(std::mt19937_64& rng, int alphabet, std::size_t len) {
    std::vector<std::uint8_t> w(len);
    for (auto& s : w) {
      s = static_cast<std::uint8_t>(1 + std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
    }
    return w;
  }

  // Uniform rational in [lo, hi] with denominator up to 1000.
  inline Q random_rational(std::mt19937_64& rng, Q const& lo, Q const& hi) {
    long den = std::uniform_int_distribution<long>(1, 1000)(rng);
    long num = std::uniform_int_distribution<long>(0, den)(rng);
    Q frac(num, den);
    frac.canonicalize();
    return lo + (hi - lo) * frac;
  }

}  // namespace oracle

#endif  // IFSLAB_TESTS_ORACLES_HPP
