#include "ifslab/rational.hpp"

#include <cctype>
#include <cmath>
#include <functional>

#include "ifslab/errors.hpp"

namespace ifslab {

  namespace {

    bool all_digits(std::string_view s) {
      if (s.empty()) {
        return false;
      }
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          return false;
        }
      }
      return true;
    }

    Integer parse_integer(std::string_view s) {
      bool negative = false;
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
      }
      if (!all_digits(s)) {
        throw DomainError("not an integer: '" + std::string(s) + "'");
      }
      Integer z(std::string(s), 10);
      return negative ? Integer(-z) : z;
    }

    Rational parse_decimal(std::string_view text) {
      std::string_view s = text;
      bool negative = false;
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
      }
      long exponent = 0;
      auto epos = s.find_first_of("eE");
      if (epos != std::string_view::npos) {
        Integer e = parse_integer(s.substr(epos + 1));
        if (!e.fits_slong_p() || abs(e) > 100000) {
          throw DomainError("exponent out of range: '" + std::string(text) + "'");
        }
        exponent = e.get_si();
        s = s.substr(0, epos);
      }
      std::string digits;
      auto dot = s.find('.');
      std::string_view int_part  = s.substr(0, dot);
      std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
      if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part))
          || (!frac_part.empty() && !all_digits(frac_part))) {
        throw DomainError("not a number: '" + std::string(text) + "'");
      }
      digits.append(int_part);
      digits.append(frac_part);
      Integer mantissa(digits, 10);
      exponent -= static_cast<long>(frac_part.size());
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
      Rational r = exponent >= 0 ? Rational(mantissa * scale) : make_rational(mantissa, scale);
      return negative ? Rational(-r) : r;
    }

    double log_of_integer(Integer const& z) {
      long e      = 0;
      double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
      return std::log(mant) + static_cast<double>(e) * std::log(2.0);
    }

  }  // namespace

  Rational make_rational(long num, long den) {
    if (den == 0) {
      throw DomainError("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational make_rational(Integer const& num, Integer const& den) {
    if (den == 0) {
      throw DomainError("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
      text.remove_suffix(1);
    }
    if (text.empty()) {
      throw DomainError("empty rational");
    }
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
    }
    return parse_decimal(text);
  }

  std::string to_string(Rational const& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
  }

  double to_double(Rational const& x) {
    return x.get_d();
  }

  double log_of(Rational const& x) {
    if (sgn(x) <= 0) {
      throw DomainError("log of non-positive rational " + to_string(x));
    }
    return log_of_integer(x.get_num()) - log_of_integer(x.get_den());
  }

  Integer floor_of(Rational const& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
  }

  Rational abs_of(Rational const& x) {
    return sgn(x) < 0 ? Rational(-x) : x;
  }

  Rational pow_of(Rational const& base, unsigned long exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    return Rational(num, den);  // already canonical: gcd is preserved under powers
  }

  std::size_t hash_of(Rational const& x) {
    auto limb_hash = [](mpz_srcptr z) {
      std::size_t h  = std::hash<long>{}(static_cast<long>(mpz_sgn(z)));
      std::size_t n  = mpz_size(z);
      for (std::size_t i = 0; i < n; ++i) {
        h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL
             + (h << 6) + (h >> 2);
      }
      return h;
    };
    std::size_t h = limb_hash(x.get_num_mpz_t());
    return h * 1000003ULL ^ limb_hash(x.get_den_mpz_t());
  }

}  // namespace ifslab
