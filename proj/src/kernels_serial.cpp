#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ifslab/errors.hpp"
#include "ifslab/kernels.hpp"
#include "ifslab/words.hpp"

namespace ifslab::kernels {

  std::size_t level_cap() {
    if (char const* env = std::getenv("IFSLAB_MAX_LEVEL"); env != nullptr && *env != '\0') {
      char* end   = nullptr;
      long  value = std::strtol(env, &end, 10);
      if (end != nullptr && *end == '\0' && value > 0) {
        return static_cast<std::size_t>(value);
      }
    }
    return 12;
  }

  void check_level(std::size_t n) {
    if (n > level_cap()) {
      throw LevelCapError("level " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(level_cap())
                          + " (set IFSLAB_MAX_LEVEL to raise it)");
    }
  }

  std::vector<Matrix2> level_matrices(IFSInstance const& ifs, std::size_t n, Exec exec) {
    check_level(n);
    return exec == Exec::serial ? detail::serial_level_matrices(ifs, n) : detail::omp_level_matrices(ifs, n);
  }

  std::vector<double> level_log_norms(IFSInstance const& ifs, std::size_t n, Exec exec) {
    check_level(n);
    return exec == Exec::serial ? detail::serial_level_log_norms(ifs, n) : detail::omp_level_log_norms(ifs, n);
  }

  Rational level_max_distortion(IFSInstance const& ifs, std::size_t n, Exec exec) {
    check_level(n);
    return exec == Exec::serial ? detail::serial_level_max_distortion(ifs, n)
                                : detail::omp_level_max_distortion(ifs, n);
  }

  std::vector<Interval> level_cylinders(IFSInstance const& ifs, std::size_t n, Exec exec) {
    check_level(n);
    return exec == Exec::serial ? detail::serial_level_cylinders(ifs, n) : detail::omp_level_cylinders(ifs, n);
  }

  double sum_of_powers(std::span<double const> log_values, double s, Exec exec) {
    double out = exec == Exec::serial ? detail::serial_sum_of_powers(log_values, s)
                                      : detail::omp_sum_of_powers(log_values, s);
    if (!std::isfinite(out)) {
      throw NumericError("partition sum overflowed at exponent " + std::to_string(s));
    }
    return out;
  }

  std::size_t count_boxes(std::span<Interval const> intervals, Rational const& width, Exec exec) {
    if (sgn(width) <= 0) {
      throw DomainError("box width must be positive");
    }
    return exec == Exec::serial ? detail::serial_count_boxes(intervals, width)
                                : detail::omp_count_boxes(intervals, width);
  }

  PairDistance min_pair_distance(std::vector<std::vector<Rational>> const& rows,
                                 std::span<std::size_t const>               classes,
                                 Exec                                       exec) {
    if (!classes.empty() && classes.size() != rows.size()) {
      throw DomainError("class labels must match the rows");
    }
    return exec == Exec::serial ? detail::serial_min_pair_distance(rows, classes)
                                : detail::omp_min_pair_distance(rows, classes);
  }

  namespace detail {

    namespace {
      std::pair<Rational, Rational> endpoint_denominators(Matrix2 const& m, Interval const& J) {
        Rational l = m.c * J.left + m.d;
        Rational r = m.c * J.right + m.d;
        if (sgn(l) == 0 || sgn(r) == 0 || sgn(l) != sgn(r)) {
          throw PoleError("pole of " + to_string(m) + " inside " + to_string(J));
        }
        return {l * l, r * r};
      }

      Matrix2 product_of(IFSInstance const& ifs, Word const& w) {
        Matrix2 m = Matrix2::identity();
        for (auto s : w.symbols) {
          m = m * ifs.maps[s - 1].matrix();
        }
        return m;
      }

      template <typename Fn>
      void for_each_word(IFSInstance const& ifs, std::size_t n, Fn&& fn) {
        std::size_t index = 0;
        for (WordEnumerator it(ifs.size(), n); !it.done(); it.advance()) {
          fn(index++, product_of(ifs, it.current()));
        }
      }
    }  // namespace

    Rational sup_derivative(Matrix2 const& m, Interval const& J) {
      auto [l2, r2] = endpoint_denominators(m, J);
      return abs_of(m.determinant()) / std::min(l2, r2);
    }

    Rational distortion(Matrix2 const& m, Interval const& J) {
      auto [l2, r2] = endpoint_denominators(m, J);
      return l2 < r2 ? Rational(r2 / l2) : Rational(l2 / r2);
    }

    Interval image(Matrix2 const& m, Interval const& J) {
      return image_interval(MoebiusMap(m), J);
    }

    void CompensatedSum::add(double x) {
      double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }

    std::pair<long long, long long> box_range(Interval const& iv, Rational const& width) {
      Integer lo = floor_of(iv.left / width);
      Integer hi = floor_of(iv.right / width);
      if (!lo.fits_slong_p() || !hi.fits_slong_p()) {
        throw NumericError("box index out of range for interval " + to_string(iv));
      }
      return {lo.get_si(), hi.get_si()};
    }

    std::size_t count_merged_ranges(std::vector<std::pair<long long, long long>>& ranges) {
      std::sort(ranges.begin(), ranges.end());
      std::size_t count = 0;
      long long   next  = 0;  // first index not yet counted
      bool        first = true;
      for (auto [lo, hi] : ranges) {
        long long from = first ? lo : std::max(lo, next);
        if (hi >= from) {
          count += static_cast<std::size_t>(hi - from + 1);
          next = hi + 1;
        }
        first = false;
      }
      return count;
    }

    Rational row_distance(std::vector<Rational> const& x, std::vector<Rational> const& y) {
      Rational best(0);
      for (std::size_t k = 0; k < x.size(); ++k) {
        Rational d = abs_of(x[k] - y[k]);
        if (d > best) {
          best = std::move(d);
        }
      }
      return best;
    }

    std::vector<Matrix2> serial_level_matrices(IFSInstance const& ifs, std::size_t n) {
      std::vector<Matrix2> out(word_count(ifs.size(), n));
      for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) { out[i] = m; });
      return out;
    }

    std::vector<double> serial_level_log_norms(IFSInstance const& ifs, std::size_t n) {
      std::vector<double> out(word_count(ifs.size(), n));
      for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) {
        out[i] = log_of(sup_derivative(m, ifs.invariant_interval));
      });
      return out;
    }

    Rational serial_level_max_distortion(IFSInstance const& ifs, std::size_t n) {
      Rational best(1);
      for_each_word(ifs, n, [&](std::size_t, Matrix2 const& m) {
        Rational r = distortion(m, ifs.invariant_interval);
        if (r > best) {
          best = std::move(r);
        }
      });
      return best;
    }

    std::vector<Interval> serial_level_cylinders(IFSInstance const& ifs, std::size_t n) {
      std::vector<Interval> out(word_count(ifs.size(), n));
      for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) { out[i] = image(m, ifs.invariant_interval); });
      return out;
    }

    double serial_sum_of_powers(std::span<double const> log_values, double s) {
      CompensatedSum acc;
      for (double l : log_values) {
        acc.add(std::exp(s * l));
      }
      return acc.value();
    }

    std::size_t serial_count_boxes(std::span<Interval const> intervals, Rational const& width) {
      std::vector<std::pair<long long, long long>> ranges;
      ranges.reserve(intervals.size());
      for (auto const& iv : intervals) {
        ranges.push_back(box_range(iv, width));
      }
      return count_merged_ranges(ranges);
    }

    PairDistance serial_min_pair_distance(std::vector<std::vector<Rational>> const& rows,
                                          std::span<std::size_t const>               classes) {
      PairDistance best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
          if (!classes.empty() && classes[i] == classes[j]) {
            continue;
          }
          Rational d = row_distance(rows[i], rows[j]);
          if (!best.found || d < best.value) {
            best = {std::move(d), i, j, true};
          }
        }
      }
      return best;
    }

  }  // namespace detail

}  // namespace ifslab::kernels
