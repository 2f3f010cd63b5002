#ifndef IFSLAB_KERNELS_HPP
#define IFSLAB_KERNELS_HPP

// Level-n sweeps over all words of an IFS.
//
// Every kernel has two implementations selected by Exec:
//   serial   - reference path; enumerates words with an odometer and rebuilds
//              each product from scratch. Kept for testing and benchmarks.
//   parallel - OpenMP over word prefixes; each task walks its suffix tree
//              reusing prefix products.
// Outputs are in canonical enumeration order (lexicographic, 1 < 2 < ...) and
// do not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "ifslab/moebius.hpp"

namespace ifslab::kernels {

  enum class Exec { serial, parallel };

  // Maximum enumeration level; IFSLAB_MAX_LEVEL overrides the default 12.
  std::size_t level_cap();
  // Throws LevelCapError when n exceeds level_cap().
  void check_level(std::size_t n);

  std::vector<Matrix2> level_matrices(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);

  // log ||f_u'|| (sup norm on the invariant interval), from the exact rational norm.
  std::vector<double> level_log_norms(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);

  // max over |u| = n of sup|f_u'| / inf|f_u'| on the invariant interval.
  Rational level_max_distortion(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);

  std::vector<Interval> level_cylinders(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);

  // sum_i exp(s * log_values[i]) with compensated summation. The parallel path
  // reduces fixed-size chunks in index order, so the result is independent of
  // the thread count.
  double sum_of_powers(std::span<double const> log_values, double s, Exec exec = Exec::parallel);

  // Number of grid cells [k w, (k+1) w), k integer, meeting the union of the
  // closed intervals.
  std::size_t count_boxes(std::span<Interval const> intervals, Rational const& width, Exec exec = Exec::parallel);

  struct PairDistance {
    Rational    value;  // min over pairs of max_k |rows[i][k] - rows[j][k]|
    std::size_t i = 0;  // lexicographically first minimizing pair, i < j
    std::size_t j = 0;
    bool        found = false;  // false when no admissible pair exists
  };

  // Pairs with classes[i] == classes[j] are skipped when classes is non-empty.
  PairDistance min_pair_distance(std::vector<std::vector<Rational>> const& rows,
                                 std::span<std::size_t const>               classes,
                                 Exec                                       exec = Exec::parallel);

  namespace detail {
    std::vector<Matrix2>  serial_level_matrices(IFSInstance const&, std::size_t);
    std::vector<double>   serial_level_log_norms(IFSInstance const&, std::size_t);
    Rational              serial_level_max_distortion(IFSInstance const&, std::size_t);
    std::vector<Interval> serial_level_cylinders(IFSInstance const&, std::size_t);
    double                serial_sum_of_powers(std::span<double const>, double);
    std::size_t           serial_count_boxes(std::span<Interval const>, Rational const&);
    PairDistance serial_min_pair_distance(std::vector<std::vector<Rational>> const&, std::span<std::size_t const>);

    std::vector<Matrix2>  omp_level_matrices(IFSInstance const&, std::size_t);
    std::vector<double>   omp_level_log_norms(IFSInstance const&, std::size_t);
    Rational              omp_level_max_distortion(IFSInstance const&, std::size_t);
    std::vector<Interval> omp_level_cylinders(IFSInstance const&, std::size_t);
    double                omp_sum_of_powers(std::span<double const>, double);
    std::size_t           omp_count_boxes(std::span<Interval const>, Rational const&);
    PairDistance omp_min_pair_distance(std::vector<std::vector<Rational>> const&, std::span<std::size_t const>);

    // Shared per-word quantities (both paths use the same formulas).
    Rational sup_derivative(Matrix2 const& m, Interval const& J);
    Rational distortion(Matrix2 const& m, Interval const& J);
    Interval image(Matrix2 const& m, Interval const& J);

    // Neumaier accumulator.
    struct CompensatedSum {
      double sum  = 0.0;
      double comp = 0.0;
      void   add(double x);
      double value() const {
        return sum + comp;
      }
    };

    // Box index range [floor(l/w), floor(r/w)] of each interval; merged count.
    std::size_t count_merged_ranges(std::vector<std::pair<long long, long long>>& ranges);
    std::pair<long long, long long> box_range(Interval const& iv, Rational const& width);

    Rational row_distance(std::vector<Rational> const& x, std::vector<Rational> const& y);
  }  // namespace detail

}  // namespace ifslab::kernels

#endif  // IFSLAB_KERNELS_HPP
