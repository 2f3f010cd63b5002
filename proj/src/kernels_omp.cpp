#include <omp.h>

#include <cmath>

#include "ifslab/kernels.hpp"
#include "ifslab/words.hpp"

namespace ifslab::kernels::detail {

  namespace {

    constexpr std::size_t min_tasks  = 256;
    constexpr std::size_t chunk_size = 4096;

    struct TaskLayout {
      std::size_t prefix_length;
      std::size_t task_count;    // K^prefix_length
      std::size_t suffix_count;  // K^(n - prefix_length)
    };

    TaskLayout task_layout(std::size_t k, std::size_t n) {
      std::size_t p = 0, tasks = 1;
      while (p < n && tasks < min_tasks) {
        tasks *= k;
        ++p;
      }
      return {p, tasks, word_count(k, n - p)};
    }

    // Splits {1..K}^n into K^p prefix tasks (K^p >= min_tasks where possible)
    // and walks each suffix tree depth-first, so every node costs one product.
    template <typename Fn>
    void for_each_word(IFSInstance const& ifs, std::size_t n, Fn&& fn) {
      std::size_t const k = ifs.size();
      auto const        layout       = task_layout(k, n);
      std::size_t const p            = layout.prefix_length;
      std::size_t const task_count   = layout.task_count;
      std::size_t const suffix_count = layout.suffix_count;
      std::size_t const tail = n - p;

#pragma omp parallel for schedule(dynamic)
      for (long long task = 0; task < static_cast<long long>(task_count); ++task) {
        std::vector<Matrix2> stack(tail + 1);
        Matrix2              prefix = Matrix2::identity();
        std::size_t          rest   = static_cast<std::size_t>(task);
        std::vector<std::size_t> digits(p);
        for (std::size_t i = p; i-- > 0;) {
          digits[i] = rest % k;
          rest /= k;
        }
        for (auto d : digits) {
          prefix = prefix * ifs.maps[d].matrix();
        }
        stack[0]                = std::move(prefix);
        std::size_t const base  = static_cast<std::size_t>(task) * suffix_count;
        auto walk = [&](auto&& self, std::size_t depth, std::size_t index) -> void {
          if (depth == tail) {
            fn(base + index, stack[depth]);
            return;
          }
          for (std::size_t s = 0; s < k; ++s) {
            stack[depth + 1] = stack[depth] * ifs.maps[s].matrix();
            self(self, depth + 1, index * k + s);
          }
        };
        walk(walk, 0, 0);
      }
    }

  }  // namespace

  std::vector<Matrix2> omp_level_matrices(IFSInstance const& ifs, std::size_t n) {
    std::vector<Matrix2> out(word_count(ifs.size(), n));
    for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) { out[i] = m; });
    return out;
  }

  std::vector<double> omp_level_log_norms(IFSInstance const& ifs, std::size_t n) {
    std::vector<double> out(word_count(ifs.size(), n));
    for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) {
      out[i] = log_of(sup_derivative(m, ifs.invariant_interval));
    });
    return out;
  }

  Rational omp_level_max_distortion(IFSInstance const& ifs, std::size_t n) {
    auto const            layout = task_layout(ifs.size(), n);
    std::vector<Rational> best(layout.task_count, Rational(1));
    for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) {
      Rational  r    = distortion(m, ifs.invariant_interval);
      Rational& slot = best[i / layout.suffix_count];
      if (r > slot) {
        slot = std::move(r);
      }
    });
    Rational out(1);
    for (auto& r : best) {
      if (r > out) {
        out = r;
      }
    }
    return out;
  }

  std::vector<Interval> omp_level_cylinders(IFSInstance const& ifs, std::size_t n) {
    std::vector<Interval> out(word_count(ifs.size(), n));
    for_each_word(ifs, n, [&](std::size_t i, Matrix2 const& m) { out[i] = image(m, ifs.invariant_interval); });
    return out;
  }

  double omp_sum_of_powers(std::span<double const> log_values, double s) {
    std::size_t const   chunks = (log_values.size() + chunk_size - 1) / chunk_size;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
      CompensatedSum    acc;
      std::size_t const begin = static_cast<std::size_t>(c) * chunk_size;
      std::size_t const end   = std::min(log_values.size(), begin + chunk_size);
      for (std::size_t i = begin; i < end; ++i) {
        acc.add(std::exp(s * log_values[i]));
      }
      partial[static_cast<std::size_t>(c)] = acc.value();
    }
    CompensatedSum total;
    for (double x : partial) {
      total.add(x);
    }
    return total.value();
  }

  std::size_t omp_count_boxes(std::span<Interval const> intervals, Rational const& width) {
    std::vector<std::pair<long long, long long>> ranges(intervals.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(intervals.size()); ++i) {
      ranges[static_cast<std::size_t>(i)] = box_range(intervals[static_cast<std::size_t>(i)], width);
    }
    return count_merged_ranges(ranges);
  }

  PairDistance omp_min_pair_distance(std::vector<std::vector<Rational>> const& rows,
                                     std::span<std::size_t const>               classes) {
    std::vector<PairDistance> per_row(rows.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long long ii = 0; ii < static_cast<long long>(rows.size()); ++ii) {
      auto const    i    = static_cast<std::size_t>(ii);
      PairDistance& best = per_row[i];
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
    PairDistance out;
    for (auto& candidate : per_row) {
      if (candidate.found && (!out.found || candidate.value < out.value)) {
        out = std::move(candidate);
      }
    }
    return out;
  }

}  // namespace ifslab::kernels::detail
