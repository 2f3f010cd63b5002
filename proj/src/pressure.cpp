#include "ifslab/pressure.hpp"

#include <cmath>
#include <limits>

#include "ifslab/errors.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

  double partition_sum(IFSInstance const& ifs, std::size_t n, double s, Exec exec) {
    if (n == 0) {
      throw DomainError("partition_sum needs n >= 1");
    }
    if (!(s >= 0)) {
      throw DomainError("partition_sum needs s >= 0");
    }
    auto logs = kernels::level_log_norms(ifs, n, exec);
    return kernels::sum_of_powers(logs, s, exec);
  }

  PressureEstimate pressure_estimate(IFSInstance const& ifs, std::size_t n, double s, Exec exec) {
    return {n, s, std::log(partition_sum(ifs, n, s, exec)) / static_cast<double>(n)};
  }

  LevelDimension solve_bowen(std::span<double const> log_norms, double upper, double tol, std::size_t level,
                             Exec exec) {
    if (!(tol > 0)) {
      throw DomainError("solver tolerance must be positive");
    }
    if (log_norms.empty()) {
      throw DomainError("empty partition sum");
    }
    for (double l : log_norms) {
      if (!(l < 0)) {
        throw PreconditionError("a word norm is not a strict contraction");
      }
    }
    auto   f  = [&](double s) { return kernels::sum_of_powers(log_norms, s, exec) - 1.0; };
    double lo = 0.0;
    double hi = upper;
    // f is strictly decreasing; f(0) = #words - 1 >= 0 and f(upper) <= 0.
    if (f(lo) <= 0) {
      return {level, 0.0, std::abs(f(0.0)), 0};
    }
    int    steps = 0;
    double mid   = lo;
    double value = f(lo);
    while (steps < max_bisection_steps) {
      mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) {
        break;
      }
      value = f(mid);
      ++steps;
      if (value > 0) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= tol && std::abs(value) <= tol) {
        break;
      }
    }
    return {level, mid, std::abs(value), steps};
  }

  LevelDimension solve_level_dimension(IFSInstance const& ifs, std::size_t n, double tol, Exec exec) {
    if (n == 0) {
      throw DomainError("level must be at least 1");
    }
    if (!ifs.is_hyperbolic()) {
      throw PreconditionError("IFS is not a strict contraction on its interval (gamma2 = " + to_string(ifs.gamma_upper)
                              + ")");
    }
    auto   logs  = kernels::level_log_norms(ifs, n, exec);
    double upper = std::log(static_cast<double>(ifs.size())) / -log_of(ifs.gamma_upper);
    return solve_bowen(logs, upper, tol, n, exec);
  }

  std::string to_string(Rigor r) {
    return r == Rigor::empirical ? "empirical-C" : "user-C";
  }

  DistortionEstimate distortion_constant(IFSInstance const& ifs, std::size_t depth, Exec exec) {
    if (depth == 0) {
      throw DomainError("distortion depth must be at least 1");
    }
    Rational best(1);
    for (std::size_t m = 1; m <= depth; ++m) {
      Rational c = kernels::level_max_distortion(ifs, m, exec);
      if (c > best) {
        best = std::move(c);
      }
    }
    return {depth, best, Rigor::empirical};
  }

  DimensionBracket bracket_from(LevelDimension const& d, Rational const& c, Rational const& gamma2, Rigor rigor) {
    if (c < 1) {
      throw DomainError("distortion constant must be >= 1, got " + to_string(c));
    }
    if (sgn(gamma2) <= 0 || gamma2 >= 1) {
      throw PreconditionError("gamma2 must lie in (0, 1), got " + to_string(gamma2));
    }
    double spread = log_of(c) / (static_cast<double>(d.level) * -log_of(gamma2));
    return {d.level, d.d_n - spread, d.d_n, c, gamma2, rigor};
  }

  DimensionBracket dimension_bracket(IFSInstance const& ifs, std::size_t n, Rational const& c, double tol,
                                     Rigor rigor, Exec exec) {
    return bracket_from(solve_level_dimension(ifs, n, tol, exec), c, ifs.gamma_upper, rigor);
  }

  SubsystemDimensionReport subsystem_dimension_report(Rational const& t, std::size_t level, double tol, Exec exec) {
    if (level == 0) {
      throw DomainError("subsystem level must be at least 1");
    }
    kernels::check_level(level);
    auto const family = make_family(t);
    auto const n      = static_cast<double>(level);

    SubsystemDimensionReport r;
    r.t     = t;
    r.level = level;
    r.d_N   = solve_level_dimension(family, level, tol, exec);
    if (2 * level <= kernels::level_cap()) {
      r.d_2N = solve_level_dimension(family, 2 * level, tol, exec);
    }

    auto const sub = build_subsystem({t, level, SubsystemVariant::full_level_n_containing_3});
    auto const sub_logs = kernels::level_log_norms(sub, 1, exec);
    double     sub_upper = std::log(static_cast<double>(sub.size())) / -log_of(sub.gamma_upper);
    r.s1 = solve_bowen(sub_logs, sub_upper, tol, 1, exec).d_n;

    auto const c_sub    = distortion_constant(sub, 1, exec);
    r.subsystem_bracket = bracket_from({1, r.s1, 0.0, 0}, c_sub.c_emp, sub.gamma_upper);

    r.tail_sum         = kernels::sum_of_powers(sub_logs, r.d_N.d_n, exec);
    r.tail_lower_bound = 1.0 - std::pow(2.0, n) * std::pow(4.0, -n * r.d_N.d_n);
    r.epsilon_proxy    = r.d_2N ? std::abs(r.d_N.d_n - r.d_2N->d_n) : std::numeric_limits<double>::quiet_NaN();
    r.error_bound      = r.epsilon_proxy + 1.0 / (2.0 * n) + log_of(c_sub.c_emp) / (n * std::log(4.0));

    // Both roots are only known to within tol.
    r.upper_holds   = r.s1 <= r.d_N.d_n + tol;
    r.lower_applies = r.tail_sum >= 0.5;
    r.lower_holds   = r.d_N.d_n - 1.0 / (2.0 * n) <= r.s1 + tol;
    r.tail_holds    = r.tail_sum >= r.tail_lower_bound - 1e-12;

    if (!r.upper_holds) {
      r.violations.push_back("s1 <= d_N");
    }
    if (r.lower_applies && !r.lower_holds) {
      r.violations.push_back("s1 >= d_N - 1/(2N)");
    }
    if (!r.tail_holds) {
      r.violations.push_back("tail sum >= 1 - 2^N 4^(-N d_N)");
    }
    return r;
  }

}  // namespace ifslab
