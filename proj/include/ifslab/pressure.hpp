#ifndef IFSLAB_PRESSURE_HPP
#define IFSLAB_PRESSURE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ifslab/kernels.hpp"
#include "ifslab/moebius.hpp"

namespace ifslab {

  using kernels::Exec;

  // sum over |u| = n of ||f_u'||^s, with the norm taken exactly on the
  // invariant interval and only the power done in floating point.
  double partition_sum(IFSInstance const& ifs, std::size_t n, double s, Exec exec = Exec::parallel);

  struct PressureEstimate {
    std::size_t level;
    double      s;
    double      value;  // (1/n) log partition_sum
  };

  PressureEstimate pressure_estimate(IFSInstance const& ifs, std::size_t n, double s, Exec exec = Exec::parallel);

  inline constexpr double default_tolerance     = 1e-12;
  inline constexpr int    max_bisection_steps   = 200;

  struct LevelDimension {
    std::size_t level;
    double      d_n;
    double      residual;  // |sum ||f_u'||^{d_n} - 1|
    int         iterations;
  };

  // Root of sum_i exp(s * log_norms[i]) = 1 on [0, upper] by bisection.
  LevelDimension solve_bowen(std::span<double const> log_norms, double upper, double tol, std::size_t level,
                             Exec exec = Exec::parallel);

  // d_n: the root of partition_sum(ifs, n, .) = 1. The bracket is
  // [0, log K / log(1/gamma_upper)]. Throws PreconditionError unless the
  // system is hyperbolic.
  LevelDimension solve_level_dimension(IFSInstance const& ifs, std::size_t n, double tol = default_tolerance,
                                       Exec exec = Exec::parallel);

  enum class Rigor { empirical, user_supplied };

  std::string to_string(Rigor r);

  struct DistortionEstimate {
    std::size_t depth;
    Rational    c_emp;  // max over 1 <= |u| <= depth of sup|f_u'| / inf|f_u'|
    Rigor       rigor = Rigor::empirical;
  };

  // Exact, but only a lower estimate of the true distortion constant, which is
  // a sup over all words.
  DistortionEstimate distortion_constant(IFSInstance const& ifs, std::size_t depth, Exec exec = Exec::parallel);

  struct DimensionBracket {
    std::size_t level;
    double      lower;  // d_n - log C / (n log(1/gamma2))
    double      upper;  // d_n
    Rational    c_used;
    Rational    gamma2;
    Rigor       c_rigor;

    double midpoint() const {
      return (lower + upper) / 2;
    }
    double width() const {
      return upper - lower;
    }
  };

  DimensionBracket bracket_from(LevelDimension const& d, Rational const& c, Rational const& gamma2,
                                Rigor rigor = Rigor::empirical);

  // Solves d_n, then brackets the conformal dimension with the supplied C.
  DimensionBracket dimension_bracket(IFSInstance const& ifs, std::size_t n, Rational const& c,
                                     double tol = default_tolerance, Rigor rigor = Rigor::empirical,
                                     Exec exec = Exec::parallel);

  // Level-n convergence of the "words containing 3" subsystems to the full
  // family. All inequalities are evaluated, never assumed.
  struct SubsystemDimensionReport {
    Rational       t;
    std::size_t    level;  // N
    LevelDimension d_N;
    std::optional<LevelDimension> d_2N;  // empty when 2N exceeds the level cap
    double           s1;                 // level-1 dimension of the subsystem
    DimensionBracket subsystem_bracket;  // for the subsystem's conformal dimension
    double           tail_sum;           // sum over subsystem words of ||f_u'||^{d_N}
    double           tail_lower_bound;   // 1 - 2^N (4^-N)^{d_N}
    double           epsilon_proxy;      // |d_N - d_2N|, NaN when d_2N is missing
    double           error_bound;        // eps + 1/(2N) + log C / (N log 4)
    bool             upper_holds;        // s1 <= d_N
    bool             lower_applies;      // tail_sum >= 1/2, the hypothesis of the lower bound
    bool             lower_holds;        // d_N - 1/(2N) <= s1
    bool             tail_holds;
    std::vector<std::string> violations;
  };

  SubsystemDimensionReport subsystem_dimension_report(Rational const& t, std::size_t level,
                                                      double tol = default_tolerance, Exec exec = Exec::parallel);

}  // namespace ifslab

#endif  // IFSLAB_PRESSURE_HPP
