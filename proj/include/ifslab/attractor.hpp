#ifndef IFSLAB_ATTRACTOR_HPP
#define IFSLAB_ATTRACTOR_HPP

#include <cstddef>
#include <vector>

#include "ifslab/kernels.hpp"
#include "ifslab/moebius.hpp"

namespace ifslab {

  using kernels::Exec;

  struct BoxCountLevel {
    std::size_t level;
    Rational    epsilon;  // max level-n cylinder length
    std::size_t count;    // boxes [k eps, (k+1) eps) meeting the union of cylinders
    double      log_inv_eps;
    double      log_count;
  };

  // The union of cylinders is an outer approximation of the attractor, so the
  // slope is biased upwards at finite level.
  struct BoxCountEstimate {
    std::vector<BoxCountLevel> levels;
    double                     slope     = 0.0;  // least squares, log N against log(1/eps)
    double                     intercept = 0.0;
    double                     std_error = 0.0;  // NaN with fewer than three levels
  };

  // Levels must be non-empty and within the level cap. A single level gives
  // the slope through the origin.
  BoxCountEstimate box_counting(IFSInstance const& ifs, std::vector<std::size_t> const& levels,
                                Exec exec = Exec::parallel);

  struct LqSum {
    double q;
    double sum;  // sum_u w_u^q
    double tau;  // log(sum) / log(eps), eps the max cylinder length
    double d_q;  // tau / (q - 1)
  };

  struct MeasureEstimate {
    std::size_t        level;
    double             s;
    std::size_t        cylinders;
    std::size_t        point_cylinders;  // level-n cylinders containing the point
    double             ball_mass;        // their total weight
    Rational           r_n;              // max length among them
    double             local_dimension_quotient;  // log(ball_mass) / log(r_n)
    double             weight_sum;
    double             min_weight;
    std::vector<LqSum> lq;
  };

  // Weights w_u = |I_u|^s / sum_v |I_v|^s over all level-n words, evaluated in
  // log space. The ball around the point is replaced by the union of the
  // cylinders that contain it.
  MeasureEstimate natural_measure_stats(IFSInstance const& ifs, std::size_t n, double s,
                                        std::vector<double> const& qs = {2.0, 3.0, 4.0},
                                        Rational const& point = Rational(0), Exec exec = Exec::parallel);
  MeasureEstimate natural_measure_stats(Rational const& t, std::size_t n, double s,
                                        std::vector<double> const& qs = {2.0, 3.0, 4.0},
                                        Exec exec = Exec::parallel);

}  // namespace ifslab

#endif  // IFSLAB_ATTRACTOR_HPP
