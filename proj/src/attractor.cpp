#include "ifslab/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifslab/errors.hpp"

namespace ifslab {

  BoxCountEstimate box_counting(IFSInstance const& ifs, std::vector<std::size_t> const& levels, Exec exec) {
    if (levels.empty()) {
      throw DomainError("box counting needs at least one level");
    }
    BoxCountEstimate est;
    for (auto n : levels) {
      if (n == 0) {
        throw DomainError("box-counting levels start at 1");
      }
      kernels::check_level(n);
      auto     cyl = kernels::level_cylinders(ifs, n, exec);
      Rational eps(0);
      for (auto const& c : cyl) {
        if (c.length() > eps) {
          eps = c.length();
        }
      }
      if (sgn(eps) == 0) {
        throw DegenerateError("all level-" + std::to_string(n) + " cylinders are points");
      }
      std::size_t count = kernels::count_boxes(cyl, eps, exec);
      est.levels.push_back({n, eps, count, -log_of(eps), std::log(static_cast<double>(count))});
    }

    auto const m = static_cast<double>(est.levels.size());
    if (est.levels.size() == 1) {
      auto const& l = est.levels.front();
      est.slope     = l.log_inv_eps > 0 ? l.log_count / l.log_inv_eps : 0.0;
      est.std_error = std::numeric_limits<double>::quiet_NaN();
      return est;
    }
    double mx = 0, my = 0;
    for (auto const& l : est.levels) {
      mx += l.log_inv_eps;
      my += l.log_count;
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (auto const& l : est.levels) {
      sxx += (l.log_inv_eps - mx) * (l.log_inv_eps - mx);
      sxy += (l.log_inv_eps - mx) * (l.log_count - my);
    }
    if (sxx == 0) {
      throw DegenerateError("box-counting levels share one scale");
    }
    est.slope     = sxy / sxx;
    est.intercept = my - est.slope * mx;
    if (est.levels.size() < 3) {
      est.std_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      double rss = 0;
      for (auto const& l : est.levels) {
        double r = l.log_count - (est.intercept + est.slope * l.log_inv_eps);
        rss += r * r;
      }
      est.std_error = std::sqrt(rss / (m - 2) / sxx);
    }
    return est;
  }

  MeasureEstimate natural_measure_stats(IFSInstance const& ifs, std::size_t n, double s, std::vector<double> const& qs,
                                        Rational const& point, Exec exec) {
    if (n == 0) {
      throw DomainError("measure level must be at least 1");
    }
    if (!(s > 0 && s <= 1)) {
      throw DomainError("measure exponent must lie in (0, 1]");
    }
    kernels::check_level(n);
    auto const cyl = kernels::level_cylinders(ifs, n, exec);

    std::vector<double> logw(cyl.size());
    double              top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      if (sgn(cyl[i].length()) == 0) {
        throw DegenerateError("a level-" + std::to_string(n) + " cylinder is a point");
      }
      logw[i] = s * log_of(cyl[i].length());
      top     = std::max(top, logw[i]);
    }
    // log Z by shifting with the largest term
    kernels::detail::CompensatedSum z;
    for (double l : logw) {
      z.add(std::exp(l - top));
    }
    double const log_z = top + std::log(z.value());

    MeasureEstimate est;
    est.level      = n;
    est.s          = s;
    est.cylinders  = cyl.size();
    est.min_weight = std::numeric_limits<double>::infinity();
    est.r_n        = Rational(0);
    kernels::detail::CompensatedSum total, ball;
    std::size_t                     hits = 0;
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      double w = std::exp(logw[i] - log_z);
      total.add(w);
      est.min_weight = std::min(est.min_weight, w);
      if (cyl[i].contains(point)) {
        ++hits;
        ball.add(w);
        if (cyl[i].length() > est.r_n) {
          est.r_n = cyl[i].length();
        }
      }
    }
    est.point_cylinders          = hits;
    est.weight_sum               = total.value();
    est.ball_mass                = ball.value();
    est.local_dimension_quotient = hits > 0 ? std::log(est.ball_mass) / log_of(est.r_n)
                                            : std::numeric_limits<double>::quiet_NaN();

    Rational eps(0);
    for (auto const& c : cyl) {
      if (c.length() > eps) {
        eps = c.length();
      }
    }
    double const log_eps = log_of(eps);
    for (double q : qs) {
      kernels::detail::CompensatedSum acc;
      for (double l : logw) {
        acc.add(std::exp(q * (l - log_z)));
      }
      double tau = std::log(acc.value()) / log_eps;
      double d_q = q != 1.0 ? tau / (q - 1.0) : std::numeric_limits<double>::quiet_NaN();
      est.lq.push_back({q, acc.value(), tau, d_q});
    }
    return est;
  }

  MeasureEstimate natural_measure_stats(Rational const& t, std::size_t n, double s, std::vector<double> const& qs,
                                        Exec exec) {
    return natural_measure_stats(make_family(t), n, s, qs, Rational(0), exec);
  }

}  // namespace ifslab
