#include "ifslab/geometry.hpp"

#include <algorithm>

#include "ifslab/errors.hpp"

namespace ifslab {

  namespace {

    Word const& three() {
      static Word const w = power(3, 1);
      return w;
    }

    Interval v3_cylinder(IFSInstance const& family, Word const& v) {
      return cylinder(family, v + three());
    }

    void require_positive(Rational const& t) {
      if (sgn(t) <= 0) {
        throw DomainError("parameter t must be positive, got " + to_string(t));
      }
    }

    // Number of intersecting pairs among closed intervals, plus up to `limit`
    // of them as index pairs.
    std::size_t overlapping_pairs(std::vector<Interval> const& cyl, std::vector<std::pair<std::size_t, std::size_t>>* out,
                                  std::size_t limit) {
      std::vector<std::size_t> order(cyl.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
      }
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return cyl[x].left < cyl[y].left || (cyl[x].left == cyl[y].left && x < y);
      });
      std::size_t count = 0;
      for (std::size_t p = 0; p < order.size(); ++p) {
        for (std::size_t q = p + 1; q < order.size() && cyl[order[q]].left <= cyl[order[p]].right; ++q) {
          ++count;
          if (out != nullptr && out->size() < limit) {
            out->emplace_back(std::min(order[p], order[q]), std::max(order[p], order[q]));
          }
        }
      }
      return count;
    }

  }  // namespace

  OrderRelation classify(Interval const& x, Interval const& y) {
    if (prec(x, y)) {
      return OrderRelation::prec;
    }
    if (y.right < x.left) {
      return OrderRelation::other;
    }
    if (precsim(x, y)) {
      return OrderRelation::precsim;
    }
    return OrderRelation::overlap;
  }

  std::string to_string(OrderRelation r) {
    switch (r) {
      case OrderRelation::precsim:
        return "PRECSIM";
      case OrderRelation::prec:
        return "PREC";
      case OrderRelation::overlap:
        return "OVERLAP";
      case OrderRelation::other:
        return "OTHER";
    }
    return "?";
  }

  std::string to_string(WindowKind k) {
    return k == WindowKind::per_pair_certificate ? "PER_PAIR_CERTIFICATE" : "COMMON_DISJOINT";
  }

  Interval v3_cylinder(Word const& v, Rational const& t) {
    return v3_cylinder(make_family(t), v);
  }

  Lemma2Result verify_lemma2(std::size_t k, Rational const& t, std::size_t max_k) {
    require_positive(t);
    if (k > max_k) {
      throw DomainError("cylinder order check limited to k <= " + std::to_string(max_k));
    }
    auto const family = make_family(t);
    auto const words  = ordered_binary_words(k);

    std::vector<MoebiusMap> maps;
    std::vector<Interval>   cyl;
    for (auto const& v : words) {
      maps.push_back(map_of_word(family, v));
      cyl.push_back(v3_cylinder(family, v));
    }

    // 64 interior grid points of (0, 2t/3), plus the endpoints t/2, 2t/3 of I_3.
    Rational const        top = family.invariant_interval.right;
    std::vector<Rational> xs;
    for (std::size_t j = 1; j <= lemma2_grid_points; ++j) {
      xs.push_back(top * Rational(static_cast<long>(j)) / Rational(static_cast<long>(lemma2_grid_points + 1)));
    }
    xs.push_back(t / 2);
    xs.push_back(top);

    Lemma2Result r{k, t, true, 0, 0, xs.size(), {}};
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      Word const& v = words[i];
      Word const& w = words[i + 1];
      ++r.consecutive_pairs;
      if (!consecutive_shape(v, w)) {
        r.counterexamples.push_back({v, w, std::nullopt, "consecutive pair not of the form (2^m 1 u, 1^m 2 u)"});
      }
      for (auto const& x : xs) {
        if (!(maps[i](x) < maps[i + 1](x))) {
          r.counterexamples.push_back({v, w, x, "f_v(x) < f_w(x) fails"});
        }
      }
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        ++r.all_pairs;
        if (!precsim(cyl[i], cyl[j])) {
          r.counterexamples.push_back({words[i], words[j], std::nullopt, "I_v3 precsim I_w3 fails"});
        }
      }
    }
    r.verdict = r.counterexamples.empty();
    return r;
  }

  bool consecutive_disjointness_inequality(std::size_t m, Rational const& a, Rational const& b) {
    Rational scale = pow_of(Rational(4), m + 1);
    Rational q     = Rational(1) / pow_of(Rational(4), m);
    Rational lhs   = b / (scale * (1 + b));
    Rational rhs   = a / (scale * (1 + a * (1 - q) / 3));
    return lhs < rhs;
  }

  Lemma3Result lemma3_find_threshold(Word const& v, Word const& w, Lemma3Options const& options) {
    if (lex_compare(v, w) >= 0) {
      throw DomainError("threshold search needs v < w, got " + to_string(v) + ", " + to_string(w));
    }
    auto shape = consecutive_shape(v, w);
    if (!shape) {
      throw DomainError("threshold search needs a consecutive pair (2^m 1 u, 1^m 2 u), got " + to_string(v) + ", "
                        + to_string(w));
    }
    require_positive(options.t_start);
    require_positive(options.resolution);
    if (options.t_max < options.t_start) {
      throw DomainError("t_max below t_start");
    }

    Lemma3Result r;
    r.v     = v;
    r.w     = w;
    r.shape = *shape;

    bool have_gap = false;
    auto test     = [&](Rational const& t) {
      auto const family = make_family(t);
      Interval   iv     = v3_cylinder(family, v);
      Interval   iw     = v3_cylinder(family, w);
      Interval   iu     = v3_cylinder(family, shape->u);
      bool       passes = prec(iv, iw);
      if (consecutive_disjointness_inequality(shape->m, iu.left, iu.right) != passes) {
        r.inequality_consistent = false;
      }
      Rational gap = iw.left - iv.right;
      if (!have_gap || gap > r.best_gap) {
        r.best_gap   = gap;
        r.best_gap_t = t;
        have_gap     = true;
      }
      ++r.grid_points;
      return passes;
    };

    std::optional<Rational> below;
    Rational                t = options.t_start;
    for (; t <= options.t_max; t *= 2) {
      if (test(t)) {
        r.found = true;
        break;
      }
      below = t;
    }
    if (!r.found) {
      return r;
    }
    Rational hi = t;
    if (below) {
      Rational lo = *below;
      while (hi - lo > options.resolution) {
        Rational mid = (lo + hi) / 2;
        if (test(mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      r.last_failure = lo;
    }
    r.threshold   = hi;
    r.persists_2x = test(2 * hi);
    r.persists_4x = test(4 * hi);
    return r;
  }

  Rational lemma4_threshold(std::size_t k) {
    if (k == 0) {
      throw DomainError("uniform disjointness needs k >= 1");
    }
    Rational p = pow_of(Rational(4), k);
    return 3 * p / (p - 1);
  }

  bool lemma4_extremal_disjoint(std::size_t k, Rational const& t) {
    require_positive(t);
    auto const family = make_family(t);
    return prec(v3_cylinder(family, power(2, k + 1)), v3_cylinder(family, power(1, k)));
  }

  Lemma4Result verify_lemma4(std::size_t k, Rational const& t) {
    require_positive(t);
    auto const family = make_family(t);
    Lemma4Result r{k, t, true, false, lemma4_threshold(k), 0, {}};
    auto const   longer  = enumerate(2, k + 1);
    auto const   shorter = enumerate(2, k);
    std::vector<Interval> short_cyl;
    for (auto const& w : shorter) {
      short_cyl.push_back(v3_cylinder(family, w));
    }
    for (auto const& v : longer) {
      Interval iv = v3_cylinder(family, v);
      for (std::size_t j = 0; j < shorter.size(); ++j) {
        ++r.pairs_checked;
        if (!prec(iv, short_cyl[j])) {
          r.counterexamples.push_back({v, shorter[j]});
        }
      }
    }
    r.extremal_disjoint = lemma4_extremal_disjoint(k, t);
    r.verdict           = r.counterexamples.empty();
    return r;
  }

  NondegeneracyCertificate nondegeneracy_certificate(std::size_t n, std::vector<Rational> const& grid) {
    if (n < 2) {
      throw DomainError("non-degeneracy certificate needs n >= 2");
    }
    for (auto const& t : grid) {
      require_positive(t);
    }
    auto const words = subsystem_words(SubsystemVariant::tilde_v3, n);

    std::vector<std::vector<Interval>> cyl(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      auto const family = make_family(grid[g]);
      for (auto const& u : words) {
        cyl[g].push_back(cylinder(family, u));
      }
    }

    std::size_t const                       m = words.size();
    std::vector<std::optional<PairWitness>> found(m * m);
#pragma omp parallel for schedule(dynamic)
    for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
      auto const i = static_cast<std::size_t>(ii);
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
          if (disjoint(cyl[g][i], cyl[g][j])) {
            found[i * m + j] = PairWitness{words[i], words[j], grid[g], classify(cyl[g][i], cyl[g][j])};
            break;
          }
        }
      }
    }

    NondegeneracyCertificate cert;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        ++cert.pairs;
        if (auto& wit = found[i * m + j]) {
          cert.witnesses.push_back(std::move(*wit));
        } else {
          cert.failing.push_back({words[i], words[j]});
        }
      }
    }
    cert.complete = !grid.empty() && cert.failing.empty();
    if (cert.complete) {
      auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
      cert.window   = ParameterWindow{n, *lo, *hi, WindowKind::per_pair_certificate};
    }
    return cert;
  }

  CommonDisjointResult find_common_disjoint_parameter(std::size_t n, Rational const& t_lo, Rational const& t_hi,
                                                      Rational const& resolution) {
    if (n < 2) {
      throw DomainError("common-disjointness search needs n >= 2");
    }
    require_positive(t_lo);
    if (t_hi < t_lo) {
      throw DomainError("empty parameter range");
    }
    if (sgn(resolution) <= 0) {
      throw DomainError("resolution must be positive");
    }
    auto const            words = subsystem_words(SubsystemVariant::tilde_v3, n);
    std::vector<Rational> grid;
    for (Rational t = t_lo; t <= t_hi; t += resolution) {
      grid.push_back(t);
    }

    std::vector<std::size_t> overlaps(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long long gg = 0; gg < static_cast<long long>(grid.size()); ++gg) {
      auto const            g      = static_cast<std::size_t>(gg);
      auto const            family = make_family(grid[g]);
      std::vector<Interval> cyl;
      for (auto const& u : words) {
        cyl.push_back(cylinder(family, u));
      }
      overlaps[g] = overlapping_pairs(cyl, nullptr, 0);
    }

    CommonDisjointResult r;
    std::size_t          best = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      r.scan.push_back({grid[g], overlaps[g]});
      if (overlaps[g] < overlaps[best]) {
        best = g;
      }
    }
    r.best_t        = grid[best];
    r.best_overlaps = overlaps[best];

    auto first = std::find(overlaps.begin(), overlaps.end(), std::size_t{0});
    if (first != overlaps.end()) {
      auto last = std::find_if(first, overlaps.end(), [](std::size_t c) { return c != 0; });
      auto i0   = static_cast<std::size_t>(first - overlaps.begin());
      auto i1   = static_cast<std::size_t>(last - overlaps.begin()) - 1;
      r.found   = true;
      r.window  = ParameterWindow{n, grid[i0], grid[i1], WindowKind::common_disjoint};
      r.representative = grid[i0 + (i1 - i0) / 2];
    } else {
      auto const            family = make_family(r.best_t);
      std::vector<Interval> cyl;
      for (auto const& u : words) {
        cyl.push_back(cylinder(family, u));
      }
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      overlapping_pairs(cyl, &pairs, 32);
      for (auto [i, j] : pairs) {
        r.violating_pairs.push_back({words[i], words[j]});
      }
    }
    return r;
  }

}  // namespace ifslab
