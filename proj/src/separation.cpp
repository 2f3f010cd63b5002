#include "ifslab/separation.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include "ifslab/errors.hpp"

namespace ifslab {

  namespace {

    // Class id per matrix: the index of the first literally equal matrix.
    std::vector<std::size_t> matrix_classes(std::vector<Matrix2> const& ms) {
      std::unordered_multimap<std::size_t, std::size_t> buckets;
      std::vector<std::size_t>                          out(ms.size());
      for (std::size_t i = 0; i < ms.size(); ++i) {
        std::size_t h     = hash_of(ms[i]);
        out[i]            = i;
        auto [first, last] = buckets.equal_range(h);
        for (auto it = first; it != last; ++it) {
          if (ms[it->second] == ms[i]) {  // exact recheck on every hash hit
            out[i] = out[it->second];
            break;
          }
        }
        if (out[i] == i) {
          buckets.emplace(h, i);
        }
      }
      return out;
    }

    double root_of(Rational const& delta, std::size_t n) {
      if (sgn(delta) <= 0) {
        return 0.0;
      }
      return std::exp(log_of(delta) / static_cast<double>(n));
    }

    SeparationReport separation_from_rows(std::vector<std::vector<Rational>> const& rows,
                                          std::vector<Matrix2> const& matrices, std::size_t alphabet_size,
                                          std::size_t n, MetricVariant variant, Exec exec) {
      SeparationReport report;
      report.level   = n;
      report.variant = variant;
      report.words   = rows.size();
      auto words     = enumerate(alphabet_size, n);

      auto strong = kernels::min_pair_distance(rows, {}, exec);
      if (strong.found) {
        report.delta_n = strong.value;
        report.c_n     = root_of(strong.value, n);
        report.witness = WordPair{words[strong.i], words[strong.j]};
      }
      auto classes = matrix_classes(matrices);
      auto weak    = kernels::min_pair_distance(rows, classes, exec);
      if (weak.found) {
        report.delta_n_unequal = weak.value;
        report.c_n_unequal     = root_of(weak.value, n);
        report.witness_unequal = WordPair{words[weak.i], words[weak.j]};
      }
      return report;
    }

    void require_level(std::size_t n) {
      if (n == 0) {
        throw DomainError("level must be at least 1");
      }
    }

  }  // namespace

  OverlapReport exact_overlap_search(IFSInstance const& ifs, std::size_t n, Exec exec) {
    require_level(n);
    OverlapReport report;
    report.level = n;
    for (std::size_t len = 1; len <= n; ++len) {
      auto matrices = kernels::level_matrices(ifs, len, exec);
      auto classes  = matrix_classes(matrices);
      report.searched += matrices.size();
      std::vector<Word> words;
      for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (classes[i] != i) {
          if (words.empty()) {
            words = enumerate(ifs.size(), len);
          }
          // Report against every earlier member of the class.
          for (std::size_t j = classes[i]; j < i; ++j) {
            if (classes[j] == classes[i]) {
              report.overlaps.push_back({words[j], words[i]});
            }
          }
        }
      }
    }
    return report;
  }

  OverlapReport exact_overlap_search(Rational const& t, std::size_t n, Exec exec) {
    auto report = exact_overlap_search(make_family(t), n, exec);
    report.t    = t;
    return report;
  }

  std::string to_string(MetricVariant v) {
    return v == MetricVariant::pointwise_on_x ? "POINTWISE_ON_X" : "MATRIX_ENTRY";
  }

  SeparationReport sesc_metric(IFSInstance const& ifs, std::size_t n, std::vector<Rational> const& probes,
                               Exec exec) {
    require_level(n);
    if (probes.empty()) {
      throw DomainError("probe set must be non-empty");
    }
    auto                               matrices = kernels::level_matrices(ifs, n, exec);
    std::vector<std::vector<Rational>> rows(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      MoebiusMap f(matrices[i]);
      rows[i].reserve(probes.size());
      for (auto const& x : probes) {
        rows[i].push_back(f(x));
      }
    }
    auto report   = separation_from_rows(rows, matrices, ifs.size(), n, MetricVariant::pointwise_on_x, exec);
    report.probes = probes;
    return report;
  }

  SeparationReport sesc_metric(Rational const& t, std::size_t n, std::vector<Rational> const& probes, Exec exec) {
    auto report = sesc_metric(make_family(t), n, probes, exec);
    report.t    = t;
    return report;
  }

  SeparationReport diophantine_metric(IFSInstance const& ifs, std::size_t n, Exec exec) {
    require_level(n);
    auto                               matrices = kernels::level_matrices(ifs, n, exec);
    std::vector<std::vector<Rational>> rows;
    rows.reserve(matrices.size());
    for (auto const& m : matrices) {
      rows.push_back({m.a, m.b, m.c, m.d});
    }
    return separation_from_rows(rows, matrices, ifs.size(), n, MetricVariant::matrix_entry, exec);
  }

  SeparationReport diophantine_metric(Rational const& t, std::size_t n, Exec exec) {
    auto report = diophantine_metric(make_family(t), n, exec);
    report.t    = t;
    return report;
  }

  Rational matrix_distance(Matrix2 const& x, Matrix2 const& y) {
    return kernels::detail::row_distance({x.a, x.b, x.c, x.d}, {y.a, y.b, y.c, y.d});
  }

  Matrix2 matrix_E() {
    return {Rational(4), Rational(0), Rational(0), Rational(1)};
  }

  Matrix2 matrix_F() {
    return {Rational(4), Rational(0), Rational(1), Rational(1)};
  }

  ConjugacyCheck conjugacy_check() {
    Matrix2 const r{Rational(4), Rational(0), make_rational(4, 3), Rational(1)};
    Matrix2 const r_inv = r.inverse();
    Matrix2       e     = Rational(2) * (r * matrix_A().inverse() * r_inv);
    Matrix2       f     = Rational(2) * (r * matrix_B().inverse() * r_inv);
    bool          e_ok  = e == matrix_E();
    bool          f_ok  = f == matrix_F();
    return {r, std::move(e), std::move(f), e_ok, f_ok};
  }

  Matrix2 product_EF(Word const& w) {
    Matrix2 m = Matrix2::identity();
    for (auto s : w.symbols) {
      if (s != 1 && s != 2) {
        throw DomainError("words over {E, F} use symbols 1 and 2 only");
      }
      m = m * (s == 1 ? matrix_E() : matrix_F());
    }
    return m;
  }

  namespace {
    bool triangular_shape(Matrix2 const& m, std::size_t length) {
      Integer four_pow;
      mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, length);
      return sgn(m.b) == 0 && m.d == 1 && m.a == Rational(four_pow) && m.c.get_den() == 1 && sgn(m.c) >= 0;
    }

    unsigned mod4(Integer const& z) {
      return static_cast<unsigned>(mpz_fdiv_ui(z.get_mpz_t(), 4));
    }
  }  // namespace

  ResidueCheck check_residue_pair(Word const& x, Word const& y) {
    Matrix2 xe = product_EF(x) * matrix_E();
    Matrix2 yf = product_EF(y) * matrix_F();
    ResidueCheck c;
    c.x              = x;
    c.y              = y;
    c.shape_ok       = triangular_shape(xe, x.size() + 1) && triangular_shape(yf, y.size() + 1);
    c.xe_bottom_left = xe.c.get_num();
    c.yf_bottom_left = yf.c.get_num();
    c.xe_mod4        = mod4(c.xe_bottom_left);
    c.yf_mod4        = mod4(c.yf_bottom_left);
    c.ok             = c.shape_ok && c.xe_mod4 == 0 && c.yf_mod4 == 1 && !(xe == yf);
    return c;
  }

  ResidueReport residue_freeness_check(std::size_t samples, std::size_t max_length, std::uint64_t seed) {
    if (max_length == 0) {
      throw DomainError("max_length must be at least 1");
    }
    // Raw engine output keeps the sample stream identical across standard libraries.
    std::mt19937_64 rng(seed);
    auto            random_word = [&] {
      std::size_t len = static_cast<std::size_t>(rng() % (max_length + 1));
      Word        w;
      for (std::size_t i = 0; i < len; ++i) {
        w.symbols.push_back(static_cast<std::uint8_t>(1 + rng() % 2));
      }
      return w;
    };
    ResidueReport report{seed, max_length, {}, 0};
    report.checks.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      Word x = random_word();
      Word y = random_word();
      report.checks.push_back(check_residue_pair(x, y));
      if (!report.checks.back().ok) {
        ++report.violations;
      }
    }
    return report;
  }

  RelationReport relation_search_ABC(Rational const& t, std::size_t depth, std::size_t alphabet_size, Exec exec) {
    if (depth == 0) {
      throw DomainError("relation search depth must be at least 1");
    }
    if (alphabet_size != 2 && alphabet_size != 3) {
      throw DomainError("relation search runs over {A, B} or {A, B, C_t}");
    }
    auto const family = make_family(t);
    kernels::check_level(depth);

    RelationReport report;
    report.t             = t;
    report.depth         = depth;
    report.alphabet_size = alphabet_size;
    report.image_a       = image_interval(family.maps[0], family.invariant_interval);
    report.image_b       = image_interval(family.maps[1], family.invariant_interval);
    report.image_c       = image_interval(family.maps[2], family.invariant_interval);
    report.pruning_valid = disjoint(report.image_c, report.image_a) && disjoint(report.image_c, report.image_b);

    std::vector<MoebiusMap> maps(family.maps.begin(), family.maps.begin() + static_cast<long>(alphabet_size));
    IFSInstance const       alphabet = make_ifs(std::move(maps), family.invariant_interval);

    // Leading symbols that can take part in a relation.
    std::size_t const leaders = (alphabet_size == 3 && !report.pruning_valid) ? 3 : 2;

    struct Entry {
      Word    word;
      Matrix2 matrix;
    };
    std::vector<std::vector<Entry>> groups(leaders);
    for (std::size_t len = 1; len <= depth; ++len) {
      auto suffix_matrices = kernels::level_matrices(alphabet, len - 1, exec);
      auto suffix_words    = enumerate(alphabet_size, len - 1);
      for (std::size_t g = 0; g < leaders; ++g) {
        Matrix2 const& head = alphabet.maps[g].matrix();
        for (std::size_t i = 0; i < suffix_words.size(); ++i) {
          groups[g].push_back({power(static_cast<std::uint8_t>(g + 1), 1) + suffix_words[i], head * suffix_matrices[i]});
        }
      }
    }
    for (auto const& g : groups) {
      report.searched += g.size();
    }
    for (std::size_t g = 0; g < leaders; ++g) {
      std::unordered_multimap<std::size_t, std::size_t> buckets;
      for (std::size_t i = 0; i < groups[g].size(); ++i) {
        buckets.emplace(hash_of(groups[g][i].matrix), i);
      }
      for (std::size_t h = g + 1; h < leaders; ++h) {
        for (auto const& e : groups[h]) {
          auto [first, last] = buckets.equal_range(hash_of(e.matrix));
          for (auto it = first; it != last; ++it) {
            if (groups[g][it->second].matrix == e.matrix) {
              report.relations.push_back({groups[g][it->second].word, e.word});
            }
          }
        }
      }
    }
    return report;
  }

}  // namespace ifslab
