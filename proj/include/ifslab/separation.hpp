#ifndef IFSLAB_SEPARATION_HPP
#define IFSLAB_SEPARATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/kernels.hpp"
#include "ifslab/moebius.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

  using kernels::Exec;

  struct WordPair {
    Word u;
    Word w;
    friend bool operator==(WordPair const&, WordPair const&) = default;
  };

  // Distinct words of equal length with literally equal matrices.
  struct OverlapReport {
    std::optional<Rational> t;
    std::size_t             level;
    std::vector<WordPair>   overlaps;
    std::size_t             searched = 0;  // words examined over all lengths 1..level
  };

  // Buckets level-L matrices by hash and compares exactly inside buckets, for
  // every L = 1..n.
  OverlapReport exact_overlap_search(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);
  OverlapReport exact_overlap_search(Rational const& t, std::size_t n, Exec exec = Exec::parallel);

  enum class MetricVariant { pointwise_on_x, matrix_entry };

  std::string to_string(MetricVariant v);

  struct SeparationReport {
    std::optional<Rational> t;
    std::size_t             level;
    MetricVariant           variant;
    std::vector<Rational>   probes;  // empty for the matrix-entry metric
    std::size_t             words = 0;

    // Over all pairs of distinct words (strong variant). Zero whenever two
    // distinct words give the same map.
    Rational                delta_n;
    double                  c_n = 0.0;  // delta_n^(1/n)
    std::optional<WordPair> witness;

    // Over pairs whose maps differ; empty when no such pair exists.
    std::optional<Rational> delta_n_unequal;
    double                  c_n_unequal = 0.0;
    std::optional<WordPair> witness_unequal;
  };

  // min over distinct level-n words of max over the probes of |f_u(x) - f_w(x)|.
  // Throws PoleError if a probe hits a pole.
  SeparationReport sesc_metric(IFSInstance const& ifs, std::size_t n, std::vector<Rational> const& probes,
                               Exec exec = Exec::parallel);
  SeparationReport sesc_metric(Rational const& t, std::size_t n, std::vector<Rational> const& probes,
                               Exec exec = Exec::parallel);

  // Same with the distance max |entry difference| between product matrices.
  SeparationReport diophantine_metric(IFSInstance const& ifs, std::size_t n, Exec exec = Exec::parallel);
  SeparationReport diophantine_metric(Rational const& t, std::size_t n, Exec exec = Exec::parallel);

  // Max absolute entry difference.
  Rational matrix_distance(Matrix2 const& x, Matrix2 const& y);

  // E = 2 R A^-1 R^-1 and F = 2 R B^-1 R^-1 with R = [[4, 0], [4/3, 1]].
  struct ConjugacyCheck {
    Matrix2 r;
    Matrix2 e;
    Matrix2 f;
    bool    e_matches;  // E == [[4, 0], [0, 1]]
    bool    f_matches;  // F == [[4, 0], [1, 1]]

    bool ok() const {
      return e_matches && f_matches;
    }
  };

  ConjugacyCheck conjugacy_check();

  Matrix2 matrix_E();
  Matrix2 matrix_F();

  // Product over {E, F}; symbol 1 is E, symbol 2 is F.
  Matrix2 product_EF(Word const& w);

  struct ResidueCheck {
    Word    x;  // over {1 = E, 2 = F}
    Word    y;
    Integer xe_bottom_left;
    Integer yf_bottom_left;
    unsigned xe_mod4;
    unsigned yf_mod4;
    bool     shape_ok;  // both products are [[4^k, 0], [m, 1]] with integer m >= 0
    bool     ok;        // shape_ok, xe_mod4 == 0 and yf_mod4 == 1
  };

  ResidueCheck check_residue_pair(Word const& x, Word const& y);

  struct ResidueReport {
    std::uint64_t             seed;
    std::size_t               max_length;
    std::vector<ResidueCheck> checks;
    std::size_t               violations = 0;
  };

  // Random X, Y over {E, F} with lengths uniform in [0, max_length].
  ResidueReport residue_freeness_check(std::size_t samples, std::size_t max_length, std::uint64_t seed);

  // Relations A X = B Y, i.e. words with first symbols 1 and 2 giving the same
  // matrix. Words starting with 3 are skipped once f3(I) is verified disjoint
  // from f1(I) and f2(I).
  struct RelationReport {
    Rational              t;
    std::size_t           depth;
    std::size_t           alphabet_size;  // 2 restricts the search to {A, B}
    Interval              image_a;
    Interval              image_b;
    Interval              image_c;
    bool                  pruning_valid;
    std::vector<WordPair> relations;
    std::size_t           searched = 0;
  };

  RelationReport relation_search_ABC(Rational const& t, std::size_t depth, std::size_t alphabet_size = 3,
                                     Exec exec = Exec::parallel);

}  // namespace ifslab

#endif  // IFSLAB_SEPARATION_HPP
