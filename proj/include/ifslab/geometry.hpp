#ifndef IFSLAB_GEOMETRY_HPP
#define IFSLAB_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/moebius.hpp"
#include "ifslab/separation.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

  // Exactly one of these holds for any pair of intervals x, y:
  //   prec     x.right < y.left
  //   precsim  not prec, x.left < y.left and x.right < y.right
  //   other    y.right < x.left (disjoint, reversed)
  //   overlap  everything else (they intersect without being ordered)
  enum class OrderRelation { precsim, prec, overlap, other };

  OrderRelation classify(Interval const& x, Interval const& y);
  std::string   to_string(OrderRelation r);

  inline bool prec(Interval const& x, Interval const& y) {
    return x.right < y.left;
  }
  inline bool precsim(Interval const& x, Interval const& y) {
    return x.left < y.left && x.right < y.right;
  }

  // Cylinder of the word v3 in the family at parameter t.
  Interval v3_cylinder(Word const& v, Rational const& t);

  struct Counterexample {
    Word                    v;
    Word                    w;
    std::optional<Rational> x;  // sample point, for pointwise failures
    std::string             what;
  };

  inline constexpr std::size_t lemma2_default_max_k = 7;
  inline constexpr std::size_t lemma2_grid_points   = 64;

  struct Lemma2Result {
    std::size_t                 k;
    Rational                    t;
    bool                        verdict;
    std::size_t                 consecutive_pairs = 0;
    std::size_t                 all_pairs         = 0;
    std::size_t                 sample_points     = 0;
    std::vector<Counterexample> counterexamples;
  };

  // For consecutive v < w in {1,2}^k: f_v < f_w on a rational grid in
  // (0, 2t/3] and I_{v3} precsim I_{w3}. The cylinder relation is then
  // checked for every ordered pair, not only consecutive ones.
  Lemma2Result verify_lemma2(std::size_t k, Rational const& t, std::size_t max_k = lemma2_default_max_k);

  // The closed-form condition for I_{v3} prec I_{w3} when v = 2^m 1 u,
  // w = 1^m 2 u and I_{u3} = [a, b]:
  //   b / (4^{m+1}(1 + b)) < a / (4^{m+1}(1 + a(1 - 4^-m)/3)).
  // For m = 0 this is b - a < ab.
  bool consecutive_disjointness_inequality(std::size_t m, Rational const& a, Rational const& b);

  struct Lemma3Options {
    Rational t_start    = make_rational(1, 64);
    Rational t_max      = Rational(4096);
    Rational resolution = make_rational(1, 1024);
  };

  struct Lemma3Result {
    Word             v;
    Word             w;
    ConsecutiveShape shape;
    bool             found = false;
    Rational         threshold;     // smallest witnessed t with I_{v3} prec I_{w3}
    std::optional<Rational> last_failure;  // largest tested t below threshold where it fails
    bool             persists_2x = false;
    bool             persists_4x = false;
    bool             inequality_consistent = true;  // closed form agrees with the exact check at every tested t
    std::size_t      grid_points = 0;
    Rational         best_gap;      // max over tested t of left(I_{w3}) - right(I_{v3})
    Rational         best_gap_t;
  };

  // Geometric scan t_start * 2^j up to t_max, then bisection down to the
  // resolution. Throws DomainError unless v < w are consecutive.
  Lemma3Result lemma3_find_threshold(Word const& v, Word const& w, Lemma3Options const& options = {});

  // 3 / (1 - 4^-k)
  Rational lemma4_threshold(std::size_t k);

  // I_{2^{k+1}3} prec I_{1^k 3}
  bool lemma4_extremal_disjoint(std::size_t k, Rational const& t);

  struct Lemma4Result {
    std::size_t           k;
    Rational              t;
    bool                  verdict;
    bool                  extremal_disjoint;
    Rational              threshold;
    std::size_t           pairs_checked = 0;
    std::vector<WordPair> counterexamples;  // (v, w) without I_{v3} prec I_{w3}
  };

  // Every v in {1,2}^{k+1} against every w in {1,2}^k.
  Lemma4Result verify_lemma4(std::size_t k, Rational const& t);

  struct PairWitness {
    Word          v;  // full words, ending in 3
    Word          w;
    Rational      t;
    OrderRelation relation;
  };

  enum class WindowKind { per_pair_certificate, common_disjoint };
  std::string to_string(WindowKind k);

  struct ParameterWindow {
    std::size_t n;
    Rational    t_lo;
    Rational    t_hi;
    WindowKind  kind;
  };

  struct NondegeneracyCertificate {
    std::optional<ParameterWindow> window;  // hull of the grid when complete
    bool                           complete = false;
    std::size_t                    pairs    = 0;
    std::vector<PairWitness>       witnesses;
    std::vector<WordPair>          failing;
  };

  // For all distinct v, w in {1,2}^{<= n-1}: some grid t separating I_{v3}
  // and I_{w3}. The first separating grid point (in grid order) is recorded.
  NondegeneracyCertificate nondegeneracy_certificate(std::size_t n, std::vector<Rational> const& grid);

  struct CommonDisjointScan {
    Rational    t;
    std::size_t overlapping_pairs;
  };

  struct CommonDisjointResult {
    bool                           found = false;
    std::optional<ParameterWindow> window;          // first run of passing grid points
    std::optional<Rational>        representative;  // middle grid point of that run
    Rational                       best_t;          // fewest overlapping pairs (first on ties)
    std::size_t                    best_overlaps = 0;
    std::vector<WordPair>          violating_pairs;  // at best_t, at most 32
    std::vector<CommonDisjointScan> scan;
  };

  // Scans t = t_lo, t_lo + resolution, ... <= t_hi for a single t where all
  // cylinders of the tilde level-n subsystem are pairwise disjoint.
  CommonDisjointResult find_common_disjoint_parameter(std::size_t n, Rational const& t_lo, Rational const& t_hi,
                                                      Rational const& resolution);

}  // namespace ifslab

#endif  // IFSLAB_GEOMETRY_HPP
