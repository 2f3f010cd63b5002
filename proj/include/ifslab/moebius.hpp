#ifndef IFSLAB_MOEBIUS_HPP
#define IFSLAB_MOEBIUS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ifslab/rational.hpp"

namespace ifslab {

  // Row-major 2x2 rational matrix [[a, b], [c, d]].
  struct Matrix2 {
    Rational a, b, c, d;

    static Matrix2 identity();

    Rational determinant() const;
    Matrix2  inverse() const;  // throws DegenerateError when singular

    friend Matrix2 operator*(Matrix2 const& lhs, Matrix2 const& rhs);
    friend Matrix2 operator*(Rational const& k, Matrix2 const& m);
    friend bool    operator==(Matrix2 const& lhs, Matrix2 const& rhs) = default;
  };

  std::size_t hash_of(Matrix2 const& m);
  std::string to_string(Matrix2 const& m);

  struct Interval {
    Rational left, right;

    Interval() = default;
    Interval(Rational l, Rational r);  // throws DomainError unless l <= r

    Rational length() const {
      return right - left;
    }
    bool contains(Rational const& x) const {
      return left <= x && x <= right;
    }
    bool contains(Interval const& other) const {
      return left <= other.left && other.right <= right;
    }
    friend bool operator==(Interval const&, Interval const&) = default;
  };

  bool        disjoint(Interval const& lhs, Interval const& rhs);
  std::string to_string(Interval const& iv);

  // x -> (ax + b) / (cx + d). Composition is the matrix product; maps are
  // compared through their literal matrices (see README, "Exactness").
  class MoebiusMap {
   public:
    MoebiusMap() : matrix_(Matrix2::identity()) {}
    explicit MoebiusMap(Matrix2 m) : matrix_(std::move(m)) {}

    Matrix2 const& matrix() const {
      return matrix_;
    }

    Rational operator()(Rational const& x) const;  // throws PoleError
    Rational derivative(Rational const& x) const;  // det / (cx + d)^2

    bool is_identity() const;

    friend bool operator==(MoebiusMap const&, MoebiusMap const&) = default;

   private:
    Matrix2 matrix_;
  };

  // f o g
  MoebiusMap compose(MoebiusMap const& f, MoebiusMap const& g);
  Rational   eval(MoebiusMap const& f, Rational const& x);

  struct DerivativeBounds {
    Rational inf;  // min |f'| on J
    Rational sup;  // max |f'| on J
  };

  // |f'| = |det| / (cx + d)^2 is monotone on J once cx + d keeps its sign,
  // so both extrema sit at the endpoints.
  DerivativeBounds derivative_bounds(MoebiusMap const& f, Interval const& J);

  Interval image_interval(MoebiusMap const& f, Interval const& J);

  // A fixed point, exact when rational, otherwise an enclosure [lo, hi].
  struct FixedPoint {
    Rational lo, hi;
    bool     exact;
  };

  // 10^-30
  Rational default_enclosure_width();

  // Finite real fixed points in increasing order. Throws DegenerateError for
  // the identity.
  std::vector<FixedPoint> fixed_points(MoebiusMap const&  f,
                                       Rational const& width = default_enclosure_width());

  struct IFSInstance {
    std::vector<MoebiusMap> maps;
    Interval                invariant_interval;
    Rational                gamma_lower;  // min over maps of inf |f'| on the interval
    Rational                gamma_upper;  // max over maps of sup |f'| on the interval

    std::size_t size() const {
      return maps.size();
    }
    bool is_hyperbolic() const {
      return sgn(gamma_lower) > 0 && gamma_upper < 1;
    }
  };

  // Computes the contraction bounds and checks f(J) is inside J for every map.
  IFSInstance make_ifs(std::vector<MoebiusMap> maps, Interval invariant);

  // The three generator matrices A, B, C_t.
  Matrix2 matrix_A();
  Matrix2 matrix_B();
  Matrix2 matrix_C(Rational const& t);

  // {x/(4x+4), x/4, x/4 + t/2} on [0, 2t/3]. Throws DomainError for t <= 0.
  IFSInstance make_family(Rational const& t);

}  // namespace ifslab

#endif  // IFSLAB_MOEBIUS_HPP
