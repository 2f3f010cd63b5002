#include "ifslab/moebius.hpp"

#include <algorithm>
#include <utility>

#include "ifslab/errors.hpp"

namespace ifslab {

  Matrix2 Matrix2::identity() {
    return {Rational(1), Rational(0), Rational(0), Rational(1)};
  }

  Rational Matrix2::determinant() const {
    return a * d - b * c;
  }

  Matrix2 Matrix2::inverse() const {
    Rational det = determinant();
    if (sgn(det) == 0) {
      throw DegenerateError("singular matrix " + to_string(*this));
    }
    return {d / det, -b / det, -c / det, a / det};
  }

  Matrix2 operator*(Matrix2 const& x, Matrix2 const& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  Matrix2 operator*(Rational const& k, Matrix2 const& m) {
    return {k * m.a, k * m.b, k * m.c, k * m.d};
  }

  std::size_t hash_of(Matrix2 const& m) {
    std::size_t h = hash_of(m.a);
    for (Rational const* e : {&m.b, &m.c, &m.d}) {
      h = h * 0x100000001b3ULL ^ hash_of(*e);
    }
    return h;
  }

  std::string to_string(Matrix2 const& m) {
    return "[[" + to_string(m.a) + ", " + to_string(m.b) + "], [" + to_string(m.c) + ", " + to_string(m.d) + "]]";
  }

  Interval::Interval(Rational l, Rational r) : left(std::move(l)), right(std::move(r)) {
    if (right < left) {
      throw DomainError("empty interval [" + to_string(left) + ", " + to_string(right) + "]");
    }
  }

  bool disjoint(Interval const& x, Interval const& y) {
    return x.right < y.left || y.right < x.left;
  }

  std::string to_string(Interval const& iv) {
    return "[" + to_string(iv.left) + ", " + to_string(iv.right) + "]";
  }

  Rational MoebiusMap::operator()(Rational const& x) const {
    Rational den = matrix_.c * x + matrix_.d;
    if (sgn(den) == 0) {
      throw PoleError("pole at x = " + to_string(x));
    }
    return (matrix_.a * x + matrix_.b) / den;
  }

  Rational MoebiusMap::derivative(Rational const& x) const {
    Rational den = matrix_.c * x + matrix_.d;
    if (sgn(den) == 0) {
      throw PoleError("pole at x = " + to_string(x));
    }
    return matrix_.determinant() / (den * den);
  }

  bool MoebiusMap::is_identity() const {
    return sgn(matrix_.b) == 0 && sgn(matrix_.c) == 0 && matrix_.a == matrix_.d && sgn(matrix_.a) != 0;
  }

  MoebiusMap compose(MoebiusMap const& f, MoebiusMap const& g) {
    return MoebiusMap(f.matrix() * g.matrix());
  }

  Rational eval(MoebiusMap const& f, Rational const& x) {
    return f(x);
  }

  namespace {
    // cx + d at both endpoints, checked to share a strict sign.
    std::pair<Rational, Rational> denominators_on(MoebiusMap const& f, Interval const& J) {
      Matrix2 const& m = f.matrix();
      Rational       l = m.c * J.left + m.d;
      Rational       r = m.c * J.right + m.d;
      if (sgn(l) == 0 || sgn(r) == 0 || sgn(l) != sgn(r)) {
        throw PoleError("pole of " + to_string(m) + " inside " + to_string(J));
      }
      return {std::move(l), std::move(r)};
    }
  }  // namespace

  DerivativeBounds derivative_bounds(MoebiusMap const& f, Interval const& J) {
    auto [l, r]   = denominators_on(f, J);
    Rational det  = abs_of(f.matrix().determinant());
    Rational at_l = det / (l * l);
    Rational at_r = det / (r * r);
    if (at_l <= at_r) {
      return {std::move(at_l), std::move(at_r)};
    }
    return {std::move(at_r), std::move(at_l)};
  }

  Interval image_interval(MoebiusMap const& f, Interval const& J) {
    denominators_on(f, J);
    Rational x = f(J.left);
    Rational y = f(J.right);
    if (y < x) {
      std::swap(x, y);
    }
    return {std::move(x), std::move(y)};
  }

  Rational default_enclosure_width() {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, 30);
    return make_rational(Integer(1), p);
  }

  namespace {
    bool is_square(Integer const& z) {
      return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
    }

    Integer isqrt(Integer const& z) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
      return r;
    }
  }  // namespace

  std::vector<FixedPoint> fixed_points(MoebiusMap const& f, Rational const& width) {
    if (f.is_identity()) {
      throw DegenerateError("identity map has every point fixed");
    }
    if (sgn(width) <= 0) {
      throw DomainError("enclosure width must be positive");
    }
    Matrix2 const& m = f.matrix();
    // c x^2 + (d - a) x - b = 0
    if (sgn(m.c) == 0) {
      if (m.d == m.a) {
        return {};  // translation (b != 0): only the point at infinity is fixed
      }
      Rational x = m.b / (m.d - m.a);
      return {{x, x, true}};
    }
    Rational p    = m.d - m.a;
    Rational disc = p * p + 4 * m.b * m.c;
    if (sgn(disc) < 0) {
      return {};
    }
    Rational two_c = 2 * m.c;
    if (sgn(disc) == 0) {
      Rational x = -p / two_c;
      return {{x, x, true}};
    }
    std::vector<FixedPoint> out;
    if (is_square(disc.get_num()) && is_square(disc.get_den())) {
      Rational root(isqrt(disc.get_num()), isqrt(disc.get_den()));
      for (Rational x : {Rational((-p - root) / two_c), Rational((-p + root) / two_c)}) {
        out.push_back({x, x, true});
      }
    } else {
      // sqrt(disc) in [s/K, (s+1)/K]; each root's enclosure then has width 1/(K |2c|).
      Integer  scale = 1;
      Rational target = width * abs_of(two_c);
      while (Rational(1, 1) / Rational(scale) > target) {
        scale *= 2;
      }
      Integer  s      = isqrt(floor_of(disc * Rational(scale * scale)));
      Rational sq_lo  = make_rational(s, scale);
      Rational sq_hi  = make_rational(Integer(s + 1), scale);
      for (int sign : {-1, 1}) {
        Rational e1 = (-p + sign * sq_lo) / two_c;
        Rational e2 = (-p + sign * sq_hi) / two_c;
        if (e2 < e1) {
          std::swap(e1, e2);
        }
        out.push_back({e1, e2, false});
      }
    }
    std::sort(out.begin(), out.end(), [](FixedPoint const& x, FixedPoint const& y) { return x.lo < y.lo; });
    return out;
  }

  IFSInstance make_ifs(std::vector<MoebiusMap> maps, Interval invariant) {
    if (maps.empty()) {
      throw DomainError("an IFS needs at least one map");
    }
    IFSInstance ifs{std::move(maps), std::move(invariant), Rational(0), Rational(0)};
    bool first = true;
    for (auto const& f : ifs.maps) {
      Interval image = image_interval(f, ifs.invariant_interval);
      if (!ifs.invariant_interval.contains(image)) {
        throw DomainError("map " + to_string(f.matrix()) + " sends " + to_string(ifs.invariant_interval) + " to "
                          + to_string(image) + ", outside itself");
      }
      auto bounds = derivative_bounds(f, ifs.invariant_interval);
      if (first || bounds.inf < ifs.gamma_lower) {
        ifs.gamma_lower = bounds.inf;
      }
      if (first || bounds.sup > ifs.gamma_upper) {
        ifs.gamma_upper = bounds.sup;
      }
      first = false;
    }
    return ifs;
  }

  Matrix2 matrix_A() {
    return {make_rational(1, 2), Rational(0), Rational(2), Rational(2)};
  }

  Matrix2 matrix_B() {
    return {make_rational(1, 2), Rational(0), Rational(0), Rational(2)};
  }

  Matrix2 matrix_C(Rational const& t) {
    return {make_rational(1, 2), t, Rational(0), Rational(2)};
  }

  IFSInstance make_family(Rational const& t) {
    if (sgn(t) <= 0) {
      throw DomainError("family parameter t must be positive, got " + to_string(t));
    }
    return make_ifs({MoebiusMap(matrix_A()), MoebiusMap(matrix_B()), MoebiusMap(matrix_C(t))},
                    Interval(Rational(0), Rational(2 * t / 3)));
  }

}  // namespace ifslab
