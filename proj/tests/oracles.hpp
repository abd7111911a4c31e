#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code path it is used to check.

#include "mathieu/exact_scalar.hpp"
#include "mathieu/haar.hpp"
#include "mathieu/wigner.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using mathieu::GaussianRational;
using mathieu::HalfInt;
using mathieu::Integer;
using mathieu::MatrixElementIndex;
using mathieu::Rational;
using mathieu::RadicalScalar;
using mathieu::RationalPolynomial;
using cplx = std::complex<double>;

// Largest k with k^2 | n, by scanning every k.
inline std::pair<long, long> square_part(long n) {
  long best = 1;
  for (long k = 1; k * k <= n; ++k)
    if (n % (k * k) == 0) best = k;
  return {best, n / (best * best)};
}

// Rodrigues: P_n = 1/(2^n n!) d^n/dx^n (x^2 - 1)^n.
inline RationalPolynomial rodrigues_legendre(unsigned n) {
  RationalPolynomial base(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)});
  RationalPolynomial p = mathieu::pow(base, n);
  std::vector<Rational> c = p.coefficients();
  for (unsigned d = 0; d < n; ++d) {
    std::vector<Rational> next(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i) next[i - 1] = c[i] * Rational(static_cast<long>(i));
    c = std::move(next);
  }
  Rational norm = Rational(mathieu::factorial(n)) * Rational(Integer(1) << n);
  for (auto& q : c) q /= norm;
  return RationalPolynomial(c);
}

// ---------------------------------------------------------------------------
// Numeric representation matrices via symmetric powers.

using Matrix = std::vector<std::vector<cplx>>;

// g = k(phi) a(theta) k(psi) with k(phi) = diag(e^{i phi/2}, e^{-i phi/2}) and
// a(theta) = [[cos, i sin], [i sin, cos]] (half angles).
inline Matrix defining_matrix(double phi, double theta, double psi) {
  const cplx i(0, 1);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix k1{{std::exp(i * phi / 2.0), 0}, {0, std::exp(-i * phi / 2.0)}};
  Matrix a{{c, i * s}, {i * s, c}};
  Matrix k2{{std::exp(i * psi / 2.0), 0}, {0, std::exp(-i * psi / 2.0)}};
  auto mul = [](const Matrix& x, const Matrix& y) {
    Matrix z(2, std::vector<cplx>(2));
    for (int r = 0; r < 2; ++r)
      for (int col = 0; col < 2; ++col) z[r][col] = x[r][0] * y[0][col] + x[r][1] * y[1][col];
    return z;
  };
  return mul(mul(k1, a), k2);
}

// Spin-l matrix (rows m = l..-l) of the representation whose spin-1/2 member
// is U, built on the orthonormal basis x^{l+m} y^{l-m} / sqrt((l+m)!(l-m)!)
// where U maps x -> U00 x + U10 y, y -> U01 x + U11 y.
inline Matrix symmetric_power(HalfInt l, const Matrix& u) {
  const int dim = static_cast<int>(l.twice()) + 1;
  const int deg = dim - 1;
  auto fact = [](int k) { return std::tgamma(static_cast<double>(k) + 1.0); };
  Matrix t(dim, std::vector<cplx>(dim));
  for (int col = 0; col < dim; ++col) {
    const int xpow = deg - col;  // l + n, columns ordered n = l..-l
    const int ypow = col;        // l - n
    // poly[j] = coefficient of x^j y^(deg-j)
    std::vector<cplx> poly{1.0};
    auto times_linear = [&](cplx cx, cplx cy) {
      std::vector<cplx> out(poly.size() + 1);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        out[j + 1] += poly[j] * cx;
        out[j] += poly[j] * cy;
      }
      poly = std::move(out);
    };
    for (int r = 0; r < xpow; ++r) times_linear(u[0][0], u[1][0]);
    for (int r = 0; r < ypow; ++r) times_linear(u[0][1], u[1][1]);
    for (int row = 0; row < dim; ++row) {
      const int j = deg - row;  // l + m
      t[row][col] = poly[j] * std::sqrt(fact(j) * fact(deg - j)) / std::sqrt(fact(xpow) * fact(ypow));
    }
  }
  return t;
}

// t^l_{m,n}(g) through the symmetric-power construction applied to the
// spin-1/2 matrix J g J (J swaps the two basis vectors).
inline cplx reference_element(const MatrixElementIndex& idx, double phi, double theta, double psi) {
  Matrix g = defining_matrix(phi, theta, psi);
  Matrix u{{g[1][1], g[1][0]}, {g[0][1], g[0][0]}};
  Matrix t = symmetric_power(idx.l, u);
  const auto row = static_cast<std::size_t>((idx.l - idx.m).twice() / 2);
  const auto col = static_cast<std::size_t>((idx.l - idx.n).twice() / 2);
  return t[row][col];
}

// ---------------------------------------------------------------------------
// Unfiltered exact integral.

// int_0^pi c^a s^b sin(theta) dtheta via x = cos(theta):
// int_{-1}^{1} ((1+x)/2)^(a/2) ((1-x)/2)^(b/2) dx, monomial by monomial.
inline Rational theta_integral_by_substitution(unsigned a, unsigned b) {
  if (a % 2 || b % 2) throw std::logic_error("odd exponent in theta oracle");
  RationalPolynomial plus(std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  RationalPolynomial minus(std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
  RationalPolynomial p = mathieu::pow(plus, a / 2) * mathieu::pow(minus, b / 2);
  Rational sum = 0;
  for (std::size_t j = 0; j < p.coefficients().size(); ++j)
    if (j % 2 == 0) sum += p.coefficients()[j] * Rational(2) / Rational(static_cast<long>(j + 1));
  return sum;
}

// Which of the angular averages survive. phi runs over [0, 2pi), psi over
// [-2pi, 2pi); a half-integer phi frequency leaves a nonzero transcendental
// factor, which must always be annihilated by the psi factor.
inline std::optional<bool> angular_factor_is_one(HalfInt phi_freq, HalfInt psi_freq) {
  bool phi_zero = false, phi_transcendental = false;
  if (phi_freq == HalfInt(0)) {
  } else if (phi_freq.is_integer()) {
    phi_zero = true;
  } else {
    phi_transcendental = true;
  }
  const bool psi_zero = psi_freq != HalfInt(0);  // 4pi range kills every nonzero half-integer
  if (phi_zero || psi_zero) return false;
  if (phi_transcendental) return std::nullopt;
  return true;
}

// Full product integral without the frequency shortcut: multiplies the
// polynomials term by term, integrates every monomial, then applies the
// angular factors.
inline RadicalScalar unfiltered_integral(const mathieu::ProductSpec& spec,
                                         const std::optional<MatrixElementIndex>& shift = {}) {
  mathieu::TrigPolynomial prod(RadicalScalar(1));
  HalfInt phi, psi;
  auto absorb = [&](const MatrixElementIndex& idx, unsigned long power) {
    const auto p = mathieu::matrix_element_trigpoly(idx);
    for (unsigned long r = 0; r < power; ++r) prod = prod * p;
    phi += idx.m * static_cast<std::int64_t>(power);
    psi += idx.n * static_cast<std::int64_t>(power);
  };
  for (const auto& f : spec.factors()) absorb(f.index, f.power);
  if (shift) absorb(*shift, 1);
  const auto angular = angular_factor_is_one(phi, psi);
  if (!angular) throw std::logic_error("transcendental angular factor survived");
  if (!*angular) return {};
  RadicalScalar total;
  for (const auto& [mono, coeff] : prod.terms())
    total += coeff * RadicalScalar(theta_integral_by_substitution(mono.c_exp, mono.s_exp) / 2);
  return total;
}

// ---------------------------------------------------------------------------
// Random generators

inline MatrixElementIndex random_index(std::mt19937_64& rng, HalfInt l_max) {
  std::uniform_int_distribution<std::int64_t> tl(0, l_max.twice());
  const auto l2 = tl(rng);
  std::uniform_int_distribution<std::int64_t> step(0, l2);
  return {HalfInt::from_twice(l2), HalfInt::from_twice(l2 - 2 * step(rng)), HalfInt::from_twice(l2 - 2 * step(rng))};
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  return mathieu::make_rational(Integer(num(rng)), Integer(den(rng)));
}

inline RadicalScalar random_radical(std::mt19937_64& rng) {
  static const long radicands[] = {1, 2, 3, 5, 6, 7, 8, 12, 18, 30};
  std::uniform_int_distribution<int> count(0, 4), pick(0, 9), imag(0, 1);
  RadicalScalar x;
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t)
    x += RadicalScalar::term(random_rational(rng), Integer(radicands[pick(rng)]), imag(rng) == 1);
  return x;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Multinomial sums without the frequency filter, and rational geometry.

#include "mathieu/power.hpp"

namespace oracle {

// Every composition of `total` into `parts` nonnegative parts.
inline std::vector<std::vector<unsigned long>> all_compositions(std::size_t parts, unsigned long total) {
  std::vector<std::vector<unsigned long>> out;
  std::vector<unsigned long> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned long left) -> void {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned long a = 0; a <= left; ++a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

inline RadicalScalar unfiltered_power_integral(const mathieu::FiniteFunction& f, unsigned long total,
                                               const std::optional<MatrixElementIndex>& h = {}) {
  RadicalScalar sum;
  for (const auto& alpha : all_compositions(f.size(), total)) {
    mathieu::ProductSpec spec;
    GaussianRational weight(1);
    Integer coefficient = mathieu::factorial(total);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      spec.multiply(f.terms()[i].index, alpha[i]);
      for (unsigned long r = 0; r < alpha[i]; ++r) weight *= f.terms()[i].coeff;
      coefficient /= mathieu::factorial(alpha[i]);
    }
    sum += RadicalScalar(weight * GaussianRational(Rational(coefficient))) * unfiltered_integral(spec, h);
  }
  return sum;
}

struct RPoint {
  Rational x;
  Rational y;
};

// Point-in-convex-hull over the rationals by checking q against every
// triangle, segment and point of the set.
inline bool rational_point_in_hull(const std::vector<RPoint>& pts, const RPoint& q) {
  auto cross = [](const RPoint& o, const RPoint& a, const RPoint& b) -> Rational {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  auto on_segment = [&](const RPoint& a, const RPoint& b) {
    if (cross(a, b, q) != 0) return false;
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
  };
  const std::size_t k = pts.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (pts[i].x == q.x && pts[i].y == q.y) return true;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (on_segment(pts[i], pts[j])) return true;
      for (std::size_t l = j + 1; l < k; ++l) {
        const Rational d1 = cross(pts[i], pts[j], q), d2 = cross(pts[j], pts[l], q), d3 = cross(pts[l], pts[i], q);
        const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
        const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
        if (!(neg && pos) && cross(pts[i], pts[j], pts[l]) != 0) return true;
      }
    }
  }
  return false;
}

inline std::vector<RPoint> rational_points(const std::vector<mathieu::WeightPoint>& pts) {
  std::vector<RPoint> out;
  for (const auto& p : pts) out.push_back({p.m.to_rational(), p.n.to_rational()});
  return out;
}

}  // namespace oracle
