#pragma once

// Matrix elements t^l_{m,n} of the spin-l irreducible representation of
// SU(2), restricted to the subgroup a(theta), as polynomials in
// c = cos(theta/2) and s = sin(theta/2). Also Legendre polynomials.
//
// Phase convention: t^l_{m,n}(a(theta)) = i^(n-m) d^l_{m,n}(theta) with the
// standard real Wigner d-function. For l = 1/2 this reproduces
//   t_{1/2,1/2} = c,  t_{1/2,-1/2} = i s,  t_{-1/2,1/2} = i s,  t_{-1/2,-1/2} = c,
// i.e. the matrix a(theta) with row index m = +1/2 first, and together with
// the K-law t(k(phi) g) = e^{-i m phi} t(g) it defines a representation.

#include "mathieu/exact_scalar.hpp"

#include <algorithm>
#include <compare>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mathieu {

struct MatrixElementIndex {
  HalfInt l;
  HalfInt m;
  HalfInt n;

  bool is_valid() const {
    return l >= HalfInt(0) && abs(m) <= l && abs(n) <= l && (l - m).is_integer() && (l - n).is_integer();
  }

  void validate() const {
    if (!is_valid())
      throw std::invalid_argument("invalid matrix element index (l,m,n) = " + to_string());
  }

  std::string to_string() const { return "(" + l.to_string() + "," + m.to_string() + "," + n.to_string() + ")"; }

  friend bool operator==(const MatrixElementIndex&, const MatrixElementIndex&) = default;
  friend auto operator<=>(const MatrixElementIndex&, const MatrixElementIndex&) = default;
};

/// Validating constructor.
inline MatrixElementIndex make_index(HalfInt l, HalfInt m, HalfInt n) {
  MatrixElementIndex idx{l, m, n};
  idx.validate();
  return idx;
}

// ---------------------------------------------------------------------------
// Polynomials in one variable

template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  Polynomial(const T& constant) : coeffs_{constant} { trim(); }  // NOLINT

  static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coefficients() const { return coeffs_; }
  T coefficient(std::size_t power) const { return power < coeffs_.size() ? coeffs_[power] : T(0); }

  template <typename U>
  U evaluate(const U& at) const {
    U acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + U(*it);
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = out[i] + a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] = out[i] + b.coeffs_[i];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * T(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const T& k) {
    std::vector<T> out = a.coeffs_;
    for (auto& c : out) c = c * k;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

template <typename T>
Polynomial<T> pow(const Polynomial<T>& base, unsigned long exponent) {
  Polynomial<T> result(T(1));
  Polynomial<T> b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * b;
    exponent >>= 1;
    if (exponent > 0) b = b * b;
  }
  return result;
}

using RationalPolynomial = Polynomial<Rational>;

/// Legendre polynomial P_l with P_l(1) = 1, from the three-term recurrence
/// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
inline RationalPolynomial legendre_poly(HalfInt l) {
  if (!l.is_integer() || l < HalfInt(0))
    throw std::invalid_argument("Legendre degree must be a nonnegative integer, got " + l.to_string());
  const auto degree = l.as_integer();
  RationalPolynomial prev(Rational(1));
  if (degree == 0) return prev;
  RationalPolynomial cur = RationalPolynomial::x();
  for (std::int64_t k = 1; k < degree; ++k) {
    RationalPolynomial next = (RationalPolynomial::x() * cur * Rational(2 * k + 1) - prev * Rational(k)) *
                              make_rational(Integer(1), Integer(static_cast<long>(k + 1)));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Trigonometric polynomials in c = cos(theta/2), s = sin(theta/2)

struct Monomial {
  unsigned c_exp = 0;
  unsigned s_exp = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class TrigPolynomial {
 public:
  using TermMap = std::map<Monomial, RadicalScalar>;

  TrigPolynomial() = default;
  TrigPolynomial(const RadicalScalar& constant) { add(Monomial{0, 0}, constant); }  // NOLINT

  static TrigPolynomial monomial(unsigned c_exp, unsigned s_exp, const RadicalScalar& coeff = RadicalScalar(1)) {
    TrigPolynomial p;
    p.add(Monomial{c_exp, s_exp}, coeff);
    return p;
  }
  static TrigPolynomial c() { return monomial(1, 0); }
  static TrigPolynomial s() { return monomial(0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Monomial& mono, const RadicalScalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  TrigPolynomial& operator+=(const TrigPolynomial& o) {
    for (const auto& [mono, q] : o.terms_) add(mono, q);
    return *this;
  }
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a += b * RadicalScalar(-1); }

  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
    TrigPolynomial out;
    for (const auto& [ma, qa] : a.terms_)
      for (const auto& [mb, qb] : b.terms_) out.add(Monomial{ma.c_exp + mb.c_exp, ma.s_exp + mb.s_exp}, qa * qb);
    return out;
  }
  friend TrigPolynomial operator*(const TrigPolynomial& a, const RadicalScalar& k) {
    TrigPolynomial out;
    for (const auto& [mono, q] : a.terms_) out.add(mono, q * k);
    return out;
  }

  /// Complex conjugate of the coefficients (c, s are real).
  TrigPolynomial conj() const {
    TrigPolynomial out;
    for (const auto& [mono, q] : terms_) out.add(mono, q.conj());
    return out;
  }

  /// Rewrites s^2 = 1 - c^2 until every s exponent is 0 or 1.
  TrigPolynomial reduce_s_squared() const {
    TrigPolynomial out;
    for (const auto& [mono, q] : terms_) {
      // s^(2j + r) = (1 - c^2)^j s^r
      const unsigned j = mono.s_exp / 2;
      const unsigned r = mono.s_exp % 2;
      for (unsigned t = 0; t <= j; ++t) {
        Rational b(binomial(j, t));
        if (t % 2 == 1) b = -b;
        out.add(Monomial{mono.c_exp + 2 * t, r}, q * RadicalScalar(b));
      }
    }
    return out;
  }

  std::complex<double> evaluate(double c_value, double s_value) const {
    std::complex<double> acc = 0.0;
    for (const auto& [mono, q] : terms_)
      acc += q.to_complex() * std::pow(c_value, mono.c_exp) * std::pow(s_value, mono.s_exp);
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mono, q] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + q.to_string() + ")*c^" + std::to_string(mono.c_exp) + "*s^" + std::to_string(mono.s_exp);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const TrigPolynomial& p) { return os << p.to_string(); }

  friend bool operator==(const TrigPolynomial& a, const TrigPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Matrix element expansion

/// Factored form of t^l_{m,n}(a(theta)):
///   i^phase_quarter * sqrt(radicand) * scale * sum_q coeffs[q] c^(degree - q) s^q
/// with integer coeffs, squarefree radicand, and degree = 2l.
struct ElementExpansion {
  unsigned phase_quarter = 0;
  Integer radicand = 1;
  Rational scale = 1;
  unsigned degree = 0;
  std::vector<Integer> coeffs;

  TrigPolynomial to_trig_polynomial() const {
    RadicalScalar front = RadicalScalar::term(scale, radicand, phase_quarter % 2 == 1);
    if (phase_quarter >= 2) front = -front;
    TrigPolynomial out;
    for (unsigned q = 0; q < coeffs.size(); ++q)
      if (coeffs[q] != 0) out.add(Monomial{degree - q, q}, front * RadicalScalar(Rational(coeffs[q])));
    return out;
  }
};

namespace detail {

inline ElementExpansion compute_expansion(const MatrixElementIndex& idx) {
  idx.validate();
  // Integer offsets; all are nonnegative by validity.
  const long lpm = (idx.l + idx.m).as_integer();
  const long lmm = (idx.l - idx.m).as_integer();
  const long lpn = (idx.l + idx.n).as_integer();
  const long lmn = (idx.l - idx.n).as_integer();
  const long m_minus_n = (idx.m - idx.n).as_integer();
  const auto degree = static_cast<unsigned>(idx.l.twice());

  ElementExpansion e;
  e.degree = degree;
  e.phase_quarter = static_cast<unsigned>(((-m_minus_n) % 4 + 4) % 4);

  const Integer norm = factorial(lpm) * factorial(lmm) * factorial(lpn) * factorial(lmn);
  auto [outside, squarefree] = squarefree_split(norm);
  e.radicand = squarefree;

  // d^l_{m,n} = sum_k (-1)^(m-n+k) sqrt(N) / [(l+n-k)! k! (m-n+k)! (l-m-k)!] c^(2l+n-m-2k) s^(m-n+2k)
  std::vector<Rational> rational(degree + 1, Rational(0));
  const long k_lo = std::max(0L, -m_minus_n);
  const long k_hi = std::min(lpn, lmm);
  for (long k = k_lo; k <= k_hi; ++k) {
    const Integer den = factorial(lpn - k) * factorial(k) * factorial(m_minus_n + k) * factorial(lmm - k);
    Rational term = make_rational(outside, den);
    if (((m_minus_n + k) % 2 + 2) % 2 == 1) term = -term;
    rational[static_cast<std::size_t>(m_minus_n + 2 * k)] += term;
  }

  Integer common_den = 1;
  Integer common_num = 0;
  for (const auto& q : rational) {
    if (q == 0) continue;
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), q.get_den_mpz_t());
    mpz_gcd(common_num.get_mpz_t(), common_num.get_mpz_t(), q.get_num_mpz_t());
  }
  e.scale = make_rational(common_num, common_den);
  e.coeffs.resize(degree + 1);
  for (unsigned q = 0; q <= degree; ++q) {
    const Rational scaled = rational[q] / e.scale;
    e.coeffs[q] = scaled.get_num();
  }
  return e;
}

}  // namespace detail

/// Exact expansion of t^l_{m,n}(a(theta)) in factored form. Results are
/// memoized; the cache is shared and guarded, and never changes results.
inline const ElementExpansion& element_expansion(const MatrixElementIndex& idx) {
  static std::shared_mutex mutex;
  static std::map<MatrixElementIndex, std::unique_ptr<const ElementExpansion>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(idx); it != cache.end()) return *it->second;
  }
  auto fresh = std::make_unique<const ElementExpansion>(detail::compute_expansion(idx));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(idx, std::move(fresh));
  return *it->second;
}

/// t^l_{m,n}(a(theta)) as a polynomial in c = cos(theta/2), s = sin(theta/2).
inline TrigPolynomial matrix_element_trigpoly(const MatrixElementIndex& idx) {
  return element_expansion(idx).to_trig_polynomial();
}

/// All valid indices with l <= l_max, ordered by (l, m, n).
inline std::vector<MatrixElementIndex> all_indices(HalfInt l_max) {
  std::vector<MatrixElementIndex> out;
  for (std::int64_t tl = 0; tl <= l_max.twice(); ++tl)
    for (std::int64_t tm = -tl; tm <= tl; tm += 2)
      for (std::int64_t tn = -tl; tn <= tl; tn += 2)
        out.push_back({HalfInt::from_twice(tl), HalfInt::from_twice(tm), HalfInt::from_twice(tn)});
  return out;
}

}  // namespace mathieu
