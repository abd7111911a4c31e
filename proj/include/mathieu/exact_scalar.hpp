#pragma once

// Exact scalars: rationals, half-integers, Gaussian rationals and the
// radical field Q(i)[sqrt 2, sqrt 3, ...] in which every Haar integral of a
// product of matrix elements lives.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mathieu {

using Integer = mpz_class;
using Rational = mpq_class;

// Raised when a monomial with odd exponents reaches the theta integral.
// Surviving monomials always have even exponents, so this signals a bug in
// the frequency filter upstream.
class ParityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// No solution exists for the requested balancing problem.
class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition that is not a plain bad argument.
class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace detail {

inline bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s) {
  if (!is_decimal_integer(s))
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace detail

// Accepts "p" or "p/q" with q != 0.
inline Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  const auto den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw std::invalid_argument("signed denominator: '" + std::string(s) + "'");
  const Integer den = detail::parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
  return make_rational(detail::parse_integer(s.substr(0, slash)), den);
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------------------
// HalfInt

/// A number in (1/2)Z, stored as twice its value. Arithmetic is checked: an
/// overflow of the 64-bit representation throws std::overflow_error.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(std::int64_t integer) : twice_(checked_twice(integer)) {}  // NOLINT

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Parses "k" or "k/2".
  static HalfInt parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_integer(detail::parse_integer(s));
    if (s.substr(slash + 1) != "2")
      throw std::invalid_argument("half-integer must be 'k' or 'k/2': '" + std::string(s) + "'");
    return from_twice_checked(detail::parse_integer(s.substr(0, slash)));
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  Rational to_rational() const { return make_rational(Integer(static_cast<long>(twice_)), 2); }
  double to_double() const { return static_cast<double>(twice_) / 2.0; }

  /// Integer value; throws when the value is a proper half-integer.
  std::int64_t as_integer() const {
    if (!is_integer()) throw std::invalid_argument("half-integer " + to_string() + " is not an integer");
    return twice_ / 2;
  }

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  constexpr HalfInt operator-() const { return from_twice(checked_neg(twice_)); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(checked_add(a.twice_, b.twice_)); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(checked_sub(a.twice_, b.twice_)); }
  friend constexpr HalfInt operator*(HalfInt a, std::int64_t k) { return from_twice(checked_mul(a.twice_, k)); }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return a * k; }
  HalfInt& operator+=(HalfInt o) { return *this = *this + o; }
  HalfInt& operator-=(HalfInt o) { return *this = *this - o; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  static constexpr std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("HalfInt overflow");
    return r;
  }
  static constexpr std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("HalfInt overflow");
    return r;
  }
  static constexpr std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r{};
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("HalfInt overflow");
    return r;
  }
  static constexpr std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }
  static constexpr std::int64_t checked_twice(std::int64_t a) { return checked_mul(a, 2); }

  static HalfInt from_integer(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("HalfInt overflow");
    return HalfInt(static_cast<std::int64_t>(z.get_si()));
  }
  static HalfInt from_twice_checked(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("HalfInt overflow");
    return from_twice(z.get_si());
  }

  std::int64_t twice_ = 0;
};

inline HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

// ---------------------------------------------------------------------------
// GaussianRational

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(long real) : re(real) {}  // NOLINT

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string to_string() const {
    if (im == 0) return mathieu::to_string(re);
    if (re == 0) return mathieu::to_string(im) + "i";
    return "(" + mathieu::to_string(re) + (im > 0 ? "+" : "") + mathieu::to_string(im) + "i)";
  }
};

/// Binary exponentiation.
inline GaussianRational pow(GaussianRational base, unsigned long exponent) {
  GaussianRational result(1);
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Radicals

/// Splits N = k^2 * r with r squarefree, by trial division.
inline std::pair<Integer, Integer> squarefree_split(const Integer& radicand) {
  if (radicand <= 0) throw std::invalid_argument("radicand must be positive, got " + radicand.get_str());
  Integer k = 1;
  Integer r = 1;
  Integer rest = radicand;
  auto strip = [&](const Integer& p) {
    unsigned multiplicity = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++multiplicity;
    }
    for (unsigned j = 0; j < multiplicity / 2; ++j) k *= p;
    if (multiplicity % 2 == 1) r *= p;
  };
  strip(Integer(2));
  for (Integer p = 3; p * p <= rest; p += 2) strip(p);
  if (rest > 1) r *= rest;
  return {k, r};
}

/// q*sqrt(N) rewritten as (q*k)*sqrt(r) with r squarefree.
inline std::pair<Rational, Integer> radical_normalize(const Rational& coeff, const Integer& radicand) {
  auto [k, r] = squarefree_split(radicand);
  return {coeff * Rational(k), r};
}

/// Exact value sum_j q_j sqrt(N_j) + i * sum_j q'_j sqrt(N'_j), radicands
/// squarefree. The canonical form stores no zero coefficients, so equality of
/// values is equality of the maps (square roots of distinct squarefree
/// integers are linearly independent over Q).
class RadicalScalar {
 public:
  using TermMap = std::map<Integer, Rational>;

  RadicalScalar() = default;
  RadicalScalar(const Rational& q) { add_term(real_, q, Integer(1)); }  // NOLINT
  RadicalScalar(long q) : RadicalScalar(Rational(q)) {}                  // NOLINT
  RadicalScalar(const GaussianRational& z) {                             // NOLINT
    add_term(real_, z.re, Integer(1));
    add_term(imag_, z.im, Integer(1));
  }

  /// coeff * sqrt(radicand) (times i when imaginary is set).
  static RadicalScalar term(const Rational& coeff, const Integer& radicand, bool imaginary = false) {
    RadicalScalar x;
    auto [q, r] = radical_normalize(coeff, radicand);
    add_term(imaginary ? x.imag_ : x.real_, q, r);
    return x;
  }

  static RadicalScalar sqrt(const Integer& radicand) { return term(Rational(1), radicand); }

  /// Builds a value from possibly unnormalized (radicand -> coeff) lists.
  static RadicalScalar from_terms(const std::map<Integer, Rational>& real, const std::map<Integer, Rational>& imag) {
    RadicalScalar x;
    for (const auto& [n, q] : real) x += term(q, n);
    for (const auto& [n, q] : imag) x += term(q, n, true);
    return x;
  }

  const TermMap& real_part() const { return real_; }
  const TermMap& imag_part() const { return imag_; }

  bool is_zero() const { return real_.empty() && imag_.empty(); }
  bool is_real() const { return imag_.empty(); }

  /// The value as a Gaussian rational when no irrational radical remains.
  std::optional<GaussianRational> as_gaussian_rational() const {
    auto rational_only = [](const TermMap& m) -> std::optional<Rational> {
      if (m.empty()) return Rational(0);
      if (m.size() == 1 && m.begin()->first == 1) return m.begin()->second;
      return std::nullopt;
    };
    auto re = rational_only(real_);
    auto im = rational_only(imag_);
    if (!re || !im) return std::nullopt;
    return GaussianRational(*re, *im);
  }

  std::optional<Rational> as_rational() const {
    auto z = as_gaussian_rational();
    if (!z || z->im != 0) return std::nullopt;
    return z->re;
  }

  std::complex<double> to_complex() const { return {sum_double(real_), sum_double(imag_)}; }

  RadicalScalar conj() const {
    RadicalScalar x = *this;
    for (auto& [n, q] : x.imag_) q = -q;
    return x;
  }

  RadicalScalar operator-() const {
    RadicalScalar x = *this;
    for (auto& [n, q] : x.real_) q = -q;
    for (auto& [n, q] : x.imag_) q = -q;
    return x;
  }

  RadicalScalar& operator+=(const RadicalScalar& o) {
    for (const auto& [n, q] : o.real_) add_term(real_, q, n);
    for (const auto& [n, q] : o.imag_) add_term(imag_, q, n);
    return *this;
  }
  RadicalScalar& operator-=(const RadicalScalar& o) { return *this += -o; }

  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }

  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    RadicalScalar out;
    // (ar + i ai)(br + i bi) = (ar br - ai bi) + i (ar bi + ai br)
    multiply_into(out.real_, a.real_, b.real_, Rational(1));
    multiply_into(out.real_, a.imag_, b.imag_, Rational(-1));
    multiply_into(out.imag_, a.real_, b.imag_, Rational(1));
    multiply_into(out.imag_, a.imag_, b.real_, Rational(1));
    return out;
  }
  RadicalScalar& operator*=(const RadicalScalar& o) { return *this = *this * o; }

  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.real_ == b.real_ && a.imag_ == b.imag_;
  }

  /// Human-readable form, e.g. "1/2 + 3*sqrt(2) + i*(sqrt(3))".
  std::string to_string() const {
    if (is_zero()) return "0";
    auto part = [](const TermMap& m) {
      std::string s;
      for (const auto& [n, q] : m) {
        std::string piece = n == 1 ? mathieu::to_string(q)
                                   : (q == 1 ? "" : (q == -1 ? "-" : mathieu::to_string(q) + "*")) + "sqrt(" +
                                         n.get_str() + ")";
        if (!s.empty()) s += piece.front() == '-' ? " - " + piece.substr(1) : " + " + piece;
        else s = piece;
      }
      return s;
    };
    std::string out = part(real_);
    if (!imag_.empty()) out += (out.empty() ? "" : " + ") + std::string("i*(") + part(imag_) + ")";
    return out;
  }

 private:
  static void add_term(TermMap& m, const Rational& q, const Integer& squarefree_radicand) {
    if (q == 0) return;
    auto [it, inserted] = m.try_emplace(squarefree_radicand, q);
    if (inserted) return;
    it->second += q;
    if (it->second == 0) m.erase(it);
  }

  static void multiply_into(TermMap& out, const TermMap& x, const TermMap& y, const Rational& sign) {
    for (const auto& [nx, qx] : x) {
      for (const auto& [ny, qy] : y) {
        // sqrt(nx)*sqrt(ny) with nx, ny squarefree: g = gcd, product = g * sqrt(nx/g * ny/g).
        Integer g;
        mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
        Integer r = (nx / g) * (ny / g);
        add_term(out, sign * qx * qy * Rational(g), r);
      }
    }
  }

  static double sum_double(const TermMap& m) {
    double s = 0.0;
    for (const auto& [n, q] : m) s += q.get_d() * std::sqrt(n.get_d());
    return s;
  }

  TermMap real_;
  TermMap imag_;
};

inline bool is_zero(const RadicalScalar& x) { return x.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RadicalScalar& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }
inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.to_string(); }

}  // namespace mathieu
