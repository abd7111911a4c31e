#pragma once

// Double-precision evaluation of matrix elements and Monte Carlo Haar
// integration, used as an independent check on exact results.

#include "mathieu/haar.hpp"
#include "mathieu/power.hpp"
#include "mathieu/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mathieu {

using Complex = std::complex<double>;

/// g = k(phi) a(theta) k(psi).
struct EulerAngles {
  double phi = 0;
  double theta = 0;
  double psi = 0;
};

// ---------------------------------------------------------------------------
// Random numbers

/// SplitMix64 step; also used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for substream `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xD1B54A32D192ED03ULL);
  return splitmix64(state);
}

/// mt19937_64 seeded through splitmix64; streams are split with derive_seed.
class Rng {
 public:
  static constexpr const char* name = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi], without modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// theta with density sin(theta)/2 on [0, pi] from u uniform on [0, 1).
inline double haar_theta(double u) { return std::acos(1.0 - 2.0 * u); }

inline EulerAngles sample_haar(Rng& rng) {
  constexpr double pi = std::numbers::pi;
  EulerAngles g;
  g.phi = 2 * pi * rng.uniform();
  g.theta = haar_theta(rng.uniform());
  g.psi = -2 * pi + 4 * pi * rng.uniform();
  return g;
}

// ---------------------------------------------------------------------------
// Matrix elements

namespace detail {

struct NumericElement {
  Complex front;
  unsigned degree = 0;
  std::vector<double> coeffs;
};

inline NumericElement to_numeric(const ElementExpansion& e) {
  static constexpr std::array<Complex, 4> quarter{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  NumericElement out;
  out.front = quarter[e.phase_quarter % 4] * std::sqrt(e.radicand.get_d()) * e.scale.get_d();
  out.degree = e.degree;
  for (const auto& c : e.coeffs) out.coeffs.push_back(c.get_d());
  return out;
}

inline const NumericElement& numeric_element(const MatrixElementIndex& idx) {
  static std::shared_mutex mutex;
  static std::map<MatrixElementIndex, std::unique_ptr<NumericElement>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(idx); it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<NumericElement>(to_numeric(element_expansion(idx)));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(idx, std::move(value));
  return *it->second;
}

}  // namespace detail

inline Complex eval_matrix_element(const MatrixElementIndex& idx, const EulerAngles& g) {
  const auto& e = detail::numeric_element(idx);
  const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
  // Horner in c: after step q every earlier term has gained one more factor c.
  double acc = 0, s_pow = 1;
  for (unsigned q = 0; q <= e.degree; ++q) {
    acc = acc * c + e.coeffs[q] * s_pow;
    s_pow *= s;
  }
  const double angle = -(idx.m.to_double() * g.phi + idx.n.to_double() * g.psi);
  return e.front * acc * std::polar(1.0, angle);
}

/// Dense square complex matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim = 0) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
    ComplexMatrix out(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r)
      for (std::size_t k = 0; k < a.dim_; ++k)
        for (std::size_t c = 0; c < a.dim_; ++c) out(r, c) += a(r, k) * b(k, c);
    return out;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1;
    return out;
  }

  friend double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
    return worst;
  }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// All t^l_{m,n}(g); rows m = l..-l, columns n = l..-l.
inline ComplexMatrix representation_matrix(HalfInt l, const EulerAngles& g) {
  if (l < HalfInt(0)) throw std::invalid_argument("spin must be nonnegative");
  const auto dim = static_cast<std::size_t>(l.twice()) + 1;
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const HalfInt m = l - HalfInt(static_cast<std::int64_t>(r));
      const HalfInt n = l - HalfInt(static_cast<std::int64_t>(c));
      out(r, c) = eval_matrix_element({l, m, n}, g);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Euler angles and the defining representation

/// The 2x2 special unitary matrix k(phi) a(theta) k(psi), with
/// k(x) = diag(e^{ix/2}, e^{-ix/2}) and a(x) = [[cos x/2, i sin x/2], [i sin x/2, cos x/2]].
inline std::array<std::array<Complex, 2>, 2> su2_matrix(const EulerAngles& g) {
  const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
  const Complex i(0, 1);
  return {{{c * std::polar(1.0, (g.phi + g.psi) / 2), i * s * std::polar(1.0, (g.phi - g.psi) / 2)},
           {i * s * std::polar(1.0, (g.psi - g.phi) / 2), c * std::polar(1.0, -(g.phi + g.psi) / 2)}}};
}

/// Euler angles of a special unitary 2x2 matrix, with phi in [0, 2pi) and
/// psi in [-2pi, 2pi). When theta is 0 or pi only phi + psi (resp. psi - phi)
/// is determined; then phi = 0 and psi carries the whole phase.
inline EulerAngles euler_angles(const std::array<std::array<Complex, 2>, 2>& u) {
  constexpr double pi = std::numbers::pi;
  constexpr double degenerate = 1e-14;
  const double a11 = std::abs(u[0][0]), a21 = std::abs(u[1][0]);
  EulerAngles g;
  g.theta = 2 * std::atan2(a21, a11);
  const double half_sum = std::arg(u[0][0]);              // (phi + psi) / 2
  const double half_diff = std::arg(u[1][0]) - pi / 2;    // (psi - phi) / 2
  if (a21 <= degenerate * a11) {
    g.theta = 0;
    g.psi = 2 * half_sum;
  } else if (a11 <= degenerate * a21) {
    g.theta = pi;
    g.psi = 2 * half_diff;
  } else {
    g.phi = half_sum - half_diff;
    g.psi = half_sum + half_diff;
  }
  // (phi, psi) and (phi + 2pi, psi + 2pi) give the same element, as do
  // psi and psi + 4pi.
  const double shift = 2 * pi * std::floor(g.phi / (2 * pi));
  g.phi -= shift;
  g.psi -= shift;
  if (g.phi >= 2 * pi) g.phi = 0;
  g.psi -= 4 * pi * std::floor((g.psi + 2 * pi) / (4 * pi));
  if (g.psi >= 2 * pi) g.psi -= 4 * pi;
  return g;
}

inline EulerAngles compose(const EulerAngles& g1, const EulerAngles& g2) {
  const auto a = su2_matrix(g1), b = su2_matrix(g2);
  std::array<std::array<Complex, 2>, 2> p{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) p[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
  return euler_angles(p);
}

/// max |T(g1) T(g2) - T(g1 g2)| <= tol at spin l.
inline bool compose_and_check(HalfInt l, const EulerAngles& g1, const EulerAngles& g2, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const auto lhs = representation_matrix(l, g1) * representation_matrix(l, g2);
  const auto rhs = representation_matrix(l, compose(g1, g2));
  return max_abs_difference(lhs, rhs) <= tol;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct McEstimate {
  Complex mean;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Samples per independently seeded chunk; part of the reproducibility
/// contract together with the seed and sample count.
inline constexpr std::uint64_t mc_chunk_size = 1ULL << 16;

namespace detail {

struct ChunkSums {
  Complex sum;
  double sum_sq = 0;
};

template <typename Integrand>
McEstimate monte_carlo(const Integrand& integrand, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const std::uint64_t chunks = (samples + mc_chunk_size - 1) / mc_chunk_size;
  std::vector<ChunkSums> sums(chunks);
  auto run_chunk = [&](std::uint64_t chunk) {
    Rng rng(seed, chunk);
    const std::uint64_t begin = chunk * mc_chunk_size;
    const std::uint64_t end = std::min(samples, begin + mc_chunk_size);
    ChunkSums s;
    for (std::uint64_t i = begin; i < end; ++i) {
      const Complex x = integrand(sample_haar(rng));
      s.sum += x;
      s.sum_sq += std::norm(x);
    }
    sums[chunk] = s;
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
  }
  // merged in chunk order so the result does not depend on the thread count
  Complex total;
  double total_sq = 0;
  for (const auto& s : sums) {
    total += s.sum;
    total_sq += s.sum_sq;
  }
  const auto n = static_cast<double>(samples);
  McEstimate est;
  est.mean = total / n;
  est.samples = samples;
  est.seed = seed;
  if (samples > 1) {
    const double variance = std::max(0.0, (total_sq - n * std::norm(est.mean)) / (n - 1));
    est.std_error = std::sqrt(variance / n);
  }
  return est;
}

inline Complex eval_power(const Complex& x, unsigned long p) {
  Complex out = 1;
  Complex base = x;
  while (p) {
    if (p & 1) out *= base;
    base *= base;
    p >>= 1;
  }
  return out;
}

}  // namespace detail

/// Monte Carlo estimate of the integral of prod t_i^{p_i} (times the shift
/// element when given).
inline McEstimate mc_integral(const ProductSpec& spec, std::uint64_t samples, std::uint64_t seed,
                              const std::optional<MatrixElementIndex>& shift = {}, unsigned threads = 0) {
  for (const auto& f : spec.factors()) f.index.validate();
  if (shift) shift->validate();
  return detail::monte_carlo(
      [&](const EulerAngles& g) {
        Complex x = 1;
        for (const auto& f : spec.factors()) x *= detail::eval_power(eval_matrix_element(f.index, g), f.power);
        if (shift) x *= eval_matrix_element(*shift, g);
        return x;
      },
      samples, seed, threads);
}

/// Monte Carlo estimate of the integral of f^P (times h when given).
inline McEstimate mc_power_integral(const FiniteFunction& f, unsigned long total, std::uint64_t samples,
                                    std::uint64_t seed, const std::optional<MatrixElementIndex>& h = {},
                                    unsigned threads = 0) {
  if (total < 1) throw std::invalid_argument("power P must be at least 1");
  if (h) h->validate();
  std::vector<std::pair<MatrixElementIndex, Complex>> terms;
  for (const auto& t : f.terms()) terms.emplace_back(t.index, t.coeff.to_complex());
  return detail::monte_carlo(
      [&](const EulerAngles& g) {
        Complex v = 0;
        for (const auto& [index, coeff] : terms) v += coeff * eval_matrix_element(index, g);
        Complex x = detail::eval_power(v, total);
        if (h) x *= eval_matrix_element(*h, g);
        return x;
      },
      samples, seed, threads);
}

}  // namespace mathieu
