#pragma once

// Exact Haar integration over SU(2) of products of powers of matrix elements.
//
// With g = k(phi) a(theta) k(psi) the normalized Haar measure is
//   (1/16 pi^2) sin(theta) dpsi dtheta dphi,  phi in [0,2pi), psi in [-2pi,2pi).
// A product of matrix elements picks up e^{-i F phi} e^{-i G psi} with
// F = sum alpha_i m_i and G = sum alpha_i n_i, so the phi/psi integrals
// vanish unless F = G = 0. When they survive they contribute 2pi * 4pi, which
// cancels against 1/16pi^2 up to a factor 1/2, leaving
//   (1/2) int_0^pi prod t(a(theta)) sin(theta) dtheta.

#include "mathieu/exact_scalar.hpp"
#include "mathieu/wigner.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

namespace mathieu {

struct ProductFactor {
  MatrixElementIndex index;
  unsigned long power = 1;
  friend bool operator==(const ProductFactor&, const ProductFactor&) = default;
  friend auto operator<=>(const ProductFactor&, const ProductFactor&) = default;
};

/// prod_i (t^{l_i}_{m_i,n_i})^{alpha_i}. Normalized on construction: zero
/// powers dropped, duplicate indices merged, factors sorted by index.
class ProductSpec {
 public:
  ProductSpec() = default;
  ProductSpec(std::initializer_list<ProductFactor> factors) : ProductSpec(std::vector<ProductFactor>(factors)) {}
  explicit ProductSpec(std::vector<ProductFactor> factors) {
    for (const auto& f : factors) multiply(f.index, f.power);
  }

  void multiply(const MatrixElementIndex& index, unsigned long power = 1) {
    index.validate();
    if (power == 0) return;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), index,
                               [](const ProductFactor& f, const MatrixElementIndex& i) { return f.index < i; });
    if (it != factors_.end() && it->index == index) it->power += power;
    else factors_.insert(it, ProductFactor{index, power});
  }

  const std::vector<ProductFactor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  std::string to_string() const {
    std::string s = "{";
    for (const auto& f : factors_) {
      if (s.size() > 1) s += ", ";
      s += f.index.to_string() + "^" + std::to_string(f.power);
    }
    return s + "}";
  }

  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
  friend auto operator<=>(const ProductSpec& a, const ProductSpec& b) { return a.factors_ <=> b.factors_; }

 private:
  std::vector<ProductFactor> factors_;
};

struct FrequencyPair {
  HalfInt phi_freq;
  HalfInt psi_freq;
  bool is_zero() const { return phi_freq == HalfInt(0) && psi_freq == HalfInt(0); }
  friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

/// (sum alpha_i m_i + a, sum alpha_i n_i + b), where (a, b) come from the
/// optional extra factor h = t^l_{a,b}.
inline FrequencyPair frequency_of(const ProductSpec& spec, const std::optional<MatrixElementIndex>& shift = {}) {
  FrequencyPair f;
  for (const auto& factor : spec.factors()) {
    const auto alpha = static_cast<std::int64_t>(factor.power);
    f.phi_freq += factor.index.m * alpha;
    f.psi_freq += factor.index.n * alpha;
  }
  if (shift) {
    f.phi_freq += shift->m;
    f.psi_freq += shift->n;
  }
  return f;
}

/// int_0^pi c^a s^b sin(theta) dtheta = 2 (a/2)! (b/2)! / ((a+b)/2 + 1)!
/// for even a, b; odd exponents throw ParityViolation.
inline Rational monomial_theta_integral(unsigned c_exp, unsigned s_exp) {
  if (c_exp % 2 != 0 || s_exp % 2 != 0)
    throw ParityViolation("theta integral of c^" + std::to_string(c_exp) + " s^" + std::to_string(s_exp) +
                          " has an odd exponent");
  return make_rational(2 * factorial(c_exp / 2) * factorial(s_exp / 2), factorial((c_exp + s_exp) / 2 + 1));
}

namespace detail {

inline std::vector<Integer> convolve(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

}  // namespace detail

/// Exact product integrals with two memo tables: integer coefficient vectors
/// of powers of single matrix elements, and finished integrals keyed by the
/// normalized factor multiset. Safe for concurrent use; caching never
/// changes results.
class HaarIntegrator {
 public:
  /// int prod (t^{l_i}_{m_i,n_i})^{alpha_i}(g) [* t^l_{a,b}(g)] dg.
  RadicalScalar integrate(const ProductSpec& spec, const std::optional<MatrixElementIndex>& shift = {}) {
    if (!frequency_of(spec, shift).is_zero()) return {};
    ProductSpec key = spec;
    if (shift) key.multiply(*shift);
    {
      std::shared_lock lock(mutex_);
      if (auto it = integrals_.find(key); it != integrals_.end()) return it->second;
    }
    RadicalScalar value = compute(key);
    std::unique_lock lock(mutex_);
    integrals_.try_emplace(std::move(key), value);
    return value;
  }

  std::size_t cached_integrals() const {
    std::shared_lock lock(mutex_);
    return integrals_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    integrals_.clear();
    powers_.clear();
  }

 private:
  // Frequencies are already known to vanish.
  RadicalScalar compute(const ProductSpec& spec) {
    std::vector<Integer> poly{Integer(1)};
    unsigned degree = 0;
    unsigned phase = 0;
    Rational scale = 1;
    Rational radical_outside = 1;
    Integer radical_inside = 1;
    for (const auto& factor : spec.factors()) {
      const ElementExpansion& e = element_expansion(factor.index);
      poly = detail::convolve(poly, power_coeffs(factor.index, factor.power));
      degree += e.degree * static_cast<unsigned>(factor.power);
      phase = static_cast<unsigned>((phase + e.phase_quarter * (factor.power % 4)) % 4);
      Rational scale_power;
      mpz_pow_ui(scale_power.get_num_mpz_t(), e.scale.get_num_mpz_t(), factor.power);
      mpz_pow_ui(scale_power.get_den_mpz_t(), e.scale.get_den_mpz_t(), factor.power);
      scale *= scale_power;
      Integer r_half;
      mpz_pow_ui(r_half.get_mpz_t(), e.radicand.get_mpz_t(), factor.power / 2);
      radical_outside *= Rational(r_half);
      if (factor.power % 2 == 1) radical_inside *= e.radicand;
    }

    // sum_q coeff_q * int c^(D-q) s^q sin = 2/((D/2)+1)! * sum_q coeff_q ((D-q)/2)! (q/2)!,
    // and the Haar prefactor 1/2 cancels the 2.
    Integer weighted = 0;
    for (unsigned q = 0; q < poly.size(); ++q) {
      if (poly[q] == 0) continue;
      if (q % 2 != 0 || (degree - q) % 2 != 0)
        throw ParityViolation("surviving monomial c^" + std::to_string(degree - q) + " s^" + std::to_string(q) +
                              " has an odd exponent in " + spec.to_string());
      weighted += poly[q] * factorial((degree - q) / 2) * factorial(q / 2);
    }
    if (weighted == 0) return {};
    Rational value = make_rational(weighted, factorial(degree / 2 + 1)) * scale * radical_outside;
    if (phase >= 2) value = -value;
    return RadicalScalar::term(value, radical_inside, phase % 2 == 1);
  }

  const std::vector<Integer>& power_coeffs(const MatrixElementIndex& index, unsigned long power) {
    const std::pair key{index, power};
    {
      std::shared_lock lock(mutex_);
      if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    }
    std::vector<Integer> value = power == 1 ? element_expansion(index).coeffs
                                            : detail::convolve(power_coeffs(index, power - 1),
                                                               element_expansion(index).coeffs);
    std::unique_lock lock(mutex_);
    return powers_.try_emplace(key, std::move(value)).first->second;
  }

  mutable std::shared_mutex mutex_;
  std::map<ProductSpec, RadicalScalar> integrals_;
  std::map<std::pair<MatrixElementIndex, unsigned long>, std::vector<Integer>> powers_;
};

inline HaarIntegrator& default_integrator() {
  static HaarIntegrator integrator;
  return integrator;
}

/// Exact Haar integral of the product, times h = t^l_{a,b} when given. Zero
/// whenever the left or right K-frequency is nonzero.
inline RadicalScalar integrate_product(const ProductSpec& spec, const std::optional<MatrixElementIndex>& shift = {}) {
  return default_integrator().integrate(spec, shift);
}

}  // namespace mathieu
