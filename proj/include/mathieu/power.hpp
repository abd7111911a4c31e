#pragma once

// Exact integrals of f^P and f^P h for f = sum_i A_i t^{l_i}_{m_i,n_i}.
// By the multinomial theorem
//   int f^P dg = sum_{|alpha| = P} (P; alpha) prod A_i^alpha_i int prod t_i^alpha_i dg,
// and only compositions with sum alpha_i m_i = -a, sum alpha_i n_i = -b
// (a = b = 0 without h) can contribute.

#include "mathieu/exact_scalar.hpp"
#include "mathieu/haar.hpp"
#include "mathieu/hull.hpp"
#include "mathieu/wigner.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mathieu {

struct Term {
  MatrixElementIndex index;
  GaussianRational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// f = sum_i A_i t^{l_i}_{m_i,n_i} with nonzero coefficients and pairwise
/// distinct indices.
class FiniteFunction {
 public:
  FiniteFunction() = default;
  explicit FiniteFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::set<MatrixElementIndex> seen;
    for (const auto& t : terms_) {
      t.index.validate();
      if (t.coeff.is_zero()) throw std::invalid_argument("zero coefficient for " + t.index.to_string());
      if (!seen.insert(t.index).second) throw std::invalid_argument("duplicate index " + t.index.to_string());
    }
  }
  FiniteFunction(std::initializer_list<Term> terms) : FiniteFunction(std::vector<Term>(terms)) {}

  /// A single matrix element with coefficient 1.
  static FiniteFunction element(const MatrixElementIndex& index) { return FiniteFunction{{index, GaussianRational(1)}}; }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Weight points (m_i, n_i), one per term (not deduplicated).
  std::vector<WeightPoint> support() const {
    std::vector<WeightPoint> out;
    for (const auto& t : terms_) out.push_back({t.index.m, t.index.n});
    return out;
  }

  SupportHull hull() const { return SupportHull(support()); }

  std::string to_string() const {
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += t.coeff.to_string() + "*t" + t.index.to_string();
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;

 private:
  std::vector<Term> terms_;
};

/// Exponents alpha_i, one per term of the associated function.
using Composition = std::vector<unsigned long>;

/// Visits every alpha in N^k with sum alpha = P, sum alpha_i m_i = target.phi
/// and sum alpha_i n_i = target.psi, in descending lexicographic order.
/// Depth-first over alpha_1..alpha_k; a prefix is pruned as soon as the
/// remaining budget cannot reach the target, because the remaining terms
/// contribute budget times a convex combination of their weights.
template <typename Visitor>
void for_each_balanced_composition(const std::vector<WeightPoint>& support, unsigned long total,
                                   const FrequencyPair& target, Visitor&& visit) {
  const std::size_t k = support.size();
  if (k == 0) return;
  std::vector<std::int64_t> m(k), n(k);
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = support[i].m.twice();
    n[i] = support[i].n.twice();
  }
  // suffix extrema over terms i..k-1
  std::vector<std::int64_t> m_lo(k), m_hi(k), n_lo(k), n_hi(k);
  for (std::size_t i = k; i-- > 0;) {
    m_lo[i] = i + 1 < k ? std::min(m[i], m_lo[i + 1]) : m[i];
    m_hi[i] = i + 1 < k ? std::max(m[i], m_hi[i + 1]) : m[i];
    n_lo[i] = i + 1 < k ? std::min(n[i], n_lo[i + 1]) : n[i];
    n_hi[i] = i + 1 < k ? std::max(n[i], n_hi[i + 1]) : n[i];
  }
  const std::int64_t want_m = target.phi_freq.twice();
  const std::int64_t want_n = target.psi_freq.twice();
  const auto budget_total = static_cast<std::int64_t>(total);

  Composition alpha(k, 0);
  std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> descend =
      [&](std::size_t i, std::int64_t budget, std::int64_t sum_m, std::int64_t sum_n) {
        const std::int64_t need_m = want_m - sum_m;
        const std::int64_t need_n = want_n - sum_n;
        if (need_m < budget * m_lo[i] || need_m > budget * m_hi[i]) return;
        if (need_n < budget * n_lo[i] || need_n > budget * n_hi[i]) return;
        if (i + 1 == k) {
          alpha[i] = static_cast<unsigned long>(budget);
          visit(static_cast<const Composition&>(alpha));
          return;
        }
        for (std::int64_t a = budget; a >= 0; --a) {
          alpha[i] = static_cast<unsigned long>(a);
          descend(i + 1, budget - a, sum_m + a * m[i], sum_n + a * n[i]);
        }
        alpha[i] = 0;
      };
  descend(0, budget_total, 0, 0);
}

inline std::vector<Composition> enumerate_balanced_compositions(const FiniteFunction& f, unsigned long total,
                                                                const FrequencyPair& target) {
  if (total < 1) throw std::invalid_argument("power P must be at least 1");
  std::vector<Composition> out;
  for_each_balanced_composition(f.support(), total, target, [&](const Composition& a) { out.push_back(a); });
  return out;
}

/// P! / prod alpha_i!
inline Integer multinomial(const Composition& alpha) {
  Integer result = 1;
  unsigned long running = 0;
  for (auto a : alpha) {
    running += a;
    result *= binomial(running, a);
  }
  return result;
}

namespace detail {

class CoefficientPowers {
 public:
  explicit CoefficientPowers(const FiniteFunction& f) {
    for (const auto& t : f.terms()) powers_.push_back({GaussianRational(1), t.coeff});
  }

  const GaussianRational& get(std::size_t term, unsigned long exponent) {
    auto& table = powers_[term];
    while (table.size() <= exponent) table.push_back(table.back() * table[1]);
    return table[exponent];
  }

 private:
  std::vector<std::vector<GaussianRational>> powers_;
};

inline RadicalScalar expand_power(const FiniteFunction& f, unsigned long total,
                                  const std::optional<MatrixElementIndex>& h, HaarIntegrator& integrator) {
  if (total < 1) throw std::invalid_argument("power P must be at least 1");
  FrequencyPair target;
  if (h) {
    h->validate();
    target = {-h->m, -h->n};
  }
  detail::CoefficientPowers powers(f);
  GaussianRational rational_part;  // sum of rational-valued contributions
  RadicalScalar radical_part;
  for_each_balanced_composition(f.support(), total, target, [&](const Composition& alpha) {
    ProductSpec spec;
    GaussianRational weight(Rational(multinomial(alpha)));
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      spec.multiply(f.terms()[i].index, alpha[i]);
      weight *= powers.get(i, alpha[i]);
    }
    const RadicalScalar base = integrator.integrate(spec, h);
    if (base.is_zero()) return;
    if (auto q = base.as_gaussian_rational()) rational_part += weight * *q;
    else radical_part += RadicalScalar(weight) * base;
  });
  return radical_part + RadicalScalar(rational_part);
}

}  // namespace detail

/// Exact int f^P dg.
inline RadicalScalar power_integral(const FiniteFunction& f, unsigned long total,
                                    HaarIntegrator& integrator = default_integrator()) {
  return detail::expand_power(f, total, std::nullopt, integrator);
}

/// Exact int f^P h dg with h = t^l_{a,b}.
inline RadicalScalar power_integral_with_witness(const FiniteFunction& f, unsigned long total,
                                                 const MatrixElementIndex& h,
                                                 HaarIntegrator& integrator = default_integrator()) {
  return detail::expand_power(f, total, h, integrator);
}

/// (P, int f^P dg) for P = 1..p_max, sharing the integrator's memo tables.
inline std::vector<std::pair<unsigned long, RadicalScalar>> power_scan(
    const FiniteFunction& f, unsigned long p_max, HaarIntegrator& integrator = default_integrator()) {
  if (p_max < 1) throw std::invalid_argument("Pmax must be at least 1");
  std::vector<std::pair<unsigned long, RadicalScalar>> out;
  for (unsigned long p = 1; p <= p_max; ++p) out.emplace_back(p, power_integral(f, p, integrator));
  return out;
}

/// Componentwise-minimal nonzero (alpha, beta) in N^2 with
/// alpha p1 + beta p2 = 0, for supports meeting the two-term criterion.
inline std::pair<unsigned long, unsigned long> minimal_balanced_pair(const WeightPoint& p1, const WeightPoint& p2) {
  if ((p1.is_origin() && p2.is_origin()) || !two_term_criterion(p1, p2))
    throw NoSolution("no balanced pair for " + p1.to_string() + ", " + p2.to_string());
  if (p1.is_origin()) return {1, 0};
  if (p2.is_origin()) return {0, 1};
  // p1 = -lambda p2 with lambda > 0: alpha |x1| = beta |x2| on a nonzero axis.
  const bool use_m = p1.m != HalfInt(0);
  const auto a = static_cast<unsigned long>(std::abs(use_m ? p1.m.twice() : p1.n.twice()));
  const auto b = static_cast<unsigned long>(std::abs(use_m ? p2.m.twice() : p2.n.twice()));
  const unsigned long g = std::gcd(a, b);
  return {b / g, a / g};
}

}  // namespace mathieu
