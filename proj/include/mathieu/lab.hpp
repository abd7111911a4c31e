#pragma once

// Experiment harness: instance classification, the proven-direction check,
// a seeded fuzzer over random finite functions, Legendre moment scans and
// a self-check suite for the exactly solvable cases.

#include "mathieu/haar.hpp"
#include "mathieu/hull.hpp"
#include "mathieu/io.hpp"
#include "mathieu/numeric.hpp"
#include "mathieu/power.hpp"
#include "mathieu/wigner.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mathieu {

// ---------------------------------------------------------------------------
// Classification

enum class CaseTag { single, two_term, three_term_rank_1, three_term_rank_2, three_term_rank_3, general_k };

inline std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::single: return "single";
    case CaseTag::two_term: return "two-term";
    case CaseTag::three_term_rank_1: return "three-term-rank-1";
    case CaseTag::three_term_rank_2: return "three-term-rank-2";
    case CaseTag::three_term_rank_3: return "three-term-rank-3";
    case CaseTag::general_k: return "general-k";
  }
  return "general-k";
}

inline CaseTag classify_instance(const FiniteFunction& f) {
  const auto pts = f.support();
  switch (pts.size()) {
    case 1: return CaseTag::single;
    case 2: return CaseTag::two_term;
    case 3:
      switch (rank_classification(pts[0], pts[1], pts[2]).rank) {
        case 1: return CaseTag::three_term_rank_1;
        case 2: return CaseTag::three_term_rank_2;
        default: return CaseTag::three_term_rank_3;
      }
    default: return CaseTag::general_k;
  }
}

/// A power M such that int f^M or int f^{2M} is provably nonzero, in the
/// cases where only one composition can survive at those powers: one term at
/// the origin, two terms with the origin on their segment (not both at the
/// origin), and three terms of rank 3 with the origin in their hull.
inline std::optional<unsigned long> guaranteed_nonzero_base(const FiniteFunction& f) {
  const auto pts = f.support();
  if (pts.size() == 1) return pts[0].is_origin() ? std::optional<unsigned long>(1) : std::nullopt;
  if (pts.size() == 2) {
    if ((pts[0].is_origin() && pts[1].is_origin()) || !two_term_criterion(pts[0], pts[1])) return std::nullopt;
    const auto [a, b] = minimal_balanced_pair(pts[0], pts[1]);
    return a + b;
  }
  if (pts.size() == 3) {
    const auto rc = rank_classification(pts[0], pts[1], pts[2]);
    if (rc.rank != 3) return std::nullopt;
    // alpha = M^{-1} (1, 0, 0)^t by Cramer's rule
    auto det3 = [](const std::array<std::array<Rational, 3>, 3>& x) -> Rational {
      return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
             x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
    };
    const Rational d = det3(rc.matrix);
    Integer scale = 1;
    std::array<Rational, 3> alpha;
    for (std::size_t col = 0; col < 3; ++col) {
      auto b = rc.matrix;
      for (std::size_t r = 0; r < 3; ++r) b[r][col] = r == 0 ? 1 : 0;
      alpha[col] = det3(b) / d;
      if (alpha[col] < 0) return std::nullopt;
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), alpha[col].get_den_mpz_t());
    }
    if (!scale.fits_ulong_p()) return std::nullopt;
    return scale.get_ui();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Proven-direction check

enum class Verdict { consistent, inconclusive_candidate, violation };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::inconclusive_candidate: return "inconclusive-candidate";
    case Verdict::violation: return "violation";
  }
  return "violation";
}

struct InstanceReport {
  FiniteFunction function;
  CaseTag tag = CaseTag::single;
  HullVerdict hull;
  std::vector<std::pair<unsigned long, RadicalScalar>> scan;
  std::optional<unsigned long> first_nonzero;
  Verdict verdict = Verdict::consistent;
  std::string note;
};

/// Scans int f^P for P <= p_max and checks it against what is proven: all
/// zero when the origin is outside the hull, and a nonzero value by power 2M
/// in the single-survivor cases of guaranteed_nonzero_base.
inline InstanceReport check_proven_direction(const FiniteFunction& f, unsigned long p_max,
                                             HaarIntegrator& integrator = default_integrator()) {
  if (f.size() == 0) throw std::invalid_argument("function has no terms");
  InstanceReport report;
  report.function = f;
  report.tag = classify_instance(f);
  report.hull = hull_certificate(f.hull());
  report.scan = power_scan(f, p_max, integrator);
  for (const auto& [p, v] : report.scan)
    if (!v.is_zero()) {
      report.first_nonzero = p;
      break;
    }
  if (!report.hull.contains_origin) {
    if (report.first_nonzero) {
      report.verdict = Verdict::violation;
      report.note = "origin outside hull but P = " + std::to_string(*report.first_nonzero) + " is nonzero";
    } else {
      report.verdict = Verdict::consistent;
      report.note = "origin outside hull; scan zero";
    }
    return report;
  }
  if (report.first_nonzero) {
    report.verdict = Verdict::consistent;
    report.note = "origin in hull; first nonzero at P = " + std::to_string(*report.first_nonzero);
    return report;
  }
  if (auto m = guaranteed_nonzero_base(f); m && 2 * *m <= p_max) {
    report.verdict = Verdict::violation;
    report.note = "P = " + std::to_string(*m) + " or " + std::to_string(2 * *m) + " must be nonzero but scan is zero";
    return report;
  }
  report.verdict = Verdict::inconclusive_candidate;
  report.note = "origin in hull; no nonzero up to P = " + std::to_string(p_max);
  return report;
}

inline Json to_json(const InstanceReport& r) {
  Json out;
  out["function"] = function_to_json(r.function)["terms"];
  out["case"] = to_string(r.tag);
  out["hull"] = to_json(r.hull, r.function.hull());
  out["scan"] = scan_to_json(r.scan);
  out["first_nonzero"] = r.first_nonzero ? Json(*r.first_nonzero) : Json(nullptr);
  out["verdict"] = to_string(r.verdict);
  out["note"] = r.note;
  return out;
}

// ---------------------------------------------------------------------------
// Fuzzing

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::uint64_t first_trial = 0;
  HalfInt l_max = HalfInt(2);
  std::size_t k_max = 4;
  unsigned long p_max = 12;
  /// Probability that a trial uses the collinear three-term generator.
  double rank2_bias = 0.0;
  std::vector<GaussianRational> pool = default_pool();

  static std::vector<GaussianRational> default_pool() {
    const Rational half(1, 2);
    return {GaussianRational(1),     GaussianRational(-1),    GaussianRational(2),     GaussianRational(-2),
            GaussianRational(half),  GaussianRational(-half), GaussianRational(0, 1),  GaussianRational(0, -1),
            GaussianRational(1, 1),  GaussianRational(1, -1)};
  }

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (p_max < 1) throw std::invalid_argument("Pmax must be at least 1");
    if (k_max < 1) throw std::invalid_argument("kmax must be at least 1");
    if (l_max < HalfInt(0)) throw std::invalid_argument("lmax must be nonnegative");
    if (!(rank2_bias >= 0 && rank2_bias <= 1)) throw std::invalid_argument("rank2 bias must lie in [0, 1]");
    if (pool.empty()) throw std::invalid_argument("coefficient pool is empty");
    for (const auto& c : pool)
      if (c.is_zero()) throw std::invalid_argument("coefficient pool contains zero");
  }
};

namespace detail {

inline MatrixElementIndex random_index(Rng& rng, HalfInt l_max) {
  const auto l2 = rng.uniform_int(0, l_max.twice());
  const auto m2 = -l2 + 2 * rng.uniform_int(0, l2);
  const auto n2 = -l2 + 2 * rng.uniform_int(0, l2);
  return {HalfInt::from_twice(l2), HalfInt::from_twice(m2), HalfInt::from_twice(n2)};
}

inline GaussianRational random_coeff(Rng& rng, const std::vector<GaussianRational>& pool) {
  return pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
}

/// A spin for the point (m, n), uniform over the admissible values <= l_max.
inline std::optional<HalfInt> random_spin_for(Rng& rng, const WeightPoint& p, HalfInt l_max) {
  if ((p.m - p.n).twice() % 2 != 0) return std::nullopt;
  const std::int64_t lo = std::max(std::abs(p.m.twice()), std::abs(p.n.twice()));
  if (lo > l_max.twice()) return std::nullopt;
  const std::int64_t steps = (l_max.twice() - lo) / 2;
  return HalfInt::from_twice(lo + 2 * rng.uniform_int(0, steps));
}

inline FiniteFunction random_function(Rng& rng, std::size_t k, HalfInt l_max, const std::vector<GaussianRational>& pool) {
  std::vector<Term> terms;
  std::set<MatrixElementIndex> seen;
  const std::size_t available = all_indices(l_max).size();
  k = std::min(k, available);
  while (terms.size() < k) {
    const auto idx = random_index(rng, l_max);
    if (seen.insert(idx).second) terms.push_back({idx, random_coeff(rng, pool)});
  }
  return FiniteFunction(std::move(terms));
}

/// Three terms whose weight points are distinct and collinear: the third is
/// p1 + t (p2 - p1) with t drawn from a few rationals outside {0, 1}.
inline std::optional<FiniteFunction> random_rank2_function(Rng& rng, HalfInt l_max,
                                                           const std::vector<GaussianRational>& pool) {
  static const std::array<Rational, 6> steps{Rational(-2), Rational(-1), Rational(1, 2), Rational(2), Rational(3),
                                             Rational(-1, 2)};
  for (int attempt = 0; attempt < 200; ++attempt) {
    const auto a = random_index(rng, l_max);
    const auto b = random_index(rng, l_max);
    const WeightPoint p1{a.m, a.n}, p2{b.m, b.n};
    if (p1 == p2) continue;
    const Rational t = steps[static_cast<std::size_t>(rng.uniform_int(0, steps.size() - 1))];
    const Rational m3 = p1.m.to_rational() + t * (p2.m.to_rational() - p1.m.to_rational());
    const Rational n3 = p1.n.to_rational() + t * (p2.n.to_rational() - p1.n.to_rational());
    const Rational m3x2 = 2 * m3, n3x2 = 2 * n3;
    if (m3x2.get_den() != 1 || n3x2.get_den() != 1) continue;
    const WeightPoint p3{HalfInt::from_twice(m3x2.get_num().get_si()), HalfInt::from_twice(n3x2.get_num().get_si())};
    const auto l3 = random_spin_for(rng, p3, l_max);
    if (!l3) continue;
    const MatrixElementIndex c{*l3, p3.m, p3.n};
    return FiniteFunction({{a, random_coeff(rng, pool)}, {b, random_coeff(rng, pool)}, {c, random_coeff(rng, pool)}});
  }
  return std::nullopt;
}

}  // namespace detail

/// The instance of one fuzz trial; depends only on (seed, trial) and the
/// generator settings.
inline FiniteFunction fuzz_instance(const FuzzConfig& cfg, std::uint64_t trial) {
  Rng rng(cfg.seed, trial);
  const bool rank2 = cfg.k_max >= 3 && rng.uniform() < cfg.rank2_bias;
  if (rank2)
    if (auto f = detail::random_rank2_function(rng, cfg.l_max, cfg.pool)) return *f;
  const auto k = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(cfg.k_max)));
  return detail::random_function(rng, k, cfg.l_max, cfg.pool);
}

struct FuzzSummary {
  std::uint64_t trials_run = 0;
  std::map<Verdict, std::uint64_t> by_verdict;
  std::map<std::string, std::uint64_t> by_case;
  std::optional<std::uint64_t> violation_trial;
  bool aborted = false;
};

/// Runs the trials in order, writing one JSON line per instance and a final
/// summary line. Stops at the first violation.
inline FuzzSummary fuzz(const FuzzConfig& cfg, std::ostream& out,
                        HaarIntegrator& integrator = default_integrator()) {
  cfg.validate();
  FuzzSummary summary;
  for (Verdict v : {Verdict::consistent, Verdict::inconclusive_candidate, Verdict::violation}) summary.by_verdict[v] = 0;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    const std::uint64_t trial = cfg.first_trial + i;
    const auto f = fuzz_instance(cfg, trial);
    const auto report = check_proven_direction(f, cfg.p_max, integrator);
    Json line{{"schema", schema_version}, {"type", "instance"}, {"seed", cfg.seed}, {"trial", trial}};
    line.update(to_json(report));
    out << line.dump() << '\n';
    ++summary.trials_run;
    ++summary.by_verdict[report.verdict];
    ++summary.by_case[to_string(report.tag)];
    if (report.verdict == Verdict::violation) {
      summary.violation_trial = trial;
      summary.aborted = true;
      break;
    }
  }
  Json counts;
  for (const auto& [v, n] : summary.by_verdict) counts[to_string(v)] = n;
  Json cases;
  for (const auto& [c, n] : summary.by_case) cases[c] = n;
  Json pool = Json::array();
  for (const auto& c : cfg.pool) pool.push_back(to_json(c));
  Json tail{{"schema", schema_version},
            {"type", "summary"},
            {"seed", cfg.seed},
            {"rng", Rng::name},
            {"first_trial", cfg.first_trial},
            {"trials_requested", cfg.trials},
            {"trials_run", summary.trials_run},
            {"lmax", cfg.l_max.to_string()},
            {"kmax", cfg.k_max},
            {"pmax", cfg.p_max},
            {"rank2_bias", cfg.rank2_bias},
            {"pool", pool},
            {"counts", counts},
            {"cases", cases},
            {"aborted", summary.aborted}};
  if (summary.violation_trial) tail["violation_trial"] = *summary.violation_trial;
  out << tail.dump() << '\n';
  return summary;
}

// ---------------------------------------------------------------------------
// Legendre moments

struct LegendreScan {
  std::vector<GaussianRational> moments;  // moments[P - 1]
  std::optional<unsigned long> first_nonzero;
};

/// (1/2) int_{-1}^{1} (sum_l A_l P_l(x))^P dx for P = 1..p_max.
inline LegendreScan legendre_moment_scan(const std::map<long, GaussianRational>& coeffs, unsigned long p_max) {
  if (p_max < 1) throw std::invalid_argument("Pmax must be at least 1");
  std::vector<GaussianRational> poly;
  for (const auto& [l, a] : coeffs) {
    if (l < 0) throw std::invalid_argument("Legendre degree must be nonnegative");
    if (a.is_zero()) continue;
    const auto p = legendre_poly(HalfInt(l));
    const auto& c = p.coefficients();
    if (poly.size() < c.size()) poly.resize(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) poly[j] += a * GaussianRational(c[j]);
  }
  while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
  if (poly.empty()) throw std::invalid_argument("all Legendre coefficients are zero");

  LegendreScan scan;
  std::vector<GaussianRational> power{GaussianRational(1)};
  for (unsigned long p = 1; p <= p_max; ++p) {
    std::vector<GaussianRational> next(power.size() + poly.size() - 1);
    for (std::size_t i = 0; i < power.size(); ++i)
      if (!power[i].is_zero())
        for (std::size_t j = 0; j < poly.size(); ++j) next[i + j] += power[i] * poly[j];
    power = std::move(next);
    GaussianRational moment;
    for (std::size_t j = 0; j < power.size(); j += 2)
      moment += power[j] * GaussianRational(Rational(1, static_cast<long>(j + 1)));
    if (!scan.first_nonzero && !moment.is_zero()) scan.first_nonzero = p;
    scan.moments.push_back(moment);
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Self-check suite

struct SuiteItem {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;
  Json details = Json::object();

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      passed = false;
      if (failures.size() < 20) failures.push_back(what);
    }
  }
};

struct SuiteReport {
  std::vector<SuiteItem> items;
  bool passed() const {
    return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.passed; });
  }
};

namespace detail {

inline FiniteFunction unit_pair(const WeightPoint& p1, const WeightPoint& p2) {
  const auto spin = [](const WeightPoint& p) {
    return HalfInt::from_twice(std::max(std::abs(p.m.twice()), std::abs(p.n.twice())));
  };
  const HalfInt l1 = spin(p1);
  HalfInt l2 = spin(p2);
  if (p1 == p2) l2 += HalfInt(1);  // distinct indices on a shared point
  return FiniteFunction({{{l1, p1.m, p1.n}, GaussianRational(1)}, {{l2, p2.m, p2.n}, GaussianRational(1)}});
}

inline SuiteItem schur_item(HaarIntegrator& integrator) {
  SuiteItem item{"schur-orthogonality"};
  Json table = Json::array();
  const auto indices = all_indices(HalfInt(2));
  for (const auto& a : indices)
    for (const auto& b : indices) {
      const auto value = integrator.integrate(ProductSpec{{a, 1}, {b, 1}});
      const bool paired = a.l == b.l && a.m == -b.m && a.n == -b.n;
      if (paired) {
        const long sign = (a.m - a.n).as_integer() % 2 == 0 ? 1 : -1;
        const RadicalScalar expected(Rational(sign, a.l.twice() + 1));
        item.expect(value == expected, a.to_string() + " x " + b.to_string() + " = " + value.to_string());
        table.push_back({{"index", to_json(a)}, {"value", value.to_string()}});
      } else {
        item.expect(value.is_zero(), a.to_string() + " x " + b.to_string() + " = " + value.to_string());
      }
    }
  item.details["table"] = std::move(table);
  return item;
}

inline SuiteItem single_element_item(HaarIntegrator& integrator) {
  SuiteItem item{"single-element"};
  for (const auto& idx : all_indices(HalfInt(2))) {
    const auto f = FiniteFunction::element(idx);
    const auto scan = power_scan(f, 8, integrator);
    if (WeightPoint{idx.m, idx.n}.is_origin()) {
      const auto v = scan[1].second.as_rational();
      item.expect(v && *v > 0, idx.to_string() + " at P = 2 is " + scan[1].second.to_string());
    } else {
      for (const auto& [p, v] : scan)
        item.expect(v.is_zero(), idx.to_string() + " at P = " + std::to_string(p) + " is " + v.to_string());
    }
  }
  return item;
}

inline SuiteItem two_term_item(HaarIntegrator& integrator) {
  SuiteItem item{"two-term-criterion"};
  std::vector<WeightPoint> points;
  for (std::int64_t m2 = -3; m2 <= 3; ++m2)
    for (std::int64_t n2 = -3; n2 <= 3; ++n2)
      if ((m2 - n2) % 2 == 0) points.push_back({HalfInt::from_twice(m2), HalfInt::from_twice(n2)});
  std::uint64_t pairs = 0, criterion_true = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j) {
      const auto& p1 = points[i];
      const auto& p2 = points[j];
      if (p1.is_origin() && p2.is_origin()) continue;
      ++pairs;
      const auto f = unit_pair(p1, p2);
      const bool criterion = two_term_criterion(p1, p2);
      const std::string label = f.to_string();
      if (criterion) {
        ++criterion_true;
        const auto [a, b] = minimal_balanced_pair(p1, p2);
        const unsigned long m = a + b;
        const bool nonzero = !power_integral(f, m, integrator).is_zero() || !power_integral(f, 2 * m, integrator).is_zero();
        item.expect(nonzero, label + ": criterion holds but P = M, 2M vanish");
      } else {
        for (const auto& [p, v] : power_scan(f, 8, integrator))
          item.expect(v.is_zero(), label + ": criterion fails but P = " + std::to_string(p) + " is nonzero");
      }
    }
  const FiniteFunction witness{{{HalfInt::from_twice(1), HalfInt::from_twice(1), HalfInt::from_twice(-1)}, GaussianRational(1)},
                               {{HalfInt::from_twice(1), HalfInt::from_twice(-1), HalfInt::from_twice(1)}, GaussianRational(1)}};
  const auto value = power_integral(witness, 2, integrator);
  item.expect(value == RadicalScalar(-1), "symmetric pair at P = 2 is " + value.to_string());
  item.details = {{"pairs", pairs}, {"criterion_true", criterion_true},
                  {"witness", {{"function", witness.to_string()}, {"P", 2}, {"value", value.to_string()}}}};
  return item;
}

inline SuiteItem rank_item(HaarIntegrator& integrator) {
  SuiteItem item{"three-term-rank"};
  Rng rng(0x5EED0003ULL);
  std::map<int, std::uint64_t> ranks;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<WeightPoint, 3> p;
    for (auto& q : p) {
      const auto idx = random_index(rng, HalfInt(1));
      q = {idx.m, idx.n};
    }
    if (trial % 5 == 0) p[2] = p[1] = p[0];
    const auto rc = rank_classification(p[0], p[1], p[2]);
    ++ranks[rc.rank];
    // independent rank: determinant, then whether all points coincide
    const auto& a = rc.matrix;
    const Rational det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    const int expected = det != 0 ? 3 : (p[0] == p[1] && p[1] == p[2] ? 1 : 2);
    item.expect(rc.rank == expected, "rank of " + p[0].to_string() + p[1].to_string() + p[2].to_string());
    if (rc.rank == 1) {
      item.expect(origin_in_hull(SupportHull{p[0], p[1], p[2]}) == p[0].is_origin(), "rank-1 hull " + p[0].to_string());
    }
  }
  // scans for random rank-3 functions: outside means all zero, inside means
  // nonzero by twice the minimal balanced power
  std::uint64_t rank3 = 0;
  while (rank3 < 40) {
    const auto f = random_function(rng, 3, HalfInt(1), FuzzConfig::default_pool());
    if (classify_instance(f) != CaseTag::three_term_rank_3) continue;
    ++rank3;
    const bool inside = origin_in_hull(f.hull());
    const auto base = guaranteed_nonzero_base(f);
    item.expect(inside == base.has_value(), f.to_string() + ": hull and solvability disagree");
    const unsigned long horizon = base ? 2 * *base : 8;
    bool any = false;
    for (const auto& [p, v] : power_scan(f, horizon, integrator)) any = any || !v.is_zero();
    item.expect(any == inside, f.to_string() + ": scan disagrees with hull");
  }
  item.details = {{"rank_counts", {{"1", ranks[1]}, {"2", ranks[2]}, {"3", ranks[3]}}}, {"rank3_scans", rank3}};
  return item;
}

inline SuiteItem threshold_item(HaarIntegrator& integrator) {
  SuiteItem item{"vanishing-threshold"};
  const auto f = FiniteFunction::element({HalfInt::from_twice(1), HalfInt::from_twice(1), HalfInt::from_twice(1)});
  const MatrixElementIndex h{HalfInt(1), HalfInt(-1), HalfInt(-1)};
  const auto p0 = vanishing_threshold(f.hull(), {h.m, h.n});
  item.expect(p0 == 3, "threshold of the single-term example is " + std::to_string(p0));
  const auto at2 = power_integral_with_witness(f, 2, h, integrator);
  item.expect(at2 == RadicalScalar(Rational(1, 3)), "single-term example at P = 2 is " + at2.to_string());
  for (unsigned long p = 3; p <= 12; ++p)
    item.expect(power_integral_with_witness(f, p, h, integrator).is_zero(), "single-term example at P = " + std::to_string(p));

  Rng rng(0x5EED0004ULL);
  int tested = 0;
  while (tested < 50) {
    const auto g = random_function(rng, static_cast<std::size_t>(rng.uniform_int(1, 3)), HalfInt(2),
                                   FuzzConfig::default_pool());
    if (origin_in_hull(g.hull())) continue;
    const auto w = random_index(rng, HalfInt(3));
    const auto t = vanishing_threshold(g.hull(), {w.m, w.n});
    for (unsigned long p = t; p <= t + 10; ++p)
      item.expect(power_integral_with_witness(g, p, w, integrator).is_zero(),
                  g.to_string() + " with h = " + w.to_string() + " at P = " + std::to_string(p));
    ++tested;
  }
  item.details = {{"example_threshold", p0}, {"example_value_P2", at2.to_string()}, {"random_cases", tested}};
  return item;
}

}  // namespace detail

/// Runs the exactly solvable cases: Schur orthogonality, single matrix
/// elements, the two-term criterion, three-term rank classification and the
/// vanishing threshold.
inline SuiteReport verify_paper_suite(HaarIntegrator& integrator = default_integrator()) {
  SuiteReport report;
  report.items.push_back(detail::schur_item(integrator));
  report.items.push_back(detail::single_element_item(integrator));
  report.items.push_back(detail::two_term_item(integrator));
  report.items.push_back(detail::rank_item(integrator));
  report.items.push_back(detail::threshold_item(integrator));
  return report;
}

inline Json to_json(const SuiteReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) {
    Json failures = Json::array();
    for (const auto& f : i.failures) failures.push_back(f);
    items.push_back({{"name", i.name}, {"passed", i.passed}, {"checks", i.checks}, {"failures", failures},
                     {"details", i.details}});
  }
  return {{"passed", r.passed()}, {"items", items}};
}

}  // namespace mathieu
