#pragma once

// Exact convex-hull queries on the weight support {(m_i, n_i)} of a finite
// function. All predicates are evaluated over the rationals; the hull of
// finitely many rational points is closed, and a point on the boundary counts
// as contained.

#include "mathieu/exact_scalar.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mathieu {

struct WeightPoint {
  HalfInt m;
  HalfInt n;
  bool is_origin() const { return m == HalfInt(0) && n == HalfInt(0); }
  std::string to_string() const { return "(" + m.to_string() + "," + n.to_string() + ")"; }
  friend bool operator==(const WeightPoint&, const WeightPoint&) = default;
  friend auto operator<=>(const WeightPoint&, const WeightPoint&) = default;
};

class SupportHull {
 public:
  explicit SupportHull(std::vector<WeightPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("support hull needs at least one point");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }
  SupportHull(std::initializer_list<WeightPoint> points) : SupportHull(std::vector<WeightPoint>(points)) {}

  /// Distinct points in ascending (m, n) order.
  const std::vector<WeightPoint>& points() const { return points_; }

 private:
  std::vector<WeightPoint> points_;
};

/// Line u*m + v*n >= rhs holding at every support point, with rhs > 0.
struct Separator {
  Rational u;
  Rational v;
  Rational rhs;
};

struct HullVerdict {
  bool contains_origin = false;
  /// Convex weights, aligned with SupportHull::points(), when inside.
  std::vector<Rational> weights;
  /// Separating line when outside.
  std::optional<Separator> separator;
};

namespace detail {

// Points scaled by 2 so every coordinate is an integer.
struct Lattice {
  Integer x;
  Integer y;
};

inline Lattice lattice(const WeightPoint& p) {
  return {Integer(static_cast<long>(p.m.twice())), Integer(static_cast<long>(p.n.twice()))};
}

inline Integer cross(const Lattice& a, const Lattice& b) { return a.x * b.y - a.y * b.x; }
inline Integer dot(const Lattice& a, const Lattice& b) { return a.x * b.x + a.y * b.y; }
inline Lattice minus(const Lattice& a, const Lattice& b) { return {a.x - b.x, a.y - b.y}; }

inline std::optional<std::vector<Rational>> caratheodory_weights(const std::vector<Lattice>& pts) {
  const std::size_t k = pts.size();
  std::vector<Rational> w(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    if (pts[i].x == 0 && pts[i].y == 0) {
      w[i] = 1;
      return w;
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cross(pts[i], pts[j]) != 0 || dot(pts[i], pts[j]) >= 0) continue;
      // 0 = lambda p_i + (1 - lambda) p_j
      const Lattice d = minus(pts[i], pts[j]);
      const Rational lambda = d.x != 0 ? make_rational(-pts[j].x, d.x) : make_rational(-pts[j].y, d.y);
      w[i] = lambda;
      w[j] = 1 - lambda;
      return w;
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        const Integer area = cross(minus(pts[j], pts[i]), minus(pts[l], pts[i]));
        if (area == 0) continue;
        const Integer bi = cross(pts[j], pts[l]);
        const Integer bj = cross(pts[l], pts[i]);
        const Integer bl = cross(pts[i], pts[j]);
        auto same_sign_or_zero = [&](const Integer& b) { return b == 0 || (b > 0) == (area > 0); };
        if (!same_sign_or_zero(bi) || !same_sign_or_zero(bj) || !same_sign_or_zero(bl)) continue;
        w[i] = make_rational(bi, area);
        w[j] = make_rational(bj, area);
        w[l] = make_rational(bl, area);
        return w;
      }
  return std::nullopt;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace detail

/// Decides whether (0,0) lies in the closed convex hull and returns a
/// rational certificate either way.
inline HullVerdict hull_certificate(const SupportHull& hull) {
  std::vector<detail::Lattice> pts;
  for (const auto& p : hull.points()) pts.push_back(detail::lattice(p));

  HullVerdict verdict;
  if (auto w = detail::caratheodory_weights(pts)) {
    verdict.contains_origin = true;
    verdict.weights = std::move(*w);
    return verdict;
  }

  // The closest hull point to the origin is a vertex or lies on an edge, so
  // one of these directions separates.
  std::vector<detail::Lattice> directions(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const detail::Lattice d = detail::minus(pts[j], pts[i]);
      directions.push_back({-d.y, d.x});
      directions.push_back({d.y, -d.x});
    }
  for (auto d : directions) {
    Integer lowest = detail::dot(d, pts.front());
    for (const auto& p : pts) lowest = std::min(lowest, Integer(detail::dot(d, p)));
    if (lowest <= 0) continue;
    const Integer g = detail::gcd(d.x, d.y);
    d.x /= g;
    d.y /= g;
    // dot was taken against doubled coordinates
    verdict.separator = Separator{Rational(d.x), Rational(d.y), make_rational(lowest, 2 * g)};
    return verdict;
  }
  throw std::logic_error("origin outside hull but no separating direction found");
}

inline bool origin_in_hull(const SupportHull& hull) { return hull_certificate(hull).contains_origin; }

/// det[[m1, m2], [n1, n2]] = 0 and m1 m2 <= 0 and n1 n2 <= 0, i.e. the origin
/// lies on the segment from p1 to p2.
inline bool two_term_criterion(const WeightPoint& p1, const WeightPoint& p2) {
  if (p1.is_origin() && p2.is_origin())
    throw std::invalid_argument("two-term criterion needs a nonzero coordinate");
  const auto a = detail::lattice(p1), b = detail::lattice(p2);
  return detail::cross(a, b) == 0 && a.x * b.x <= 0 && a.y * b.y <= 0;
}

/// Exact rank of a small rational matrix by fraction-free row reduction.
template <std::size_t Rows, std::size_t Cols>
int exact_rank(std::array<std::array<Rational, Cols>, Rows> a) {
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < Cols && row < Rows; ++col) {
    std::size_t pivot = row;
    while (pivot < Rows && a[pivot][col] == 0) ++pivot;
    if (pivot == Rows) continue;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = row + 1; r < Rows; ++r) {
      if (a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[row][col];
      for (std::size_t c = col; c < Cols; ++c) a[r][c] -= factor * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

struct RankClass {
  int rank = 0;
  std::array<std::array<Rational, 3>, 3> matrix;
};

/// Rank of M = [(1,1,1); (m1,m2,m3); (n1,n2,n3)].
inline RankClass rank_classification(const WeightPoint& p1, const WeightPoint& p2, const WeightPoint& p3) {
  RankClass rc;
  const std::array<WeightPoint, 3> p{p1, p2, p3};
  for (std::size_t i = 0; i < 3; ++i) {
    rc.matrix[0][i] = 1;
    rc.matrix[1][i] = p[i].m.to_rational();
    rc.matrix[2][i] = p[i].n.to_rational();
  }
  rc.rank = exact_rank(rc.matrix);
  return rc;
}

/// Vertices of the convex hull in counter-clockwise order (Andrew's monotone
/// chain); collinear boundary points are dropped. One or two vertices for
/// degenerate inputs.
inline std::vector<WeightPoint> convex_hull_vertices(const SupportHull& hull) {
  const auto& pts = hull.points();  // sorted and distinct
  if (pts.size() <= 2) return pts;
  auto turn = [](const WeightPoint& o, const WeightPoint& a, const WeightPoint& b) {
    return detail::cross(detail::minus(detail::lattice(a), detail::lattice(o)),
                         detail::minus(detail::lattice(b), detail::lattice(o)));
  };
  std::vector<WeightPoint> chain(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k - 1);
  return chain;
}

/// Least P0 >= 1 such that (-a/P, -b/P) lies outside the hull for every
/// integer P >= P0. The set of t > 0 with (-a/t, -b/t) in the hull is an
/// interval [t_lo, t_hi] (possibly empty); P0 is one more than the largest
/// integer in it, or 1 when it holds none.
inline unsigned long vanishing_threshold(const SupportHull& hull, const WeightPoint& witness) {
  if (origin_in_hull(hull))
    throw PreconditionViolation("origin lies in the support hull; no finite threshold guaranteed");
  const detail::Lattice w{Integer(static_cast<long>(-witness.m.twice())), Integer(static_cast<long>(-witness.n.twice()))};
  if (w.x == 0 && w.y == 0) return 1;

  // Parameters s > 0 with s*w in the hull; the ray meets the hull boundary at
  // its extreme parameters.
  std::vector<Rational> hits;
  const auto vertices = convex_hull_vertices(hull);
  std::vector<detail::Lattice> v;
  for (const auto& p : vertices) v.push_back(detail::lattice(p));
  const Integer ww = detail::dot(w, w);
  for (const auto& p : v)
    if (detail::cross(p, w) == 0 && detail::dot(p, w) > 0) hits.push_back(make_rational(detail::dot(p, w), ww));
  const std::size_t edges = v.size() == 1 ? 0 : (v.size() == 2 ? 1 : v.size());
  for (std::size_t e = 0; e < edges; ++e) {
    const auto& p = v[e];
    const auto d = detail::minus(v[(e + 1) % v.size()], p);
    const Integer denom = detail::cross(w, d);
    if (denom == 0) continue;
    // s w = p + u d
    const Rational s = make_rational(detail::cross(p, d), denom);
    const Rational u = make_rational(detail::cross(p, w), denom);
    if (s > 0 && u >= 0 && u <= 1) hits.push_back(s);
  }
  if (hits.empty()) return 1;
  const Rational s_lo = *std::min_element(hits.begin(), hits.end());
  const Rational s_hi = *std::max_element(hits.begin(), hits.end());
  const Rational t_hi = 1 / s_lo;
  const Rational t_lo = 1 / s_hi;
  Integer largest;
  mpz_fdiv_q(largest.get_mpz_t(), t_hi.get_num_mpz_t(), t_hi.get_den_mpz_t());
  if (largest < 1 || Rational(largest) < t_lo) return 1;
  if (!largest.fits_ulong_p()) throw std::overflow_error("vanishing threshold exceeds unsigned long");
  return largest.get_ui() + 1;
}

}  // namespace mathieu
