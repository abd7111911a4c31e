// Small tour: a product integral, a power scan, a hull certificate and a
// Monte Carlo cross-check.

#include "mathieu/mathieu.hpp"

#include <iostream>

using namespace mathieu;

int main() {
  const auto half = HalfInt::from_twice(1);
  const auto up = make_index(half, half, half);
  const auto down = make_index(half, -half, -half);

  std::cout << "int t_up t_down = " << integrate_product(ProductSpec{{up, 1}, {down, 1}}).to_string() << '\n';

  const FiniteFunction f{{make_index(half, half, -half), GaussianRational(1)},
                         {make_index(half, -half, half), GaussianRational(1)}};
  std::cout << "f = " << f.to_string() << '\n';
  for (const auto& [p, value] : power_scan(f, 4)) std::cout << "  int f^" << p << " = " << value.to_string() << '\n';

  const auto verdict = hull_certificate(f.hull());
  std::cout << "origin in hull: " << (verdict.contains_origin ? "yes" : "no") << '\n';

  const auto g = FiniteFunction::element(up);
  const auto h = make_index(HalfInt(1), HalfInt(-1), HalfInt(-1));
  std::cout << "threshold for " << g.to_string() << " with h = " << h.to_string() << ": "
            << vanishing_threshold(g.hull(), {h.m, h.n}) << '\n';

  const auto mc = mc_power_integral(f, 2, 200'000, 1);
  std::cout << "Monte Carlo int f^2 ~ " << mc.mean.real() << " +- " << mc.std_error << '\n';
}
