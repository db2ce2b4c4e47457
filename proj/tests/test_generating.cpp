#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hamfac/generating.hpp"

using namespace hamfac;

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

GridField random_w(int n, int kmax, double c2_target, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  GridField f(n);
  for (int k1 = -kmax; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double a = unif(rng), b = unif(rng);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          double ph = kTau * (k1 * double(i) / n + k2 * double(j) / n);
          f.at(i, j) += a * std::cos(ph) + b * std::sin(ph);
        }
    }
  double c2 = f.ck_norm(2);
  return f * (c2_target / c2);
}
}  // namespace

TEST_CASE("W = 0 generates the identity") {
  TorusMap phi = map_from_generating(GridField(32));
  CHECK(phi.is_identity(0.0));
}

TEST_CASE("generated map agrees with independent pointwise root-finder") {
  const int n = 64;
  const double eps = 0.01;
  // W = eps * sin(2 pi y) / (2 pi): X = x + eps cos(2 pi Y), y = Y.
  GridField w = GridField::from_function(
      n, [&](double, double y) { return eps * std::sin(kTau * y) / kTau; });
  TorusMap phi = map_from_generating(w);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    double x = unif(rng), y = unif(rng);
    // Independent oracle: bisection on g(Y) = Y + d1W(x,Y) - y; here d1W = 0,
    // so Y = y and X = x + eps cos(2 pi y). Still run the generic bisection.
    auto g = [&](double Y) { return Y - y; };
    double lo = y - 0.3, hi = y + 0.3;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if (g(lo) * g(mid) <= 0)
        hi = mid;
      else
        lo = mid;
    }
    double Y = 0.5 * (lo + hi);
    double X = x + eps * std::cos(kTau * Y);
    Vec2 d = phi.displacement_at(x, y);
    worst = std::max(worst, std::abs(x + d.x - X));
    worst = std::max(worst, std::abs(y + d.y - Y));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("generated map with mixed modes matches scalar Newton oracle") {
  const int n = 64;
  GridField w = GridField::from_function(n, [&](double x, double y) {
    return 5e-3 * std::sin(kTau * x) * std::sin(kTau * y) + 3e-3 * std::cos(kTau * (x + y));
  });
  TorusMap phi = map_from_generating(w);
  auto d1w = [&](double x, double y) {
    return 5e-3 * kTau * std::cos(kTau * x) * std::sin(kTau * y) -
           3e-3 * kTau * std::sin(kTau * (x + y));
  };
  auto d2w = [&](double x, double y) {
    return 5e-3 * kTau * std::sin(kTau * x) * std::cos(kTau * y) -
           3e-3 * kTau * std::sin(kTau * (x + y));
  };
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    double x = unif(rng), y = unif(rng);
    double Y = y;
    for (int it = 0; it < 200; ++it) {
      double r = Y + d1w(x, Y) - y;
      Y -= r * 0.7;  // damped fixed point, independent of the spectral path
      if (std::abs(r) < 1e-14) break;
    }
    double X = x + d2w(x, Y);
    Vec2 d = phi.displacement_at(x, y);
    worst = std::max(worst, std::hypot(x + d.x - X, y + d.y - Y));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("round trip W -> phi -> W at 1e-8") {
  const int n = 64;
  double worst = 0.0, symp = 0.0;
  for (unsigned seed = 0; seed < 5; ++seed) {
    GridField w = random_w(n, 5, 1e-2, 100 + seed);
    TorusMap phi = map_from_generating(w);
    symp = std::max(symp, phi.symplectic_defect());
    GeneratingFunction back = generating_from_map(phi);
    worst = std::max(worst, (back.w - w).max_abs());
  }
  CHECK(worst < 1e-8);
  CHECK(symp < 1e-8);
}

TEST_CASE("identity map has W = 0") {
  GeneratingFunction g = generating_from_map(TorusMap::identity(32));
  CHECK(g.w.max_abs() < 1e-14);
}

TEST_CASE("rigid translation is rejected with a period error") {
  TorusMap r = rotation(64, {0.1, 0.0});
  CHECK_THROWS_AS(generating_from_map(r), ToleranceError);
}

TEST_CASE("too-large W is rejected") {
  const int n = 64;
  GridField w = GridField::from_function(n, [&](double x, double y) {
    return 0.05 * std::sin(kTau * x) * std::sin(kTau * y);
  });
  // d1d2 W ~ 0.05*(2pi)^2 ~ 2.0 > regime bound
  CHECK_THROWS_AS(map_from_generating(w), RegimeError);
}
