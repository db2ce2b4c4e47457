#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hamfac/grid_field.hpp"
#include "hamfac/region.hpp"
#include "hamfac/torus_map.hpp"

using namespace hamfac;

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

GridField random_bandlimited(int n, int kmax, double amp, unsigned seed) {
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
          f.at(i, j) += amp * (a * std::cos(ph) + b * std::sin(ph));
        }
    }
  return f;
}
}  // namespace

TEST_CASE("spectral derivative matches analytic derivative") {
  const int n = 64;
  GridField f = GridField::from_function(
      n, [](double x, double y) { return std::sin(kTau * x) * std::cos(2 * kTau * y); });
  GridField fx = f.derivative(1, 0);
  GridField fxy = f.derivative(1, 1);
  double e1 = 0.0, e2 = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x = double(i) / n, y = double(j) / n;
      e1 = std::max(e1, std::abs(fx.at(i, j) - kTau * std::cos(kTau * x) * std::cos(2 * kTau * y)));
      e2 = std::max(e2, std::abs(fxy.at(i, j) +
                                 kTau * 2 * kTau * std::cos(kTau * x) * std::sin(2 * kTau * y)));
    }
  CHECK(e1 < 1e-10);
  CHECK(e2 < 1e-9);
}

TEST_CASE("spectral evaluator agrees with direct mode summation") {
  const int n = 32;
  GridField f = random_bandlimited(n, 5, 0.3, 12345);
  SpectralEvaluator ev(f);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 60; ++t) {
    double x = unif(rng), y = unif(rng);
    double a = ev(x, y);
    double b = SpectralEvaluator::evaluate_direct(f, x, y);
    worst = std::max(worst, std::abs(a - b));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("evaluator reproduces grid samples") {
  const int n = 64;
  GridField f = random_bandlimited(n, 9, 0.1, 4242);
  SpectralEvaluator ev(f);
  double worst = 0.0;
  for (int j = 0; j < n; j += 7)
    for (int i = 0; i < n; i += 5)
      worst = std::max(worst, std::abs(ev(double(i) / n, double(j) / n) - f.at(i, j)));
  CHECK(worst < 1e-11);
}

TEST_CASE("compose with inverse returns to identity") {
  const int n = 64;
  GridField u = random_bandlimited(n, 4, 1e-3, 7);
  GridField v = random_bandlimited(n, 4, 1e-3, 8);
  TorusMap phi(u, v);
  TorusMap id_check = compose(phi, inverse(phi));
  CHECK(distance_ck(id_check, TorusMap::identity(n), 0) < 1e-9);
}

TEST_CASE("compose(id, phi) = phi exactly") {
  const int n = 32;
  TorusMap phi(random_bandlimited(n, 3, 1e-2, 5), random_bandlimited(n, 3, 1e-2, 6));
  TorusMap lhs = compose(TorusMap::identity(n), phi);
  CHECK(distance_ck(lhs, phi, 0) < 1e-13);
}

TEST_CASE("rotation group law and distance") {
  const int n = 32;
  TorusMap ra = rotation(n, {0.1, 0.2});
  TorusMap rb = rotation(n, {0.05, -0.03});
  TorusMap rab = compose(ra, rb);
  CHECK(distance_ck(rab, rotation(n, {0.15, 0.17}), 0) < 1e-12);
  CHECK(distance_ck(rotation(n, {0.1, 0.2}), TorusMap::identity(n), 0) ==
        doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("mask morphology and components") {
  Mask d = Mask::disk(32, 0.5, 0.5, 0.2);
  CHECK(d.dilated(1).contains(d));
  CHECK(d.contains(d.eroded(1)));
  int nc = 0;
  d.components(&nc);
  CHECK(nc == 1);
  Mask two = d.unite(Mask::disk(32, 0.05, 0.05, 0.1));
  two.components(&nc);
  CHECK(nc == 2);
}
