#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hamfac/calabi.hpp"
#include "hamfac/map_chain.hpp"
#include "hamfac/flows.hpp"

using namespace hamfac;

TEST_CASE("radial flow matches RK4 integration of the Hamiltonian ODE") {
  const double R = 0.3;
  BumpProfile prof(R, 3e-3);
  Vec2 c{0.5, 0.5};
  const double T = 1.0;

  // dH = i_X omega => X = (d2 h, -d1 h), radial h.
  auto vf = [&](Vec2 p) -> Vec2 {
    double dx = p.x - c.x, dy = p.y - c.y;
    double r = std::hypot(dx, dy);
    if (r >= R || r == 0.0) return {0.0, 0.0};
    double a = prof.ang(r);  // -h'/r
    return {a * -dy * -1.0, a * dx * -1.0};  // X = (h' dy / r, -h' dx / r) = (-a dy, a dx)... see below
  };
  // Written out: h' = -r * ang, X = (h'/r dy, -h'/r dx) = (-ang*dy, ang*dx).
  auto vf2 = [&](Vec2 p) -> Vec2 {
    double dx = p.x - c.x, dy = p.y - c.y;
    double r = std::hypot(dx, dy);
    if (r >= R) return {0.0, 0.0};
    double a = prof.ang(r);
    return {-a * dy, a * dx};
  };

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(0.25, 0.75);
  double worst = 0.0;
  for (int t = 0; t < 25; ++t) {
    Vec2 p{unif(rng), unif(rng)};
    Vec2 q = p;
    const int steps = 4000;
    double h = T / steps;
    for (int s = 0; s < steps; ++s) {
      Vec2 k1 = vf2(q);
      Vec2 k2 = vf2({q.x + 0.5 * h * k1.x, q.y + 0.5 * h * k1.y});
      Vec2 k3 = vf2({q.x + 0.5 * h * k2.x, q.y + 0.5 * h * k2.y});
      Vec2 k4 = vf2({q.x + h * k3.x, q.y + h * k3.y});
      q.x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
      q.y += h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    }
    Vec2 exact = radial_flow_point(c, prof, T, p);
    worst = std::max(worst, torus_dist(exact.x, exact.y, q.x, q.y));
  }
  (void)vf;
  CHECK(worst < 1e-9);
}

TEST_CASE("radial flow group law is exact") {
  const int n = 64;
  GaussianBumpProfile prof(0.3, 2e-3);
  TorusMap a = radial_flow(n, {0.5, 0.5}, prof, 0.3);
  TorusMap b = radial_flow(n, {0.5, 0.5}, prof, 0.45);
  TorusMap ab = radial_flow(n, {0.5, 0.5}, prof, 0.75);
  // Composition via the analytic point maps, sampled once.
  TorusMap comp = sample_map(n, [&](Vec2 p) {
    return radial_flow_point({0.5, 0.5}, prof, 0.3, radial_flow_point({0.5, 0.5}, prof, 0.45, p));
  });
  CHECK(distance_ck(comp, ab, 0) < 1e-12);
  // Grid composition is limited by the sampled fields' spectral tails.
  CHECK(distance_ck(compose(a, b), ab, 0) < 1e-8);
}

TEST_CASE("normalized radial flow has Cal(phi^t) = t") {
  const int n = 64;
  GaussianBumpProfile prof = GaussianBumpProfile::with_mass(0.35, 1.0);
  CHECK(std::abs(prof.integral_dA() - 1.0) < 1e-10);
  Region u = Region::ball(0.5, 0.5, 0.4);
  for (double t : {0.25, 1.0}) {
    // Quadrature through the isotopy definition (autonomous Hamiltonian).
    GridField h = GridField::from_function(
        n, [&](double x, double y) { return prof.h(torus_dist(x, y, 0.5, 0.5)); });
    HamiltonianPath path = HamiltonianPath::autonomous(h * t, 3);
    double cal = calabi_isotopy(path, u);
    CHECK(std::abs(cal - t) < 1e-8);
    CHECK(std::abs(radial_flow_calabi(prof, t) - t) < 1e-8);
  }
}

TEST_CASE("calabi_isotopy additivity under concatenation") {
  const int n = 32;
  GaussianBumpProfile p1 = GaussianBumpProfile::with_mass(0.3, 0.7);
  GaussianBumpProfile p2 = GaussianBumpProfile::with_mass(0.25, -0.2);
  GridField h1 = GridField::from_function(
      n, [&](double x, double y) { return p1.h(torus_dist(x, y, 0.5, 0.5)); });
  GridField h2 = GridField::from_function(
      n, [&](double x, double y) { return p2.h(torus_dist(x, y, 0.5, 0.5)); });
  Region u = Region::ball(0.5, 0.5, 0.42);
  HamiltonianPath a = HamiltonianPath::autonomous(h1, 5);
  HamiltonianPath b = HamiltonianPath::autonomous(h2, 5);
  double ca = calabi_isotopy(a, u), cb = calabi_isotopy(b, u);
  double cc = calabi_isotopy(HamiltonianPath::concatenate(a, b), u);
  CHECK(std::abs(cc - ca - cb) < 1e-10);
}

TEST_CASE("kappa calibration confirms the frozen constant") {
  // The W-integral model is first-order in the map size; calibration runs in
  // the linear regime where deviations sit far below the 1e-6 duty tolerance.
  KappaCalibration k = calibrate_kappa(64);
  CHECK(std::abs(k.kappa - calabi_kappa()) < 1e-3);
  CHECK(k.spread < 2e-3);
}

TEST_CASE("calabi_from_w agrees with the isotopy quadrature on random maps") {
  const int n = 64;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Region u = Region::ball(0.5, 0.5, 0.33);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    // Random W supported in the ball: bump envelope times low-mode noise.
    GridField w = GridField::from_function(n, [&](double x, double y) {
      double r = torus_dist(x, y, 0.5, 0.5);
      if (r >= 0.3) return 0.0;
      double env = std::exp(1.0 - 1.0 / (1.0 - (r / 0.3) * (r / 0.3)));
      return env;
    });
    GridField noise(n);
    for (int k1 = -2; k1 <= 2; ++k1)
      for (int k2 = -2; k2 <= 2; ++k2) {
        double a = unif(rng), b = unif(rng);
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            double ph = 2 * std::numbers::pi * (k1 * double(i) / n + k2 * double(j) / n);
            noise.at(i, j) += a * std::cos(ph) + b * std::sin(ph);
          }
      }
    w = w.pointwise_mul(noise) * (1e-4 / std::max(1e-12, w.pointwise_mul(noise).max_abs()));
    double direct = calabi_from_w(w, u);
    HamiltonianPath path = generating_line_isotopy(w, u, 5);
    double quad = calabi_isotopy(path, u, 2, 1e-6);
    worst = std::max(worst, std::abs(direct - quad));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("cutoff translation is exact on its carrier and supported") {
  const int n = 64;
  Vec2 alpha{0.02, 0.0};
  Region carrier = Region::ball(0.5, 0.5, 0.1);
  CutoffTranslation ct = cutoff_translation(n, alpha, carrier);
  CHECK(ct.carrier_defect < 1e-10);
  // Support confined to the reported disk.
  Mask sup = Mask::disk(n, ct.hull_center.x, ct.hull_center.y, ct.support_radius + 2.0 / n);
  CHECK(ct.map.leakage_outside(sup) == 0.0);
  // alpha = 0 -> identity
  CHECK(cutoff_translation(n, {0.0, 0.0}, carrier).map.is_identity());
  // carrier too large -> regime error
  CHECK_THROWS_AS(cutoff_translation(n, {0.3, 0.0}, Region::ball(0.5, 0.5, 0.4)), RegimeError);
}

TEST_CASE("conjugation by a cutoff translation relocates supports cleanly") {
  const int n = 128;
  // Small smooth map supported in a ball; conjugate by a cutoff translation
  // whose rigid zone covers that ball. The conjugate is the translated copy.
  GaussianBumpProfile prof(0.2, 1e-3, 5.5);
  Vec2 c{0.4, 0.6};
  TorusMap psi = radial_flow(n, c, prof, 1.0);
  Vec2 alpha{0.015, -0.005};
  CutoffTranslation ct = cutoff_translation(n, alpha, Region::ball(c.x, c.y, 0.22));
  MapChain ct_chain = compose(MapChain::from_radial(RadialFactor::rigid(
                                  ct.rot_center2, -ct.theta, ct.rho2, ct.margin, 1.0)),
                              MapChain::from_radial(RadialFactor::rigid(
                                  ct.rot_center1, ct.theta, ct.rho1, ct.margin, 1.0)));
  MapChain conj_chain =
      compose(compose(ct_chain, MapChain::from_map(psi)), ct_chain.inverse());
  TorusMap conj = conj_chain.sample(n);
  TorusMap expected = radial_flow(n, {c.x + alpha.x, c.y + alpha.y}, prof, 1.0);
  CHECK(distance_ck(conj, expected, 0) < 1e-8);
  // The conjugate is spectrally clean: its generating function extracts fine.
  GeneratingFunction g = generating_from_map(conj);
  Region u = Region::ball(c.x + alpha.x, c.y + alpha.y, 0.22);
  double cal = calabi_from_w(g, u);
  GeneratingFunction gd = generating_from_map(psi);
  double cal_direct = calabi_from_w(gd, Region::ball(c.x, c.y, 0.22));
  CHECK(std::abs(cal - cal_direct) < 1e-9);
}
