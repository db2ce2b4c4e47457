#include "hamfac/flows.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hamfac {

namespace {
// C^inf step: 1 for u <= 0, 0 for u >= 1.
double smooth_step_down(double u) {
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  return b / (a + b);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}
}  // namespace

double RadialProfile::integral_dA() const {
  const double r_max = outer_radius();
  return simpson([this](double r) { return h(r) * 2.0 * std::numbers::pi * r; }, 0.0, r_max,
                 4096);
}

BumpProfile::BumpProfile(double radius, double amplitude)
    : radius_(radius), amplitude_(amplitude) {
  if (radius <= 0.0 || radius >= 0.5)
    throw std::invalid_argument("bump radius must lie in (0, 1/2)");
}

BumpProfile BumpProfile::with_mass(double radius, double mass) {
  BumpProfile unit(radius, 1.0);
  double m = unit.integral_dA();
  return BumpProfile(radius, mass / m);
}

double BumpProfile::h(double r) const {
  double s = r / radius_;
  if (s >= 1.0) return 0.0;
  return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double BumpProfile::ang(double r) const {
  // -h'(r)/r, removable singularity at r = 0.
  double s = r / radius_;
  if (s >= 1.0) return 0.0;
  double q = 1.0 - s * s;
  return amplitude_ * std::exp(1.0 - 1.0 / q) * (2.0 / (radius_ * radius_)) / (q * q);
}

GaussianBumpProfile::GaussianBumpProfile(double radius, double amplitude, double width_factor)
    : radius_(radius), amplitude_(amplitude), sigma_(radius / width_factor) {
  if (radius <= 0.0 || radius >= 0.5)
    throw std::invalid_argument("bump radius must lie in (0, 1/2)");
}

GaussianBumpProfile GaussianBumpProfile::with_mass(double radius, double mass) {
  GaussianBumpProfile unit(radius, 1.0);
  double m = unit.integral_dA();
  return GaussianBumpProfile(radius, mass / m);
}

double GaussianBumpProfile::h(double r) const {
  if (r >= radius_) return 0.0;
  double g = std::exp(-r * r / (2.0 * sigma_ * sigma_));
  double cut = std::exp(-radius_ * radius_ / (2.0 * sigma_ * sigma_));
  return amplitude_ * (g - cut);
}

double GaussianBumpProfile::ang(double r) const {
  if (r >= radius_) return 0.0;
  return amplitude_ * std::exp(-r * r / (2.0 * sigma_ * sigma_)) / (sigma_ * sigma_);
}

RingBumpProfile::RingBumpProfile(double r0, double width, double cut_factor, double amplitude)
    : r0_(r0), width_(width), cut_(width * cut_factor), amplitude_(amplitude) {
  if (r0 - cut_ <= 0.0 || r0 + cut_ >= 0.5)
    throw std::invalid_argument("ring bump must fit in an annulus of the half-ball");
}

RingBumpProfile RingBumpProfile::with_mass(double r0, double width, double cut_factor,
                                           double mass) {
  RingBumpProfile unit(r0, width, cut_factor, 1.0);
  double m = unit.integral_dA();
  return RingBumpProfile(r0, width, cut_factor, mass / m);
}

double RingBumpProfile::h(double r) const {
  double s = (r - r0_) / width_;
  if (std::abs(r - r0_) >= cut_) return 0.0;
  double c = cut_ / width_;
  return amplitude_ * (std::exp(-0.5 * s * s) - std::exp(-0.5 * c * c));
}

double RingBumpProfile::ang(double r) const {
  double s = (r - r0_) / width_;
  if (std::abs(r - r0_) >= cut_) return 0.0;
  return amplitude_ * std::exp(-0.5 * s * s) * s / (width_ * r);
}

RigidRotationProfile::RigidRotationProfile(double theta, double rho, double margin)
    : theta_(theta), rho_(rho), margin_(margin) {
  if (rho <= 0.0 || margin <= 0.0 || rho + margin >= 0.5)
    throw std::invalid_argument("rigid rotation zone must fit in a half-ball");
}

double RigidRotationProfile::ang(double r) const {
  return theta_ * smooth_step_down((r - rho_) / margin_);
}

double RigidRotationProfile::h(double r) const {
  if (r >= rho_ + margin_) return 0.0;
  return simpson([this](double s) { return s * ang(s); }, r, rho_ + margin_, 512);
}

Vec2 radial_flow_point(Vec2 center, const RadialProfile& profile, double t, Vec2 p) {
  double dx = torus_delta(p.x, center.x);
  double dy = torus_delta(p.y, center.y);
  double r = std::sqrt(dx * dx + dy * dy);
  if (r >= profile.outer_radius()) return p;
  double a = t * profile.ang(r);
  double c = std::cos(a), s = std::sin(a);
  double nx = c * dx - s * dy;
  double ny = s * dx + c * dy;
  double X = center.x + nx, Y = center.y + ny;
  return {X - std::floor(X), Y - std::floor(Y)};
}

TorusMap radial_flow(int n, Vec2 center, const RadialProfile& profile, double t) {
  if (profile.outer_radius() >= 0.5)
    throw RegimeError("radial_flow: support too large", profile.outer_radius());
  return sample_map(n, [&](Vec2 p) { return radial_flow_point(center, profile, t, p); });
}

double radial_flow_calabi(const RadialProfile& profile, double t) {
  return t * profile.integral_dA();
}

void enclosing_disk(const Region& r, int n, Vec2* center, double* radius) {
  if (r.kind == Region::Kind::Ball) {
    *center = {r.cx, r.cy};
    *radius = r.radius;
    return;
  }
  Mask m = r.to_mask(n);
  if (m.empty()) throw std::invalid_argument("enclosing_disk: empty mask");
  // Seed at any cell, then shrink toward the farthest point a few times.
  Vec2 c{};
  bool found = false;
  for (int j = 0; j < n && !found; ++j)
    for (int i = 0; i < n && !found; ++i)
      if (m.get(i, j)) {
        c = {double(i) / n, double(j) / n};
        found = true;
      }
  double rad = 0.0;
  for (int iter = 0; iter < 40; ++iter) {
    double far = 0.0;
    Vec2 fp = c;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!m.get(i, j)) continue;
        double d = torus_dist(c.x, c.y, double(i) / n, double(j) / n);
        if (d > far) {
          far = d;
          fp = {double(i) / n, double(j) / n};
        }
      }
    rad = far;
    double step = 0.5 * far;
    if (step < 0.25 / n) break;
    c = {c.x + torus_delta(fp.x, c.x) * 0.5, c.y + torus_delta(fp.y, c.y) * 0.5};
    c = {c.x - std::floor(c.x), c.y - std::floor(c.y)};
  }
  *center = c;
  *radius = rad + 1.0 / n;  // cell slack
}

CutoffTranslation cutoff_translation(int n, Vec2 alpha, const Region& carrier,
                                     const CutoffTranslationOptions& opt) {
  CutoffTranslation out;
  const double amag = alpha.norm();
  if (amag == 0.0) {
    out.map = TorusMap::identity(n);
    out.point_map = [](Vec2 p) { return p; };
    return out;
  }

  Vec2 c0;
  double rho0 = 0.0;
  enclosing_disk(carrier, n, &c0, &rho0);
  // Hull of carrier and translated carrier.
  Vec2 ch{c0.x + alpha.x / 2, c0.y + alpha.y / 2};
  double rho_h = rho0 + amag / 2 + opt.safety;
  out.hull_center = ch;
  out.hull_radius = rho_h;

  double lever = std::max(opt.lever, 2.2 * amag);  // keep the rotation angle moderate
  double theta = 2.0 * std::asin(std::min(1.0, amag / (2.0 * lever)));
  // Solve (I - R_{-theta}) d = alpha.
  double cth = std::cos(theta), sth = std::sin(theta);
  double det = 2.0 * (1.0 - cth);
  Vec2 d{((1.0 - cth) * alpha.x + sth * alpha.y) / det,
         (-sth * alpha.x + (1.0 - cth) * alpha.y) / det};
  Vec2 c1{ch.x - d.x / 2, ch.y - d.y / 2};
  Vec2 c2{ch.x + d.x / 2, ch.y + d.y / 2};
  const double half_lever = 0.5 * d.norm();

  // Zone 1 must rotate the carrier rigidly; zone 2 the (slightly moved)
  // intermediate image of the carrier.
  double rho1 = rho_h + half_lever;
  double rho2 = rho_h + half_lever + (amag / lever) * rho1 + opt.safety;
  double support_radius = half_lever + std::max(rho1, rho2) + opt.margin;
  if (support_radius > opt.max_support)
    throw RegimeError("cutoff_translation: carrier too large for the torus", support_radius);

  RigidRotationProfile p1(theta, rho1, opt.margin);
  RigidRotationProfile p2(-theta, rho2, opt.margin);

  auto pm = [c1, c2, p1, p2](Vec2 p) {
    Vec2 q = radial_flow_point(c1, p1, 1.0, p);
    return radial_flow_point(c2, p2, 1.0, q);
  };
  out.point_map = pm;
  out.map = sample_map(n, pm);
  out.support_radius = support_radius;
  out.rot_center1 = c1;
  out.rot_center2 = c2;
  out.theta = theta;
  out.rho1 = rho1;
  out.rho2 = rho2;
  out.margin = opt.margin;

  // Certify exactness on the carrier.
  Mask cm = carrier.to_mask(n);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!cm.get(i, j)) continue;
      Vec2 p{double(i) / n, double(j) / n};
      Vec2 q = pm(p);
      worst = std::max(worst, std::abs(torus_delta(q.x, p.x + alpha.x)));
      worst = std::max(worst, std::abs(torus_delta(q.y, p.y + alpha.y)));
    }
  out.carrier_defect = worst;
  return out;
}

}  // namespace hamfac
