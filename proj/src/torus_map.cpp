#include "hamfac/torus_map.hpp"

#include <cmath>
#include <stdexcept>

namespace hamfac {

double Vec2::norm() const { return std::sqrt(x * x + y * y); }

TorusMap::TorusMap(GridField u, GridField v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.n() != v_.n()) throw std::invalid_argument("displacement field resolution mismatch");
  if (!u_.all_finite() || !v_.all_finite())
    throw std::invalid_argument("non-finite displacement field");
}

TorusMap TorusMap::identity(int n) { return TorusMap(GridField(n), GridField(n)); }

bool TorusMap::is_identity(double tol) const {
  return u_.max_abs() <= tol && v_.max_abs() <= tol;
}

Vec2 TorusMap::displacement_at(double x, double y) const {
  SpectralEvaluator eu(u_), ev(v_);
  return {eu(x, y), ev(x, y)};
}

Vec2 TorusMap::apply(double x, double y) const {
  Vec2 d = displacement_at(x, y);
  double X = x + d.x, Y = y + d.y;
  return {X - std::floor(X), Y - std::floor(Y)};
}

double TorusMap::displacement_norm() const {
  double m = 0.0;
  for (int j = 0; j < n(); ++j)
    for (int i = 0; i < n(); ++i) {
      double du = u_.at(i, j), dv = v_.at(i, j);
      m = std::max(m, std::sqrt(du * du + dv * dv));
    }
  return m;
}

double TorusMap::symplectic_defect() const {
  GridField u1 = u_.derivative(1, 0), u2 = u_.derivative(0, 1);
  GridField v1 = v_.derivative(1, 0), v2 = v_.derivative(0, 1);
  double m = 0.0;
  for (int j = 0; j < n(); ++j)
    for (int i = 0; i < n(); ++i) {
      double det = (1.0 + u1.at(i, j)) * (1.0 + v2.at(i, j)) - u2.at(i, j) * v1.at(i, j);
      m = std::max(m, std::abs(det - 1.0));
    }
  return m;
}

double TorusMap::leakage_outside(const Mask& allowed) const {
  double m = 0.0;
  for (int j = 0; j < n(); ++j)
    for (int i = 0; i < n(); ++i) {
      if (allowed.get(i, j)) continue;
      double du = u_.at(i, j), dv = v_.at(i, j);
      m = std::max(m, std::sqrt(du * du + dv * dv));
    }
  return m;
}

Mask TorusMap::support_mask(double threshold) const {
  return Mask::support(u_, threshold).unite(Mask::support(v_, threshold));
}

TorusMap TorusMap::resampled(int n_new) const {
  return TorusMap(u_.resampled(n_new), v_.resampled(n_new));
}

TorusMap compose(const TorusMap& f, const TorusMap& g) {
  const int n = f.n();
  if (g.n() != n) throw std::invalid_argument("compose: resolution mismatch");
  SpectralEvaluator fu(f.u()), fv(f.v());
  GridField u(n), v(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double x = double(i) / n, y = double(j) / n;
      double gx = x + g.u().at(i, j);
      double gy = y + g.v().at(i, j);
      u.at(i, j) = g.u().at(i, j) + fu(gx, gy);
      v.at(i, j) = g.v().at(i, j) + fv(gx, gy);
    }
  }
  return TorusMap(std::move(u), std::move(v));
}

TorusMap inverse(const TorusMap& f) {
  const int n = f.n();
  SpectralEvaluator fu(f.u()), fv(f.v());
  GridField u1 = f.u().derivative(1, 0), u2 = f.u().derivative(0, 1);
  GridField v1 = f.v().derivative(1, 0), v2 = f.v().derivative(0, 1);
  SpectralEvaluator eu1(u1), eu2(u2), ev1(v1), ev2(v2);

  GridField iu(n), iv(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double X = double(i) / n, Y = double(j) / n;
      // Solve x + u(x,y) = X, y + v(x,y) = Y by Newton, seeded at (X, Y).
      double x = X, y = Y;
      for (int it = 0; it < 30; ++it) {
        double rx = x + fu(x, y) - X;
        double ry = y + fv(x, y) - Y;
        double a = 1.0 + eu1(x, y), b = eu2(x, y);
        double c = ev1(x, y), d = 1.0 + ev2(x, y);
        double det = a * d - b * c;
        double dx = (d * rx - b * ry) / det;
        double dy = (-c * rx + a * ry) / det;
        x -= dx;
        y -= dy;
        if (std::abs(dx) + std::abs(dy) < 1e-15) break;
      }
      iu.at(i, j) = x - X;
      iv.at(i, j) = y - Y;
    }
  }
  return TorusMap(std::move(iu), std::move(iv));
}

double distance_ck(const TorusMap& a, const TorusMap& b, int k) {
  if (a.n() != b.n()) throw std::invalid_argument("distance_ck: resolution mismatch");
  // Reduce the C0 part mod 1 so that rotations compare correctly.
  const int n = a.n();
  GridField du(n), dv(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      du.at(i, j) = torus_delta(a.u().at(i, j), b.u().at(i, j));
      dv.at(i, j) = torus_delta(a.v().at(i, j), b.v().at(i, j));
    }
  double m = std::max(du.max_abs(), dv.max_abs());
  for (int ax = 0; ax <= k; ++ax)
    for (int ay = 0; ay + ax <= k; ++ay) {
      if (ax == 0 && ay == 0) continue;
      m = std::max(m, du.derivative(ax, ay).max_abs());
      m = std::max(m, dv.derivative(ax, ay).max_abs());
    }
  return m;
}

TorusMap rotation(int n, Vec2 alpha) {
  GridField u(n, alpha.x), v(n, alpha.y);
  return TorusMap(std::move(u), std::move(v));
}

TorusMap sample_map(int n, const std::function<Vec2(Vec2)>& point_map) {
  GridField u(n), v(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec2 p{double(i) / n, double(j) / n};
      Vec2 q = point_map(p);
      u.at(i, j) = torus_delta(q.x, p.x);
      v.at(i, j) = torus_delta(q.y, p.y);
    }
  return TorusMap(std::move(u), std::move(v));
}

void require_near_identity(const TorusMap& m, const char* where) {
  double d = m.displacement_norm();
  if (d >= 0.25)
    throw RegimeError(std::string(where) + ": map leaves the near-identity regime", d);
}

}  // namespace hamfac
