#pragma once

#include <array>
#include <functional>
#include <memory>

#include "hamfac/grid_field.hpp"
#include "hamfac/region.hpp"

namespace hamfac {

struct Vec2 {
  double x = 0.0, y = 0.0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const;
};

// Thrown when an input leaves the near-identity regime an operation needs.
struct RegimeError : std::runtime_error {
  double defect;
  RegimeError(const std::string& what, double defect_) : std::runtime_error(what), defect(defect_) {}
};

// Thrown when a computed quantity misses its tolerance.
struct ToleranceError : std::runtime_error {
  double defect;
  ToleranceError(const std::string& what, double defect_)
      : std::runtime_error(what), defect(defect_) {}
};

// Area-preserving map of T^2 stored as periodic displacement fields:
// phi(x, y) = (x + u(x,y), y + v(x,y)) mod 1.
class TorusMap {
public:
  TorusMap() = default;
  TorusMap(GridField u, GridField v);

  static TorusMap identity(int n);

  int n() const { return u_.n(); }
  const GridField& u() const { return u_; }
  const GridField& v() const { return v_; }

  bool is_identity(double tol = 0.0) const;

  Vec2 displacement_at(double x, double y) const;  // spectral evaluation
  Vec2 apply(double x, double y) const;            // phi(x,y) mod 1

  // C0 size of the displacement.
  double displacement_norm() const;
  // max over grid of |det Dphi - 1| via spectral derivatives.
  double symplectic_defect() const;
  // Largest displacement magnitude at grid points outside the mask.
  double leakage_outside(const Mask& allowed) const;
  Mask support_mask(double threshold = 1e-12) const;

  TorusMap resampled(int n_new) const;

private:
  GridField u_, v_;
};

// compose(f, g) = f after g, i.e. (f o g)(p) = f(g(p)).
TorusMap compose(const TorusMap& f, const TorusMap& g);
TorusMap inverse(const TorusMap& f);

// C^k distance: max over derivative orders <= k of the grid max-norm of the
// displacement difference, reduced mod 1 componentwise.
double distance_ck(const TorusMap& a, const TorusMap& b, int k);

// Rigid rotation [p] -> [p + alpha].
TorusMap rotation(int n, Vec2 alpha);

// Samples an analytic point map p -> F(p) into displacement fields.
TorusMap sample_map(int n, const std::function<Vec2(Vec2)>& point_map);

// Guard: displacement C0 norm must stay below the graph regime bound (1/4).
void require_near_identity(const TorusMap& m, const char* where);

}  // namespace hamfac
