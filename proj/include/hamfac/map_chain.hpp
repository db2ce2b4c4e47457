#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "hamfac/flows.hpp"
#include "hamfac/torus_map.hpp"

namespace hamfac {

// Closed-form radial rotation factor (time-t flow of a radial Hamiltonian).
// Stored by parameters so it stays exact and serializable.
struct RadialFactor {
  enum class Profile { Bump, Gauss, Ring, Rigid };
  Profile profile = Profile::Gauss;
  Vec2 center;
  double t = 1.0;
  // Bump/Gauss: p0 = radius, p1 = amplitude. Rigid: p0 = theta, p1 = rho,
  // p2 = margin. Ring: p0 = r0, p1 = width, p2 = cut factor, p3 = amplitude.
  double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;

  Vec2 apply(Vec2 p) const;
  RadialFactor inverted() const;
  double outer_radius() const;
  std::unique_ptr<RadialProfile> make_profile() const;

  static RadialFactor bump(Vec2 center, double radius, double amplitude, double t);
  static RadialFactor gauss(Vec2 center, double radius, double amplitude, double t);
  static RadialFactor ring(Vec2 center, double r0, double width, double cut_factor,
                           double amplitude, double t);
  static RadialFactor rigid(Vec2 center, double theta, double rho, double margin, double t);
};

// A word in area-preserving maps of T^2: factors[0] o factors[1] o ... .
// Grid factors hold smooth sampled maps; radial factors are exact formulas.
// Compositions never resample rough data: evaluation folds through factors.
class MapChain {
public:
  struct GridFactor {
    TorusMap map;
    mutable std::shared_ptr<const SpectralEvaluator> eu, ev;  // lazy caches
    const SpectralEvaluator& eval_u() const;
    const SpectralEvaluator& eval_v() const;
  };
  using Factor = std::variant<GridFactor, RadialFactor>;

  MapChain() = default;
  static MapChain identity();
  static MapChain from_map(TorusMap m);
  static MapChain from_radial(RadialFactor f);

  bool trivially_identity() const { return factors_.empty(); }
  size_t size() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }

  Vec2 apply(Vec2 p) const;

  MapChain inverse() const;
  friend MapChain compose(const MapChain& f, const MapChain& g);  // f o g

  // Sample the chain's displacement on an n x n grid.
  TorusMap sample(int n) const;

  // Merge adjacent smooth grid factors (tail-checked); drops identities.
  void simplify(double tail_threshold = 1e-9);

private:
  std::vector<Factor> factors_;
};

// C0 distance between chains measured on an n x n grid.
double chain_distance_c0(const MapChain& a, const MapChain& b, int n);

// max displacement of the chain at grid points outside the mask.
double chain_leakage_outside(const MapChain& m, const Mask& allowed);

}  // namespace hamfac
