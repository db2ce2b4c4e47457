#pragma once

#include <functional>
#include <vector>

#include "hamfac/generating.hpp"
#include "hamfac/region.hpp"
#include "hamfac/torus_map.hpp"

namespace hamfac {

// Radial Hamiltonian profile h(r), compactly supported in r < outer_radius().
// ang(r) = -h'(r)/r is the angular velocity of the induced circle rotation
// (sign fixed by the convention  i_{X_H} omega = dH, omega = dx ^ dy).
class RadialProfile {
public:
  virtual ~RadialProfile() = default;
  virtual double h(double r) const = 0;
  virtual double ang(double r) const = 0;
  virtual double outer_radius() const = 0;
  // integral of h over the plane (= over T^2 for supported profiles).
  double integral_dA() const;
};

// Smooth bump h(r) = amplitude * exp(1 - 1/(1 - (r/R)^2)).
class BumpProfile : public RadialProfile {
public:
  BumpProfile(double radius, double amplitude);
  // Bump scaled so that the integral over the plane equals `mass`.
  static BumpProfile with_mass(double radius, double mass);
  double h(double r) const override;
  double ang(double r) const override;
  double outer_radius() const override { return radius_; }

private:
  double radius_, amplitude_;
};

// Gaussian bump truncated at its support radius: both the spatial truncation
// and the spectral tail sit near 1e-9 for radius ~0.3 at N = 64, and the
// induced angular velocity is itself a Gaussian (no edge spike).
class GaussianBumpProfile : public RadialProfile {
public:
  GaussianBumpProfile(double radius, double amplitude, double width_factor = 6.4);
  static GaussianBumpProfile with_mass(double radius, double mass);
  double h(double r) const override;
  double ang(double r) const override;
  double outer_radius() const override { return radius_; }
  double sigma() const { return sigma_; }

private:
  double radius_, amplitude_, sigma_;
};

// Gaussian ring bump centered at radius r0 with width w, supported in
// [r0 - cut, r0 + cut]; used for annular repair Hamiltonians.
class RingBumpProfile : public RadialProfile {
public:
  RingBumpProfile(double r0, double width, double cut_factor, double amplitude);
  static RingBumpProfile with_mass(double r0, double width, double cut_factor, double mass);
  double h(double r) const override;
  double ang(double r) const override;
  double outer_radius() const override { return r0_ + cut_; }
  double inner_radius() const { return r0_ - cut_; }

private:
  double r0_, width_, cut_, amplitude_;
};

// Rigid rotation by angle theta on r <= rho, tapered to zero over
// [rho, rho + margin] with a C^inf step.
class RigidRotationProfile : public RadialProfile {
public:
  RigidRotationProfile(double theta, double rho, double margin);
  double h(double r) const override;   // integrated from ang
  double ang(double r) const override;
  double outer_radius() const override { return rho_ + margin_; }
  double theta() const { return theta_; }

private:
  double theta_, rho_, margin_;
};

// Time-t map of the autonomous radial Hamiltonian h centered at `center`:
// exact closed-form rotation of each circle by t * ang(r).
TorusMap radial_flow(int n, Vec2 center, const RadialProfile& profile, double t);
// Point-map form (exact, for analytic composition).
Vec2 radial_flow_point(Vec2 center, const RadialProfile& profile, double t, Vec2 p);
// Calabi invariant of the time-t flow: t * integral h dA.
double radial_flow_calabi(const RadialProfile& profile, double t);

// Compactly supported Hamiltonian map equal to translation-by-alpha on the
// carrier, built as a composition of two opposite rigid circle rotations.
struct CutoffTranslationOptions {
  double lever = 0.12;        // distance between the two rotation centers
  double margin = 0.06;       // taper width of the rigid zones
  double safety = 0.01;       // slack added to carrier hulls
  double max_support = 0.49;  // support must fit in a disk of this radius
};

struct CutoffTranslation {
  TorusMap map;
  Vec2 hull_center;
  double hull_radius = 0.0;     // enclosing disk of carrier + translated carrier
  double support_radius = 0.0;  // enclosing disk of the support
  // Exactness certificate: max |Phi(p) - (p + alpha)| over carrier samples.
  double carrier_defect = 0.0;
  std::function<Vec2(Vec2)> point_map;  // analytic form
  // The two exact rotation factors (outer first): map = rot2 o rot1.
  Vec2 rot_center1, rot_center2;
  double theta = 0.0, rho1 = 0.0, rho2 = 0.0, margin = 0.0;
};

CutoffTranslation cutoff_translation(int n, Vec2 alpha, const Region& carrier,
                                     const CutoffTranslationOptions& opt = {});

// Enclosing disk of a region (torus metric, diameter must stay < 1/2).
void enclosing_disk(const Region& r, int n, Vec2* center, double* radius);

}  // namespace hamfac
