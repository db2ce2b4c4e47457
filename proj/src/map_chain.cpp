#include "hamfac/map_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace hamfac {

RadialFactor RadialFactor::bump(Vec2 center, double radius, double amplitude, double t) {
  RadialFactor f;
  f.profile = Profile::Bump;
  f.center = center;
  f.t = t;
  f.p0 = radius;
  f.p1 = amplitude;
  return f;
}

RadialFactor RadialFactor::gauss(Vec2 center, double radius, double amplitude, double t) {
  RadialFactor f;
  f.profile = Profile::Gauss;
  f.center = center;
  f.t = t;
  f.p0 = radius;
  f.p1 = amplitude;
  return f;
}

RadialFactor RadialFactor::ring(Vec2 center, double r0, double width, double cut_factor,
                                double amplitude, double t) {
  RadialFactor f;
  f.profile = Profile::Ring;
  f.center = center;
  f.t = t;
  f.p0 = r0;
  f.p1 = width;
  f.p2 = cut_factor;
  f.p3 = amplitude;
  return f;
}

RadialFactor RadialFactor::rigid(Vec2 center, double theta, double rho, double margin, double t) {
  RadialFactor f;
  f.profile = Profile::Rigid;
  f.center = center;
  f.t = t;
  f.p0 = theta;
  f.p1 = rho;
  f.p2 = margin;
  return f;
}

std::unique_ptr<RadialProfile> RadialFactor::make_profile() const {
  switch (profile) {
    case Profile::Bump: return std::make_unique<BumpProfile>(p0, p1);
    case Profile::Gauss: return std::make_unique<GaussianBumpProfile>(p0, p1);
    case Profile::Ring: return std::make_unique<RingBumpProfile>(p0, p1, p2, p3);
    case Profile::Rigid: return std::make_unique<RigidRotationProfile>(p0, p1, p2);
  }
  throw std::logic_error("bad profile kind");
}

Vec2 RadialFactor::apply(Vec2 p) const {
  switch (profile) {
    case Profile::Bump: {
      BumpProfile prof(p0, p1);
      return radial_flow_point(center, prof, t, p);
    }
    case Profile::Gauss: {
      GaussianBumpProfile prof(p0, p1);
      return radial_flow_point(center, prof, t, p);
    }
    case Profile::Ring: {
      RingBumpProfile prof(p0, p1, p2, p3);
      return radial_flow_point(center, prof, t, p);
    }
    case Profile::Rigid: {
      RigidRotationProfile prof(p0, p1, p2);
      return radial_flow_point(center, prof, t, p);
    }
  }
  throw std::logic_error("bad profile kind");
}

RadialFactor RadialFactor::inverted() const {
  RadialFactor f = *this;
  f.t = -t;
  return f;
}

double RadialFactor::outer_radius() const {
  switch (profile) {
    case Profile::Bump:
    case Profile::Gauss: return p0;
    case Profile::Ring: return p0 + p1 * p2;
    case Profile::Rigid: return p1 + p2;
  }
  return 0.0;
}

const SpectralEvaluator& MapChain::GridFactor::eval_u() const {
  if (!eu) eu = std::make_shared<SpectralEvaluator>(map.u());
  return *eu;
}

const SpectralEvaluator& MapChain::GridFactor::eval_v() const {
  if (!ev) ev = std::make_shared<SpectralEvaluator>(map.v());
  return *ev;
}

MapChain MapChain::identity() { return MapChain(); }

MapChain MapChain::from_map(TorusMap m) {
  MapChain c;
  if (!m.is_identity(0.0)) c.factors_.push_back(GridFactor{std::move(m), nullptr, nullptr});
  return c;
}

MapChain MapChain::from_radial(RadialFactor f) {
  MapChain c;
  if (f.t != 0.0) c.factors_.push_back(std::move(f));
  return c;
}

Vec2 MapChain::apply(Vec2 p) const {
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (const auto* rf = std::get_if<RadialFactor>(&*it)) {
      p = rf->apply(p);
    } else {
      const auto& gf = std::get<GridFactor>(*it);
      double dx = gf.eval_u()(p.x, p.y);
      double dy = gf.eval_v()(p.x, p.y);
      p = {p.x + dx, p.y + dy};
      p = {p.x - std::floor(p.x), p.y - std::floor(p.y)};
    }
  }
  return p;
}

MapChain MapChain::inverse() const {
  MapChain out;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (const auto* rf = std::get_if<RadialFactor>(&*it)) {
      out.factors_.push_back(rf->inverted());
    } else {
      const auto& gf = std::get<GridFactor>(*it);
      out.factors_.push_back(GridFactor{hamfac::inverse(gf.map), nullptr, nullptr});
    }
  }
  return out;
}

MapChain compose(const MapChain& f, const MapChain& g) {
  MapChain out;
  out.factors_ = f.factors_;
  out.factors_.insert(out.factors_.end(), g.factors_.begin(), g.factors_.end());
  return out;
}

TorusMap MapChain::sample(int n) const {
  return sample_map(n, [this](Vec2 p) { return apply(p); });
}

void MapChain::simplify(double tail_threshold) {
  std::vector<Factor> out;
  for (auto& f : factors_) {
    if (const auto* gf = std::get_if<GridFactor>(&f)) {
      if (gf->map.is_identity(0.0)) continue;
      if (!out.empty()) {
        if (auto* prev = std::get_if<GridFactor>(&out.back())) {
          double t_prev = std::max(prev->map.u().spectral_tail(), prev->map.v().spectral_tail());
          double t_cur = std::max(gf->map.u().spectral_tail(), gf->map.v().spectral_tail());
          if (t_prev < tail_threshold && t_cur < tail_threshold &&
              prev->map.n() == gf->map.n()) {
            TorusMap merged = hamfac::compose(prev->map, gf->map);
            double t_m = std::max(merged.u().spectral_tail(), merged.v().spectral_tail());
            if (t_m < tail_threshold && merged.displacement_norm() < 0.2) {
              out.back() = GridFactor{std::move(merged), nullptr, nullptr};
              continue;
            }
          }
        }
      }
      out.push_back(std::move(f));
    } else {
      const auto& rf = std::get<RadialFactor>(f);
      if (rf.t == 0.0) continue;
      out.push_back(std::move(f));
    }
  }
  factors_ = std::move(out);
}

double chain_distance_c0(const MapChain& a, const MapChain& b, int n) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec2 p{double(i) / n, double(j) / n};
      Vec2 qa = a.apply(p), qb = b.apply(p);
      worst = std::max(worst, torus_dist(qa.x, qa.y, qb.x, qb.y));
    }
  return worst;
}

double chain_leakage_outside(const MapChain& m, const Mask& allowed) {
  const int n = allowed.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (allowed.get(i, j)) continue;
      Vec2 p{double(i) / n, double(j) / n};
      Vec2 q = m.apply(p);
      worst = std::max(worst, torus_dist(q.x, q.y, p.x, p.y));
    }
  return worst;
}

}  // namespace hamfac
