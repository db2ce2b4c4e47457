#include "hamfac/calabi.hpp"

#include <cmath>
#include <stdexcept>

namespace hamfac {

double HamiltonianPath::time_smoothness() const {
  double m = 0.0;
  for (size_t i = 1; i + 1 < fields.size(); ++i) {
    GridField d = fields[i + 1] - fields[i] * 2.0 + fields[i - 1];
    m = std::max(m, d.max_abs());
  }
  return m;
}

HamiltonianPath HamiltonianPath::autonomous(const GridField& h, int samples) {
  HamiltonianPath p;
  for (int i = 0; i < samples; ++i) {
    p.times.push_back(double(i) / (samples - 1));
    p.fields.push_back(h);
  }
  return p;
}

HamiltonianPath HamiltonianPath::concatenate(const HamiltonianPath& a, const HamiltonianPath& b) {
  // Time-1 concatenation: run a on [0, 1/2] at double speed, then b.
  HamiltonianPath p;
  for (size_t i = 0; i < a.times.size(); ++i) {
    p.times.push_back(a.times[i] * 0.5);
    p.fields.push_back(a.fields[i] * 2.0);
  }
  for (size_t i = 0; i < b.times.size(); ++i) {
    if (i == 0 && !p.times.empty() && b.times[i] == 0.0) {
      // keep both endpoint samples; trapezoid handles the seam
    }
    p.times.push_back(0.5 + b.times[i] * 0.5);
    p.fields.push_back(b.fields[i] * 2.0);
  }
  return p;
}

double calabi_isotopy(const HamiltonianPath& path, const Region& u, int enlargement_cells,
                      double support_tolerance) {
  if (path.times.size() != path.fields.size() || path.times.size() < 2)
    throw std::invalid_argument("calabi_isotopy: malformed path");
  const int n = path.fields.front().n();
  Mask allowed = u.enlarged_mask(n, enlargement_cells);
  for (const GridField& h : path.fields) {
    double leak = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!allowed.get(i, j)) leak = std::max(leak, std::abs(h.at(i, j)));
    if (leak > support_tolerance)
      throw ToleranceError("calabi_isotopy: Hamiltonian leaves the declared support", leak);
  }
  double acc = 0.0;
  for (size_t i = 0; i + 1 < path.times.size(); ++i) {
    double dt = path.times[i + 1] - path.times[i];
    acc += 0.5 * dt * (path.fields[i].mean() + path.fields[i + 1].mean());
  }
  return acc;
}

double calabi_kappa() { return 1.0; }

namespace {
double supported_integral(const GridField& w, const Region& u, int enlargement_cells,
                          double outside_tolerance) {
  const int n = w.n();
  Mask inside = u.enlarged_mask(n, enlargement_cells);
  // W is determined up to a constant; pin it by the outside values.
  double c_out = 0.0;
  int cnt = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!inside.get(i, j)) {
        c_out += w.at(i, j);
        ++cnt;
      }
  if (cnt == 0) throw std::invalid_argument("calabi_from_w: region is not proper");
  c_out /= cnt;
  double dev = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!inside.get(i, j)) dev = std::max(dev, std::abs(w.at(i, j) - c_out));
  if (dev > outside_tolerance)
    throw ToleranceError("calabi_from_w: W not locally constant outside the region", dev);
  return w.mean() - c_out;
}
}  // namespace

double calabi_from_w(const GridField& w, const Region& u, int enlargement_cells,
                     double outside_tolerance) {
  return calabi_kappa() * supported_integral(w, u, enlargement_cells, outside_tolerance);
}

double calabi_from_w(const GeneratingFunction& w, const Region& u, int enlargement_cells,
                     double outside_tolerance) {
  return calabi_from_w(w.w, u, enlargement_cells, outside_tolerance);
}

double calabi_of_map(const TorusMap& phi, const Region& u, int enlargement_cells) {
  GeneratingFunction g = generating_from_map(phi);
  return calabi_from_w(g, u, enlargement_cells);
}

HamiltonianPath generating_line_isotopy(const GridField& w, const Region& u, int time_samples) {
  const int n = w.n();
  HamiltonianPath path;
  path.support = u;
  const double fd = 5e-3;  // time step of the 4th-order stencil
  Mask inside = u.enlarged_mask(n, 2);

  for (int k = 0; k < time_samples; ++k) {
    double t = double(k) / (time_samples - 1);
    TorusMap phi_t = map_from_generating(w * t);
    TorusMap inv_t = inverse(phi_t);
    // Velocity at time t: 4th-order central difference of s -> phi_s(phi_t^{-1}(p)).
    GridField vx(n), vy(n);
    // (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / (12h)
    std::vector<TorusMap> nb;
    for (int s : {-2, -1, 1, 2}) nb.push_back(compose(map_from_generating(w * (t + s * fd)), inv_t));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        vx.at(i, j) = (nb[0].u().at(i, j) - 8.0 * nb[1].u().at(i, j) +
                       8.0 * nb[2].u().at(i, j) - nb[3].u().at(i, j)) / (12.0 * fd);
        vy.at(i, j) = (nb[0].v().at(i, j) - 8.0 * nb[1].v().at(i, j) +
                       8.0 * nb[2].v().at(i, j) - nb[3].v().at(i, j)) / (12.0 * fd);
      }
    // Solve dH = i_V omega: d2 H = vx, d1 H = -vy (least squares), then pin
    // the constant so H vanishes outside the support region.
    Spectrum sa = Spectrum::analyze(vx), sb = Spectrum::analyze(vy);
    std::vector<std::complex<double>> hc(size_t(n) * n, 0.0);
    Spectrum sh(n, std::move(hc));
    const int kmax = n / 2 - 1;
    const double tau = 2.0 * std::numbers::pi;
    for (int k2 = -kmax; k2 <= kmax; ++k2)
      for (int k1 = -kmax; k1 <= kmax; ++k1) {
        if (k1 == 0 && k2 == 0) continue;
        std::complex<double> ik1(0.0, tau * k1), ik2(0.0, tau * k2);
        sh.coef(k1, k2) = (std::conj(ik2) * sa.coef(k1, k2) - std::conj(ik1) * sb.coef(k1, k2)) /
                          (tau * tau * double(k1 * k1 + k2 * k2));
      }
    GridField h = sh.synthesize();
    double c_out = 0.0;
    int cnt = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!inside.get(i, j)) {
          c_out += h.at(i, j);
          ++cnt;
        }
    if (cnt > 0) h += -c_out / cnt;
    path.times.push_back(t);
    path.fields.push_back(std::move(h));
  }
  return path;
}

KappaCalibration calibrate_kappa(int n) {
  double lo = 1e18, hi = -1e18, acc = 0.0;
  int cnt = 0;
  for (double t : {0.25, 0.5, 0.75}) {
    for (double radius : {0.33, 0.38}) {
      GaussianBumpProfile prof = GaussianBumpProfile::with_mass(radius, 1e-5);
      TorusMap phi = radial_flow(n, {0.5, 0.5}, prof, t);
      double cal_true = radial_flow_calabi(prof, t);
      GeneratingFunction g = generating_from_map(phi);
      Region u = Region::ball(0.5, 0.5, radius + 0.05);
      double integral = 0.0;
      {
        // supported integral without the kappa factor
        integral = calabi_from_w(g.w, u, 2, 1e-6) / calabi_kappa();
      }
      double kappa = cal_true / integral;
      lo = std::min(lo, kappa);
      hi = std::max(hi, kappa);
      acc += kappa;
      ++cnt;
    }
  }
  return {acc / cnt, hi - lo};
}

}  // namespace hamfac
