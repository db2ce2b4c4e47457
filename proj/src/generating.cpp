#include "hamfac/generating.hpp"

#include <cmath>
#include <numbers>

namespace hamfac {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusMap map_from_generating(const GridField& w, GeneratingDiagnostics* diag) {
  return map_from_generating(GeneratingFunction{w}, diag);
}

TorusMap map_from_generating(const GeneratingFunction& gen, GeneratingDiagnostics* diag) {
  const GridField& w = gen.w;
  const int n = w.n();

  GridField w1 = w.derivative(1, 0);
  GridField w2 = w.derivative(0, 1);
  GridField w12 = w.derivative(1, 1);
  double twist = w12.max_abs();
  if (twist >= 0.75)
    throw RegimeError("map_from_generating: 1 + d1d2W not bounded away from zero", twist);

  SpectralEvaluator e1(w1), e12(w12);

  // Solve y = Y + d1W(x, Y) for Y at every grid point (x, y) by Newton.
  GridField ycoord(n);
  double worst_res = 0.0;
  int worst_it = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = double(i) / n, y = double(j) / n;
      double Y = y;
      int it = 0;
      double res = 0.0;
      for (; it < 60; ++it) {
        res = Y + e1(x, Y) - y;
        if (std::abs(res) < 1e-14) break;
        double slope = 1.0 + e12(x, Y);
        Y -= res / slope;
      }
      if (std::abs(res) > 1e-10)
        throw RegimeError("map_from_generating: implicit solve diverged", std::abs(res));
      worst_res = std::max(worst_res, std::abs(res));
      worst_it = std::max(worst_it, it);
      ycoord.at(i, j) = Y;
    }
  }

  SpectralEvaluator e2(w2);
  GridField u(n), v(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = double(i) / n, y = double(j) / n;
      const double Y = ycoord.at(i, j);
      u.at(i, j) = e2(x, Y);  // X - x
      v.at(i, j) = Y - y;
    }
  }
  if (diag) {
    diag->iterations = worst_it;
    diag->residual = worst_res;
  }
  return TorusMap(std::move(u), std::move(v));
}

GeneratingFunction generating_from_map(const TorusMap& phi, const GeneratingOptions& opt,
                                       GeneratingDiagnostics* diag) {
  require_near_identity(phi, "generating_from_map");
  const int n = phi.n();
  SpectralEvaluator eu(phi.u()), ev(phi.v());

  GridField w(n);
  GeneratingDiagnostics d;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    GridField w1 = w.derivative(1, 0);
    // At mixed coordinates (x, Y): the source point is (x, y) with
    // y = Y + d1W(x, Y); there   d2W(x,Y) = u(x,y)  and  d1W(x,Y) = -v(x,y).
    GridField a(n), b(n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double x = double(i) / n, Y = double(j) / n;
        const double y = Y + w1.at(i, j);
        a.at(i, j) = eu(x, y);
        b.at(i, j) = -ev(x, y);
      }
    }
    // Least-squares potential for the 1-form b dx + a dY; record defects.
    Spectrum sa = Spectrum::analyze(a), sb = Spectrum::analyze(b);
    d.period_x = std::abs(sb.coef(0, 0));
    d.period_y = std::abs(sa.coef(0, 0));
    double closed = 0.0;
    std::vector<std::complex<double>> wc(size_t(n) * n, 0.0);
    Spectrum sw(n, std::move(wc));
    const int kmax = n / 2 - 1;
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      for (int k1 = -kmax; k1 <= kmax; ++k1) {
        if (k1 == 0 && k2 == 0) continue;
        const std::complex<double> ik1(0.0, kTwoPi * k1), ik2(0.0, kTwoPi * k2);
        const std::complex<double> bk = sb.coef(k1, k2), ak = sa.coef(k1, k2);
        closed = std::max(closed, std::abs(ik1 * ak - ik2 * bk));
        sw.coef(k1, k2) =
            (std::conj(ik1) * bk + std::conj(ik2) * ak) / (kTwoPi * kTwoPi * double(k1 * k1 + k2 * k2));
      }
    }
    d.closedness_defect = closed;
    GridField w_new = sw.synthesize();
    double step = (w_new - w).max_abs();
    w = std::move(w_new);
    d.iterations = iter + 1;
    d.residual = step;
    if (step < opt.tol) break;
  }

  if (d.closedness_defect > opt.closedness_tolerance)
    throw ToleranceError("generating_from_map: input is not symplectic (1-form not closed)",
                         d.closedness_defect);
  double period = std::max(d.period_x, d.period_y);
  if (period > opt.period_tolerance && !opt.project_periods)
    throw ToleranceError("generating_from_map: nonzero periods, input is not Hamiltonian",
                         period);
  if (diag) *diag = d;
  return GeneratingFunction{std::move(w), GeneratingFunction::Normalization::MeanZero};
}

}  // namespace hamfac
