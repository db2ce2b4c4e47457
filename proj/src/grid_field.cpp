#include "hamfac/grid_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hamfac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

void check_power_of_two(int n) {
  if (n < 4 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid resolution must be a power of two >= 4, got " +
                                std::to_string(n));
  }
}

}  // namespace

GridField::GridField(int n, double fill) : n_(n), samples_(size_t(n) * n, fill) {
  check_power_of_two(n);
}

double GridField::at_wrapped(int i, int j) const {
  i %= n_;
  j %= n_;
  if (i < 0) i += n_;
  if (j < 0) j += n_;
  return samples_[idx(i, j)];
}

GridField& GridField::operator+=(const GridField& o) {
  if (o.n_ != n_) throw std::invalid_argument("resolution mismatch");
  for (size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  if (o.n_ != n_) throw std::invalid_argument("resolution mismatch");
  for (size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
  return *this;
}

GridField& GridField::operator*=(double s) {
  for (double& v : samples_) v *= s;
  return *this;
}

GridField& GridField::operator+=(double s) {
  for (double& v : samples_) v += s;
  return *this;
}

GridField GridField::pointwise_mul(const GridField& o) const {
  if (o.n_ != n_) throw std::invalid_argument("resolution mismatch");
  GridField r(n_);
  for (size_t i = 0; i < samples_.size(); ++i) r.samples_[i] = samples_[i] * o.samples_[i];
  return r;
}

double GridField::mean() const {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / double(samples_.size());
}

double GridField::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool GridField::all_finite() const {
  return std::all_of(samples_.begin(), samples_.end(),
                     [](double v) { return std::isfinite(v); });
}

GridField GridField::from_function(int n, const std::function<double(double, double)>& f) {
  GridField g(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g.at(i, j) = f(double(i) / n, double(j) / n);
  return g;
}

Spectrum::Spectrum(int n, std::vector<std::complex<double>> coef)
    : n_(n), coef_(std::move(coef)) {
  if (coef_.size() != size_t(n) * n) throw std::invalid_argument("bad spectrum size");
}

int Spectrum::wrap(int k) const {
  int s = k % n_;
  if (s < 0) s += n_;
  return s;
}

std::complex<double>& Spectrum::coef(int k1, int k2) {
  return coef_[size_t(wrap(k2)) * n_ + wrap(k1)];
}

std::complex<double> Spectrum::coef(int k1, int k2) const {
  return coef_[size_t(wrap(k2)) * n_ + wrap(k1)];
}

Spectrum Spectrum::analyze(const GridField& f) {
  const int n = f.n();
  std::vector<std::complex<double>> out(size_t(n) * n);
  std::vector<std::complex<double>> in(size_t(n) * n);
  for (size_t i = 0; i < in.size(); ++i) in[i] = f.samples()[i];
  {
    std::lock_guard<std::mutex> lk(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / (double(n) * n);
  for (auto& c : out) c *= scale;
  return Spectrum(n, std::move(out));
}

GridField Spectrum::synthesize() const {
  const int n = n_;
  std::vector<std::complex<double>> in(coef_);
  std::vector<std::complex<double>> out(size_t(n) * n);
  {
    std::lock_guard<std::mutex> lk(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  GridField g(n);
  for (size_t i = 0; i < out.size(); ++i) g.samples()[i] = out[i].real();
  return g;
}

GridField GridField::derivative(int ax, int ay) const {
  Spectrum s = Spectrum::analyze(*this);
  const int n = n_;
  for (int j2 = 0; j2 < n; ++j2) {
    for (int j1 = 0; j1 < n; ++j1) {
      int k1 = Spectrum::freq(j1, n);
      int k2 = Spectrum::freq(j2, n);
      // Kill the Nyquist line: it has no well-defined odd derivative.
      if ((ax > 0 && k1 == n / 2) || (ay > 0 && k2 == n / 2)) {
        s.raw()[size_t(j2) * n + j1] = 0.0;
        continue;
      }
      std::complex<double> m(1.0, 0.0);
      const std::complex<double> i1(0.0, kTwoPi * k1);
      const std::complex<double> i2(0.0, kTwoPi * k2);
      for (int a = 0; a < ax; ++a) m *= i1;
      for (int a = 0; a < ay; ++a) m *= i2;
      s.raw()[size_t(j2) * n + j1] *= m;
    }
  }
  return s.synthesize();
}

double GridField::ck_norm(int k) const {
  double m = 0.0;
  for (int ax = 0; ax <= k; ++ax) {
    for (int ay = 0; ay + ax <= k; ++ay) {
      if (ax == 0 && ay == 0) {
        m = std::max(m, max_abs());
      } else {
        m = std::max(m, derivative(ax, ay).max_abs());
      }
    }
  }
  return m;
}

double GridField::spectral_tail() const {
  Spectrum s = Spectrum::analyze(*this);
  double total = 0.0, tail = 0.0;
  const int n = n_;
  for (int j2 = 0; j2 < n; ++j2) {
    for (int j1 = 0; j1 < n; ++j1) {
      int k1 = std::abs(Spectrum::freq(j1, n));
      int k2 = std::abs(Spectrum::freq(j2, n));
      if (k1 == 0 && k2 == 0) continue;
      double e = std::norm(s.raw()[size_t(j2) * n + j1]);
      total += e;
      if (std::max(k1, k2) >= n / 3) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

GridField GridField::resampled(int n_new) const {
  if (n_new == n_) return *this;
  check_power_of_two(n_new);
  Spectrum s = Spectrum::analyze(*this);
  std::vector<std::complex<double>> out(size_t(n_new) * n_new, 0.0);
  Spectrum t(n_new, std::move(out));
  const int kmax = std::min(n_, n_new) / 2 - 1;
  for (int k2 = -kmax; k2 <= kmax; ++k2)
    for (int k1 = -kmax; k1 <= kmax; ++k1) t.coef(k1, k2) = s.coef(k1, k2);
  return t.synthesize();
}

// --- SpectralEvaluator -------------------------------------------------------

SpectralEvaluator::SpectralEvaluator(const GridField& f) : n_(f.n()) {
  // Oversample x2 and spread with an exponential-of-semicircle kernel.
  nf_ = 2 * n_;
  w_ = 13;
  beta_ = 2.30 * w_;

  // Fourier transform of the kernel (periodized), by quadrature.
  // phihat(k) = integral_{-1}^{1} exp(beta (sqrt(1-z^2)-1)) cos(pi k w z / nf) dz * (w/2)
  const int quad_n = 200;
  std::vector<double> gl_x(quad_n), gl_w(quad_n);
  // Composite Simpson on [-1,1] is plenty at this smoothness.
  for (int i = 0; i < quad_n; ++i) gl_x[i] = -1.0 + 2.0 * i / (quad_n - 1);
  auto phi = [&](double z) { return std::exp(beta_ * (std::sqrt(std::max(0.0, 1.0 - z * z)) - 1.0)); };

  Spectrum s = Spectrum::analyze(f);
  std::vector<std::complex<double>> fine(size_t(nf_) * nf_, 0.0);
  Spectrum t(nf_, std::move(fine));

  auto phihat = [&](int k) {
    // Simpson weights
    double h = 2.0 / (quad_n - 1);
    double acc = 0.0;
    for (int i = 0; i < quad_n; ++i) {
      double wgt = (i == 0 || i == quad_n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      double z = gl_x[i];
      acc += wgt * phi(z) * std::cos(std::numbers::pi * k * double(w_) * z / nf_);
    }
    return acc * h / 3.0 * (double(w_) / 2.0);
  };

  std::vector<double> ph(n_ / 2 + 1);
  for (int k = 0; k <= n_ / 2; ++k) ph[k] = phihat(k);

  const int kmax = n_ / 2 - 1;
  for (int k2 = -kmax; k2 <= kmax; ++k2)
    for (int k1 = -kmax; k1 <= kmax; ++k1)
      t.coef(k1, k2) = s.coef(k1, k2) / (ph[std::abs(k1)] * ph[std::abs(k2)]);
  GridField g = t.synthesize();
  fine_.assign(g.samples().begin(), g.samples().end());
}

double SpectralEvaluator::kernel(double z) const {
  // z in fine-grid cells, support |z| <= w/2.
  double u = 2.0 * z / w_;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(beta_ * (std::sqrt(1.0 - u * u) - 1.0));
}

double SpectralEvaluator::operator()(double x, double y) const {
  x -= std::floor(x);
  y -= std::floor(y);
  const double gx = x * nf_;
  const double gy = y * nf_;
  const int ix = int(std::floor(gx + 0.5));
  const int iy = int(std::floor(gy + 0.5));
  const int h = w_ / 2;
  double kx[32], ky[32];
  for (int a = -h; a <= h; ++a) {
    kx[a + h] = kernel(gx - (ix + a));
    ky[a + h] = kernel(gy - (iy + a));
  }
  double acc = 0.0;
  for (int b = -h; b <= h; ++b) {
    int jy = (iy + b) & (nf_ - 1);
    const double* row = fine_.data() + size_t(jy) * nf_;
    double rowacc = 0.0;
    for (int a = -h; a <= h; ++a) {
      int jx = (ix + a) & (nf_ - 1);
      rowacc += row[jx] * kx[a + h];
    }
    acc += rowacc * ky[b + h];
  }
  return acc;
}

std::vector<double> SpectralEvaluator::evaluate(std::span<const double> xs,
                                                std::span<const double> ys) const {
  std::vector<double> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i], ys[i]);
  return out;
}

double SpectralEvaluator::evaluate_direct(const GridField& f, double x, double y) {
  Spectrum s = Spectrum::analyze(f);
  const int n = f.n();
  const int kmax = n / 2 - 1;
  std::complex<double> acc = 0.0;
  for (int k2 = -kmax; k2 <= kmax; ++k2) {
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
      double ph = kTwoPi * (k1 * x + k2 * y);
      acc += s.coef(k1, k2) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return acc.real();
}

}  // namespace hamfac
