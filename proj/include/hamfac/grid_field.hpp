#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hamfac {

// Doubly 1-periodic scalar field sampled on an N x N grid at (i/N, j/N),
// interpreted as a trigonometric polynomial with modes |k| < N/2.
// Storage is row-major in y: samples[j*N + i] = f(i/N, j/N).
class GridField {
public:
  GridField() = default;
  explicit GridField(int n, double fill = 0.0);

  int n() const { return n_; }
  bool empty() const { return n_ == 0; }

  double& at(int i, int j) { return samples_[idx(i, j)]; }
  double at(int i, int j) const { return samples_[idx(i, j)]; }
  // Index with periodic wrap.
  double at_wrapped(int i, int j) const;

  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double s);
  GridField& operator+=(double s);
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(GridField a, double s) { return a *= s; }
  friend GridField operator*(double s, GridField a) { return a *= s; }

  // Pointwise product (no dealiasing; callers track the tail diagnostic).
  GridField pointwise_mul(const GridField& o) const;

  double mean() const;
  double max_abs() const;

  // Spectral partial derivative of order (ax, ay).
  GridField derivative(int ax, int ay) const;

  // max over grid of |d^a f| over all multi-indices |a| <= k.
  double ck_norm(int k) const;

  // Fraction of spectral energy carried by modes with max(|k1|,|k2|) >= n/3.
  // Reported as a resolution diagnostic.
  double spectral_tail() const;

  // Resample to a different resolution by Fourier zero-padding/truncation.
  GridField resampled(int n_new) const;

  bool all_finite() const;

  static GridField from_function(int n, const std::function<double(double, double)>& f);

private:
  int idx(int i, int j) const { return j * n_ + i; }
  int n_ = 0;
  std::vector<double> samples_;
};

// Forward 2-D complex spectrum of a real field, layout k = (k1, k2) with
// k in [-n/2, n/2)^2 stored FFTW-style (non-negative then negative).
// coefficients are the trig-polynomial coefficients c_k with
// f(x,y) = sum_k c_k e^{2 pi i (k1 x + k2 y)}.
class Spectrum {
public:
  Spectrum() = default;
  Spectrum(int n, std::vector<std::complex<double>> coef);

  static Spectrum analyze(const GridField& f);
  GridField synthesize() const;

  int n() const { return n_; }
  std::complex<double>& coef(int k1, int k2);
  std::complex<double> coef(int k1, int k2) const;
  std::span<const std::complex<double>> raw() const { return coef_; }
  std::span<std::complex<double>> raw() { return coef_; }

  // Frequency of storage slot i along one axis: i <= n/2 ? i : i - n.
  static int freq(int slot, int n) { return slot <= n / 2 ? slot : slot - n; }

private:
  int wrap(int k) const;
  int n_ = 0;
  std::vector<std::complex<double>> coef_;
};

// Evaluates a GridField (as a trigonometric polynomial) at arbitrary points.
// Kernel-based nonuniform evaluation: accuracy ~1e-13 relative to the field's
// max modulus; exact band-limited semantics.
class SpectralEvaluator {
public:
  explicit SpectralEvaluator(const GridField& f);

  double operator()(double x, double y) const;
  // Batch evaluation (points in [0,1)^2, wrapped automatically).
  std::vector<double> evaluate(std::span<const double> xs, std::span<const double> ys) const;

  // Direct summation over modes; slow, used as the accuracy oracle in tests.
  static double evaluate_direct(const GridField& f, double x, double y);

private:
  int n_ = 0;          // source resolution
  int nf_ = 0;         // fine (oversampled) resolution
  int w_ = 0;          // kernel half-support in fine cells
  double beta_ = 0.0;  // kernel shape
  std::vector<double> fine_;  // deconvolved fine-grid samples
  double kernel(double z) const;
};

}  // namespace hamfac
