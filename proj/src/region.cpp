#include "hamfac/region.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace hamfac {

int Mask::count() const {
  int c = 0;
  for (uint8_t v : cells_) c += v;
  return c;
}

Mask Mask::complement() const {
  Mask r = *this;
  for (auto& v : r.cells_) v = v ? 0 : 1;
  return r;
}

Mask Mask::intersect(const Mask& o) const {
  Mask r = *this;
  for (size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] & o.cells_[i];
  return r;
}

Mask Mask::unite(const Mask& o) const {
  Mask r = *this;
  for (size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] | o.cells_[i];
  return r;
}

Mask Mask::subtract(const Mask& o) const {
  Mask r = *this;
  for (size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] & (o.cells_[i] ? 0 : 1);
  return r;
}

bool Mask::intersects(const Mask& o) const {
  for (size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] && o.cells_[i]) return true;
  return false;
}

bool Mask::contains(const Mask& o) const {
  for (size_t i = 0; i < cells_.size(); ++i)
    if (o.cells_[i] && !cells_[i]) return false;
  return true;
}

Mask Mask::dilated(int r) const {
  Mask out = *this;
  for (int step = 0; step < r; ++step) {
    Mask next = out;
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) {
        if (out.get(i, j))
          for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) next.set(i + di, j + dj, true);
      }
    out = next;
  }
  return out;
}

Mask Mask::eroded(int r) const { return complement().dilated(r).complement(); }

std::vector<int> Mask::components(int* count_out) const {
  std::vector<int> label(cells_.size(), -1);
  int next = 0;
  for (int j0 = 0; j0 < n_; ++j0) {
    for (int i0 = 0; i0 < n_; ++i0) {
      if (!get(i0, j0) || label[wrap_idx(i0, j0)] >= 0) continue;
      std::deque<std::pair<int, int>> q{{i0, j0}};
      label[wrap_idx(i0, j0)] = next;
      while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop_front();
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int ni = i + di[d], nj = j + dj[d];
          if (get(ni, nj) && label[wrap_idx(ni, nj)] < 0) {
            label[wrap_idx(ni, nj)] = next;
            q.emplace_back(ni, nj);
          }
        }
      }
      ++next;
    }
  }
  if (count_out) *count_out = next;
  return label;
}

Mask Mask::support(const GridField& f, double threshold) {
  Mask m(f.n());
  for (int j = 0; j < f.n(); ++j)
    for (int i = 0; i < f.n(); ++i)
      if (std::abs(f.at(i, j)) > threshold) m.set(i, j, true);
  return m;
}

Mask Mask::disk(int n, double cx, double cy, double radius) {
  Mask m(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (torus_dist(double(i) / n, double(j) / n, cx, cy) < radius) m.set(i, j, true);
  return m;
}

Region Region::ball(double cx, double cy, double radius) {
  if (radius >= 0.5) throw std::invalid_argument("ball radius must be < 1/2");
  Region r;
  r.kind = Kind::Ball;
  r.cx = cx - std::floor(cx);
  r.cy = cy - std::floor(cy);
  r.radius = radius;
  return r;
}

Region Region::from_mask(Mask m) {
  Region r;
  r.kind = Kind::MaskKind;
  r.mask = std::move(m);
  return r;
}

Mask Region::to_mask(int n) const {
  if (kind == Kind::Ball) return Mask::disk(n, cx, cy, radius);
  if (mask.n() == n) return mask;
  // Resample a mask to another grid conservatively (any overlap -> set).
  Mask out(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int si = int(std::floor(double(i) / n * mask.n()));
      int sj = int(std::floor(double(j) / n * mask.n()));
      out.set(i, j, mask.get(si, sj));
    }
  return out;
}

Mask Region::enlarged_mask(int n, int cells) const { return to_mask(n).dilated(cells); }

bool Region::contains_point(double x, double y, int n_for_mask) const {
  if (kind == Kind::Ball) return torus_dist(x, y, cx, cy) < radius;
  int i = int(std::floor(x * n_for_mask)), j = int(std::floor(y * n_for_mask));
  return to_mask(n_for_mask).get(i, j);
}

double torus_delta(double a, double b) {
  double d = a - b;
  d -= std::round(d);
  return d;
}

double torus_dist(double x0, double y0, double x1, double y1) {
  double dx = torus_delta(x0, x1);
  double dy = torus_delta(y0, y1);
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace hamfac
