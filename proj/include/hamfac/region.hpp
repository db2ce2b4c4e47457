#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamfac/grid_field.hpp"

namespace hamfac {

// Boolean grid mask on the torus, resolution n x n, cell (i,j) covers the
// point (i/n, j/n).
class Mask {
public:
  Mask() = default;
  Mask(int n, bool fill = false) : n_(n), cells_(size_t(n) * n, fill ? 1 : 0) {}

  int n() const { return n_; }
  bool get(int i, int j) const { return cells_[wrap_idx(i, j)] != 0; }
  void set(int i, int j, bool v) { cells_[wrap_idx(i, j)] = v ? 1 : 0; }

  int count() const;
  bool empty() const { return count() == 0; }
  bool any() const { return !empty(); }

  Mask complement() const;
  Mask intersect(const Mask& o) const;
  Mask unite(const Mask& o) const;
  Mask subtract(const Mask& o) const;
  bool intersects(const Mask& o) const;
  bool contains(const Mask& o) const;  // o subset of *this

  // Morphological dilation/erosion by r cells (Chebyshev structuring element).
  Mask dilated(int r) const;
  Mask eroded(int r) const;

  // Connected components, 4-neighbourhood on the torus; labels 0..k-1,
  // -1 outside. Deterministic (BFS in scan order).
  std::vector<int> components(int* count_out) const;

  // Mask of cells where |f| > threshold.
  static Mask support(const GridField& f, double threshold);

  // Disk of given center/radius (torus metric).
  static Mask disk(int n, double cx, double cy, double radius);

private:
  size_t wrap_idx(int i, int j) const {
    i %= n_;
    j %= n_;
    if (i < 0) i += n_;
    if (j < 0) j += n_;
    return size_t(j) * n_ + i;
  }
  int n_ = 0;
  std::vector<uint8_t> cells_;
};

// Open region of the torus: a round ball or an explicit mask. Ball radius
// must stay below 1/2 so the region embeds.
struct Region {
  enum class Kind { Ball, MaskKind };
  Kind kind = Kind::Ball;
  double cx = 0.0, cy = 0.0, radius = 0.0;
  Mask mask;                      // used when kind == MaskKind
  std::optional<int> color;

  static Region ball(double cx, double cy, double radius);
  static Region from_mask(Mask m);

  Mask to_mask(int n) const;
  // Mask enlarged by `cells` grid cells (support checks use this slack).
  Mask enlarged_mask(int n, int cells) const;
  bool contains_point(double x, double y, int n_for_mask) const;
};

// Shortest displacement representative in [-1/2, 1/2).
double torus_delta(double a, double b);
// Torus distance between points.
double torus_dist(double x0, double y0, double x1, double y1);

}  // namespace hamfac
