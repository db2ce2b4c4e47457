#pragma once

#include <optional>
#include <vector>

#include "hamfac/flows.hpp"
#include "hamfac/generating.hpp"

namespace hamfac {

// Time-sampled Hamiltonian isotopy: H_t on [0,1] at times t_0 < ... < t_M.
struct HamiltonianPath {
  std::vector<double> times;
  std::vector<GridField> fields;
  std::optional<Region> support;

  // Finite-difference smoothness-in-t diagnostic (max second difference).
  double time_smoothness() const;
  static HamiltonianPath autonomous(const GridField& h, int samples = 2);
  // Concatenation (reparametrized to [0,1]).
  static HamiltonianPath concatenate(const HamiltonianPath& a, const HamiltonianPath& b);
};

// Cal = integral over [0,1] x T^2 of H_t dA dt: trapezoid in t, exact grid
// mean in space. Each H_t must be supported in U (enlarged mask check).
double calabi_isotopy(const HamiltonianPath& path, const Region& u, int enlargement_cells = 2,
                      double support_tolerance = 1e-9);

// Frozen proportionality constant between the Calabi invariant and the
// integral of the type-2 generating function (see calibrate_kappa).
double calabi_kappa();

// Cal of a map from its generating function: kappa * integral of the
// U-supported normalization of W. W must be locally constant outside the
// enlarged region mask.
double calabi_from_w(const GridField& w_mean_zero, const Region& u, int enlargement_cells = 2,
                     double outside_tolerance = 1e-7);
double calabi_from_w(const GeneratingFunction& w, const Region& u, int enlargement_cells = 2,
                     double outside_tolerance = 1e-7);
// Convenience: extract W from the map first.
double calabi_of_map(const TorusMap& phi, const Region& u, int enlargement_cells = 2);

// Hamiltonian path of the straight generating line t -> map(t W), with H_t
// recovered from the velocity field (4th-order differences). Used as the
// quadrature oracle for calabi_from_w.
HamiltonianPath generating_line_isotopy(const GridField& w, const Region& u, int time_samples);

// One-time calibration of kappa against calabi_isotopy on a family of small
// radial flows; returns the measured constant and its spread.
struct KappaCalibration {
  double kappa = 0.0;
  double spread = 0.0;
};
KappaCalibration calibrate_kappa(int n = 64);

}  // namespace hamfac
