#pragma once

#include <optional>

#include "hamfac/torus_map.hpp"

namespace hamfac {

// Generating function for a near-identity Hamiltonian torus map through the
// implicit relation
//     X = x + d2W(x, Y),   y = Y + d1W(x, Y).
// W is periodic; on the closed torus it is determined up to a constant.
struct GeneratingFunction {
  enum class Normalization { MeanZero, Calabi, RawConstant };
  GridField w;
  Normalization normalization = Normalization::MeanZero;
};

struct GeneratingDiagnostics {
  double closedness_defect = 0.0;  // non-symplectic residual of the 1-form
  double period_x = 0.0;           // flux periods; nonzero means non-Hamiltonian
  double period_y = 0.0;
  int iterations = 0;
  double residual = 0.0;  // final fixed-point residual
};

struct GeneratingOptions {
  double tol = 1e-13;
  int max_iter = 60;
  double period_tolerance = 1e-7;    // reject maps with larger flux
  bool project_periods = false;      // project tolerance-level periods instead of failing
  double closedness_tolerance = 1e-6;
};

// Solves the implicit relation pointwise for the map generated by W.
// Throws RegimeError when 1 + d1 d2 W is not bounded away from zero.
TorusMap map_from_generating(const GeneratingFunction& w, GeneratingDiagnostics* diag = nullptr);
TorusMap map_from_generating(const GridField& w, GeneratingDiagnostics* diag = nullptr);

// Recovers the mean-zero generating function of a near-identity map.
// Throws RegimeError for maps outside the graph regime, ToleranceError when
// the reconstructed 1-form is not closed (non-symplectic) or has periods
// (non-Hamiltonian, e.g. rigid rotations).
GeneratingFunction generating_from_map(const TorusMap& phi,
                                       const GeneratingOptions& opt = {},
                                       GeneratingDiagnostics* diag = nullptr);

}  // namespace hamfac
