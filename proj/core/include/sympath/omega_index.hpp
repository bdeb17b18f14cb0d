#pragma once

#include "sympath/linear_flow.hpp"
#include "sympath/maslov_index.hpp"

namespace sympath {

// ---------------------------------------------------------------------------
// omega-index pairs of 2-periodic linear systems, realized as calibrated
// relative Morse indices over a twisted trigonometric truncation.
// ---------------------------------------------------------------------------

/// Complex dimension of ker(endpoint - omega I), counting singular values
/// below rank_tol * sigma_max.
int omega_nullity(const Matrix& endpoint, Complex omega, double rank_tol = kRankTol);

struct RelativeMorseData {
  int negdim_b = 0;            // d-thresholded negative count for A - B
  int negdim_ref = 0;          // same count for the zero coefficient (analytic)
  int calibration_offset = 0;  // index of the zero coefficient in this convention
  int resolved_index = 0;      // negdim_b - negdim_ref + calibration_offset
  int near_zero = 0;           // eigenvalues inside (-d, d); must equal nu_omega
  double d = 0.0;
  int modes = 0;
};

struct OmegaOptions {
  int modes = 24;        // truncation m; the result is checked against 2m
  int grid = 2048;       // integration steps per unit time for the endpoint
  int quad_points = 0;   // 0: automatic (exact for trig-polynomial coefficients)
  double rank_tol = kRankTol;
  int max_escalations = 2;
};

/// i_omega of the fundamental solution of B over [0, 2].  B must be the
/// 2-periodic coefficient of the iterated path (or any continuous symmetric
/// coefficient on [0, 2]).  Throws UnstableTruncation when m and 2m disagree
/// after the escalation budget.
int omega_index(const CoefficientPath& b, Complex omega, const OmegaOptions& opt = {},
                RelativeMorseData* details = nullptr);

/// (i_omega, nu_omega) in one call.
IndexPair omega_index_pair(const CoefficientPath& b, Complex omega,
                           const OmegaOptions& opt = {});

/// (i, nu)^{L0}_{sqrt(-1)} of gamma^1 through the period-2 iteration
/// identity: i = i_{L0}(gamma^2) - i_{L0}(gamma^1), likewise for nu.
/// b must extend to [0, 2] (brake-symmetric coefficient).
IndexPair sqrt_minus_one_l0_index(const CoefficientPath& b, const IndexOptions& opt = {});

}  // namespace sympath
