#pragma once

#include <vector>

#include "sympath/linear_flow.hpp"

namespace sympath {

// ---------------------------------------------------------------------------
// Maslov-type index of symplectic paths relative to Lagrangian boundary
// conditions, computed through the winding of det Q along a completed path.
// ---------------------------------------------------------------------------

struct IndexOptions {
  int grid = 4096;          // integration steps per unit time (initial)
  int max_refinements = 4;  // grid doublings allowed on phase-resolution failure
  int arc_steps = 128;
  int beta_steps = 1024;
  double rank_tol = kRankTol;     // relative singular-value cutoff for nullities
  double integer_tol = 1e-3;      // pre-rounding winding must be this close to Z
  double phase_jump_limit = 0.7853981633974483;  // pi/4 cap per node on Delta-bar
  std::vector<double> perturbation_schedule{1e-2, 1e-3, 1e-4};
};

/// dim ker of the V block of a symplectic matrix: n - rank(V), with the rank
/// counting singular values above rank_tol * sigma_max.
int lagrangian_kernel_dim(const Matrix& m, double rank_tol = kRankTol);

/// nu_{L0}(gamma) = dim ker V(endpoint).
int l0_nullity(const SymplecticPath& gamma, double rank_tol = kRankTol);

/// Unitary trace Q(t) = (U - iV)(U + iV)^{-1} with a continuous phase
/// delta(t) satisfying det Q = exp(2 i delta), delta(0) = 0.
struct UnitaryTrace {
  std::vector<double> t;
  std::vector<CMatrix> q;
  std::vector<double> delta;
  double winding() const { return delta.back() - delta.front(); }
};

/// Throws IntegralDefect if the per-node phase step exceeds the jump limit,
/// meaning the sampling cannot certify a continuous branch of the phase.
UnitaryTrace q_curve(const SymplecticPath& gamma,
                     double jump_limit = 0.7853981633974483);

/// Adjoin the arc I cos((1-2t)pi/2) + J sin((1-2t)pi/2) in front of gamma:
/// the result runs from J = -M+ to gamma's endpoint on [0, 1].
SymplecticPath prepend_arc(const SymplecticPath& gamma, int arc_steps = 128);

/// Path inside the nondegenerate stratum from a matrix with invertible V
/// block to M+ (det V > 0) or M- (det V < 0).  The unipotent factors shrink
/// linearly to zero while the V block follows gl_path, so det V never
/// vanishes along the way.
SymplecticPath closing_path_beta(const Matrix& endpoint, int steps = 1024);

/// i_{L0} of a nondegenerate path (winding of the completed path divided by
/// pi).  Throws DegenerateEndpoint when nu_{L0} > 0 and IntegralDefect when
/// the phase grid is too coarse or the winding is not integral.
int l0_index_nondegenerate(const SymplecticPath& gamma, const IndexOptions& opt = {});

/// Full (i, nu)_{L0} of the fundamental solution of B over [0, t_end].
/// Degenerate paths are handled with the coefficient perturbation B - eps I
/// over a decreasing schedule; the value must stabilize across two
/// consecutive schedule entries.
IndexPair l0_index(const CoefficientPath& b, double t_end, const IndexOptions& opt = {});

/// (i, nu)_L via the conjugated path: i_L(gamma) = i_{L0}(P^{-1} gamma P).
IndexPair l_index(const CoefficientPath& b, const LagrangianFrame& frame, double t_end,
                  const IndexOptions& opt = {});

}  // namespace sympath
