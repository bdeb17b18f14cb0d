#pragma once

#include <functional>
#include <vector>

#include "sympath/symplectic.hpp"
#include "sympath/types.hpp"

namespace sympath {

// ---------------------------------------------------------------------------
// Linear Hamiltonian systems ydot = J B(t) y and their fundamental solutions.
// ---------------------------------------------------------------------------

/// Time-dependent symmetric coefficient B(t).  Flags describe structure the
/// evaluator is *claimed* to have; check_brake_symmetry audits them.
struct CoefficientPath {
  int dim = 0;  // 2n
  std::function<Matrix(double)> eval;
  bool two_periodic = false;      // B(t + 2) = B(t)
  bool brake_symmetric = false;   // B(1 + t) N = N B(1 - t)
  bool positive_definite = false;

  Matrix operator()(double t) const { return eval(t); }
  int half_dim() const { return dim / 2; }
};

CoefficientPath constant_coefficient(const Matrix& b);

/// B(t) = c0 + sum_p cos_terms[p-1] cos(p pi t) + sum_p sin_terms[p-1] sin(p pi t).
/// All terms must be symmetric of equal dimension; empty blocks allowed.
CoefficientPath trig_coefficient(const Matrix& c0,
                                 const std::vector<Matrix>& cos_terms,
                                 const std::vector<Matrix>& sin_terms = {});

/// B(t) + shift * I.
CoefficientPath shift_coefficient(const CoefficientPath& b, double shift);

/// factor * B(factor * t): the coefficient of the path reparametrized from
/// [0, tau] to [0, tau/factor].
CoefficientPath scale_time(const CoefficientPath& b, double factor);

/// P^T B(t) P for an orthogonal symplectic frame P (the coefficient of the
/// conjugated path P^{-1} gamma P).
CoefficientPath conjugate_coefficient(const CoefficientPath& b, const Matrix& p);

/// Extend B given on [0, 1] to the 2-periodic brake-symmetric coefficient:
/// B(t) = N B(2 - t) N on [1, 2], then 2-periodically to all of R.
CoefficientPath brake_extend(const CoefficientPath& b_half);

/// Discretized symplectic path: gamma(t[0]) = I, every node in Sp(2n).
struct SymplecticPath {
  std::vector<double> t;
  std::vector<Matrix> values;

  int half_dim() const { return values.empty() ? 0 : static_cast<int>(values[0].rows()) / 2; }
  std::size_t size() const { return values.size(); }
  double t_begin() const { return t.front(); }
  double t_end() const { return t.back(); }
  const Matrix& endpoint() const { return values.back(); }

  /// max over nodes of the symplectic defect.
  double max_defect() const;
};

/// Fundamental solution of ydot = J B(t) y on [0, t_end] with steps uniform
/// steps (steps+1 nodes).  Fourth-order Magnus stepping with a symplectic
/// polish per node.  Throws InvalidCoefficient if a sampled B is not
/// symmetric, NumericalFailure on non-finite values.
SymplecticPath fundamental_solution(const CoefficientPath& b, double t_end, int steps);

/// The iteration path gamma^k on [0, k] of gamma restricted to [0, 1],
/// assembled from the brake reflection segment formulas:
///   [2i, 2i+1]   : gamma(t - 2i) gamma(2)^i
///   [2i+1, 2i+2] : N gamma(2i + 2 - t) gamma(1)^{-1} N gamma(1) gamma(2)^i
/// with gamma(2) = N gamma(1)^{-1} N gamma(1).  Input must live on [0, 1].
SymplecticPath iterate_path(const SymplecticPath& gamma1, int k);

struct BrakeSymmetryReport {
  double periodic_defect = 0.0;  // max |B(t+2) - B(t)|
  double brake_defect = 0.0;     // max |B(1+t) N - N B(1-t)|
  int samples = 0;
  bool periodic_ok = false;
  bool brake_ok = false;
};

/// Sample both structure identities on a uniform grid.  Flags of b are
/// updated only when the respective defect is at most tol.
BrakeSymmetryReport check_brake_symmetry(CoefficientPath& b, int samples,
                                         double tol = 1e-9);

}  // namespace sympath
