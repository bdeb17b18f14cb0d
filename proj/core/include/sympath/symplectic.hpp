#pragma once

#include <vector>

#include "sympath/types.hpp"

namespace sympath {

// ---------------------------------------------------------------------------
// Exact constants of the symplectic category.
// Coordinates are z = (x, y) in R^{2n} with x, y in R^n; the distinguished
// Lagrangian subspaces are L0 = {0} + R^n and L1 = R^n + {0}.
// ---------------------------------------------------------------------------

/// J = (0 -I; I 0), the standard symplectic structure.
Matrix standard_J(int n);

/// N = (-I 0; 0 I), the brake reflection fixing L0.
Matrix brake_N(int n);

/// diag(-1, 1, ..., 1).
Matrix reflection_Jn(int n);

/// M+ = (0 I; -I 0).
Matrix endpoint_Mplus(int n);

/// M- = (0 Jn; -Jn 0).
Matrix endpoint_Mminus(int n);

/// max-norm of M^T J M - J.
double symplectic_defect(const Matrix& m);

bool is_symplectic(const Matrix& m, double tol = kSymplecticTol);

/// Project a near-symplectic matrix back onto Sp(2n).  Intended as a
/// polish after integration steps; diverges on far-from-symplectic input.
Matrix project_symplectic(const Matrix& m);

/// Block layout M = (S V; T U) with n x n blocks.  The columns of (V; U)
/// span the image of L0 under M.
struct SpBlocks {
  Matrix s, v, t, u;
};

SpBlocks split_blocks(const Matrix& m);
Matrix merge_blocks(const SpBlocks& b);

/// Checked symplectic matrix.  Construction validates the defect.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix m, double tol = kSymplecticTol);
  const Matrix& mat() const { return m_; }
  int half_dim() const { return static_cast<int>(m_.rows()) / 2; }
  SpBlocks blocks() const { return split_blocks(m_); }

 private:
  Matrix m_;
};

/// Orthogonal symplectic frame P with P L0 = L.  P commutes with J.
struct LagrangianFrame {
  Matrix p;
  Boundary label = Boundary::L0;

  static LagrangianFrame L0(int n);
  static LagrangianFrame L1(int n);
  static LagrangianFrame general(Matrix p, double tol = kSymplecticTol);
};

// ---------------------------------------------------------------------------
// Factorization machinery behind the closing paths.
// ---------------------------------------------------------------------------

/// M = (I 0; W I) (0 V; -V^{-T} 0) (I 0; W' I) with W, W' symmetric.
/// Exists exactly when the V block of M is invertible.
struct UnipotentFactors {
  Matrix w;   // = U V^{-1}
  Matrix v;   // V block of M
  Matrix wp;  // = V^{-1} S
};

/// Throws DegenerateEndpoint when the V block is singular (relative
/// smallest singular value below tol).
UnipotentFactors unipotent_factorization(const Matrix& m, double tol = 1e-8);

Matrix assemble_from_factors(const UnipotentFactors& f);

/// Discrete path of invertible matrices from V to I (det V > 0) or to
/// Jn (det V < 0), with det of constant sign along the way.  Built from
/// the polar decomposition: the positive factor is interpolated through
/// positive-definite matrices, the orthogonal factor along a geodesic of
/// its component.  Returns steps+1 matrices including both endpoints.
std::vector<Matrix> gl_path(const Matrix& v, int steps);

/// Principal-type logarithm of a special orthogonal matrix (skew output).
/// Eigenvalue -1 pairs are rotated by pi in a shared plane.
Matrix so_log(const Matrix& r);

}  // namespace sympath
