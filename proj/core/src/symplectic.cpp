#include "sympath/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace sympath {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::L0: return "L0";
    case Boundary::L1: return "L1";
    case Boundary::GeneralL: return "L";
    case Boundary::Periodic: return "periodic";
  }
  return "?";
}

Matrix standard_J(int n) {
  if (n < 1) throw InvalidArgument("standard_J: n must be positive");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

Matrix brake_N(int n) {
  if (n < 1) throw InvalidArgument("brake_N: n must be positive");
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  m.topLeftCorner(n, n) *= -1.0;
  return m;
}

Matrix reflection_Jn(int n) {
  if (n < 1) throw InvalidArgument("reflection_Jn: n must be positive");
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = -1.0;
  return m;
}

Matrix endpoint_Mplus(int n) {
  if (n < 1) throw InvalidArgument("endpoint_Mplus: n must be positive");
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = Matrix::Identity(n, n);
  m.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return m;
}

Matrix endpoint_Mminus(int n) {
  if (n < 1) throw InvalidArgument("endpoint_Mminus: n must be positive");
  Matrix jn = reflection_Jn(n);
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = jn;
  m.bottomLeftCorner(n, n) = -jn;
  return m;
}

double symplectic_defect(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  if (d != m.cols() || d % 2 != 0 || d == 0)
    throw InvalidArgument("symplectic_defect: matrix must be square of even dimension");
  const Matrix j = standard_J(d / 2);
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Matrix& m, double tol) { return symplectic_defect(m) <= tol; }

Matrix project_symplectic(const Matrix& m) {
  const int n = static_cast<int>(m.rows()) / 2;
  const Matrix j = standard_J(n);
  Matrix out = m;
  // out <- out * (-J out^T J out)^(-1/2), expanded as a binomial series in
  // E = S - I.  S is J-self-adjoint, so the correction stays symplectic.
  for (int pass = 0; pass < 4; ++pass) {
    Matrix s = -j * (out.transpose() * j * out);
    Matrix e = s - Matrix::Identity(2 * n, 2 * n);
    double en = e.cwiseAbs().maxCoeff();
    if (en <= 1e-15) break;
    if (en > 0.5) throw NumericalFailure("project_symplectic: input too far from Sp(2n)");
    Matrix x = Matrix::Identity(2 * n, 2 * n) - 0.5 * e + 0.375 * e * e;
    out = out * x;
  }
  return out;
}

SpBlocks split_blocks(const Matrix& m) {
  const int n = static_cast<int>(m.rows()) / 2;
  return SpBlocks{m.topLeftCorner(n, n), m.topRightCorner(n, n),
                  m.bottomLeftCorner(n, n), m.bottomRightCorner(n, n)};
}

Matrix merge_blocks(const SpBlocks& b) {
  const int n = static_cast<int>(b.s.rows());
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = b.s;
  m.topRightCorner(n, n) = b.v;
  m.bottomLeftCorner(n, n) = b.t;
  m.bottomRightCorner(n, n) = b.u;
  return m;
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (!m_.allFinite()) throw InvalidArgument("SymplecticMatrix: non-finite entries");
  if (!is_symplectic(m_, tol))
    throw InvalidArgument("SymplecticMatrix: defect exceeds tolerance");
}

LagrangianFrame LagrangianFrame::L0(int n) {
  return LagrangianFrame{Matrix::Identity(2 * n, 2 * n), Boundary::L0};
}

LagrangianFrame LagrangianFrame::L1(int n) {
  return LagrangianFrame{endpoint_Mplus(n), Boundary::L1};
}

LagrangianFrame LagrangianFrame::general(Matrix p, double tol) {
  const int d = static_cast<int>(p.rows());
  if (d % 2 != 0 || p.cols() != d) throw InvalidArgument("LagrangianFrame: bad shape");
  if ((p.transpose() * p - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw InvalidArgument("LagrangianFrame: p must be orthogonal");
  if (!is_symplectic(p, tol)) throw InvalidArgument("LagrangianFrame: p must be symplectic");
  return LagrangianFrame{std::move(p), Boundary::GeneralL};
}

UnipotentFactors unipotent_factorization(const Matrix& m, double tol) {
  const SpBlocks b = split_blocks(m);
  Eigen::JacobiSVD<Matrix> svd(b.v);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smax <= 0.0 || smin <= tol * smax)
    throw DegenerateEndpoint("unipotent_factorization: V block is singular");
  Eigen::PartialPivLU<Matrix> lu(b.v);
  UnipotentFactors f;
  f.v = b.v;
  // W = U V^{-1}, W' = V^{-1} S; both are symmetric for symplectic input.
  f.w = lu.solve(b.u.transpose()).transpose();
  f.wp = lu.solve(b.s);
  f.w = 0.5 * (f.w + f.w.transpose());
  f.wp = 0.5 * (f.wp + f.wp.transpose());
  return f;
}

Matrix assemble_from_factors(const UnipotentFactors& f) {
  const int n = static_cast<int>(f.v.rows());
  Matrix lower_w = Matrix::Identity(2 * n, 2 * n);
  lower_w.bottomLeftCorner(n, n) = f.w;
  Matrix lower_wp = Matrix::Identity(2 * n, 2 * n);
  lower_wp.bottomLeftCorner(n, n) = f.wp;
  Matrix mid = Matrix::Zero(2 * n, 2 * n);
  mid.topRightCorner(n, n) = f.v;
  mid.bottomLeftCorner(n, n) = -f.v.inverse().transpose();
  return lower_w * mid * lower_wp;
}

Matrix so_log(const Matrix& r) {
  const int n = static_cast<int>(r.rows());
  if (n == 0) return r;
  if (n == 1) {
    if (r(0, 0) < 0.0) throw InvalidArgument("so_log: determinant must be +1");
    return Matrix::Zero(1, 1);
  }
  Eigen::RealSchur<Matrix> schur(r);
  Matrix t = schur.matrixT();
  Matrix z = schur.matrixU();
  // Orthogonal + quasi-triangular means block diagonal: 2x2 rotation
  // blocks and +-1 entries.  -1 entries come in pairs (det = +1) and are
  // paired into shared pi-rotation planes.
  Matrix k = Matrix::Zero(n, n);
  std::vector<int> minus_ones;
  int i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-10) {
      const double theta = std::atan2(t(i + 1, i), t(i, i));
      k(i, i + 1) = -theta;
      k(i + 1, i) = theta;
      i += 2;
    } else {
      if (t(i, i) < 0.0) minus_ones.push_back(i);
      i += 1;
    }
  }
  if (minus_ones.size() % 2 != 0)
    throw InvalidArgument("so_log: determinant must be +1");
  for (std::size_t p = 0; p + 1 < minus_ones.size(); p += 2) {
    const int a = minus_ones[p], b = minus_ones[p + 1];
    k(a, b) = -M_PI;
    k(b, a) = M_PI;
  }
  return z * k * z.transpose();
}

std::vector<Matrix> gl_path(const Matrix& v, int steps) {
  const int n = static_cast<int>(v.rows());
  if (steps < 1) throw InvalidArgument("gl_path: steps must be positive");
  Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  if (sv(n - 1) <= 1e-12 * std::max(1.0, sv(0)))
    throw DegenerateEndpoint("gl_path: matrix is numerically singular");

  // Polar pieces: v = q * p with q orthogonal and p positive definite.
  const Matrix q = svd.matrixU() * svd.matrixV().transpose();
  const Matrix p = svd.matrixV() * sv.asDiagonal() * svd.matrixV().transpose();
  const double det_sign = q.determinant() > 0 ? 1.0 : -1.0;
  const Matrix target = det_sign > 0 ? Matrix(Matrix::Identity(n, n)) : reflection_Jn(n);

  const Matrix log_p = svd.matrixV() * sv.array().log().matrix().asDiagonal() *
                       svd.matrixV().transpose();
  const Matrix k = so_log(q.transpose() * target);

  std::vector<Matrix> path;
  path.reserve(steps + 1);
  for (int s = 0; s <= steps; ++s) {
    const double a = static_cast<double>(s) / steps;
    // Rodrigues-free exponentials via scaled eigen-structure would also do;
    // the matrices are small, so direct series through Eigen is fine.
    Matrix pa = ((1.0 - a) * log_p).exp();
    Matrix qa = q * (a * k).exp();
    path.push_back(qa * pa);
  }
  path.front() = v;       // exact endpoints
  path.back() = target;
  return path;
}

}  // namespace sympath
