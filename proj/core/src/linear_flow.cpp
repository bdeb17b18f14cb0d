#include "sympath/linear_flow.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace sympath {

namespace {

void require_symmetric(const Matrix& m, double tol = 1e-9) {
  if (!m.allFinite()) throw NumericalFailure("coefficient sample is not finite");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw InvalidCoefficient("coefficient sample is not symmetric");
}

}  // namespace

CoefficientPath constant_coefficient(const Matrix& b) {
  require_symmetric(b);
  CoefficientPath p;
  p.dim = static_cast<int>(b.rows());
  p.eval = [b](double) { return b; };
  p.two_periodic = true;
  return p;
}

CoefficientPath trig_coefficient(const Matrix& c0, const std::vector<Matrix>& cos_terms,
                                 const std::vector<Matrix>& sin_terms) {
  require_symmetric(c0);
  for (const auto& m : cos_terms) require_symmetric(m);
  for (const auto& m : sin_terms) require_symmetric(m);
  CoefficientPath p;
  p.dim = static_cast<int>(c0.rows());
  p.eval = [c0, cos_terms, sin_terms](double t) {
    Matrix b = c0;
    for (std::size_t q = 0; q < cos_terms.size(); ++q)
      b += std::cos((q + 1) * M_PI * t) * cos_terms[q];
    for (std::size_t q = 0; q < sin_terms.size(); ++q)
      b += std::sin((q + 1) * M_PI * t) * sin_terms[q];
    return b;
  };
  p.two_periodic = true;
  return p;
}

CoefficientPath shift_coefficient(const CoefficientPath& b, double shift) {
  CoefficientPath p = b;
  const int d = b.dim;
  auto base = b.eval;
  p.eval = [base, shift, d](double t) {
    return Matrix(base(t) + shift * Matrix::Identity(d, d));
  };
  p.positive_definite = false;
  return p;
}

CoefficientPath scale_time(const CoefficientPath& b, double factor) {
  CoefficientPath p = b;
  auto base = b.eval;
  p.eval = [base, factor](double t) { return Matrix(factor * base(factor * t)); };
  p.two_periodic = false;
  p.brake_symmetric = false;
  return p;
}

CoefficientPath conjugate_coefficient(const CoefficientPath& b, const Matrix& p_frame) {
  CoefficientPath p = b;
  auto base = b.eval;
  Matrix pf = p_frame;
  p.eval = [base, pf](double t) { return Matrix(pf.transpose() * base(t) * pf); };
  p.brake_symmetric = false;
  return p;
}

CoefficientPath brake_extend(const CoefficientPath& b_half) {
  CoefficientPath p = b_half;
  auto base = b_half.eval;
  const Matrix n_refl = brake_N(b_half.half_dim());
  p.eval = [base, n_refl](double t) {
    double s = std::fmod(t, 2.0);
    if (s < 0) s += 2.0;
    if (s <= 1.0) return base(s);
    return Matrix(n_refl * base(2.0 - s) * n_refl);
  };
  p.two_periodic = true;
  p.brake_symmetric = true;
  return p;
}

double SymplecticPath::max_defect() const {
  double d = 0.0;
  for (const auto& m : values) d = std::max(d, symplectic_defect(m));
  return d;
}

SymplecticPath fundamental_solution(const CoefficientPath& b, double t_end, int steps) {
  if (steps < 16) throw InvalidArgument("fundamental_solution: need at least 16 steps");
  if (!(t_end > 0)) throw InvalidArgument("fundamental_solution: t_end must be positive");
  const int d = b.dim;
  if (d <= 0 || d % 2 != 0) throw InvalidCoefficient("coefficient dimension must be even");
  const Matrix j = standard_J(d / 2);

  // Two-point Gauss Magnus stepper, fourth order:
  //   Omega = h/2 (A1 + A2) + sqrt(3) h^2 / 12 [A2, A1],  A_i = J B(t + c_i h).
  const double h = t_end / steps;
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;

  SymplecticPath path;
  path.t.resize(steps + 1);
  path.values.resize(steps + 1);
  path.t[0] = 0.0;
  path.values[0] = Matrix::Identity(d, d);

  Matrix cur = path.values[0];
  for (int s = 0; s < steps; ++s) {
    const double t0 = s * h;
    Matrix b1 = b.eval(t0 + c1 * h);
    Matrix b2 = b.eval(t0 + c2 * h);
    require_symmetric(b1);
    require_symmetric(b2);
    Matrix a1 = j * b1;
    Matrix a2 = j * b2;
    Matrix omega = 0.5 * h * (a1 + a2) + (std::sqrt(3.0) * h * h / 12.0) * (a2 * a1 - a1 * a2);
    cur = omega.exp() * cur;
    if (!cur.allFinite()) throw NumericalFailure("fundamental_solution: blow-up");
    if (symplectic_defect(cur) > 1e-12) cur = project_symplectic(cur);
    path.t[s + 1] = (s + 1 == steps) ? t_end : (s + 1) * h;
    path.values[s + 1] = cur;
  }
  return path;
}

SymplecticPath iterate_path(const SymplecticPath& gamma1, int k) {
  if (k < 1) throw InvalidArgument("iterate_path: k must be positive");
  if (std::abs(gamma1.t_begin()) > 1e-12 || std::abs(gamma1.t_end() - 1.0) > 1e-12)
    throw DomainMismatch("iterate_path: input path must live on [0, 1]");
  if (k == 1) return gamma1;

  const int d2 = static_cast<int>(gamma1.values[0].rows());
  const Matrix n_refl = brake_N(d2 / 2);
  const Matrix g1 = gamma1.endpoint();
  const Matrix r = g1.inverse() * n_refl * g1;        // gamma(1)^{-1} N gamma(1)
  const Matrix g2 = n_refl * r;                       // gamma(2)

  const std::size_t m = gamma1.size() - 1;            // nodes per unit segment
  SymplecticPath out;
  out.t.reserve(k * m + 1);
  out.values.reserve(k * m + 1);
  out.t.push_back(0.0);
  out.values.push_back(gamma1.values[0]);

  Matrix g2_pow = Matrix::Identity(d2, d2);           // gamma(2)^i for current i
  for (int seg = 0; seg < k; ++seg) {
    const bool forward = (seg % 2 == 0);
    if (seg > 0 && seg % 2 == 0) g2_pow = g2 * g2_pow;
    for (std::size_t q = 1; q <= m; ++q) {
      double tt;
      Matrix val;
      if (forward) {
        tt = seg + gamma1.t[q];
        val = gamma1.values[q] * g2_pow;
      } else {
        tt = seg + 1.0 - gamma1.t[m - q];
        val = n_refl * gamma1.values[m - q] * r * g2_pow;
      }
      out.t.push_back(tt);
      out.values.push_back(std::move(val));
    }
  }
  return out;
}

BrakeSymmetryReport check_brake_symmetry(CoefficientPath& b, int samples, double tol) {
  if (samples < 8) throw InvalidArgument("check_brake_symmetry: need at least 8 samples");
  const int n = b.half_dim();
  const Matrix n_refl = brake_N(n);
  BrakeSymmetryReport rep;
  rep.samples = samples;
  for (int s = 0; s <= samples; ++s) {
    const double t = 2.0 * s / samples - 1.0;  // cover [-1, 1]
    Matrix bt = b.eval(t);
    rep.periodic_defect =
        std::max(rep.periodic_defect, (b.eval(t + 2.0) - bt).cwiseAbs().maxCoeff());
    rep.brake_defect = std::max(
        rep.brake_defect,
        (b.eval(1.0 + t) * n_refl - n_refl * b.eval(1.0 - t)).cwiseAbs().maxCoeff());
  }
  rep.periodic_ok = rep.periodic_defect <= tol;
  rep.brake_ok = rep.brake_defect <= tol;
  if (rep.periodic_ok) b.two_periodic = true;
  if (rep.brake_ok) b.brake_symmetric = true;
  return rep;
}

}  // namespace sympath
