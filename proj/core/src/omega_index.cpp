#include "sympath/omega_index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace sympath {

namespace {

double omega_phase(Complex omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw InvalidArgument("omega must lie on the unit circle");
  if (std::abs(omega - Complex(1.0, 0.0)) < 1e-12) return 0.0;
  double phi = std::arg(omega);
  if (phi < 0) phi += 2.0 * M_PI;
  return phi;
}

// Twisted basis over [0, 2]: for each ell in [-m, m] two families of modes
//   family 0:  exp(mu J t) zeta,  zeta in E_i   = {(x; -ix)},  mu = pi ell + phi/2
//   family 1:  exp(mu J t) zeta,  zeta in E_-i  = {(x; +ix)},  mu = pi ell - phi/2
// Both are scalar phases times constant vectors, which keeps the quadratic
// form assembly to a family of moment integrals C(q) = int exp(i pi q t) B dt.
struct TwistedBasis {
  int n = 0, m = 0;
  double phi = 0.0;

  int dim() const { return 2 * n * (2 * m + 1); }
  int col(int fam, int ell, int p) const { return fam * (2 * m + 1) * n + (ell + m) * n + p; }
  double mu(int fam, int ell) const { return M_PI * ell + (fam == 0 ? 0.5 : -0.5) * phi; }
};

CMatrix zeta_columns(int n) {
  CMatrix z = CMatrix::Zero(2 * n, 2 * n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < n; ++p) {
    z(p, p) = s;
    z(n + p, p) = Complex(0, -s);      // E_i
    z(p, n + p) = s;
    z(n + p, n + p) = Complex(0, s);   // E_-i
  }
  return z;
}

// Moment integrals C(q) = int_0^2 exp(i pi q t) B(t) dt for q in [-2m, 2m],
// by the uniform trapezoid rule (exact for trigonometric polynomials of
// degree < P - 2m in exp(i pi t)).
std::vector<CMatrix> moment_integrals(const CoefficientPath& b, int m, int points) {
  const int d = b.dim;
  const int qmax = 2 * m;
  const int P = std::max(points, 4 * m + 16);
  std::vector<CMatrix> c(2 * qmax + 1, CMatrix::Zero(d, d));
  for (int k = 0; k < P; ++k) {
    const double t = 2.0 * k / P;
    const Matrix bt = b.eval(t);
    if (!bt.allFinite()) throw NumericalFailure("omega_index: non-finite coefficient");
    CMatrix btc = bt.cast<Complex>();
    for (int q = -qmax; q <= qmax; ++q) {
      const Complex ph = std::polar(2.0 / P, M_PI * q * t);
      c[q + qmax] += ph * btc;
    }
  }
  return c;
}

CMatrix assemble_twisted_form(const CoefficientPath& b, double phi, int m, int quad_points) {
  const int n = b.half_dim();
  TwistedBasis tb{n, m, phi};
  const int dim = tb.dim();
  const int qmax = 2 * m;

  std::vector<CMatrix> c = moment_integrals(b, m, quad_points);
  const CMatrix z = zeta_columns(n);
  // G(q) = Z^* C(q) Z; block (fam_a, fam_b) holds zeta_a^* C zeta_b.
  std::vector<CMatrix> g(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) g[i] = z.adjoint() * c[i] * z;

  CMatrix h = CMatrix::Zero(dim, dim);
  for (int fa = 0; fa < 2; ++fa)
    for (int la = -m; la <= m; ++la) {
      for (int fb = 0; fb < 2; ++fb)
        for (int lb = -m; lb <= m; ++lb) {
          const int q = (fb == 0 ? lb : -lb) - (fa == 0 ? la : -la);
          const CMatrix& blk = g[q + qmax];
          for (int pa = 0; pa < n; ++pa)
            for (int pb = 0; pb < n; ++pb)
              h(tb.col(fa, la, pa), tb.col(fb, lb, pb)) =
                  -0.5 * blk(fa * n + pa, fb * n + pb);
        }
      for (int pa = 0; pa < n; ++pa) {
        const int i = tb.col(fa, la, pa);
        h(i, i) += tb.mu(fa, la);
      }
    }
  return 0.5 * (h + h.adjoint());
}

int reference_negdim(int n, int m, double phi) {
  // Modes of the zero coefficient below zero: family 0 has mu = pi ell + phi/2,
  // family 1 has mu = pi ell - phi/2.
  if (phi == 0.0) return 2 * m * n;
  return (2 * m + 1) * n;
}

struct CountOutcome {
  bool separated = false;
  int neg = 0, zero = 0;
  double d = 0.0;
};

CountOutcome threshold_counts(const Vector& eigs, int expected_kernel) {
  CountOutcome out;
  Vector a = eigs.cwiseAbs();
  std::sort(a.data(), a.data() + a.size());
  const int nu = expected_kernel;
  if (nu >= a.size()) return out;
  const double first_genuine = a(nu);
  if (first_genuine <= 0.0) return out;
  if (nu > 0 && a(nu - 1) > 0.25 * first_genuine) return out;  // cluster not separated
  out.d = 0.25 * first_genuine;
  for (int i = 0; i < eigs.size(); ++i) {
    if (eigs(i) <= -out.d) ++out.neg;
    else if (eigs(i) < out.d) ++out.zero;
  }
  out.separated = (out.zero == nu);
  return out;
}

struct TruncatedIndex {
  bool ok = false;
  int neg = 0, zero = 0;
  double d = 0.0;
};

TruncatedIndex truncated_negdim(const CoefficientPath& b, double phi, int m, int quad_points,
                                int expected_kernel) {
  CMatrix h = assemble_twisted_form(b, phi, m, quad_points);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  CountOutcome c = threshold_counts(es.eigenvalues(), expected_kernel);
  return TruncatedIndex{c.separated, c.neg, c.zero, c.d};
}

// --- calibration -----------------------------------------------------------

// Standard count for the constant coefficient c I over [0, 2]: the number of
// twisted modes passing through zero between the zero system and c I.
int rotation_family_count(int n, double phi, double c) {
  auto count_lattice = [&](double shift) {
    int cnt = 0;
    for (int ell = -64; ell <= 64; ++ell) {
      const double mu = M_PI * ell + shift;
      if (c > 0 && mu >= 0 && mu < c) ++cnt;
      if (c < 0 && mu >= c && mu < 0) ++cnt;
    }
    return cnt;
  };
  const int total = count_lattice(phi / 2.0) + count_lattice(-phi / 2.0);
  return (c >= 0 ? n * total : -n * total);
}

struct OffsetKey {
  int n;
  long long phase_q;
  bool operator<(const OffsetKey& o) const {
    return n != o.n ? n < o.n : phase_q < o.phase_q;
  }
};

std::map<OffsetKey, int>& offset_cache() {
  static std::map<OffsetKey, int> cache;
  return cache;
}
std::mutex& offset_mutex() {
  static std::mutex mu;
  return mu;
}

int calibrated_offset(int n, Complex omega, double phi, const OmegaOptions& opt) {
  OffsetKey key{n, static_cast<long long>(std::llround(phi * 1e12))};
  {
    std::lock_guard<std::mutex> lock(offset_mutex());
    auto it = offset_cache().find(key);
    if (it != offset_cache().end()) return it->second;
  }

  const int m_cal = 16;
  int offset = 0;
  if (phi == 0.0) {
    // omega = 1 anchor: the period-doubling identity on the zero system,
    // i_1(gamma^2) = i_{L0}(gamma^1) + i_{L1}(gamma^1) + n.
    CoefficientPath zero = constant_coefficient(Matrix::Zero(2 * n, 2 * n));
    IndexOptions iopt;
    const int i_l0 = l0_index(zero, 1.0, iopt).index;
    const int i_l1 = l_index(zero, LagrangianFrame::L1(n), 1.0, iopt).index;
    const int target = i_l0 + i_l1 + n;
    TruncatedIndex t1 = truncated_negdim(zero, phi, m_cal, opt.quad_points, 2 * n);
    TruncatedIndex t2 = truncated_negdim(zero, phi, 2 * m_cal, opt.quad_points, 2 * n);
    if (!t1.ok || !t2.ok) throw UnstableTruncation("omega calibration: anchor kernel not separated");
    const int rel1 = t1.neg - reference_negdim(n, m_cal, phi);
    const int rel2 = t2.neg - reference_negdim(n, 2 * m_cal, phi);
    if (rel1 != rel2) throw UnstableTruncation("omega calibration: anchor not m-stable");
    offset = target - rel1;
  } else {
    // omega != 1: pin against the closed-form rotation family c I.
    double c = 0.0;
    for (double cand : {0.37, 0.61, 0.83, 1.07}) {
      double dist = 1e9;
      for (int ell = -4; ell <= 4; ++ell) {
        dist = std::min(dist, std::abs(cand - (M_PI * ell + phi / 2)));
        dist = std::min(dist, std::abs(cand - (M_PI * ell - phi / 2)));
      }
      if (dist > 0.05) { c = cand; break; }
    }
    if (c == 0.0) throw NumericalFailure("omega calibration: no safe rotation amplitude");
    CoefficientPath rot = constant_coefficient(c * Matrix::Identity(2 * n, 2 * n));
    const int expected = rotation_family_count(n, phi, c);
    TruncatedIndex t1 = truncated_negdim(rot, phi, m_cal, opt.quad_points, 0);
    TruncatedIndex t2 = truncated_negdim(rot, phi, 2 * m_cal, opt.quad_points, 0);
    if (!t1.ok || !t2.ok) throw UnstableTruncation("omega calibration: spectrum not separated");
    const int rel1 = t1.neg - reference_negdim(n, m_cal, phi);
    const int rel2 = t2.neg - reference_negdim(n, 2 * m_cal, phi);
    if (rel1 != rel2) throw UnstableTruncation("omega calibration: not m-stable");
    offset = expected - rel1;
  }

  std::lock_guard<std::mutex> lock(offset_mutex());
  offset_cache()[key] = offset;
  return offset;
}

}  // namespace

int omega_nullity(const Matrix& endpoint, Complex omega, double rank_tol) {
  const int d = static_cast<int>(endpoint.rows());
  CMatrix a = endpoint.cast<Complex>() - omega * CMatrix::Identity(d, d);
  Eigen::JacobiSVD<CMatrix> svd(a);
  const Vector sv = svd.singularValues();
  const double smax = std::max(sv(0), 1.0);
  int kernel = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= rank_tol * smax) ++kernel;
  return kernel;
}

int omega_index(const CoefficientPath& b, Complex omega, const OmegaOptions& opt,
                RelativeMorseData* details) {
  const int n = b.half_dim();
  const double phi = omega_phase(omega);
  const int steps = std::max(64, 2 * opt.grid);
  SymplecticPath gamma2 = fundamental_solution(b, 2.0, steps);
  const int nu = omega_nullity(gamma2.endpoint(), omega, opt.rank_tol);
  const int offset = calibrated_offset(n, omega, phi, opt);

  int m = std::max(8, opt.modes);
  for (int esc = 0; esc <= opt.max_escalations; ++esc, m *= 2) {
    TruncatedIndex t1 = truncated_negdim(b, phi, m, opt.quad_points, nu);
    TruncatedIndex t2 = truncated_negdim(b, phi, 2 * m, opt.quad_points, nu);
    if (!t1.ok || !t2.ok) continue;  // kernel cluster unresolved: escalate
    const int idx1 = t1.neg - reference_negdim(n, m, phi) + offset;
    const int idx2 = t2.neg - reference_negdim(n, 2 * m, phi) + offset;
    if (idx1 != idx2) continue;
    if (details) {
      details->negdim_b = t2.neg;
      details->negdim_ref = reference_negdim(n, 2 * m, phi);
      details->calibration_offset = offset;
      details->resolved_index = idx2;
      details->near_zero = t2.zero;
      details->d = t2.d;
      details->modes = 2 * m;
    }
    return idx1;
  }
  throw UnstableTruncation("omega_index: truncations m and 2m never agreed");
}

IndexPair omega_index_pair(const CoefficientPath& b, Complex omega, const OmegaOptions& opt) {
  const int steps = std::max(64, 2 * opt.grid);
  SymplecticPath gamma2 = fundamental_solution(b, 2.0, steps);
  IndexPair pair;
  pair.boundary = Boundary::Periodic;
  pair.nullity = omega_nullity(gamma2.endpoint(), omega, opt.rank_tol);
  pair.index = omega_index(b, omega, opt);
  return pair;
}

IndexPair sqrt_minus_one_l0_index(const CoefficientPath& b, const IndexOptions& opt) {
  IndexPair one = l0_index(b, 1.0, opt);
  IndexPair two = l0_index(b, 2.0, opt);
  return IndexPair{two.index - one.index, two.nullity - one.nullity, Boundary::L0};
}

}  // namespace sympath
