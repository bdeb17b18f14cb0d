#include "sympath/maslov_index.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace sympath {

namespace {

// det(U + iV) normalized to the unit circle.  For real U, V the unitary
// trace satisfies det Q = conj(w)/w with w = det(U + iV), so the phase of w
// carries the whole winding: Delta-bar = -arg(w) up to a constant.
Complex phase_det(const Matrix& node) {
  const int n = static_cast<int>(node.rows()) / 2;
  CMatrix upv = node.bottomRightCorner(n, n).cast<Complex>() +
                Complex(0.0, 1.0) * node.topRightCorner(n, n).cast<Complex>();
  Complex w = upv.determinant();
  const double a = std::abs(w);
  if (!(a > 0.0) || !std::isfinite(a))
    throw NumericalFailure("phase_det: U + iV numerically singular");
  return w / a;
}

struct SegmentWinding {
  double total = 0.0;
  double max_step = 0.0;
};

SegmentWinding winding_over(const std::vector<Matrix>& nodes) {
  SegmentWinding sw;
  Complex prev = phase_det(nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    Complex cur = phase_det(nodes[i]);
    const double step = -std::arg(cur / prev);
    sw.total += step;
    sw.max_step = std::max(sw.max_step, std::abs(step));
    prev = cur;
  }
  return sw;
}

std::vector<Matrix> arc_nodes(int n, int steps) {
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  const Matrix j = standard_J(n);
  std::vector<Matrix> nodes;
  nodes.reserve(steps + 1);
  for (int s = 0; s <= steps; ++s) {
    const double t = 0.5 * s / steps;  // arc parameter in [0, 1/2]
    const double th = (1.0 - 2.0 * t) * M_PI / 2.0;
    nodes.push_back(std::cos(th) * id + std::sin(th) * j);
  }
  return nodes;
}

std::vector<Matrix> beta_nodes(const Matrix& endpoint, int steps) {
  UnipotentFactors f = unipotent_factorization(endpoint);
  std::vector<Matrix> vpath = gl_path(f.v, steps);
  std::vector<Matrix> nodes;
  nodes.reserve(steps + 1);
  for (int s = 0; s <= steps; ++s) {
    const double a = static_cast<double>(s) / steps;
    UnipotentFactors fs{(1.0 - a) * f.w, vpath[s], (1.0 - a) * f.wp};
    nodes.push_back(assemble_from_factors(fs));
  }
  nodes.front() = endpoint;  // exact start
  return nodes;
}

}  // namespace

int lagrangian_kernel_dim(const Matrix& m, double rank_tol) {
  const int n = static_cast<int>(m.rows()) / 2;
  Eigen::JacobiSVD<Matrix> svd(m.topRightCorner(n, n));
  const Vector sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0.0)) return n;
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (sv(i) > rank_tol * smax) ++rank;
  return n - rank;
}

int l0_nullity(const SymplecticPath& gamma, double rank_tol) {
  return lagrangian_kernel_dim(gamma.endpoint(), rank_tol);
}

UnitaryTrace q_curve(const SymplecticPath& gamma, double jump_limit) {
  UnitaryTrace tr;
  tr.t = gamma.t;
  tr.q.reserve(gamma.size());
  tr.delta.reserve(gamma.size());
  const int n = gamma.half_dim();
  Complex prev;
  double delta = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const Matrix& m = gamma.values[i];
    CMatrix u = m.bottomRightCorner(n, n).cast<Complex>();
    CMatrix v = m.topRightCorner(n, n).cast<Complex>();
    CMatrix upv = u + Complex(0, 1) * v;
    tr.q.push_back((u - Complex(0, 1) * v) * upv.inverse());
    Complex w = phase_det(m);
    if (i > 0) {
      const double step = -std::arg(w / prev);
      if (std::abs(step) > jump_limit)
        throw IntegralDefect("q_curve: phase step exceeds jump limit; refine the grid");
      delta += step;
    }
    tr.delta.push_back(delta);
    prev = w;
  }
  return tr;
}

SymplecticPath prepend_arc(const SymplecticPath& gamma, int arc_steps) {
  const int n = gamma.half_dim();
  if ((gamma.values.front() - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() > 1e-9)
    throw InvalidArgument("prepend_arc: path must start at the identity");
  std::vector<Matrix> arc = arc_nodes(n, arc_steps);
  SymplecticPath out;
  const double span = gamma.t_end() - gamma.t_begin();
  out.t.reserve(arc.size() + gamma.size() - 1);
  out.values.reserve(arc.size() + gamma.size() - 1);
  for (int s = 0; s <= arc_steps; ++s) {
    out.t.push_back(0.5 * s / arc_steps);
    out.values.push_back(arc[s]);
  }
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    out.t.push_back(0.5 + 0.5 * (gamma.t[i] - gamma.t_begin()) / span);
    out.values.push_back(gamma.values[i]);
  }
  return out;
}

SymplecticPath closing_path_beta(const Matrix& endpoint, int steps) {
  std::vector<Matrix> nodes = beta_nodes(endpoint, steps);
  SymplecticPath out;
  out.t.resize(nodes.size());
  out.values = std::move(nodes);
  for (std::size_t i = 0; i < out.t.size(); ++i)
    out.t[i] = static_cast<double>(i) / (out.t.size() - 1);
  return out;
}

int l0_index_nondegenerate(const SymplecticPath& gamma, const IndexOptions& opt) {
  const int n = gamma.half_dim();
  if (l0_nullity(gamma, opt.rank_tol) != 0)
    throw DegenerateEndpoint("l0_index_nondegenerate: path endpoint is L0-degenerate");

  // Arc from J = -M+ down to the identity.
  int arc_steps = std::max(opt.arc_steps, 16 * n);
  SegmentWinding arc = winding_over(arc_nodes(n, arc_steps));
  while (arc.max_step > opt.phase_jump_limit) {
    arc_steps *= 2;
    arc = winding_over(arc_nodes(n, arc_steps));
  }

  // The path itself: resolution is the caller's responsibility.
  SegmentWinding mid = winding_over(gamma.values);
  if (mid.max_step > opt.phase_jump_limit)
    throw IntegralDefect("l0_index_nondegenerate: path grid too coarse for the phase");

  // Closing path: refine internally until the phase is resolved.
  int beta_steps = opt.beta_steps;
  SegmentWinding tail = winding_over(beta_nodes(gamma.endpoint(), beta_steps));
  for (int r = 0; tail.max_step > opt.phase_jump_limit; ++r) {
    if (r > 8) throw IntegralDefect("l0_index_nondegenerate: closing path never resolved");
    beta_steps *= 2;
    tail = winding_over(beta_nodes(gamma.endpoint(), beta_steps));
  }

  const double winding = arc.total + mid.total + tail.total;
  const double value = winding / M_PI;
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > opt.integer_tol)
    throw IntegralDefect("l0_index_nondegenerate: winding is not integral");
  return static_cast<int>(rounded);
}

namespace {

struct DegenerateBranchOutcome {
  bool complete = false;   // every schedule entry evaluated without grid failure
  bool stable = false;
  int value = 0;
};

DegenerateBranchOutcome degenerate_branch(const CoefficientPath& b, double t_end, int steps,
                                          const IndexOptions& opt) {
  DegenerateBranchOutcome out;
  std::vector<int> values;
  std::vector<bool> usable;
  for (double eps : opt.perturbation_schedule) {
    CoefficientPath bp = shift_coefficient(b, -eps);
    SymplecticPath gp = fundamental_solution(bp, t_end, steps);
    if (l0_nullity(gp, opt.rank_tol) != 0) {
      values.push_back(0);
      usable.push_back(false);
      continue;
    }
    values.push_back(l0_index_nondegenerate(gp, opt));  // IntegralDefect propagates
    usable.push_back(true);
  }
  out.complete = true;
  for (std::size_t i = values.size(); i-- > 1;) {
    if (usable[i] && usable[i - 1] && values[i] == values[i - 1]) {
      out.stable = true;
      out.value = values[i];
      break;
    }
  }
  return out;
}

}  // namespace

IndexPair l0_index(const CoefficientPath& b, double t_end, const IndexOptions& opt) {
  int steps = std::max(64, static_cast<int>(std::lround(opt.grid * t_end)));
  for (int attempt = 0; attempt <= opt.max_refinements; ++attempt, steps *= 2) {
    SymplecticPath gamma = fundamental_solution(b, t_end, steps);
    const int nu = l0_nullity(gamma, opt.rank_tol);
    try {
      if (nu == 0) return IndexPair{l0_index_nondegenerate(gamma, opt), 0, Boundary::L0};
      DegenerateBranchOutcome out = degenerate_branch(b, t_end, steps, opt);
      if (!out.stable)
        throw PerturbationFailure("l0_index: no stable value along the perturbation schedule");
      return IndexPair{out.value, nu, Boundary::L0};
    } catch (const IntegralDefect&) {
      if (attempt == opt.max_refinements) throw;
    } catch (const DegenerateEndpoint&) {
      // Endpoint passed the rank test but sits too close to the degenerate
      // stratum for the closing path; fall through to the perturbed branch.
      DegenerateBranchOutcome out = degenerate_branch(b, t_end, steps, opt);
      if (out.stable) return IndexPair{out.value, nu, Boundary::L0};
      if (attempt == opt.max_refinements)
        throw PerturbationFailure("l0_index: near-degenerate endpoint never stabilized");
    }
  }
  throw NumericalFailure("l0_index: refinement budget exhausted");
}

IndexPair l_index(const CoefficientPath& b, const LagrangianFrame& frame, double t_end,
                  const IndexOptions& opt) {
  CoefficientPath bc = conjugate_coefficient(b, frame.p);
  IndexPair pair = l0_index(bc, t_end, opt);
  pair.boundary = frame.label;
  return pair;
}

}  // namespace sympath
