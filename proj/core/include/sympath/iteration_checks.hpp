#pragma once

#include <map>
#include <string>
#include <vector>

#include "sympath/maslov_index.hpp"
#include "sympath/omega_index.hpp"
#include "sympath/rng.hpp"

namespace sympath {

// ---------------------------------------------------------------------------
// Executable verifiers for the iteration identities and inequalities of the
// L0-index: Bott-type sums, period doubling, the two parity chains, and the
// index bounds.  All comparisons are exact integer arithmetic; inequality
// chains carry doubled values so half-integer terms stay integral.
// ---------------------------------------------------------------------------

struct VerificationRow {
  std::string label;
  long long lhs = 0, rhs = 0;          // equality rows
  long long lower = 0, upper = 0, value = 0;  // bound rows (doubled scale)
  bool is_bound = false;
  bool pass = false;
};

struct VerificationReport {
  std::string system_id;
  std::string claim;
  std::vector<VerificationRow> rows;
  std::map<std::string, int> artifacts;  // named intermediate integers
  bool pass = false;

  void finish();  // pass = conjunction of rows
};

struct IterationOptions {
  IndexOptions index;
  OmegaOptions omega;
};

/// Precomputed index data of one brake-symmetric linear system; verifiers
/// share it so repeated integrations are avoided.
class SystemIndexCache {
 public:
  SystemIndexCache(CoefficientPath b, std::string id, IterationOptions opt = {});

  const std::string& id() const { return id_; }
  int half_dim() const { return b_.half_dim(); }
  const CoefficientPath& coefficient() const { return b_; }

  IndexPair l0_pair(int k);                 // (i, nu)_{L0}(gamma^k)
  IndexPair l1_pair();                      // (i, nu)_{L1}(gamma^1)
  IndexPair omega_pair(Complex omega);      // (i, nu)_omega(gamma^2)
  IndexPair sqrt_minus_one_pair();          // (i, nu)^{L0}_{sqrt(-1)}(gamma^1)
  int nu_one_iterated(int k);               // nu_1(gamma^{2k}) from gamma(2)^k
  const Matrix& gamma2_endpoint();

 private:
  CoefficientPath b_;
  std::string id_;
  IterationOptions opt_;
  std::map<int, IndexPair> l0_;
  std::map<long long, IndexPair> omega_;
  bool has_l1_ = false, has_sqrt_ = false, has_g2_ = false;
  IndexPair l1_{}, sqrt_{};
  Matrix g2_end_;
};

VerificationReport verify_bott_odd(SystemIndexCache& sys, int k);
VerificationReport verify_bott_even(SystemIndexCache& sys, int k);
VerificationReport verify_period_doubling(SystemIndexCache& sys);
VerificationReport verify_iteration_inequalities(SystemIndexCache& sys, int k);
VerificationReport verify_index_bounds(SystemIndexCache& sys);

// ---------------------------------------------------------------------------
// Randomized brake-symmetric systems.  B(t) is an even trigonometric
// polynomial with N-commuting symmetric coefficients plus odd terms with
// N-anticommuting ones, so B(1+t) N = N B(1-t) holds by construction.
// ---------------------------------------------------------------------------

struct RandomSystemOptions {
  int n = 1;
  double amplitude = 1.0;
  bool include_odd_terms = true;
};

CoefficientPath random_brake_coefficient(Rng& rng, const RandomSystemOptions& opt);

/// Brake-symmetric and positive definite on the whole period (sampled
/// minimum eigenvalue raised above floor_eig).
CoefficientPath random_positive_coefficient(Rng& rng, const RandomSystemOptions& opt,
                                            double floor_eig = 0.15);

}  // namespace sympath
