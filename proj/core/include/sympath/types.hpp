#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sympath {

using Matrix  = Eigen::MatrixXd;
using Vector  = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Error taxonomy shared by all modules.  Everything derives from Error so
// callers can catch the whole family at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument     : Error { using Error::Error; };
struct InvalidCoefficient  : Error { using Error::Error; };
struct NumericalFailure    : Error { using Error::Error; };
struct DomainMismatch      : Error { using Error::Error; };
struct DegenerateEndpoint  : Error { using Error::Error; };
struct IntegralDefect      : Error { using Error::Error; };
struct PerturbationFailure : Error { using Error::Error; };
struct UnstableTruncation  : Error { using Error::Error; };
struct CountMismatch       : Error { using Error::Error; };
struct BoundaryViolation   : Error { using Error::Error; };
struct SolverFailure       : Error { using Error::Error; };
struct ConfigError         : Error { using Error::Error; };

/// Boundary condition a Maslov-type index pair refers to.
enum class Boundary { L0, L1, GeneralL, Periodic };

std::string to_string(Boundary b);

/// Integer (index, nullity) pair of a symplectic path under a stated
/// boundary condition.  Nullity lies in [0, n] for Lagrangian boundaries
/// and [0, 2n] for the periodic one.
struct IndexPair {
  int index   = 0;
  int nullity = 0;
  Boundary boundary = Boundary::L0;
};

inline bool operator==(const IndexPair& a, const IndexPair& b) {
  return a.index == b.index && a.nullity == b.nullity && a.boundary == b.boundary;
}
inline bool operator!=(const IndexPair& a, const IndexPair& b) { return !(a == b); }

inline constexpr double kSymplecticTol = 1e-10;
inline constexpr double kRankTol       = 1e-8;

}  // namespace sympath
