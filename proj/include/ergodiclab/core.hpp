#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ergodiclab/errors.hpp"

namespace ergodiclab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// splitmix64 mixer; the basis of all seed derivation in this project.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stream-splitting rule: every random object (matrix, vector, ...) consumes
/// its own generator seeded with stream_seed(root_seed, stream_index), where
/// the stream index is the object's position in the requesting context
/// (operator #0, #1, ... within one experiment). Results are therefore
/// bitwise reproducible for a fixed (root_seed, stream_index) pair and
/// independent of evaluation order or thread schedule.
std::uint64_t stream_seed(std::uint64_t root_seed, std::uint64_t stream) noexcept;

/// Deterministic Box-Muller N(0,1) source over mt19937_64. Hand-rolled so the
/// byte stream does not depend on the standard library's distribution
/// internals.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : gen_(seed) {}

  double real();
  Complex complex_value() { return Complex(real(), real()); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Map an angle to [0, 2*pi).
double wrap_angle(double theta) noexcept;
/// Map an angle to (-pi, pi].
double wrap_signed(double theta) noexcept;
/// Circular distance |a - b| mod 2*pi, in [0, pi].
double circular_distance(double a, double b) noexcept;

bool all_finite(const ComplexMatrix& m) noexcept;

/// Haar-distributed unitary: complex Gaussian matrix, Householder QR, then
/// each Q column is rotated by the phase of the matching R diagonal entry
/// (the phase convention that makes the distribution Haar). Deterministic for
/// a fixed (dim, seed) pair.
ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed);

/// Largest singular value to relative accuracy tol, by power iteration on
/// M^*M from a fixed deterministic start vector.
double operator_norm(const ComplexMatrix& m, double tol = 1e-12);

/// Sum of singular values (trace norm / Schatten-1).
double trace_norm(const ComplexMatrix& m);

/// u^exponent by binary powering; negative exponents use the adjoint, so the
/// input must be unitary for them to mean the inverse.
ComplexMatrix matrix_power(const ComplexMatrix& u, long exponent);

struct UnitaryEigensystem {
  std::vector<double> angles;        // one per cluster, ascending in [0, 2*pi)
  std::vector<long> multiplicities;  // sums to dim
  ComplexMatrix eigenbasis;          // orthonormal columns, grouped by cluster
};

/// Spectral decomposition of a unitary matrix via complex Schur form
/// (Hessenberg reduction + shifted QR; for a normal matrix the Schur form is
/// diagonal up to rounding). Computed eigenvalues are clustered by
/// single-linkage on circular angular distance with threshold cluster_tol;
/// a chain of merged eigenvalues spanning more than 10*cluster_tol raises
/// ClusteringAmbiguous.
UnitaryEigensystem eigendecompose_unitary(const ComplexMatrix& m,
                                          double unitarity_tol = 1e-10,
                                          double cluster_tol = 1e-8);

}  // namespace ergodiclab
