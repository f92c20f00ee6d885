#include "ergodiclab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ergodiclab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t root_seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(root_seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double GaussianSource::real() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1], u2 in [0, 1)
  const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = kTwoPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double wrap_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_signed(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r > kPi) r -= kTwoPi;
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double circular_distance(double a, double b) noexcept {
  return std::abs(wrap_signed(a - b));
}

bool all_finite(const ComplexMatrix& m) noexcept {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& c = m(i, j);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  return true;
}

ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("haar_unitary: dim must be >= 1");
  GaussianSource g(splitmix64(seed));
  ComplexMatrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = g.complex_value();
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex r = packed(j, j);
    const double ar = std::abs(r);
    q.col(j) *= (ar > 0.0) ? r / ar : Complex(1.0, 0.0);
  }
  return q;
}

double operator_norm(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("operator_norm: tol must be positive");
  if (m.rows() < 1 || m.cols() < 1)
    throw InvalidArgument("operator_norm: matrix must be nonempty");

  const Eigen::Index n = m.cols();
  ComplexVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::uint64_t h = splitmix64(0x71c9u + static_cast<std::uint64_t>(j));
    v(j) = Complex(1.0 + static_cast<double>(h & 0xffu) / 256.0,
                   static_cast<double>((h >> 8) & 0xffu) / 256.0);
  }
  v.normalize();

  ComplexVector w(m.rows());
  double s = 0.0;
  double s_prev = -1.0;
  int stable = 0;
  for (int it = 0; it < 20000; ++it) {
    w.noalias() = m * v;
    s = w.norm();  // sqrt(v^* M^*M v) since ||v|| = 1
    if (s == 0.0) return 0.0;
    v.noalias() = m.adjoint() * w;
    const double nv = v.norm();
    if (nv == 0.0) return s;
    v /= nv;
    if (s_prev >= 0.0 && std::abs(s - s_prev) <= 0.25 * tol * s) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    s_prev = s;
  }
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix matrix_power(const ComplexMatrix& u, long exponent) {
  if (u.rows() != u.cols()) throw InvalidArgument("matrix_power: square matrix required");
  const Eigen::Index n = u.rows();
  ComplexMatrix base = exponent >= 0 ? u : ComplexMatrix(u.adjoint());
  unsigned long e = static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent);
  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

struct AngleCluster {
  std::vector<int> members;  // original indices, in chain (sorted-angle) order
  double representative = 0.0;
  double span = 0.0;
};

std::vector<AngleCluster> cluster_angles(const std::vector<double>& angles,
                                         const std::vector<Complex>& values,
                                         double cluster_tol) {
  const int n = static_cast<int>(angles.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return angles[a] < angles[b]; });

  // Runs of sorted angles whose adjacent gaps stay within cluster_tol.
  std::vector<std::vector<int>> runs;
  runs.emplace_back();
  runs.back().push_back(order[0]);
  for (int i = 1; i < n; ++i) {
    if (angles[order[i]] - angles[order[i - 1]] > cluster_tol) runs.emplace_back();
    runs.back().push_back(order[i]);
  }
  // A cluster may straddle angle 0: merge the last run into the first when the
  // wrap-around gap also stays within tolerance.
  if (runs.size() > 1) {
    const double wrap_gap = kTwoPi - angles[order[n - 1]] + angles[order[0]];
    if (wrap_gap <= cluster_tol) {
      std::vector<int> merged = runs.back();
      merged.insert(merged.end(), runs.front().begin(), runs.front().end());
      runs.front() = std::move(merged);
      runs.pop_back();
    }
  }

  std::vector<AngleCluster> clusters;
  clusters.reserve(runs.size());
  for (const auto& run : runs) {
    AngleCluster c;
    c.members = run;
    double span = 0.0;
    for (std::size_t i = 1; i < run.size(); ++i)
      span += circular_distance(angles[run[i]], angles[run[i - 1]]);
    c.span = span;
    if (span > 10.0 * cluster_tol)
      throw ClusteringAmbiguous(
          "eigendecompose_unitary: eigenvalue chain spans more than 10x the "
          "cluster tolerance; no unambiguous clustering exists");
    Complex mean(0.0, 0.0);
    for (int idx : run) mean += values[idx] / std::abs(values[idx]);
    c.representative = wrap_angle(std::arg(mean));
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const AngleCluster& a, const AngleCluster& b) {
              return a.representative < b.representative;
            });
  return clusters;
}

}  // namespace

UnitaryEigensystem eigendecompose_unitary(const ComplexMatrix& m,
                                          double unitarity_tol,
                                          double cluster_tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InvalidArgument("eigendecompose_unitary: square nonempty matrix required");
  if (!(unitarity_tol > 0.0) || !(cluster_tol > 0.0))
    throw InvalidArgument("eigendecompose_unitary: tolerances must be positive");

  const Eigen::Index n = m.rows();
  const double unitary_defect =
      (m.adjoint() * m - ComplexMatrix::Identity(n, n)).norm();
  if (unitary_defect > unitarity_tol)
    throw PreconditionViolation(
        "eigendecompose_unitary: input is not unitary to the requested "
        "tolerance (defect " + std::to_string(unitary_defect) + ")");

  Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw Error("eigendecompose_unitary: Schur iteration failed to converge");

  std::vector<double> angles(n);
  std::vector<Complex> values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values[i] = schur.matrixT()(i, i);
    angles[i] = wrap_angle(std::arg(values[i]));
  }

  const auto clusters = cluster_angles(angles, values, cluster_tol);

  UnitaryEigensystem out;
  out.eigenbasis.resize(n, n);
  Eigen::Index col = 0;
  for (const auto& c : clusters) {
    out.angles.push_back(c.representative);
    out.multiplicities.push_back(static_cast<long>(c.members.size()));
    for (int idx : c.members) out.eigenbasis.col(col++) = schur.matrixU().col(idx);
  }
  return out;
}

}  // namespace ergodiclab
