#include "gsd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace gsd {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kZeroEigenvalueTol = 1e-8;

void validate_basis(const Eigen::VectorXd& eigenvalues, const Eigen::MatrixXd& eigenvectors) {
  const auto n = eigenvalues.size();
  if (n == 0) throw std::invalid_argument("empty spectral basis");
  if (eigenvectors.rows() != n || eigenvectors.cols() != n) {
    throw std::invalid_argument("eigenvector matrix must be N x N");
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    if (eigenvalues[k] < eigenvalues[k - 1]) {
      throw std::invalid_argument("eigenvalues must be nondecreasing");
    }
  }
  const double scale = std::max(1.0, std::abs(eigenvalues[n - 1]));
  if (std::abs(eigenvalues[0]) > kZeroEigenvalueTol * scale) {
    throw std::invalid_argument("smallest eigenvalue must be zero (Laplacian basis)");
  }
  const Eigen::MatrixXd gram = eigenvectors.transpose() * eigenvectors;
  const double residual = (gram - Eigen::MatrixXd::Identity(n, n)).norm();
  if (residual > kOrthoTol * std::sqrt(static_cast<double>(n))) {
    throw std::invalid_argument("eigenvectors are not orthonormal");
  }
}

std::vector<int> validate_band(int n, std::vector<int> band) {
  std::unordered_set<int> seen;
  for (int k : band) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("band index " + std::to_string(k) + " out of range");
    }
    if (!seen.insert(k).second) {
      throw std::invalid_argument("duplicate band index " + std::to_string(k));
    }
  }
  return band;
}

}  // namespace

SpectralBasis::SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors)
    : SpectralBasis(std::move(eigenvalues), std::move(eigenvectors), {}) {}

SpectralBasis::SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                             std::vector<int> band)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      band_(validate_band(static_cast<int>(eigenvalues_.size()), std::move(band))) {
  validate_basis(eigenvalues_, eigenvectors_);
  if (!band_.empty()) {
    band_vectors_.resize(eigenvectors_.rows(), static_cast<Eigen::Index>(band_.size()));
    for (std::size_t c = 0; c < band_.size(); ++c) {
      band_vectors_.col(static_cast<Eigen::Index>(c)) = eigenvectors_.col(band_[c]);
    }
  }
}

SpectralBasis SpectralBasis::with_band(std::vector<int> band) const {
  return SpectralBasis(eigenvalues_, eigenvectors_, std::move(band));
}

const Eigen::MatrixXd& SpectralBasis::band_vectors() const {
  if (band_.empty()) throw std::logic_error("no band selected");
  return band_vectors_;
}

SpectralBasis spectral_decompose(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols()) {
    throw std::invalid_argument("laplacian must be square");
  }
  const double scale = std::max(1.0, laplacian.norm());
  if ((laplacian - laplacian.transpose()).norm() > 1e-10 * scale) {
    throw std::invalid_argument("laplacian is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (laplacian + laplacian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed to converge");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  Eigen::MatrixXd vectors = solver.eigenvectors();

  // Sign convention: first entry with magnitude above threshold is positive.
  const auto n = values.size();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = vectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) vectors.col(c) = -vectors.col(c);
        break;
      }
    }
  }
  return SpectralBasis(std::move(values), std::move(vectors));
}

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& signal) {
  if (signal.size() != basis.size()) {
    throw std::invalid_argument("signal length does not match basis size");
  }
  return basis.eigenvectors().transpose() * signal;
}

Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& coefficients) {
  if (coefficients.size() != basis.size()) {
    throw std::invalid_argument("coefficient length does not match basis size");
  }
  return basis.eigenvectors() * coefficients;
}

}  // namespace gsd
