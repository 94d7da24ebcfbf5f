#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gsd {

// Orthonormal Laplacian eigenbasis plus an optional band selection.
// Eigenvalues ascend, the first one is zero, and eigenvector signs follow
// a fixed convention (first entry of nonnegligible magnitude is positive),
// so equal inputs give identical bases. Immutable after construction.
class SpectralBasis {
 public:
  SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);
  SpectralBasis(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors, std::vector<int> band);

  int size() const { return static_cast<int>(eigenvalues_.size()); }
  int band_size() const { return static_cast<int>(band_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

  bool has_band() const { return !band_.empty(); }
  const std::vector<int>& band() const { return band_; }
  SpectralBasis with_band(std::vector<int> band) const;

  // N x K matrix of the selected eigenvectors. Its rows are the per-vertex
  // band signatures u_i.
  const Eigen::MatrixXd& band_vectors() const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  std::vector<int> band_;
  Eigen::MatrixXd band_vectors_;
};

// Dense symmetric eigendecomposition of a Laplacian. Throws if the input is
// not symmetric within tolerance.
SpectralBasis spectral_decompose(const Eigen::MatrixXd& laplacian);

// Full-basis analysis/synthesis: coefficients = V^T f, signal = V coeffs.
Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& signal);
Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& coefficients);

}  // namespace gsd
