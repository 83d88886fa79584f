// Copyright 2026 The mvpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace mvpl {

/// Ridge added to every estimated covariance so small frame counts still
/// yield a positive semi-definite matrix.
inline constexpr double kDefaultRidge = 1e-6;

/// Maximum |m - m^T| entry accepted by sqrt_psd and summary construction.
inline constexpr double kSymmetryTolerance = 1e-9;

/// Eigenvalues in [kEigenvalueFloor, 0) are treated as zero; anything lower
/// means the matrix is genuinely not PSD.
inline constexpr double kEigenvalueFloor = -1e-9;

/// Distance residuals in [kDistanceFloor, 0) are clamped to zero; anything
/// lower signals corrupted inputs.
inline constexpr double kDistanceFloor = -1e-6;

/// One encoder's embedding vectors. Rows are individual vectors (the frames
/// of a single item, or the pooled frames of many items); columns are
/// dimensions. Immutable once built.
struct EmbeddingSet {
  std::vector<std::string> items;  ///< ids of the contributing items
  Eigen::MatrixXd vectors;         ///< n x d, n >= 1, all finite
  std::string encoder_id;

  /// Validates shape and finiteness. Throws InvalidData on non-finite
  /// values, InvalidInput on an empty matrix.
  static EmbeddingSet create(std::vector<std::string> items,
                             Eigen::MatrixXd vectors,
                             std::string encoder_id);

  Eigen::Index rows() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }
};

/// Mean and covariance of an embedding set. The covariance is stored
/// exactly symmetric.
struct GaussianSummary {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::int64_t sample_count = 0;

  /// Builds a summary from known moments. The covariance must be square,
  /// finite and symmetric within kSymmetryTolerance; it is symmetrized
  /// before being stored.
  static GaussianSummary from_moments(Eigen::VectorXd mean,
                                      Eigen::MatrixXd covariance,
                                      std::int64_t sample_count = 0);

  Eigen::Index dim() const { return mean.size(); }
};

/// Column-wise mean plus unbiased sample covariance (divisor n-1) with
/// ridge * I added. Requires n >= 2 rows and ridge >= 0.
GaussianSummary estimate_gaussian(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                  double ridge);
GaussianSummary estimate_gaussian(const EmbeddingSet& x, double ridge = kDefaultRidge);

/// Symmetric PSD square root via eigendecomposition: V diag(sqrt(max(l, 0))) V^T.
/// Eigenvalues in [kEigenvalueFloor, 0) are clamped to zero; smaller ones throw
/// NotPositiveSemiDefinite. Asymmetry beyond kSymmetryTolerance throws
/// NotSymmetric.
Eigen::MatrixXd sqrt_psd(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Frechet distance between two Gaussians:
///   |mu_l - mu_u|^2 + tr(Sigma_l) + tr(Sigma_u) - 2 tr(sqrt(A))
/// with A = sqrt(Sigma_l) Sigma_u sqrt(Sigma_l), whose square-root trace
/// equals tr(sqrt(Sigma_l Sigma_u)) but stays in symmetric territory.
/// Residuals in [kDistanceFloor, 0) clamp to zero; smaller ones throw
/// NumericalFailure. Dimension mismatch throws DimensionMismatch.
double frechet_distance(const GaussianSummary& left, const GaussianSummary& right);

}  // namespace mvpl
