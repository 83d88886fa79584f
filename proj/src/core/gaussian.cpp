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

#include "core/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <string>

namespace mvpl {

namespace {

double max_asymmetry(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

EmbeddingSet EmbeddingSet::create(std::vector<std::string> items,
                                  Eigen::MatrixXd vectors,
                                  std::string encoder_id) {
  if (vectors.rows() < 1 || vectors.cols() < 1) {
    throw Error(ErrorCode::InvalidInput,
                "embedding set for encoder '" + encoder_id + "' is empty");
  }
  if (!vectors.allFinite()) {
    throw Error(ErrorCode::InvalidData,
                "embedding set for encoder '" + encoder_id + "' contains non-finite values");
  }
  EmbeddingSet out;
  out.items = std::move(items);
  out.vectors = std::move(vectors);
  out.encoder_id = std::move(encoder_id);
  return out;
}

GaussianSummary GaussianSummary::from_moments(Eigen::VectorXd mean,
                                              Eigen::MatrixXd covariance,
                                              std::int64_t sample_count) {
  if (mean.size() < 1 || covariance.rows() != mean.size() ||
      covariance.cols() != mean.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "mean and covariance dimensions do not agree");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw Error(ErrorCode::InvalidData, "non-finite Gaussian moments");
  }
  if (max_asymmetry(covariance) > kSymmetryTolerance) {
    throw Error(ErrorCode::NotSymmetric,
                "covariance asymmetry exceeds tolerance");
  }
  GaussianSummary out;
  out.mean = std::move(mean);
  out.covariance = 0.5 * (covariance + covariance.transpose());
  out.sample_count = sample_count;
  return out;
}

GaussianSummary estimate_gaussian(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                  double ridge) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index d = rows.cols();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientSamples,
                "Gaussian estimation needs at least 2 rows, got " + std::to_string(n));
  }
  if (d < 1) {
    throw Error(ErrorCode::InvalidInput, "embedding dimension must be >= 1");
  }
  if (ridge < 0.0) {
    throw Error(ErrorCode::InvalidInput, "ridge must be non-negative");
  }
  if (!rows.allFinite()) {
    throw Error(ErrorCode::InvalidData, "non-finite values in embedding rows");
  }

  GaussianSummary out;
  out.mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - out.mean.transpose();
  Eigen::MatrixXd cov =
      (centered.adjoint() * centered) / static_cast<double>(n - 1);
  cov.diagonal().array() += ridge;
  out.covariance = 0.5 * (cov + cov.transpose());
  out.sample_count = n;
  return out;
}

GaussianSummary estimate_gaussian(const EmbeddingSet& x, double ridge) {
  return estimate_gaussian(x.vectors, ridge);
}

Eigen::MatrixXd sqrt_psd(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidData, "non-finite matrix entries");
  }
  if (max_asymmetry(m) > kSymmetryTolerance) {
    throw Error(ErrorCode::NotSymmetric, "matrix asymmetry exceeds tolerance");
  }

  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigendecomposition failed");
  }

  Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < kEigenvalueFloor) {
      throw Error(ErrorCode::NotPositiveSemiDefinite,
                  "eigenvalue " + std::to_string(values[i]) + " below tolerance");
    }
    if (values[i] < 0.0) values[i] = 0.0;
  }

  const Eigen::MatrixXd root = solver.eigenvectors() *
                               values.cwiseSqrt().asDiagonal() *
                               solver.eigenvectors().transpose();
  return 0.5 * (root + root.transpose());
}

double frechet_distance(const GaussianSummary& left, const GaussianSummary& right) {
  if (left.dim() != right.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "summary dimensions differ: " + std::to_string(left.dim()) +
                    " vs " + std::to_string(right.dim()));
  }

  const double mean_term = (left.mean - right.mean).squaredNorm();

  const Eigen::MatrixXd root_left = sqrt_psd(left.covariance);
  Eigen::MatrixXd inner = root_left * right.covariance * root_left;
  inner = 0.5 * (inner + inner.transpose());  // exact symmetry for sqrt_psd
  const Eigen::MatrixXd cross = sqrt_psd(inner);

  const double value = mean_term + left.covariance.trace() +
                       right.covariance.trace() - 2.0 * cross.trace();
  if (value < 0.0) {
    if (value < kDistanceFloor) {
      throw Error(ErrorCode::NumericalFailure,
                  "distance residual " + std::to_string(value) + " below tolerance");
    }
    return 0.0;
  }
  return value;
}

}  // namespace mvpl
