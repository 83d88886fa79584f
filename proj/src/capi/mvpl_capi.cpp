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

#include "mvpl/mvpl.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/gaussian.hpp"
#include "core/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

mvpl_rc rc_from_code(mvpl::ErrorCode code) {
  using mvpl::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidInput: return MVPL_E_INVALID_INPUT;
    case ErrorCode::InvalidData: return MVPL_E_INVALID_DATA;
    case ErrorCode::InsufficientSamples: return MVPL_E_INSUFFICIENT_SAMPLES;
    case ErrorCode::NotSymmetric: return MVPL_E_NOT_SYMMETRIC;
    case ErrorCode::NotPositiveSemiDefinite: return MVPL_E_NOT_PSD;
    case ErrorCode::DimensionMismatch: return MVPL_E_DIMENSION_MISMATCH;
    case ErrorCode::NumericalFailure: return MVPL_E_NUMERICAL_FAILURE;
    case ErrorCode::IncompleteReference: return MVPL_E_INCOMPLETE_REFERENCE;
    case ErrorCode::NoClasses: return MVPL_E_NO_CLASSES;
    case ErrorCode::UnknownClass: return MVPL_E_UNKNOWN_CLASS;
    case ErrorCode::DuplicateItem: return MVPL_E_DUPLICATE_ITEM;
    case ErrorCode::CoverageMismatch: return MVPL_E_COVERAGE_MISMATCH;
    case ErrorCode::DegenerateTrainingSet: return MVPL_E_DEGENERATE_TRAINING_SET;
    case ErrorCode::TrainingDiverged: return MVPL_E_TRAINING_DIVERGED;
    case ErrorCode::EmptyTrainingSet: return MVPL_E_EMPTY_TRAINING_SET;
    case ErrorCode::InvalidSplit: return MVPL_E_INVALID_SPLIT;
    case ErrorCode::InvalidConfig: return MVPL_E_INVALID_CONFIG;
    case ErrorCode::UnrecognizedFormat: return MVPL_E_UNRECOGNIZED_FORMAT;
    case ErrorCode::CorruptFile: return MVPL_E_CORRUPT_FILE;
    case ErrorCode::IoFailure: return MVPL_E_IO_FAILURE;
  }
  return MVPL_E_UNKNOWN;
}

/// Runs `body`, converting exceptions into return codes and recording the
/// thread-local error message.
template <typename Body>
mvpl_rc guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return MVPL_OK;
  } catch (const mvpl::Error& e) {
    g_last_error = e.message();
    return rc_from_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MVPL_E_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MVPL_E_UNKNOWN;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void deliver_summary(char** summary, const std::string& text) {
  if (summary) *summary = copy_string(text);
}

mvpl::Overrides convert(const mvpl_overrides* overrides) {
  mvpl::Overrides out;
  if (!overrides) return out;
  if (overrides->has_seed) out.seed = overrides->seed;
  if (overrides->has_label_rate) out.label_rate = overrides->label_rate;
  if (overrides->strategy) out.strategy = overrides->strategy;
  return out;
}

const char* require(const char* value, const char* what) {
  if (!value) {
    throw mvpl::Error(mvpl::ErrorCode::InvalidInput,
                      std::string(what) + " must not be NULL");
  }
  return value;
}

}  // namespace

struct mvpl_gaussian {
  mvpl::GaussianSummary summary;
};

extern "C" {

const char* mvpl_version(void) { return "0.1.0"; }

const char* mvpl_rc_name(mvpl_rc rc) {
  switch (rc) {
    case MVPL_OK: return "OK";
    case MVPL_E_INVALID_INPUT: return "InvalidInput";
    case MVPL_E_INVALID_DATA: return "InvalidData";
    case MVPL_E_INSUFFICIENT_SAMPLES: return "InsufficientSamples";
    case MVPL_E_NOT_SYMMETRIC: return "NotSymmetric";
    case MVPL_E_NOT_PSD: return "NotPositiveSemiDefinite";
    case MVPL_E_DIMENSION_MISMATCH: return "DimensionMismatch";
    case MVPL_E_NUMERICAL_FAILURE: return "NumericalFailure";
    case MVPL_E_INCOMPLETE_REFERENCE: return "IncompleteReference";
    case MVPL_E_NO_CLASSES: return "NoClasses";
    case MVPL_E_UNKNOWN_CLASS: return "UnknownClass";
    case MVPL_E_DUPLICATE_ITEM: return "DuplicateItem";
    case MVPL_E_COVERAGE_MISMATCH: return "CoverageMismatch";
    case MVPL_E_DEGENERATE_TRAINING_SET: return "DegenerateTrainingSet";
    case MVPL_E_TRAINING_DIVERGED: return "TrainingDiverged";
    case MVPL_E_EMPTY_TRAINING_SET: return "EmptyTrainingSet";
    case MVPL_E_INVALID_SPLIT: return "InvalidSplit";
    case MVPL_E_INVALID_CONFIG: return "InvalidConfig";
    case MVPL_E_UNRECOGNIZED_FORMAT: return "UnrecognizedFormat";
    case MVPL_E_CORRUPT_FILE: return "CorruptFile";
    case MVPL_E_IO_FAILURE: return "IoFailure";
    case MVPL_E_UNKNOWN: return "Unknown";
  }
  return "Unknown";
}

int mvpl_rc_exit_code(mvpl_rc rc) {
  switch (rc) {
    case MVPL_OK:
      return 0;
    case MVPL_E_INVALID_INPUT:
    case MVPL_E_INVALID_DATA:
    case MVPL_E_INSUFFICIENT_SAMPLES:
    case MVPL_E_INCOMPLETE_REFERENCE:
    case MVPL_E_NO_CLASSES:
    case MVPL_E_UNKNOWN_CLASS:
    case MVPL_E_DUPLICATE_ITEM:
    case MVPL_E_COVERAGE_MISMATCH:
    case MVPL_E_INVALID_SPLIT:
    case MVPL_E_INVALID_CONFIG:
    case MVPL_E_UNRECOGNIZED_FORMAT:
    case MVPL_E_CORRUPT_FILE:
      return 2;
    default:
      return 1;
  }
}

const char* mvpl_last_error(void) { return g_last_error.c_str(); }

void mvpl_string_free(char* s) { std::free(s); }

mvpl_rc mvpl_gaussian_estimate(const double* data, uint32_t rows, uint32_t dim,
                               double ridge, mvpl_gaussian** out) {
  return guarded([&] {
    require(reinterpret_cast<const char*>(data), "data");
    require(reinterpret_cast<const char*>(out), "out");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mapped(data, rows, dim);
    auto* handle = new mvpl_gaussian{mvpl::estimate_gaussian(
        Eigen::MatrixXd(mapped), ridge)};
    *out = handle;
  });
}

mvpl_rc mvpl_gaussian_from_moments(const double* mean, const double* covariance,
                                   uint32_t dim, mvpl_gaussian** out) {
  return guarded([&] {
    require(reinterpret_cast<const char*>(mean), "mean");
    require(reinterpret_cast<const char*>(covariance), "covariance");
    require(reinterpret_cast<const char*>(out), "out");
    Eigen::Map<const Eigen::VectorXd> mean_map(mean, dim);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        cov_map(covariance, dim, dim);
    auto* handle = new mvpl_gaussian{mvpl::GaussianSummary::from_moments(
        mean_map, Eigen::MatrixXd(cov_map))};
    *out = handle;
  });
}

uint32_t mvpl_gaussian_dim(const mvpl_gaussian* g) {
  return g ? static_cast<uint32_t>(g->summary.dim()) : 0;
}

void mvpl_gaussian_mean(const mvpl_gaussian* g, double* out) {
  if (!g || !out) return;
  Eigen::Map<Eigen::VectorXd>(out, g->summary.dim()) = g->summary.mean;
}

void mvpl_gaussian_covariance(const mvpl_gaussian* g, double* out) {
  if (!g || !out) return;
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>>(out, g->summary.dim(),
                                             g->summary.dim()) =
      g->summary.covariance;
}

void mvpl_gaussian_free(mvpl_gaussian* g) { delete g; }

mvpl_rc mvpl_frechet_distance(const mvpl_gaussian* left,
                              const mvpl_gaussian* right, double* out) {
  return guarded([&] {
    require(reinterpret_cast<const char*>(left), "left");
    require(reinterpret_cast<const char*>(right), "right");
    require(reinterpret_cast<const char*>(out), "out");
    *out = mvpl::frechet_distance(left->summary, right->summary);
  });
}

mvpl_rc mvpl_sqrt_psd(const double* matrix, uint32_t dim, double* out) {
  return guarded([&] {
    require(reinterpret_cast<const char*>(matrix), "matrix");
    require(reinterpret_cast<const char*>(out), "out");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mapped(matrix, dim, dim);
    const Eigen::MatrixXd root = mvpl::sqrt_psd(Eigen::MatrixXd(mapped));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>(out, dim, dim) = root;
  });
}

mvpl_rc mvpl_run_synth(const char* config_path, const char* out_dir,
                       const mvpl_overrides* overrides, char** summary) {
  return guarded([&] {
    deliver_summary(summary,
                    mvpl::cmd_synth(require(config_path, "config_path"),
                                    require(out_dir, "out_dir"),
                                    convert(overrides)));
  });
}

mvpl_rc mvpl_run_fad(const char* config_path, const char* out_dir,
                     const char* item_id, const mvpl_overrides* overrides,
                     char** summary) {
  return guarded([&] {
    std::optional<std::string> item;
    if (item_id) item = item_id;
    deliver_summary(summary,
                    mvpl::cmd_fad(require(config_path, "config_path"),
                                  require(out_dir, "out_dir"), item,
                                  convert(overrides)));
  });
}

mvpl_rc mvpl_run_pseudo_label(const char* config_path, const char* out_dir,
                              const mvpl_overrides* overrides, char** summary) {
  return guarded([&] {
    deliver_summary(summary,
                    mvpl::cmd_pseudo_label(require(config_path, "config_path"),
                                           require(out_dir, "out_dir"),
                                           convert(overrides)));
  });
}

mvpl_rc mvpl_run_train(const char* config_path, const char* out_dir,
                       const mvpl_overrides* overrides, char** summary) {
  return guarded([&] {
    deliver_summary(summary,
                    mvpl::cmd_train(require(config_path, "config_path"),
                                    require(out_dir, "out_dir"),
                                    convert(overrides)));
  });
}

mvpl_rc mvpl_run_report(const char* const* input_paths, size_t input_count,
                        const char* out_dir, char** summary) {
  return guarded([&] {
    require(reinterpret_cast<const char*>(input_paths), "input_paths");
    std::vector<std::string> inputs;
    inputs.reserve(input_count);
    for (size_t i = 0; i < input_count; ++i) {
      inputs.emplace_back(require(input_paths[i], "input path"));
    }
    deliver_summary(summary,
                    mvpl::cmd_report(inputs, require(out_dir, "out_dir")));
  });
}

}  // extern "C"
