#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ndf/graycode.hpp"

namespace ndf {

// Gaussian radial-basis kernel ridge regression, R^D_in -> R^2.
struct KernelModel {
  int input_dim = 2;
  Eigen::MatrixXd centers;  // K x D_in
  double sigma = 0;
  double lambda = 0;
  Eigen::MatrixXd coeffs;   // K x 2

  // Per-axis min-max normalization applied before kernel evaluation
  // (identity for per-viewpoint 2D fits).
  Eigen::VectorXd norm_offset;  // D_in
  Eigen::VectorXd norm_scale;   // D_in

  Eigen::Vector2d operator()(const Eigen::VectorXd& x) const;
};

struct KernelFitOptions {
  int num_centers = 200;
  double sigma = 25.0;
  double lambda = 1e-6;
  uint64_t seed = 0;
  bool normalize = false;  // per-axis min-max to [0,1]
};

// Regularized least-squares fit with centers drawn uniformly without
// replacement from the sample inputs. Throws std::runtime_error when the
// normal matrix is numerically singular and lambda == 0.
KernelModel fit(const Eigen::MatrixXd& inputs,      // J x D_in
                const Eigen::MatrixXd& targets,     // J x 2
                const KernelFitOptions& options);

Eigen::MatrixXd eval(const KernelModel& model,
                     const Eigen::MatrixXd& inputs);  // J x D_in -> J x 2

// Baseline (iii): pooled 5D fit over (u_E, t), rotation ignored, with
// per-axis min-max normalization.
KernelModel fit_gaussian_5d(const std::vector<CorrespondenceLut>& luts,
                            const KernelFitOptions& options);

}  // namespace ndf
