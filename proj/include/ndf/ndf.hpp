#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ndf/geometry.hpp"
#include "ndf/nn.hpp"
#include "ndf/optics.hpp"

namespace ndf {

// Two-stage field network. The trunk consumes the encoded position only;
// the viewing direction enters after the intensity head, so the intensity
// is direction-independent by construction.
struct NdfModel {
  nn::Mlp trunk;      // 6L -> hidden, ReLU throughout
  nn::Mlp rho_head;   // hidden -> 1, SoftPlus
  nn::Mlp coord;      // hidden + 3 -> 2
  nn::EncodingConfig encoding;

  EyePose reference_pose;
  DistortionMap reference_map;

  int feature_size() const { return trunk.output_size(); }
};

struct TrainConfig {
  int batch_rays = 1024;
  long iterations = 20000;
  int samples_per_ray = 64;
  double near = 20.0, far = 300.0;
  double eta0 = 5e-4, etan = 5e-6;
  uint64_t seed = 1;

  int encoding_l = 16;
  std::vector<int> trunk_hidden{256, 256, 256, 256, 256, 256, 256, 256};
  std::vector<int> coord_hidden{128, 128, 128, 128};
  nn::Activation coord_activation = nn::Activation::Identity;
  nn::Activation rho_activation = nn::Activation::SoftPlus;

  double w_min = 0.5;  // validity threshold on accumulated weight
  int loss_trace_stride = 100;
};

struct TrainingSet {
  std::vector<EyePose> poses;
  std::vector<DistortionMap> maps;  // shared resolution
};

NdfModel make_model(const TrainConfig& cfg, const CameraIntrinsics& intr);

// Single-point query: deviation Delta u_D (px) and intensity rho >= 0.
void query(const NdfModel& model, const Eigen::Vector3d& position,
           const Eigen::Vector3d& direction, Eigen::Vector2d* delta_ud,
           double* rho);

struct CompositeResult {
  Eigen::Vector2d value;  // weighted deviation
  double weight;          // accumulated weight, in [0, 1]
};

// Volumetric compositing: w_i = tau_i (1 - exp(-rho_i delta_i)) with
// tau_i = exp(-sum_{j<i} rho_j delta_j).
CompositeResult composite(const Eigen::Matrix2Xd& values,
                          const Eigen::VectorXd& rho,
                          const Eigen::VectorXd& deltas);

struct SynthesisResult {
  DistortionMap map;
  Eigen::ArrayXXd weight;  // accumulated compositing weight per pixel
};

SynthesisResult synthesize_map(const NdfModel& model, const EyePose& pose,
                               const CameraIntrinsics& intr,
                               const TrainConfig& cfg);

struct LossTracePoint {
  long step;
  double loss;
};

// Trains against deviation targets f*_i - reference map. The reference pose
// is the training pose closest to the eyebox center; its map becomes the
// reference map. Throws on an empty valid set; aborts on non-finite loss.
NdfModel train(const TrainingSet& training, const TrainConfig& cfg,
               const CameraIntrinsics& intr,
               std::vector<LossTracePoint>* trace = nullptr);

// Observed deviation extrema (min, max) per display axis across the set.
void deviation_range(const TrainingSet& training,
                     const DistortionMap& reference, Eigen::Vector2d* lo,
                     Eigen::Vector2d* hi);

}  // namespace ndf
