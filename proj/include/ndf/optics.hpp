#pragma once

#include <Eigen/Dense>
#include <optional>

#include "ndf/geometry.hpp"

namespace ndf {

// Closed-form model of a wide-FoV near-eye display: a spherical virtual
// display patch with a cubic in-surface warp, plus a direction-coupled
// shift of the perceived source point so that the effective light source
// of a display pixel is not a fixed 3D point (pupil swim).
struct OpticsModel {
  Eigen::Vector3d surface_center{0.0, 0.0, 120.0};  // mm, world frame
  double radius = 150.0;                            // mm
  double extent_a = 0.85;  // patch half-extent, x surface parameter
  double extent_b = 0.60;  // patch half-extent, y surface parameter

  int display_width = 1920;
  int display_height = 1080;

  // Perceived source point offset: kappa * swim_gain * depth * (d.x, d.y, 0).
  double kappa = 0.08;
  double swim_gain = 6.0;

  // Cubic warp in surface parameters (left-right symmetric by default).
  double warp_a3 = 0.15, warp_a_b2 = 0.10;
  double warp_b3 = 0.12, warp_b_a2 = 0.08;

  // Surface-parameter-to-display scale, fraction of the half display size.
  double scale_u = 0.40, scale_v = 0.55;

  // Guard band around the display bounds, fraction of the extent.
  double guard = 0.05;
};

struct DistortionMap {
  int width = 0, height = 0;
  Eigen::ArrayXXd u;                          // height x width, display px
  Eigen::ArrayXXd v;                          // height x width, display px
  Eigen::Array<uint8_t, Eigen::Dynamic, Eigen::Dynamic> valid;

  DistortionMap() = default;
  DistortionMap(int w, int h)
      : width(w), height(h), u(Eigen::ArrayXXd::Zero(h, w)),
        v(Eigen::ArrayXXd::Zero(h, w)),
        valid(Eigen::Array<uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(h, w)) {}

  double valid_fraction() const {
    if (width == 0 || height == 0) return 0.0;
    return valid.cast<double>().sum() / (double(width) * height);
  }
};

// Display coordinate perceived along the eye ray through u_e, or nullopt for
// rays that miss the patch or land outside the display guard band.
std::optional<Eigen::Vector2d> oracle_map(const Eigen::Vector2d& u_e,
                                          const EyePose& pose,
                                          const OpticsModel& optics,
                                          const CameraIntrinsics& intr);

// Same mapping evaluated directly on a ray (used by the triangulation
// oracle checks, where the ray is not tied to a pixel grid).
std::optional<Eigen::Vector2d> oracle_map_ray(const Ray& ray,
                                              const OpticsModel& optics);

DistortionMap dense_gt_map(const EyePose& pose, const OpticsModel& optics,
                           const CameraIntrinsics& intr);

// Simulated viewpoint capture of a display pattern (row-major, height x width,
// values in [0,1]). Bilinear pattern lookup at the oracle display coordinate;
// invalid pixels are black. Gaussian noise with sigma `noise_sigma` and the
// given rng, when sigma > 0.
Eigen::ArrayXXd render_pattern(const Eigen::ArrayXXd& pattern,
                               const EyePose& pose, const OpticsModel& optics,
                               const CameraIntrinsics& intr,
                               double noise_sigma = 0.0,
                               std::mt19937_64* rng = nullptr);

}  // namespace ndf
