#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace ndf {

// Eye pose: axis-angle rotation v (radians) and position t (mm).
struct EyePose {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  Eigen::Matrix3d rotation() const;
};

struct CameraIntrinsics {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  int width = 0, height = 0;

  bool contains(double u, double v) const {
    return u >= -0.5 && u <= width - 0.5 && v >= -0.5 && v <= height - 0.5;
  }
};

// Viewpoint camera with the given horizontal FoV, principal point at the
// grid center, square pixels.
CameraIntrinsics make_intrinsics(int width, int height, double hfov_deg);

struct Ray {
  Eigen::Vector3d origin;     // mm
  Eigen::Vector3d direction;  // unit
};

struct RaySamples {
  Eigen::VectorXd depths;  // strictly increasing, mm
  Eigen::VectorXd deltas;  // terminal delta = (far - near) / P
};

enum class SampleMode { Deterministic, Stratified };

// Back-project a retinal pixel through the pinhole model and rotate into the
// world frame. Throws std::domain_error on out-of-bounds pixels.
Ray make_ray(const Eigen::Vector2d& u_e, const CameraIntrinsics& intr,
             const EyePose& pose);

// Project a world point into the camera of `pose`. Returns false when the
// point is behind the camera.
bool project(const Eigen::Vector3d& point, const CameraIntrinsics& intr,
             const EyePose& pose, Eigen::Vector2d* u_e);

RaySamples sample_ray(const Ray& ray, double near, double far, int count,
                      SampleMode mode, std::mt19937_64& rng);
RaySamples sample_ray(const Ray& ray, double near, double far, int count);

struct GridSpec {
  double edge_mm = 12.0;
  int per_axis = 2;
  double rotation_jitter_rad = 0.0;
  uint64_t seed = 0;
};

// Lattice of eye positions centered on the eyebox origin, identity rotation
// unless jitter is configured.
std::vector<EyePose> pose_grid(const GridSpec& spec);

// 48 test poses on the four cube diagonals: each 3 mm sub-diagonal is split
// into sixths and the 1st, 3rd and 5th points are taken, so no test pose
// lands on a lattice vertex.
std::vector<EyePose> test_diagonal_poses(double cube_edge);

}  // namespace ndf
