#include "ndf/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ndf {

Eigen::Matrix3d EyePose::rotation() const {
  const double angle = v.norm();
  if (angle < 1e-14) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
}

CameraIntrinsics make_intrinsics(int width, int height, double hfov_deg) {
  CameraIntrinsics intr;
  intr.width = width;
  intr.height = height;
  const double half = 0.5 * hfov_deg * M_PI / 180.0;
  intr.fx = 0.5 * width / std::tan(half);
  intr.fy = intr.fx;
  intr.cx = 0.5 * (width - 1);
  intr.cy = 0.5 * (height - 1);
  return intr;
}

Ray make_ray(const Eigen::Vector2d& u_e, const CameraIntrinsics& intr,
             const EyePose& pose) {
  if (!intr.contains(u_e.x(), u_e.y()))
    throw std::domain_error("make_ray: pixel outside image bounds");
  Eigen::Vector3d d_cam((u_e.x() - intr.cx) / intr.fx,
                        (u_e.y() - intr.cy) / intr.fy, 1.0);
  Ray ray;
  ray.origin = pose.t;
  ray.direction = (pose.rotation() * d_cam).normalized();
  return ray;
}

bool project(const Eigen::Vector3d& point, const CameraIntrinsics& intr,
             const EyePose& pose, Eigen::Vector2d* u_e) {
  const Eigen::Vector3d p_cam = pose.rotation().transpose() * (point - pose.t);
  if (p_cam.z() <= 0) return false;
  u_e->x() = intr.fx * p_cam.x() / p_cam.z() + intr.cx;
  u_e->y() = intr.fy * p_cam.y() / p_cam.z() + intr.cy;
  return true;
}

RaySamples sample_ray(const Ray& ray, double near, double far, int count,
                      SampleMode mode, std::mt19937_64& rng) {
  (void)ray;
  if (!(0 < near && near < far))
    throw std::domain_error("sample_ray: require 0 < near < far");
  if (count < 2) throw std::domain_error("sample_ray: require P >= 2");

  const double h = (far - near) / count;
  RaySamples s;
  s.depths.resize(count);
  s.deltas.resize(count);
  if (mode == SampleMode::Deterministic) {
    for (int i = 0; i < count; ++i) s.depths[i] = near + (i + 0.5) * h;
  } else {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < count; ++i) s.depths[i] = near + (i + uni(rng)) * h;
  }
  for (int i = 0; i + 1 < count; ++i) s.deltas[i] = s.depths[i + 1] - s.depths[i];
  s.deltas[count - 1] = h;
  return s;
}

RaySamples sample_ray(const Ray& ray, double near, double far, int count) {
  std::mt19937_64 rng(0);
  return sample_ray(ray, near, far, count, SampleMode::Deterministic, rng);
}

std::vector<EyePose> pose_grid(const GridSpec& spec) {
  if (spec.edge_mm <= 0) throw std::domain_error("pose_grid: edge must be > 0");
  if (spec.per_axis < 2) throw std::domain_error("pose_grid: per-axis count must be >= 2");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-spec.rotation_jitter_rad,
                                                spec.rotation_jitter_rad);
  const double half = 0.5 * spec.edge_mm;
  const double step = spec.edge_mm / (spec.per_axis - 1);
  std::vector<EyePose> poses;
  poses.reserve(spec.per_axis * spec.per_axis * spec.per_axis);
  for (int iz = 0; iz < spec.per_axis; ++iz)
    for (int iy = 0; iy < spec.per_axis; ++iy)
      for (int ix = 0; ix < spec.per_axis; ++ix) {
        EyePose p;
        p.t = Eigen::Vector3d(-half + ix * step, -half + iy * step,
                              -half + iz * step);
        if (spec.rotation_jitter_rad > 0)
          p.v = Eigen::Vector3d(jitter(rng), jitter(rng), jitter(rng));
        poses.push_back(p);
      }
  return poses;
}

std::vector<EyePose> test_diagonal_poses(double cube_edge) {
  if (cube_edge <= 0)
    throw std::domain_error("test_diagonal_poses: edge must be > 0");
  const double half = 0.5 * cube_edge;
  const Eigen::Vector3d corners[4] = {
      {-half, -half, -half}, {half, -half, -half},
      {-half, half, -half},  {half, half, -half}};
  std::vector<EyePose> poses;
  poses.reserve(48);
  const int offsets[3] = {1, 3, 5};
  for (const auto& corner : corners) {
    const Eigen::Vector3d a = corner;
    const Eigen::Vector3d b = -corner;  // opposite corner
    for (int seg = 0; seg < 4; ++seg)
      for (int k : offsets) {
        const double lambda = (seg + k / 6.0) / 4.0;
        EyePose p;
        p.t = a + lambda * (b - a);
        poses.push_back(p);
      }
  }
  return poses;
}

}  // namespace ndf
