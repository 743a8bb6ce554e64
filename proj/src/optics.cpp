#include "ndf/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace ndf {

std::optional<Eigen::Vector2d> oracle_map_ray(const Ray& ray,
                                              const OpticsModel& optics) {
  const Eigen::Vector3d oc = optics.surface_center - ray.origin;
  const double proj = ray.direction.dot(oc);
  const double disc =
      proj * proj - oc.squaredNorm() + optics.radius * optics.radius;
  if (disc < 0) return std::nullopt;
  const double s = proj + std::sqrt(disc);  // far intersection (eye inside)
  if (s <= 0) return std::nullopt;

  Eigen::Vector3d x = ray.origin + s * ray.direction;
  // Direction-coupled source shift: the perceived source moves with the
  // viewing direction, so no single 3D point explains all observations.
  const double swim = optics.kappa * optics.swim_gain * s;
  x.x() += swim * ray.direction.x();
  x.y() += swim * ray.direction.y();

  const double a = (x.x() - optics.surface_center.x()) / optics.radius;
  const double b = (x.y() - optics.surface_center.y()) / optics.radius;
  if (std::abs(a) > optics.extent_a || std::abs(b) > optics.extent_b)
    return std::nullopt;

  const double wa = a + optics.warp_a3 * a * a * a + optics.warp_a_b2 * a * b * b;
  const double wb = b + optics.warp_b3 * b * b * b + optics.warp_b_a2 * b * a * a;

  const double wd = optics.display_width, hd = optics.display_height;
  Eigen::Vector2d ud(wd * (0.5 + optics.scale_u * wa),
                     hd * (0.5 + optics.scale_v * wb));
  const double gx = optics.guard * wd, gy = optics.guard * hd;
  if (ud.x() < -gx || ud.x() > wd + gx || ud.y() < -gy || ud.y() > hd + gy)
    return std::nullopt;
  return ud;
}

std::optional<Eigen::Vector2d> oracle_map(const Eigen::Vector2d& u_e,
                                          const EyePose& pose,
                                          const OpticsModel& optics,
                                          const CameraIntrinsics& intr) {
  return oracle_map_ray(make_ray(u_e, intr, pose), optics);
}

DistortionMap dense_gt_map(const EyePose& pose, const OpticsModel& optics,
                           const CameraIntrinsics& intr) {
  DistortionMap map(intr.width, intr.height);
  for (int y = 0; y < intr.height; ++y)
    for (int x = 0; x < intr.width; ++x) {
      const auto ud = oracle_map(Eigen::Vector2d(x, y), pose, optics, intr);
      if (ud) {
        map.u(y, x) = ud->x();
        map.v(y, x) = ud->y();
        map.valid(y, x) = 1;
      }
    }
  return map;
}

namespace {

double bilinear(const Eigen::ArrayXXd& img, double x, double y) {
  const int w = int(img.cols()), h = int(img.rows());
  const double xc = std::clamp(x, 0.0, w - 1.0);
  const double yc = std::clamp(y, 0.0, h - 1.0);
  const int x0 = std::min(int(xc), w - 2 >= 0 ? w - 2 : 0);
  const int y0 = std::min(int(yc), h - 2 >= 0 ? h - 2 : 0);
  const double fx = xc - x0, fy = yc - y0;
  return img(y0, x0) * (1 - fx) * (1 - fy) + img(y0, x0 + 1) * fx * (1 - fy) +
         img(y0 + 1, x0) * (1 - fx) * fy + img(y0 + 1, x0 + 1) * fx * fy;
}

}  // namespace

Eigen::ArrayXXd render_pattern(const Eigen::ArrayXXd& pattern,
                               const EyePose& pose, const OpticsModel& optics,
                               const CameraIntrinsics& intr,
                               double noise_sigma, std::mt19937_64* rng) {
  if (pattern.cols() != optics.display_width ||
      pattern.rows() != optics.display_height)
    throw std::domain_error("render_pattern: pattern size mismatch");

  Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(intr.height, intr.width);
  std::normal_distribution<double> noise(0.0, noise_sigma);
  for (int y = 0; y < intr.height; ++y)
    for (int x = 0; x < intr.width; ++x) {
      const auto ud = oracle_map(Eigen::Vector2d(x, y), pose, optics, intr);
      double value = 0.0;
      if (ud) value = bilinear(pattern, ud->x() - 0.5, ud->y() - 0.5);
      if (noise_sigma > 0 && rng) value += noise(*rng);
      out(y, x) = value;
    }
  return out;
}

}  // namespace ndf
