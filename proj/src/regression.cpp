#include "ndf/regression.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace ndf {

namespace {

Eigen::VectorXd normalize_row(const KernelModel& model,
                              const Eigen::VectorXd& x) {
  return (x - model.norm_offset).cwiseProduct(model.norm_scale);
}

// Phi(j,k) = exp(-|x_j - mu_k|^2 / (2 sigma^2)), inputs already normalized.
Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& centers, double sigma) {
  const Eigen::VectorXd in2 = inputs.rowwise().squaredNorm();
  const Eigen::VectorXd c2 = centers.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = -2.0 * inputs * centers.transpose();
  d2.colwise() += in2;
  d2.rowwise() += c2.transpose();
  return (-d2.array() / (2.0 * sigma * sigma)).exp();
}

}  // namespace

Eigen::Vector2d KernelModel::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim || !x.allFinite())
    throw std::domain_error("KernelModel: bad input");
  const Eigen::VectorXd xn = normalize_row(*this, x);
  const Eigen::VectorXd phi =
      (-(centers.rowwise() - xn.transpose()).rowwise().squaredNorm().array() /
       (2.0 * sigma * sigma)).exp();
  return (coeffs.transpose() * phi);
}

Eigen::MatrixXd eval(const KernelModel& model, const Eigen::MatrixXd& inputs) {
  Eigen::MatrixXd xn = inputs;
  xn.rowwise() -= model.norm_offset.transpose();
  xn.array().rowwise() *= model.norm_scale.transpose().array();
  const Eigen::Index block = 8192;
  Eigen::MatrixXd out(inputs.rows(), 2);
  for (Eigen::Index r0 = 0; r0 < inputs.rows(); r0 += block) {
    const Eigen::Index n = std::min(block, inputs.rows() - r0);
    out.middleRows(r0, n) =
        design_matrix(xn.middleRows(r0, n), model.centers, model.sigma) *
        model.coeffs;
  }
  return out;
}

KernelModel fit(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                const KernelFitOptions& options) {
  const Eigen::Index num_samples = inputs.rows();
  const int num_centers = options.num_centers;
  if (num_samples < num_centers)
    throw std::invalid_argument("fit: sample count below center count");
  if (options.sigma <= 0 || options.lambda < 0)
    throw std::invalid_argument("fit: bad kernel hyperparameters");

  KernelModel model;
  model.input_dim = int(inputs.cols());
  model.sigma = options.sigma;
  model.lambda = options.lambda;
  model.norm_offset = Eigen::VectorXd::Zero(inputs.cols());
  model.norm_scale = Eigen::VectorXd::Ones(inputs.cols());
  if (options.normalize) {
    const Eigen::VectorXd lo = inputs.colwise().minCoeff();
    const Eigen::VectorXd hi = inputs.colwise().maxCoeff();
    model.norm_offset = lo;
    for (Eigen::Index i = 0; i < inputs.cols(); ++i)
      model.norm_scale[i] = (hi[i] - lo[i]) > 1e-12 ? 1.0 / (hi[i] - lo[i]) : 1.0;
  }

  Eigen::MatrixXd xn = inputs;
  xn.rowwise() -= model.norm_offset.transpose();
  xn.array().rowwise() *= model.norm_scale.transpose().array();

  // Centers: uniform draw without replacement from the sample inputs.
  std::vector<Eigen::Index> order(num_samples);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);
  for (int k = 0; k < num_centers; ++k) {
    std::uniform_int_distribution<Eigen::Index> pick(k, num_samples - 1);
    std::swap(order[k], order[pick(rng)]);
  }
  model.centers.resize(num_centers, inputs.cols());
  for (int k = 0; k < num_centers; ++k) model.centers.row(k) = xn.row(order[k]);

  // Accumulate Phi^T Phi and Phi^T U blockwise; the full design matrix for
  // pooled 5D fits would not fit in memory.
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(num_centers, num_centers);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(num_centers, 2);
  const Eigen::Index block = 8192;
  for (Eigen::Index r0 = 0; r0 < num_samples; r0 += block) {
    const Eigen::Index n = std::min(block, num_samples - r0);
    const Eigen::MatrixXd phi =
        design_matrix(xn.middleRows(r0, n), model.centers, model.sigma);
    normal.noalias() += phi.transpose() * phi;
    rhs.noalias() += phi.transpose() * targets.middleRows(r0, n);
  }
  normal.diagonal().array() += options.lambda;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  const double d_max = ldlt.vectorD().maxCoeff();
  const double d_min = ldlt.vectorD().minCoeff();
  const bool well_posed = ldlt.info() == Eigen::Success && d_min > 0 &&
                          d_min > 1e-15 * d_max;
  if (options.lambda == 0 && !well_posed)
    throw std::runtime_error("fit: singular normal matrix with lambda = 0");
  if (well_posed) {
    model.coeffs = ldlt.solve(rhs);
  } else {
    // Rank-revealing fallback for poorly conditioned regularized systems.
    model.coeffs = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(normal).solve(rhs);
  }
  if (!model.coeffs.allFinite())
    throw std::runtime_error("fit: non-finite coefficients (ill-conditioned)");
  return model;
}

KernelModel fit_gaussian_5d(const std::vector<CorrespondenceLut>& luts,
                            const KernelFitOptions& options) {
  size_t total = 0;
  for (const auto& lut : luts) total += lut.pairs.size();
  if (total == 0) throw std::invalid_argument("fit_gaussian_5d: no samples");

  Eigen::MatrixXd inputs(total, 5), targets(total, 2);
  size_t row = 0;
  for (const auto& lut : luts)
    for (const auto& pair : lut.pairs) {
      inputs.row(row) << pair.u_e.x(), pair.u_e.y(), lut.pose.t.x(),
          lut.pose.t.y(), lut.pose.t.z();
      targets.row(row) = pair.u_d.transpose();
      ++row;
    }
  KernelFitOptions opts = options;
  opts.normalize = true;
  return fit(inputs, targets, opts);
}

}  // namespace ndf
