#include "ndf/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace ndf::nn {

Activation activation_from_string(const std::string& name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::ReLU;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "softplus") return Activation::SoftPlus;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string to_string(Activation act) {
  switch (act) {
    case Activation::Identity: return "identity";
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::SoftPlus: return "softplus";
  }
  return "identity";
}

Eigen::ArrayXXd activate(Activation act, const Eigen::ArrayXXd& z) {
  switch (act) {
    case Activation::Identity:
      return z;
    case Activation::ReLU:
      return z.max(0.0);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + (-z).exp());
    case Activation::SoftPlus:
      // log(1 + e^z), stable for large |z|.
      return z.max(0.0) + (1.0 + (-z.abs()).exp()).log();
  }
  return z;
}

Eigen::ArrayXXd activate_grad(Activation act, const Eigen::ArrayXXd& z) {
  switch (act) {
    case Activation::Identity:
      return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
    case Activation::ReLU:
      return (z > 0.0).cast<double>();
    case Activation::Sigmoid: {
      const Eigen::ArrayXXd s = 1.0 / (1.0 + (-z).exp());
      return s * (1.0 - s);
    }
    case Activation::SoftPlus:
      return 1.0 / (1.0 + (-z).exp());
  }
  return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
}

Mlp::Mlp(const std::vector<int>& sizes, Activation hidden, Activation output) {
  if (sizes.size() < 2) throw std::invalid_argument("Mlp: need >= 2 sizes");
  layers_.resize(sizes.size() - 1);
  for (size_t i = 0; i < layers_.size(); ++i) {
    layers_[i].weights = Eigen::MatrixXd::Zero(sizes[i + 1], sizes[i]);
    layers_[i].bias = Eigen::VectorXd::Zero(sizes[i + 1]);
    layers_[i].act = (i + 1 == layers_.size()) ? output : hidden;
  }
}

void Mlp::initialize(std::mt19937_64& rng) {
  for (auto& layer : layers_) {
    const double fan_in = double(layer.weights.cols());
    const double fan_out = double(layer.weights.rows());
    const double limit = layer.act == Activation::ReLU
                             ? std::sqrt(6.0 / fan_in)
                             : std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uni(-limit, limit);
    for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
      for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
        layer.weights(r, c) = uni(rng);
    layer.bias.setZero();
  }
}

int Mlp::input_size() const { return int(layers_.front().weights.cols()); }
int Mlp::output_size() const { return int(layers_.back().weights.rows()); }

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input,
                             ForwardCache* cache) const {
  if (input.rows() != input_size())
    throw std::domain_error("Mlp::forward: input width mismatch");
  if (cache) {
    cache->owner = this;
    cache->input = input;
    cache->pre.clear();
    cache->post.clear();
  }
  Eigen::MatrixXd h = input;
  for (const auto& layer : layers_) {
    Eigen::MatrixXd z = (layer.weights * h).colwise() + layer.bias;
    h = activate(layer.act, z.array()).matrix();
    if (cache) {
      cache->pre.push_back(std::move(z));
      cache->post.push_back(h);
    }
  }
  return h;
}

Eigen::MatrixXd Mlp::backward(const ForwardCache& cache,
                              const Eigen::MatrixXd& output_grad,
                              Gradients* grads) const {
  if (cache.owner != this || cache.pre.size() != layers_.size())
    throw std::domain_error("Mlp::backward: stale forward cache");
  if (output_grad.rows() != output_size() ||
      output_grad.cols() != cache.input.cols())
    throw std::domain_error("Mlp::backward: gradient shape mismatch");

  if (grads) {
    grads->weights.resize(layers_.size());
    grads->bias.resize(layers_.size());
  }
  Eigen::MatrixXd delta = output_grad;
  for (int i = int(layers_.size()) - 1; i >= 0; --i) {
    delta = (delta.array() * activate_grad(layers_[i].act, cache.pre[i].array()))
                .matrix();
    const Eigen::MatrixXd& below = i == 0 ? cache.input : cache.post[i - 1];
    if (grads) {
      (*grads).weights[i].noalias() = delta * below.transpose();
      (*grads).bias[i] = delta.rowwise().sum();
    }
    if (i > 0) delta = layers_[i].weights.transpose() * delta;
  }
  return layers_.front().weights.transpose() * delta;
}

Gradients Mlp::zero_gradients() const {
  Gradients g;
  for (const auto& layer : layers_) {
    g.weights.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(),
                                              layer.weights.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

AdamState AdamState::for_mlp(const Mlp& mlp) {
  AdamState state;
  for (const auto& layer : mlp.layers()) {
    state.m_weights.push_back(
        Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
    state.v_weights.push_back(
        Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
    state.m_bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
    state.v_bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return state;
}

namespace {

template <typename Param, typename Grad, typename Moment>
void adam_update(Param& param, const Grad& grad, Moment& m, Moment& v,
                 const AdamState& state, double eta, double bc1, double bc2) {
  m = state.beta1 * m + (1.0 - state.beta1) * grad;
  v = (state.beta2 * v.array() + (1.0 - state.beta2) * grad.array().square())
          .matrix();
  param.array() -=
      eta * (m.array() / bc1) / ((v.array() / bc2).sqrt() + state.eps);
}

}  // namespace

void adam_step(Mlp& mlp, const Gradients& grads, AdamState& state, double eta) {
  if (grads.weights.size() != mlp.layers().size())
    throw std::domain_error("adam_step: gradient shape mismatch");
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
  for (size_t i = 0; i < mlp.layers().size(); ++i) {
    adam_update(mlp.layers()[i].weights, grads.weights[i], state.m_weights[i],
                state.v_weights[i], state, eta, bc1, bc2);
    adam_update(mlp.layers()[i].bias, grads.bias[i], state.m_bias[i],
                state.v_bias[i], state, eta, bc1, bc2);
  }
}

double lr_schedule(double eta0, double etan, long step, long total) {
  if (step < 0 || step > total || total <= 0)
    throw std::domain_error("lr_schedule: step out of range");
  return eta0 * std::pow(etan / eta0, double(step) / double(total));
}

Eigen::MatrixXd positional_encoding(const Eigen::MatrixXd& x,
                                    const EncodingConfig& cfg) {
  if (x.rows() != 3) throw std::domain_error("positional_encoding: need 3 rows");
  const int L = cfg.frequencies;
  Eigen::MatrixXd out(6 * L, x.cols());
  Eigen::ArrayXXd scaled = x.array() * cfg.scale;
  for (int l = 0; l < L; ++l) {
    const double freq = std::pow(2.0, l);
    out.middleRows(3 * l, 3) = (scaled * freq).sin().matrix();
    out.middleRows(3 * L + 3 * l, 3) = (scaled * freq).cos().matrix();
  }
  return out;
}

Eigen::VectorXd positional_encoding(const Eigen::Vector3d& x,
                                    const EncodingConfig& cfg) {
  return positional_encoding(Eigen::MatrixXd(x), cfg).col(0);
}

}  // namespace ndf::nn
