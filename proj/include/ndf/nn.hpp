#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ndf::nn {

enum class Activation { Identity, ReLU, Sigmoid, SoftPlus };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation act);

Eigen::ArrayXXd activate(Activation act, const Eigen::ArrayXXd& z);
// Derivative w.r.t. the pre-activation, expressed through z.
Eigen::ArrayXXd activate_grad(Activation act, const Eigen::ArrayXXd& z);

struct Layer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
  Activation act = Activation::ReLU;
};

struct ForwardCache {
  const void* owner = nullptr;
  Eigen::MatrixXd input;                // in x batch
  std::vector<Eigen::MatrixXd> pre;     // pre-activations per layer
  std::vector<Eigen::MatrixXd> post;    // activations per layer
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;
};

// Dense MLP, samples as columns. Hidden layers use ReLU; the output
// activation is configurable per head.
class Mlp {
 public:
  Mlp() = default;
  Mlp(const std::vector<int>& sizes, Activation hidden, Activation output);

  // He-uniform for ReLU layers, Glorot-uniform otherwise.
  void initialize(std::mt19937_64& rng);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& input,
                          ForwardCache* cache = nullptr) const;

  // Reverse-mode gradients; returns the gradient w.r.t. the input.
  Eigen::MatrixXd backward(const ForwardCache& cache,
                           const Eigen::MatrixXd& output_grad,
                           Gradients* grads) const;

  Gradients zero_gradients() const;

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }
  int input_size() const;
  int output_size() const;

 private:
  std::vector<Layer> layers_;
};

struct AdamState {
  std::vector<Eigen::MatrixXd> m_weights, v_weights;
  std::vector<Eigen::VectorXd> m_bias, v_bias;
  long step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  static AdamState for_mlp(const Mlp& mlp);
};

void adam_step(Mlp& mlp, const Gradients& grads, AdamState& state, double eta);

// Logarithmic annealing: eta0 * (etan/eta0)^(step/total).
double lr_schedule(double eta0, double etan, long step, long total);

struct EncodingConfig {
  int frequencies = 16;    // L
  double scale = 1.0 / 300.0;  // world mm -> roughly [-1, 1]
};

// [sin(2^0 x), ..., sin(2^{L-1} x), cos(2^0 x), ..., cos(2^{L-1} x)]
// componentwise over the scaled 3-vector; output length 6L.
Eigen::VectorXd positional_encoding(const Eigen::Vector3d& x,
                                    const EncodingConfig& cfg);
// Batched variant: columns are samples, output 6L x batch.
Eigen::MatrixXd positional_encoding(const Eigen::MatrixXd& x,
                                    const EncodingConfig& cfg);

}  // namespace ndf::nn
