#pragma once

#include "cc/core.hpp"

namespace cc {

/// Linear embedding head: q = l2_normalize(W raw + b).
struct Encoder {
  int d_out = 0;
  int d_in = 0;
  Vec weights;  // row-major, d_out x d_in
  Vec bias;     // d_out

  double& w(int row, int col) { return weights[row * d_in + col]; }
  double w(int row, int col) const { return weights[row * d_in + col]; }
};

// bias zero, weights ~ U(-1,1)/sqrt(d_in)
Encoder init_encoder(int d_out, int d_in, Rng& rng);

FeatureVector forward(const Encoder& enc, const Vec& raw);

struct EncoderGrad {
  Vec weights;  // same shape as Encoder::weights
  Vec bias;

  static EncoderGrad zeros(int d_out, int d_in);
  void add(const EncoderGrad& other);
  void scale(double s);
};

// Chain rule through the normalization: with y = W raw + b and q = y/|y|,
// grad_y = (I - q q^T)/|y| grad_q, grad_W = grad_y raw^T, grad_b = grad_y.
EncoderGrad backward(const Encoder& enc, const Vec& raw, const Vec& grad_q);

// grad_y only (length d_out); the caller owns the outer product with raw.
Vec backward_pre_normalization(const Encoder& enc, const Vec& raw,
                               const Vec& grad_q);

struct AdamState {
  Vec m_weights, v_weights;
  Vec m_bias, v_bias;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;

  static AdamState init(int d_out, int d_in, double weight_decay);
};

// Decoupled weight decay (params -= lr*wd*params) followed by the standard
// bias-corrected Adam update.
void adam_step(Encoder& enc, const EncoderGrad& grad, AdamState& state,
               double lr);

struct LrSchedule {
  double base_lr = 3.5e-4;
  int warmup_epochs = 10;
  int decay_every = 20;
  double decay_factor = 0.1;
  int total_epochs = 50;
};

// Linear warmup to base_lr over [0, warmup_epochs), then
// base_lr * decay_factor^floor(epoch / decay_every).
double lr_at(const LrSchedule& s, int epoch);

}  // namespace cc
