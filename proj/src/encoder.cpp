#include "cc/encoder.hpp"

#include <cmath>

namespace cc {

Encoder init_encoder(int d_out, int d_in, Rng& rng) {
  Encoder enc;
  enc.d_out = d_out;
  enc.d_in = d_in;
  enc.weights.resize(static_cast<std::size_t>(d_out) * d_in);
  enc.bias.assign(d_out, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d_in));
  for (auto& w : enc.weights) w = rng.uniform(-1.0, 1.0) * scale;
  return enc;
}

static Vec affine(const Encoder& enc, const Vec& raw) {
  if (static_cast<int>(raw.size()) != enc.d_in) {
    throw DimensionMismatch("encoder: raw dimension " +
                            std::to_string(raw.size()) + ", expected " +
                            std::to_string(enc.d_in));
  }
  Vec y(enc.d_out);
  for (int i = 0; i < enc.d_out; ++i) {
    double s = enc.bias[i];
    const double* row = &enc.weights[static_cast<std::size_t>(i) * enc.d_in];
    for (int j = 0; j < enc.d_in; ++j) s += row[j] * raw[j];
    y[i] = s;
  }
  return y;
}

FeatureVector forward(const Encoder& enc, const Vec& raw) {
  return l2_normalize(affine(enc, raw));
}

EncoderGrad EncoderGrad::zeros(int d_out, int d_in) {
  EncoderGrad g;
  g.weights.assign(static_cast<std::size_t>(d_out) * d_in, 0.0);
  g.bias.assign(d_out, 0.0);
  return g;
}

void EncoderGrad::add(const EncoderGrad& other) {
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] += other.weights[i];
  for (std::size_t i = 0; i < bias.size(); ++i) bias[i] += other.bias[i];
}

void EncoderGrad::scale(double s) {
  for (auto& w : weights) w *= s;
  for (auto& b : bias) b *= s;
}

Vec backward_pre_normalization(const Encoder& enc, const Vec& raw,
                               const Vec& grad_q) {
  const Vec y = affine(enc, raw);
  const double n = norm(y);
  if (n == 0.0) throw DegenerateVector("encoder backward: zero pre-norm vector");
  Vec q(y);
  for (auto& v : q) v /= n;
  const double radial = dot(q, grad_q);
  Vec grad_y(enc.d_out);
  for (int i = 0; i < enc.d_out; ++i) {
    grad_y[i] = (grad_q[i] - q[i] * radial) / n;
  }
  return grad_y;
}

EncoderGrad backward(const Encoder& enc, const Vec& raw, const Vec& grad_q) {
  const Vec grad_y = backward_pre_normalization(enc, raw, grad_q);
  EncoderGrad g = EncoderGrad::zeros(enc.d_out, enc.d_in);
  for (int i = 0; i < enc.d_out; ++i) {
    double* row = &g.weights[static_cast<std::size_t>(i) * enc.d_in];
    for (int j = 0; j < enc.d_in; ++j) row[j] = grad_y[i] * raw[j];
    g.bias[i] = grad_y[i];
  }
  return g;
}

AdamState AdamState::init(int d_out, int d_in, double weight_decay) {
  AdamState s;
  s.m_weights.assign(static_cast<std::size_t>(d_out) * d_in, 0.0);
  s.v_weights.assign(static_cast<std::size_t>(d_out) * d_in, 0.0);
  s.m_bias.assign(d_out, 0.0);
  s.v_bias.assign(d_out, 0.0);
  s.weight_decay = weight_decay;
  return s;
}

static void adam_update(Vec& params, const Vec& grads, Vec& m, Vec& v,
                        const AdamState& s, double lr, double bc1, double bc2,
                        bool decay) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (decay) params[i] -= lr * s.weight_decay * params[i];
    m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * grads[i];
    v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * grads[i] * grads[i];
    const double m_hat = m[i] / bc1;
    const double v_hat = v[i] / bc2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + s.epsilon);
  }
}

void adam_step(Encoder& enc, const EncoderGrad& grad, AdamState& state,
               double lr) {
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step);
  adam_update(enc.weights, grad.weights, state.m_weights, state.v_weights,
              state, lr, bc1, bc2, /*decay=*/true);
  // bias is exempt from weight decay
  adam_update(enc.bias, grad.bias, state.m_bias, state.v_bias, state, lr, bc1,
              bc2, /*decay=*/false);
}

double lr_at(const LrSchedule& s, int epoch) {
  if (s.warmup_epochs > 0 && epoch < s.warmup_epochs) {
    return s.base_lr * static_cast<double>(epoch + 1) / s.warmup_epochs;
  }
  const int decays = s.decay_every > 0 ? epoch / s.decay_every : 0;
  return s.base_lr * std::pow(s.decay_factor, decays);
}

}  // namespace cc
