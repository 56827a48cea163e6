#include "hexhybrid/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

void Hyperparams::validate() const {
  if (learning_rate <= 0 || buffer_size < 1 || learning_starts < 0 || batch_size < 1 || gamma < 0 || gamma > 1 ||
      target_update_interval < 1 || train_freq < 1 || gradient_steps < 0 || total_budget < 1 ||
      exploration_fraction <= 0 || eps_initial < 0 || eps_initial > 1 || eps_final < 0 || eps_final > 1) {
    throw ConfigError("invalid DQN hyperparameters");
  }
}

double epsilon_at(const Hyperparams& h, std::int64_t step) {
  const double horizon = h.exploration_fraction * static_cast<double>(h.total_budget);
  const double progress = std::min(1.0, static_cast<double>(std::max<std::int64_t>(step, 0)) / horizon);
  if (progress >= 1.0) return h.eps_final;
  return h.eps_initial + (h.eps_final - h.eps_initial) * progress;
}

int argmax(std::span<const float> q) {
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

int select_action(std::span<const float> q, double eps, Rng& rng) {
  if (q.empty()) throw ConfigError("empty Q vector");
  if (rng.uniform01() < eps) return rng.uniform_index(static_cast<int>(q.size()));
  return argmax(q);
}

int select_action(std::span<const float> q, std::span<const char> legal, double eps, Rng& rng) {
  if (legal.empty()) return select_action(q, eps, rng);
  if (legal.size() != q.size()) throw ConfigError("action mask size mismatch");
  std::vector<int> allowed;
  for (std::size_t a = 0; a < legal.size(); ++a) {
    if (legal[a]) allowed.push_back(static_cast<int>(a));
  }
  if (allowed.empty()) throw ConfigError("no legal action");
  if (rng.uniform01() < eps) return allowed[static_cast<std::size_t>(rng.uniform_index(static_cast<int>(allowed.size())))];
  int best = allowed.front();
  for (int a : allowed) {
    if (q[static_cast<std::size_t>(a)] > q[static_cast<std::size_t>(best)]) best = a;
  }
  return best;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("replay buffer capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw ConfigError("replay index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
  if (items_.empty()) throw ConfigError("sampling from an empty replay buffer");
  std::vector<const Transition*> out(n);
  for (auto& p : out) p = &items_[rng.uniform_int(items_.size())];
  return out;
}

namespace {

std::vector<float> stack(std::span<const Transition* const> batch, bool next) {
  const auto& first = next ? batch.front()->next_obs : batch.front()->obs;
  std::vector<float> out;
  out.reserve(first.size() * batch.size());
  for (const Transition* t : batch) {
    const auto& o = next ? t->next_obs : t->obs;
    out.insert(out.end(), o.begin(), o.end());
  }
  return out;
}

double huber(double x, double delta) {
  const double a = std::abs(x);
  return a <= delta ? 0.5 * x * x : delta * (a - 0.5 * delta);
}

}  // namespace

std::vector<double> td_targets(std::span<const Transition* const> batch, const QNetwork<float>& target, double gamma) {
  if (batch.empty()) throw ConfigError("empty batch");
  std::vector<double> y(batch.size());
  const bool any_live = std::any_of(batch.begin(), batch.end(), [](const Transition* t) { return !t->done; });
  QNetwork<float>::Matrix q;
  if (any_live && gamma != 0.0) q = target.forward(stack(batch, true), static_cast<int>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    y[i] = batch[i]->reward;
    if (!batch[i]->done && q.size() > 0) y[i] += gamma * static_cast<double>(q.col(static_cast<Eigen::Index>(i)).maxCoeff());
  }
  return y;
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double epsilon)
    : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(ParamVector<float>& params, const ParamVector<float>& grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) throw ConfigError("optimizer size mismatch");
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    m_[i] = beta1_ * m_[i] + (1 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1 - beta2_) * g * g;
    const double update = lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + epsilon_);
    params[i] = static_cast<float>(params[i] - update);
  }
}

double batch_loss(const QNetwork<float>& online, std::span<const Transition* const> batch,
                  std::span<const double> targets, double delta) {
  const auto q = online.forward(stack(batch, false), static_cast<int>(batch.size()));
  double loss = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss += huber(q(batch[i]->action, static_cast<Eigen::Index>(i)) - targets[i], delta);
  }
  return loss / static_cast<double>(batch.size());
}

std::optional<double> train_step(QNetwork<float>& online, const QNetwork<float>& target, const ReplayBuffer& buffer,
                                 const Hyperparams& h, Adam& optimizer, Rng& rng) {
  const auto needed = static_cast<std::size_t>(std::max<std::int64_t>(h.batch_size, h.learning_starts));
  if (buffer.size() < needed || buffer.size() == 0) return std::nullopt;
  const auto batch = buffer.sample(static_cast<std::size_t>(h.batch_size), rng);
  const auto y = td_targets(batch, target, h.gamma);

  QNetwork<float>::Cache cache;
  const auto q = online.forward(stack(batch, false), static_cast<int>(batch.size()), &cache);
  QNetwork<float>::Matrix upstream = QNetwork<float>::Matrix::Zero(q.rows(), q.cols());
  double loss = 0.0;
  const double n = static_cast<double>(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double err = q(batch[i]->action, col) - y[i];
    loss += huber(err, h.huber_delta);
    upstream(batch[i]->action, col) = static_cast<float>(std::clamp(err, -h.huber_delta, h.huber_delta) / n);
  }
  ParamVector<float> grad;
  online.backward(cache, upstream, grad);
  optimizer.step(online.params(), grad);
  return loss / n;
}

DqnLearner::DqnLearner(QNetwork<float> initial, const Hyperparams& h, std::uint64_t seed)
    : h_(h),
      online_(std::move(initial)),
      target_(online_),
      buffer_(static_cast<std::size_t>(h.buffer_size)),
      optimizer_(online_.params().size(), h.learning_rate, h.adam_beta1, h.adam_beta2, h.adam_epsilon),
      rng_(derive_seed(seed, 0x5eed)) {
  h_.validate();
}

int DqnLearner::act(std::span<const float> obs, Rng& rng, std::span<const char> legal) const {
  const double eps = epsilon();
  // Skip the forward pass when the draw explores.
  if (rng.uniform01() < eps) {
    if (legal.empty()) return rng.uniform_index(online_.arch().actions);
    std::vector<int> allowed;
    for (std::size_t a = 0; a < legal.size(); ++a) {
      if (legal[a]) allowed.push_back(static_cast<int>(a));
    }
    return allowed[static_cast<std::size_t>(rng.uniform_index(static_cast<int>(allowed.size())))];
  }
  return greedy(obs, legal);
}

int DqnLearner::greedy(std::span<const float> obs, std::span<const char> legal) const {
  const auto q = online_.q_values(obs);
  Rng unused(0);
  return select_action(q, legal, 0.0, unused);
}

std::optional<double> DqnLearner::step() {
  ++steps_;
  if (steps_ % h_.target_update_interval == 0) target_ = online_;
  std::optional<double> loss;
  if (steps_ % h_.train_freq == 0) {
    for (int g = 0; g < h_.gradient_steps; ++g) {
      if (auto l = train_step(online_, target_, buffer_, h_, optimizer_, rng_)) {
        loss = l;
        ++updates_;
      }
    }
  }
  return loss;
}

double individual_reward(const IndividualReward& ir, bool terminal) {
  if (ir.s_o <= 0) throw ConfigError("original faction strength must be positive");
  return std::max(ir.r_raw - ir.p_g_term, 0.0) * (ir.s_c / ir.s_o) + (terminal ? ir.b_t : 0.0);
}

}  // namespace hexhybrid
