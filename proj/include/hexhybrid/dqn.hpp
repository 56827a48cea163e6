#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hexhybrid/neuralnet.hpp"
#include "hexhybrid/rng.hpp"

namespace hexhybrid {

// Step counters (train_freq, learning_starts, target updates, exploration)
// count agent decisions.
struct Hyperparams {
  double learning_rate = 0.0002;
  std::int64_t buffer_size = 1'000'000;
  std::int64_t learning_starts = 10'000;
  int batch_size = 64;
  double gamma = 0.93;
  std::int64_t target_update_interval = 1'000;
  double eps_initial = 1.0;
  double eps_final = 0.01;
  double exploration_fraction = 1.0;
  int train_freq = 4;
  int gradient_steps = 1;
  std::int64_t total_budget = 10'000'000;
  double huber_delta = 1.0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  void validate() const;
  bool operator==(const Hyperparams&) const = default;
};

// Linear decay from eps_initial to eps_final over exploration_fraction * total_budget steps.
double epsilon_at(const Hyperparams& h, std::int64_t step);

// Epsilon-greedy over all actions; greedy ties go to the lowest index.
int select_action(std::span<const float> q, double eps, Rng& rng);

// Same, restricted to actions whose mask entry is nonzero.
int select_action(std::span<const float> q, std::span<const char> legal, double eps, Rng& rng);

int argmax(std::span<const float> q);

struct Transition {
  std::vector<float> obs;
  int action = 0;
  double reward = 0.0;
  std::vector<float> next_obs;
  bool done = false;
};

// FIFO ring buffer with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  // i-th oldest stored transition.
  const Transition& at(std::size_t i) const;
  std::vector<const Transition*> sample(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> items_;
};

// y = r + gamma * max_a Q_target(next_obs, a), or y = r for terminal transitions.
std::vector<double> td_targets(std::span<const Transition* const> batch, const QNetwork<float>& target, double gamma);

class Adam {
 public:
  Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

  void step(ParamVector<float>& params, const ParamVector<float>& grad);
  std::int64_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::int64_t t_ = 0;
  std::vector<double> m_, v_;
};

// One gradient step on a uniform minibatch with Huber loss. Returns nullopt
// (and leaves everything untouched) while the buffer holds fewer than
// max(batch_size, learning_starts) transitions.
std::optional<double> train_step(QNetwork<float>& online, const QNetwork<float>& target, const ReplayBuffer& buffer,
                                 const Hyperparams& h, Adam& optimizer, Rng& rng);

// Huber loss of a fixed batch against given targets (no update).
double batch_loss(const QNetwork<float>& online, std::span<const Transition* const> batch,
                  std::span<const double> targets, double delta);

// Owns the online/target networks, buffer and optimizer of one training run.
class DqnLearner {
 public:
  DqnLearner(QNetwork<float> initial, const Hyperparams& h, std::uint64_t seed);

  // Epsilon-greedy at the current step's epsilon.
  int act(std::span<const float> obs, Rng& rng, std::span<const char> legal = {}) const;
  int greedy(std::span<const float> obs, std::span<const char> legal = {}) const;

  void store(Transition t) { buffer_.push(std::move(t)); }

  // Counts one agent step: syncs the target every target_update_interval steps
  // and runs gradient_steps updates every train_freq steps.
  std::optional<double> step();

  std::int64_t steps() const { return steps_; }
  std::int64_t updates() const { return updates_; }
  double epsilon() const { return epsilon_at(h_, steps_); }
  const Hyperparams& hyperparams() const { return h_; }
  const QNetwork<float>& online() const { return online_; }
  const QNetwork<float>& target() const { return target_; }
  const ReplayBuffer& buffer() const { return buffer_; }

 private:
  Hyperparams h_;
  QNetwork<float> online_;
  QNetwork<float> target_;
  ReplayBuffer buffer_;
  Adam optimizer_;
  Rng rng_;
  std::int64_t steps_ = 0;
  std::int64_t updates_ = 0;
};

struct IndividualReward {
  double r_raw = 0.0;  // own-perspective score change since the previous decision
  double s_c = 0.0;    // current faction strength
  double s_o = 0.0;    // original faction strength
  double p_g_term = 0.0;
  double b_t = 25.0;
};

// max(R_raw - P_g, 0) * S_c / S_o + B_t * I_t
double individual_reward(const IndividualReward& ir, bool terminal);

}  // namespace hexhybrid
