#pragma once

// Trains the DQN learner on the deterministic chain and compares against Q*.

#include <cmath>

#include "hexhybrid/dqn.hpp"
#include "oracles.hpp"

namespace chain {

struct Outcome {
  double max_error = 0.0;
  bool greedy_optimal = false;
  std::int64_t updates = 0;
};

inline hexhybrid::Architecture arch(int n) {
  hexhybrid::Architecture a;
  a.in_channels = n;
  a.height = 1;
  a.width = 1;
  a.hidden = 16;
  a.tower_layers = 1;
  a.features = 32;
  a.actions = 2;
  return a;
}

inline hexhybrid::Hyperparams hyperparams(std::int64_t steps) {
  hexhybrid::Hyperparams h;
  h.learning_rate = 1e-3;
  h.buffer_size = 50'000;
  h.learning_starts = 1'000;
  h.batch_size = 64;
  h.gamma = 0.93;
  h.target_update_interval = 250;
  h.eps_final = 0.05;
  h.exploration_fraction = 0.3;
  h.train_freq = 1;
  h.total_budget = steps;
  return h;
}

inline std::vector<float> one_hot(int s, int n) {
  std::vector<float> x(static_cast<std::size_t>(n), 0.f);
  x[static_cast<std::size_t>(s)] = 1.f;
  return x;
}

inline Outcome run(std::uint64_t seed, std::int64_t steps = 50'000) {
  using namespace hexhybrid;
  const oracle::ChainMdp mdp;
  const int n = mdp.n;
  DqnLearner learner(QNetwork<float>::initialized(arch(n), seed), hyperparams(steps), seed);
  Rng rng(derive_seed(seed, 1));
  int s = rng.uniform_index(n - 1), t = 0;
  while (learner.steps() < steps) {
    const auto obs = one_hot(s, n);
    const int a = learner.act(obs, rng);
    const auto st = mdp.step(s, a);
    learner.store({obs, a, st.reward, one_hot(st.next, n), st.done});
    learner.step();
    ++t;
    if (st.done || t >= 30) {
      s = rng.uniform_index(n - 1);
      t = 0;
    } else {
      s = st.next;
    }
  }
  Outcome out;
  out.updates = learner.updates();
  out.greedy_optimal = true;
  const auto q_star = mdp.q_star();
  for (int st = 0; st < n - 1; ++st) {
    const auto q = learner.online().q_values(one_hot(st, n));
    for (int a = 0; a < 2; ++a) out.max_error = std::max(out.max_error, std::fabs(q[a] - q_star[st][a]));
    const int best = q_star[st][1] > q_star[st][0] ? 1 : 0;
    out.greedy_optimal = out.greedy_optimal && argmax(q) == best;
  }
  return out;
}

}  // namespace chain
