#include <gtest/gtest.h>

#include <filesystem>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/neuralnet.hpp"
#include "hexhybrid/rng.hpp"

using namespace hexhybrid;

namespace {

Architecture tiny(ConvKind conv = ConvKind::Pointwise) {
  Architecture a;
  a.in_channels = 3;
  a.height = 3;
  a.width = 4;
  a.hidden = 4;
  a.tower_layers = 2;
  a.features = 6;
  a.actions = 5;
  a.conv = conv;
  return a;
}

std::vector<double> random_obs(const Architecture& a, int batch, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(a.input_size()) * batch);
  for (double& v : x) v = rng.uniform(-1, 1);
  return x;
}

// Straight loops over the documented parameter layout.
std::vector<double> naive_forward(const QNetwork<double>& net, const std::vector<double>& x) {
  const Architecture& a = net.arch();
  const ParamLayout& L = net.layout();
  const auto& p = net.params();
  const int P = a.cells(), H = a.hidden;
  const auto table = hex_neighbor_table(a.height, a.width);
  auto conv = [&](const std::vector<double>& in, int in_ch, std::size_t w, std::size_t b) {
    std::vector<double> out(static_cast<std::size_t>(H * P));
    for (int cell = 0; cell < P; ++cell)
      for (int o = 0; o < H; ++o) {
        double z = p[b + o];
        for (int t = 0; t < a.taps(); ++t) {
          const int src = a.conv == ConvKind::Hex ? table[static_cast<std::size_t>(cell * 7 + t)] : cell;
          if (src < 0) continue;
          for (int i = 0; i < in_ch; ++i)
            z += p[w + o + static_cast<std::size_t>(H) * (t * in_ch + i)] * in[static_cast<std::size_t>(i * P + src)];
        }
        out[static_cast<std::size_t>(o * P + cell)] = std::max(z, 0.0);
      }
    return out;
  };
  auto h = conv(x, a.in_channels, L.w_in, L.b_in);
  for (int l = 0; l < a.tower_layers; ++l) {
    const auto r = conv(h, H, L.w_tower[l], L.b_tower[l]);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += r[i];
  }
  std::vector<double> f(static_cast<std::size_t>(a.features));
  for (int k = 0; k < a.features; ++k) {
    double z = p[L.b_feat + k];
    for (int cell = 0; cell < P; ++cell)
      for (int o = 0; o < H; ++o)
        z += p[L.w_feat + k + static_cast<std::size_t>(a.features) * (cell * H + o)] * h[static_cast<std::size_t>(o * P + cell)];
    f[static_cast<std::size_t>(k)] = std::max(z, 0.0);
  }
  std::vector<double> q(static_cast<std::size_t>(a.actions));
  for (int k = 0; k < a.actions; ++k) {
    double z = p[L.b_out + k];
    for (int j = 0; j < a.features; ++j) z += p[L.w_out + k + static_cast<std::size_t>(a.actions) * j] * f[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k)] = z;
  }
  return q;
}

}  // namespace

TEST(NeuralNet, ParamCountMatchesLayout) {
  for (ConvKind k : {ConvKind::Pointwise, ConvKind::Hex}) {
    const Architecture a = tiny(k);
    const std::size_t t = a.taps();
    const std::size_t expected = (4 * t * 3 + 4) + 2 * (4 * t * 4 + 4) + (6 * 4 * 12 + 6) + (5 * 6 + 5);
    EXPECT_EQ(a.param_count(), expected);
    EXPECT_EQ(ParamLayout(a).total, expected);
  }
  const Architecture m = Architecture::manager();
  EXPECT_EQ(m.in_channels, 17);
  EXPECT_EQ(m.actions, 49);
  EXPECT_EQ(m.hidden, 64);
  EXPECT_EQ(m.tower_layers, 7);
  EXPECT_EQ(m.features, 512);
  const Architecture ind = Architecture::individual({10, 10});
  EXPECT_EQ(ind.in_channels, 18);
  EXPECT_EQ(ind.actions, 13);
  EXPECT_EQ(ind.conv, ConvKind::Hex);
}

TEST(NeuralNet, ForwardMatchesNaiveLoops) {
  Rng rng(3);
  for (ConvKind k : {ConvKind::Pointwise, ConvKind::Hex}) {
    const auto net = QNetwork<double>::initialized(tiny(k), 11);
    const auto x = random_obs(net.arch(), 3, rng);
    const auto q = net.forward(x, 3);
    for (int b = 0; b < 3; ++b) {
      const std::vector<double> one(x.begin() + b * net.arch().input_size(), x.begin() + (b + 1) * net.arch().input_size());
      const auto expected = naive_forward(net, one);
      for (int a = 0; a < net.arch().actions; ++a) EXPECT_NEAR(q(a, b), expected[static_cast<std::size_t>(a)], 1e-12);
    }
  }
}

TEST(NeuralNet, HexNeighborTableFollowsDirections) {
  const auto t = hex_neighbor_table(4, 5);
  for (int cell = 0; cell < 20; ++cell) {
    const HexCoord c{cell / 5, cell % 5};
    EXPECT_EQ(t[static_cast<std::size_t>(cell * 7)], cell);
    for (int d = 0; d < 6; ++d) {
      const auto n = hex_neighbor(c, static_cast<HexDirection>(d), {4, 5});
      EXPECT_EQ(t[static_cast<std::size_t>(cell * 7 + 1 + d)], n ? n->row * 5 + n->col : -1);
    }
  }
}

TEST(NeuralNet, HexConvSingleImpulse) {
  // A unit impulse at one cell reaches exactly that cell and its neighbors.
  const int C = 1, H = 5, W = 5;
  std::vector<double> x(25, 0.0);
  x[2 * 5 + 2] = 1.0;
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(1, 7 * C);
  const auto y = hex_conv(x, C, H, W, w, 1);
  int touched = 0;
  for (int cell = 0; cell < 25; ++cell) {
    const HexCoord c{cell / 5, cell % 5};
    const bool near = hex_distance(c, {2, 2}) <= 1;
    EXPECT_EQ(y[static_cast<std::size_t>(cell)], near ? 1.0 : 0.0);
    touched += near;
  }
  EXPECT_EQ(touched, 7);
}

TEST(NeuralNet, InputSizeMismatchThrows) {
  const auto net = QNetwork<float>::initialized(tiny(), 1);
  std::vector<float> x(5, 0.f);
  EXPECT_THROW(net.forward(x, 1), ConfigError);
}

TEST(NeuralNet, InitializationDeterministicAndScaled) {
  const auto a = QNetwork<float>::initialized(Architecture::manager(), 5);
  const auto b = QNetwork<float>::initialized(Architecture::manager(), 5);
  const auto c = QNetwork<float>::initialized(Architecture::manager(), 6);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.params(), c.params());
  const float bound = 1.0f / std::sqrt(17.0f);
  for (std::size_t i = a.layout().w_in; i < a.layout().b_in; ++i) EXPECT_LE(std::fabs(a.params()[i]), bound);
}

TEST(NeuralNet, GradCheckPassesOnTinyNetworks) {
  Rng rng(8);
  for (ConvKind k : {ConvKind::Pointwise, ConvKind::Hex}) {
    const auto net = QNetwork<double>::initialized(tiny(k), 21);
    GradCheckOptions opt;
    opt.seed = 4;
    const auto rep = grad_check(net, random_obs(net.arch(), 2, rng), 2, opt);
    EXPECT_TRUE(rep.passed) << rep.max_relative_error;
    EXPECT_LE(rep.max_relative_error, 1e-4);
    EXPECT_EQ(rep.checked + rep.kink_crossings, net.params().size());
  }
}

TEST(NeuralNet, GradCheckCatchesCorruptedGradient) {
  Rng rng(8);
  const auto net = QNetwork<double>::initialized(tiny(), 21);
  GradCheckOptions opt;
  opt.corrupt = [](ParamVector<double>& g) { g[3] += 0.01; };
  const auto rep = grad_check(net, random_obs(net.arch(), 1, rng), 1, opt);
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.worst_index, 3u);
}

TEST(NeuralNet, ModelRoundTrip) {
  const auto net = QNetwork<float>::initialized(tiny(ConvKind::Hex), 77);
  const std::string bytes = encode_model(net);
  EXPECT_EQ(bytes.substr(0, 4), "HXQN");
  EXPECT_EQ(bytes.size(), 4 + 4 + 8 * 4 + 8 + 8 + 4 * net.params().size());
  EXPECT_EQ(decode_model(bytes), net);

  const auto path = std::filesystem::temp_directory_path() / "hexhybrid_roundtrip.hxqn";
  save_model(net, path);
  EXPECT_EQ(load_model(path), net);
  EXPECT_EQ(load_model(path, tiny(ConvKind::Hex)), net);
  EXPECT_THROW(load_model(path, tiny(ConvKind::Pointwise)), LoadError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), LoadError);
}

TEST(NeuralNet, CorruptModelBytesRejected) {
  const auto net = QNetwork<float>::initialized(tiny(), 1);
  std::string bytes = encode_model(net);
  EXPECT_THROW(decode_model(bytes.substr(0, bytes.size() - 1)), LoadError);
  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_model(bad), LoadError);
  bad = bytes;
  bad[4] = 9;  // version
  EXPECT_THROW(decode_model(bad), LoadError);
}

TEST(NeuralNet, CastPreservesValues) {
  const auto f = QNetwork<float>::initialized(tiny(), 2);
  const auto d = f.cast<double>();
  Rng rng(1);
  const auto x = random_obs(f.arch(), 1, rng);
  const std::vector<float> xf(x.begin(), x.end());
  const auto qf = f.q_values(xf);
  const std::vector<double> xd(xf.begin(), xf.end());
  const auto qd = d.q_values(xd);
  for (std::size_t i = 0; i < qf.size(); ++i) EXPECT_NEAR(qf[i], qd[i], 1e-5);
}
