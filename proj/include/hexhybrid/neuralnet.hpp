#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hexhybrid/hexgrid.hpp"

namespace hexhybrid {

enum class ConvKind : std::uint32_t { Pointwise = 0, Hex = 1 };

// Residual value network: per-layer conv (1x1, or a 7-tap hex stencil) with
// rectifier; tower layers add a skip connection; then flatten -> features ->
// rectifier -> affine Q head.
struct Architecture {
  int in_channels = 17;
  int height = 7;
  int width = 7;
  int hidden = 64;
  int tower_layers = 7;
  int features = 512;
  int actions = kActionCount;
  ConvKind conv = ConvKind::Pointwise;

  int taps() const { return conv == ConvKind::Hex ? 1 + kHexDirections : 1; }
  int cells() const { return height * width; }
  int input_size() const { return in_channels * cells(); }
  std::size_t param_count() const;
  void validate() const;

  static Architecture manager();
  static Architecture individual(BoardDims dims);

  bool operator==(const Architecture&) const = default;
};

// Offsets of each parameter block inside the flat parameter vector. Matrices
// are stored column-major (output index fastest). Conv weights are
// hidden x (taps * in): tap t occupies columns [t*in, (t+1)*in), tap 0 is the
// center and taps 1..6 follow HexDirection order. The feature layer consumes
// the flattened tower output indexed cell * hidden + channel.
struct ParamLayout {
  std::size_t w_in = 0, b_in = 0;
  std::vector<std::size_t> w_tower, b_tower;
  std::size_t w_feat = 0, b_feat = 0, w_out = 0, b_out = 0;
  std::size_t total = 0;

  explicit ParamLayout(const Architecture& arch);
};

// Parameter and gradient storage. A fixed base alignment keeps Eigen's
// vectorized kernels, and so every rounding step, independent of heap layout.
template <class Scalar>
using ParamVector = std::vector<Scalar, Eigen::aligned_allocator<Scalar>>;

// neighbor_table[cell * 7 + tap] = source cell or -1 (zero padding).
std::vector<int> hex_neighbor_table(int height, int width);

template <class Scalar>
class QNetwork {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Cache {
    int batch = 0;
    Matrix input;               // in_channels x (batch * cells)
    std::vector<Matrix> hidden;  // tower_layers + 1 entries, hidden x (batch * cells)
    std::vector<Matrix> active;  // rectifier outputs of tower layers
    Matrix features;             // features x batch
  };

  QNetwork() : QNetwork(Architecture{}) {}
  explicit QNetwork(const Architecture& arch);  // all-zero parameters

  // Fan-in scaled uniform initialization U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  static QNetwork initialized(const Architecture& arch, std::uint64_t seed);

  const Architecture& arch() const { return arch_; }
  const ParamLayout& layout() const { return layout_; }
  ParamVector<Scalar>& params() { return params_; }
  const ParamVector<Scalar>& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t s) { seed_ = s; }

  // obs holds `batch` inputs back to back, each row-major (channel, row, col).
  // Returns actions x batch Q-values.
  Matrix forward(std::span<const Scalar> obs, int batch, Cache* cache = nullptr) const;

  std::vector<Scalar> q_values(std::span<const Scalar> obs) const;

  // Accumulates d(sum(upstream .* Q))/d(params) into grad (resized if empty).
  void backward(const Cache& cache, const Matrix& upstream, ParamVector<Scalar>& grad) const;

  // Pre-activation values of every rectifier, for kink diagnostics.
  std::vector<Scalar> pre_activations(std::span<const Scalar> obs, int batch) const;

  template <class Other>
  QNetwork<Other> cast() const {
    QNetwork<Other> out(arch_);
    for (std::size_t i = 0; i < params_.size(); ++i) out.params()[i] = static_cast<Other>(params_[i]);
    out.set_seed(seed_);
    return out;
  }

  bool operator==(const QNetwork& o) const { return arch_ == o.arch_ && seed_ == o.seed_ && params_ == o.params_; }

 private:
  Matrix gather(const Matrix& x, int batch) const;
  void scatter_add(const Matrix& g, int batch, Matrix& dx) const;

  Architecture arch_;
  ParamLayout layout_;
  ParamVector<Scalar> params_;
  std::vector<int> neighbors_;
  std::uint64_t seed_ = 0;
};

extern template class QNetwork<float>;
extern template class QNetwork<double>;

// Hex-stencil convolution of a single (channels x height x width) input with
// an out_channels x (7 * channels) weight matrix; zero padding at borders.
std::vector<double> hex_conv(std::span<const double> input, int channels, int height, int width,
                             const Eigen::MatrixXd& weights, int out_channels);

// --- model files -----------------------------------------------------------
// Layout (all little-endian): "HXQN", u32 version, u32 in_channels, height,
// width, hidden, tower_layers, features, actions, conv kind, u64 seed,
// u64 parameter count, then every parameter as f32 in ParamLayout order.
inline constexpr std::uint32_t kModelFormatVersion = 1;

std::string encode_model(const QNetwork<float>& net);
QNetwork<float> decode_model(std::string_view bytes);
void save_model(const QNetwork<float>& net, const std::filesystem::path& path);
QNetwork<float> load_model(const std::filesystem::path& path);
// Throws LoadError when the file's architecture differs from `expected`.
QNetwork<float> load_model(const std::filesystem::path& path, const Architecture& expected);

// --- gradient verification ---------------------------------------------------
struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Relative errors use max(|analytic|, |numeric|, floor) as denominator.
  double denominator_floor = 1e-6;
  // Inputs are re-drawn until every pre-activation is at least this far from 0.
  double kink_margin = 1e-3;
  int max_nudges = 50;
  std::uint64_t seed = 1;
  // Test hook applied to the analytic gradient before comparison.
  std::function<void(ParamVector<double>&)> corrupt;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  std::size_t kink_crossings = 0;  // coordinates skipped because a rectifier flipped
  int nudges = 0;
  double min_abs_preactivation = 0.0;
  bool passed = false;
};

// Compares analytic gradients of L = sum(upstream .* Q(obs)) against central
// finite differences, coordinate by coordinate.
GradCheckReport grad_check(const QNetwork<double>& net, std::vector<double> obs, int batch,
                           const GradCheckOptions& options = {});

}  // namespace hexhybrid
