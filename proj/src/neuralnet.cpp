#include "hexhybrid/neuralnet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/rng.hpp"

namespace hexhybrid {

std::size_t Architecture::param_count() const { return ParamLayout(*this).total; }

void Architecture::validate() const {
  if (in_channels < 1 || height < 1 || width < 1 || hidden < 1 || tower_layers < 0 || features < 1 || actions < 1) {
    throw ConfigError("invalid network architecture");
  }
}

Architecture Architecture::manager() { return Architecture{}; }

Architecture Architecture::individual(BoardDims dims) {
  Architecture a;
  a.in_channels = 18;
  a.height = dims.n_rows;
  a.width = dims.n_cols;
  a.actions = 1 + 2 * kHexDirections;
  a.conv = ConvKind::Hex;
  return a;
}

ParamLayout::ParamLayout(const Architecture& a) {
  std::size_t off = 0;
  auto take = [&off](std::size_t n) {
    const std::size_t at = off;
    off += n;
    return at;
  };
  const auto hidden = static_cast<std::size_t>(a.hidden);
  const auto taps = static_cast<std::size_t>(a.taps());
  w_in = take(hidden * taps * static_cast<std::size_t>(a.in_channels));
  b_in = take(hidden);
  for (int l = 0; l < a.tower_layers; ++l) {
    w_tower.push_back(take(hidden * taps * hidden));
    b_tower.push_back(take(hidden));
  }
  w_feat = take(static_cast<std::size_t>(a.features) * hidden * static_cast<std::size_t>(a.cells()));
  b_feat = take(static_cast<std::size_t>(a.features));
  w_out = take(static_cast<std::size_t>(a.actions) * static_cast<std::size_t>(a.features));
  b_out = take(static_cast<std::size_t>(a.actions));
  total = off;
}

std::vector<int> hex_neighbor_table(int height, int width) {
  const BoardDims dims{height, width};
  std::vector<int> table(static_cast<std::size_t>(dims.cell_count()) * (1 + kHexDirections), -1);
  for (int p = 0; p < dims.cell_count(); ++p) {
    const HexCoord c = dims.coord(p);
    table[static_cast<std::size_t>(p) * 7] = p;
    for (int d = 0; d < kHexDirections; ++d) {
      const HexCoord n = hex_step(c, static_cast<HexDirection>(d));
      if (dims.contains(n)) table[static_cast<std::size_t>(p) * 7 + 1 + static_cast<std::size_t>(d)] = dims.index(n);
    }
  }
  return table;
}

template <class Scalar>
QNetwork<Scalar>::QNetwork(const Architecture& arch)
    : arch_(arch), layout_(arch), params_(layout_.total, Scalar(0)) {
  arch_.validate();
  if (arch_.conv == ConvKind::Hex) neighbors_ = hex_neighbor_table(arch_.height, arch_.width);
}

template <class Scalar>
QNetwork<Scalar> QNetwork<Scalar>::initialized(const Architecture& arch, std::uint64_t seed) {
  QNetwork net(arch);
  net.seed_ = seed;
  Rng rng(mix_seed(seed));
  const ParamLayout& L = net.layout_;
  auto fill = [&](std::size_t w, std::size_t b, std::size_t end, double fan_in) {
    const double bound = 1.0 / std::sqrt(fan_in);
    for (std::size_t i = w; i < end; ++i) net.params_[i] = static_cast<Scalar>(rng.uniform(-bound, bound));
    (void)b;
  };
  const double taps = arch.taps();
  fill(L.w_in, L.b_in, L.b_in + static_cast<std::size_t>(arch.hidden), taps * arch.in_channels);
  for (int l = 0; l < arch.tower_layers; ++l) {
    fill(L.w_tower[static_cast<std::size_t>(l)], L.b_tower[static_cast<std::size_t>(l)],
         L.b_tower[static_cast<std::size_t>(l)] + static_cast<std::size_t>(arch.hidden), taps * arch.hidden);
  }
  fill(L.w_feat, L.b_feat, L.b_feat + static_cast<std::size_t>(arch.features), static_cast<double>(arch.hidden) * arch.cells());
  fill(L.w_out, L.b_out, L.b_out + static_cast<std::size_t>(arch.actions), arch.features);
  return net;
}

template <class Scalar>
typename QNetwork<Scalar>::Matrix QNetwork<Scalar>::gather(const Matrix& x, int batch) const {
  const int P = arch_.cells();
  const auto rows = x.rows();
  Matrix g = Matrix::Zero(rows * 7, static_cast<Eigen::Index>(batch) * P);
  for (int b = 0; b < batch; ++b) {
    for (int p = 0; p < P; ++p) {
      const Eigen::Index col = static_cast<Eigen::Index>(b) * P + p;
      for (int t = 0; t < 7; ++t) {
        const int src = neighbors_[static_cast<std::size_t>(p) * 7 + static_cast<std::size_t>(t)];
        if (src >= 0) g.block(t * rows, col, rows, 1) = x.col(static_cast<Eigen::Index>(b) * P + src);
      }
    }
  }
  return g;
}

template <class Scalar>
void QNetwork<Scalar>::scatter_add(const Matrix& g, int batch, Matrix& dx) const {
  const int P = arch_.cells();
  const auto rows = dx.rows();
  for (int b = 0; b < batch; ++b) {
    for (int p = 0; p < P; ++p) {
      const Eigen::Index col = static_cast<Eigen::Index>(b) * P + p;
      for (int t = 0; t < 7; ++t) {
        const int src = neighbors_[static_cast<std::size_t>(p) * 7 + static_cast<std::size_t>(t)];
        if (src >= 0) dx.col(static_cast<Eigen::Index>(b) * P + src) += g.block(t * rows, col, rows, 1);
      }
    }
  }
}

template <class Scalar>
typename QNetwork<Scalar>::Matrix QNetwork<Scalar>::forward(std::span<const Scalar> obs, int batch, Cache* cache) const {
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using ConstMap = Eigen::Map<const Matrix>;
  using ConstVec = Eigen::Map<const Vector>;
  const int P = arch_.cells();
  const int C = arch_.in_channels;
  const int Hd = arch_.hidden;
  const int taps = arch_.taps();
  if (batch < 1 || obs.size() != static_cast<std::size_t>(batch) * static_cast<std::size_t>(arch_.input_size())) {
    throw ConfigError("observation size " + std::to_string(obs.size()) + " does not match network input " +
                      std::to_string(arch_.input_size()) + " x batch " + std::to_string(batch));
  }
  const Eigen::Index cols = static_cast<Eigen::Index>(batch) * P;

  Matrix x(C, cols);
  for (int b = 0; b < batch; ++b) {
    x.middleCols(static_cast<Eigen::Index>(b) * P, P) =
        Eigen::Map<const RowMajor>(obs.data() + static_cast<std::size_t>(b) * C * P, C, P);
  }

  auto conv = [&](const Matrix& in, std::size_t w_off, std::size_t b_off) {
    ConstMap w(params_.data() + w_off, Hd, taps * in.rows());
    ConstVec bias(params_.data() + b_off, Hd);
    Matrix z = taps == 1 ? Matrix(w * in) : Matrix(w * gather(in, batch));
    z.colwise() += bias;
    return z;
  };

  Matrix h = conv(x, layout_.w_in, layout_.b_in).cwiseMax(Scalar(0));
  if (cache) {
    cache->batch = batch;
    cache->input = x;
    cache->hidden.clear();
    cache->active.clear();
  }
  for (int l = 0; l < arch_.tower_layers; ++l) {
    Matrix a = conv(h, layout_.w_tower[static_cast<std::size_t>(l)], layout_.b_tower[static_cast<std::size_t>(l)]).cwiseMax(Scalar(0));
    if (cache) {
      cache->hidden.push_back(h);
      cache->active.push_back(a);
    }
    h += a;
  }
  if (cache) cache->hidden.push_back(h);

  ConstMap flat(h.data(), static_cast<Eigen::Index>(Hd) * P, batch);
  ConstMap w_feat(params_.data() + layout_.w_feat, arch_.features, static_cast<Eigen::Index>(Hd) * P);
  Matrix f = w_feat * flat;
  f.colwise() += ConstVec(params_.data() + layout_.b_feat, arch_.features);
  f = f.cwiseMax(Scalar(0));

  ConstMap w_out(params_.data() + layout_.w_out, arch_.actions, arch_.features);
  Matrix q = w_out * f;
  q.colwise() += ConstVec(params_.data() + layout_.b_out, arch_.actions);
  if (cache) cache->features = std::move(f);
  return q;
}

template <class Scalar>
std::vector<Scalar> QNetwork<Scalar>::q_values(std::span<const Scalar> obs) const {
  const Matrix q = forward(obs, 1);
  return {q.data(), q.data() + q.size()};
}

template <class Scalar>
void QNetwork<Scalar>::backward(const Cache& cache, const Matrix& upstream, ParamVector<Scalar>& grad) const {
  using ConstMap = Eigen::Map<const Matrix>;
  using GradMap = Eigen::Map<Matrix>;
  using GradVec = Eigen::Map<Vector>;
  const int batch = cache.batch;
  const int P = arch_.cells();
  const int Hd = arch_.hidden;
  const int taps = arch_.taps();
  if (upstream.rows() != arch_.actions || upstream.cols() != batch) throw ConfigError("upstream gradient shape mismatch");
  if (grad.empty()) grad.assign(params_.size(), Scalar(0));
  if (grad.size() != params_.size()) throw ConfigError("gradient buffer size mismatch");

  auto relu_mask = [](const Matrix& activated, const Matrix& g) -> Matrix {
    return (activated.array() > Scalar(0)).select(g, Scalar(0));
  };

  const Matrix& f = cache.features;
  GradMap(grad.data() + layout_.w_out, arch_.actions, arch_.features).noalias() += upstream * f.transpose();
  GradVec(grad.data() + layout_.b_out, arch_.actions) += upstream.rowwise().sum();
  const Matrix df = relu_mask(f, ConstMap(params_.data() + layout_.w_out, arch_.actions, arch_.features).transpose() * upstream);

  const Matrix& top = cache.hidden.back();
  ConstMap flat(top.data(), static_cast<Eigen::Index>(Hd) * P, batch);
  GradMap(grad.data() + layout_.w_feat, arch_.features, static_cast<Eigen::Index>(Hd) * P).noalias() += df * flat.transpose();
  GradVec(grad.data() + layout_.b_feat, arch_.features) += df.rowwise().sum();
  Matrix dflat = ConstMap(params_.data() + layout_.w_feat, arch_.features, static_cast<Eigen::Index>(Hd) * P).transpose() * df;
  Matrix dh = Eigen::Map<Matrix>(dflat.data(), Hd, static_cast<Eigen::Index>(batch) * P);

  auto conv_backward = [&](const Matrix& in, const Matrix& dz, std::size_t w_off, std::size_t b_off, Matrix* din) {
    const auto in_rows = in.rows();
    GradVec(grad.data() + b_off, Hd) += dz.rowwise().sum();
    ConstMap w(params_.data() + w_off, Hd, taps * in_rows);
    if (taps == 1) {
      GradMap(grad.data() + w_off, Hd, in_rows).noalias() += dz * in.transpose();
      if (din) din->noalias() += w.transpose() * dz;
    } else {
      GradMap(grad.data() + w_off, Hd, taps * in_rows).noalias() += dz * gather(in, batch).transpose();
      if (din) scatter_add(w.transpose() * dz, batch, *din);
    }
  };

  for (int l = arch_.tower_layers - 1; l >= 0; --l) {
    const auto li = static_cast<std::size_t>(l);
    const Matrix dz = relu_mask(cache.active[li], dh);
    conv_backward(cache.hidden[li], dz, layout_.w_tower[li], layout_.b_tower[li], &dh);
  }
  const Matrix dz0 = relu_mask(cache.hidden.front(), dh);
  conv_backward(cache.input, dz0, layout_.w_in, layout_.b_in, nullptr);
}

template <class Scalar>
std::vector<Scalar> QNetwork<Scalar>::pre_activations(std::span<const Scalar> obs, int batch) const {
  using ConstMap = Eigen::Map<const Matrix>;
  using ConstVec = Eigen::Map<const Vector>;
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int P = arch_.cells();
  const int C = arch_.in_channels;
  const int Hd = arch_.hidden;
  const int taps = arch_.taps();
  Matrix x(C, static_cast<Eigen::Index>(batch) * P);
  for (int b = 0; b < batch; ++b) {
    x.middleCols(static_cast<Eigen::Index>(b) * P, P) =
        Eigen::Map<const RowMajor>(obs.data() + static_cast<std::size_t>(b) * C * P, C, P);
  }
  std::vector<Scalar> out;
  auto conv = [&](const Matrix& in, std::size_t w_off, std::size_t b_off) {
    ConstMap w(params_.data() + w_off, Hd, taps * in.rows());
    Matrix z = taps == 1 ? Matrix(w * in) : Matrix(w * gather(in, batch));
    z.colwise() += ConstVec(params_.data() + b_off, Hd);
    out.insert(out.end(), z.data(), z.data() + z.size());
    return z;
  };
  Matrix h = conv(x, layout_.w_in, layout_.b_in).cwiseMax(Scalar(0));
  for (int l = 0; l < arch_.tower_layers; ++l) {
    h += conv(h, layout_.w_tower[static_cast<std::size_t>(l)], layout_.b_tower[static_cast<std::size_t>(l)]).cwiseMax(Scalar(0));
  }
  ConstMap flat(h.data(), static_cast<Eigen::Index>(Hd) * P, batch);
  Matrix f = ConstMap(params_.data() + layout_.w_feat, arch_.features, static_cast<Eigen::Index>(Hd) * P) * flat;
  f.colwise() += ConstVec(params_.data() + layout_.b_feat, arch_.features);
  out.insert(out.end(), f.data(), f.data() + f.size());
  return out;
}

template class QNetwork<float>;
template class QNetwork<double>;

std::vector<double> hex_conv(std::span<const double> input, int channels, int height, int width,
                             const Eigen::MatrixXd& weights, int out_channels) {
  if (weights.rows() != out_channels || weights.cols() != 7 * channels ||
      input.size() != static_cast<std::size_t>(channels) * height * width) {
    throw ConfigError("hex_conv shape mismatch");
  }
  const auto table = hex_neighbor_table(height, width);
  const int P = height * width;
  std::vector<double> out(static_cast<std::size_t>(out_channels) * P, 0.0);
  for (int o = 0; o < out_channels; ++o) {
    for (int p = 0; p < P; ++p) {
      double acc = 0.0;
      for (int t = 0; t < 7; ++t) {
        const int src = table[static_cast<std::size_t>(p) * 7 + static_cast<std::size_t>(t)];
        if (src < 0) continue;
        for (int c = 0; c < channels; ++c) acc += weights(o, t * channels + c) * input[static_cast<std::size_t>(c) * P + src];
      }
      out[static_cast<std::size_t>(o) * P + p] = acc;
    }
  }
  return out;
}

// --- model files -----------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'H', 'X', 'Q', 'N'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t get(int width) {
    if (pos_ + static_cast<std::size_t>(width) > bytes_.size()) throw LoadError("model file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(i)])) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_model(const QNetwork<float>& net) {
  const Architecture& a = net.arch();
  std::string out(kMagic, 4);
  put_u32(out, kModelFormatVersion);
  for (int v : {a.in_channels, a.height, a.width, a.hidden, a.tower_layers, a.features, a.actions}) {
    put_u32(out, static_cast<std::uint32_t>(v));
  }
  put_u32(out, static_cast<std::uint32_t>(a.conv));
  put_u64(out, net.seed());
  put_u64(out, net.params().size());
  out.reserve(out.size() + 4 * net.params().size());
  for (float p : net.params()) put_u32(out, std::bit_cast<std::uint32_t>(p));
  return out;
}

QNetwork<float> decode_model(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kMagic, 4)) throw LoadError("not a model file");
  Reader r(bytes.substr(4));
  if (const auto v = r.u32(); v != kModelFormatVersion) throw LoadError("unsupported model format version " + std::to_string(v));
  Architecture a;
  a.in_channels = static_cast<int>(r.u32());
  a.height = static_cast<int>(r.u32());
  a.width = static_cast<int>(r.u32());
  a.hidden = static_cast<int>(r.u32());
  a.tower_layers = static_cast<int>(r.u32());
  a.features = static_cast<int>(r.u32());
  a.actions = static_cast<int>(r.u32());
  const auto conv = r.u32();
  if (conv > 1) throw LoadError("unknown convolution kind");
  a.conv = static_cast<ConvKind>(conv);
  const auto seed = r.u64();
  const auto count = r.u64();
  QNetwork<float> net = [&] {
    try {
      return QNetwork<float>(a);
    } catch (const ConfigError& e) {
      throw LoadError(std::string("bad architecture: ") + e.what());
    }
  }();
  if (count != net.params().size()) throw LoadError("parameter count does not match architecture");
  for (auto& p : net.params()) p = std::bit_cast<float>(r.u32());
  if (!r.done()) throw LoadError("trailing bytes after parameters");
  net.set_seed(seed);
  return net;
}

void save_model(const QNetwork<float>& net, const std::filesystem::path& path) {
  const std::string bytes = encode_model(net);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  std::filesystem::rename(tmp, path);
}

QNetwork<float> load_model(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw LoadError("cannot open model " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_model(ss.str());
}

QNetwork<float> load_model(const std::filesystem::path& path, const Architecture& expected) {
  auto net = load_model(path);
  if (!(net.arch() == expected)) throw LoadError("model " + path.string() + " does not match the expected architecture");
  return net;
}

// --- gradient verification ---------------------------------------------------

GradCheckReport grad_check(const QNetwork<double>& net, std::vector<double> obs, int batch,
                           const GradCheckOptions& options) {
  using Matrix = QNetwork<double>::Matrix;
  GradCheckReport report;
  Rng rng(mix_seed(options.seed));

  auto min_abs = [](const std::vector<double>& z) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : z) m = std::min(m, std::abs(v));
    return m;
  };
  report.min_abs_preactivation = min_abs(net.pre_activations(obs, batch));
  while (report.min_abs_preactivation < options.kink_margin && report.nudges < options.max_nudges) {
    for (double& v : obs) v += rng.uniform(-0.05, 0.05);
    ++report.nudges;
    report.min_abs_preactivation = min_abs(net.pre_activations(obs, batch));
  }

  Matrix upstream(net.arch().actions, batch);
  for (Eigen::Index i = 0; i < upstream.size(); ++i) upstream.data()[i] = rng.uniform(-1.0, 1.0);

  QNetwork<double>::Cache cache;
  net.forward(obs, batch, &cache);
  ParamVector<double> analytic;
  net.backward(cache, upstream, analytic);
  if (options.corrupt) options.corrupt(analytic);

  auto signs = [](const std::vector<double>& z) {
    std::vector<bool> s(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) s[i] = z[i] > 0;
    return s;
  };
  const auto base_signs = signs(net.pre_activations(obs, batch));
  auto loss = [&](const QNetwork<double>& n) { return (n.forward(obs, batch).array() * upstream.array()).sum(); };

  QNetwork<double> work = net;
  for (std::size_t i = 0; i < work.params().size(); ++i) {
    const double original = work.params()[i];
    work.params()[i] = original + options.step;
    const double plus = loss(work);
    const bool plus_same = signs(work.pre_activations(obs, batch)) == base_signs;
    work.params()[i] = original - options.step;
    const double minus = loss(work);
    const bool minus_same = signs(work.pre_activations(obs, batch)) == base_signs;
    work.params()[i] = original;
    if (!plus_same || !minus_same) {
      ++report.kink_crossings;
      continue;
    }
    const double numeric = (plus - minus) / (2 * options.step);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), options.denominator_floor});
    const double rel = std::abs(analytic[i] - numeric) / denom;
    ++report.checked;
    if (rel > report.max_relative_error) {
      report.max_relative_error = rel;
      report.worst_index = i;
    }
  }
  report.passed = report.checked > 0 && report.max_relative_error <= options.tolerance;
  return report;
}

}  // namespace hexhybrid
