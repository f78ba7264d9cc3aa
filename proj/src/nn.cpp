#include "graphembed/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "graphembed/errors.hpp"

namespace graphembed {

void TrainConfig::validate() const {
  if (epochs < 1) throw InvalidParams("train config: epochs must be >= 1");
  if (!(lr > 0.0)) throw InvalidParams("train config: learning rate must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw InvalidParams("train config: dropout must lie in [0, 1)");
  if (hidden < 1) throw InvalidParams("train config: hidden width must be >= 1");
  if (weight_decay < 0.0) throw InvalidParams("train config: negative weight decay");
}

// ---------------------------------------------------------------------------
// layers
// ---------------------------------------------------------------------------

void LinearLayer::init(int in, int out, Rng& rng) {
  w = DenseMatrix(in, out);
  gw = DenseMatrix(in, out);
  b.assign(out, 0.0);
  gb.assign(out, 0.0);
  const double bound = std::sqrt(6.0 / static_cast<double>(in));
  for (double& v : w.data()) v = rng.next_uniform(-bound, bound);
}

DenseMatrix LinearLayer::forward(const DenseMatrix& x) const {
  DenseMatrix out = matmul(x, w);
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) += b[j];
  return out;
}

void LinearLayer::zero_grad() {
  std::fill(gw.data().begin(), gw.data().end(), 0.0);
  std::fill(gb.begin(), gb.end(), 0.0);
}

DropoutMask DropoutMask::sample(int rows, int cols, double rate, Rng& rng) {
  DropoutMask mask;
  mask.rate = rate;
  mask.keep = DenseMatrix(rows, cols);
  for (double& v : mask.keep.data()) v = (rng.next_double() >= rate) ? 1.0 : 0.0;
  return mask;
}

DropoutMask DropoutMask::reindexed_rows(const std::vector<int>& perm) const {
  DropoutMask out;
  out.rate = rate;
  out.keep = permute_rows(keep, perm);
  return out;
}

namespace {

// h *= mask / (1 - rate), elementwise (inverted dropout).
void apply_dropout(DenseMatrix& h, const DropoutMask& mask) {
  if (!h.same_shape(mask.keep)) throw ShapeError("dropout mask shape disagrees");
  const double scale = 1.0 / (1.0 - mask.rate);
  for (std::size_t i = 0; i < h.data().size(); ++i)
    h.data()[i] *= mask.keep.data()[i] * scale;
}

void accumulate_bias_grad(std::vector<double>& gb, const DenseMatrix& d) {
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) gb[j] += d(i, j);
}

void accumulate_matrix(DenseMatrix& acc, const DenseMatrix& d) {
  for (std::size_t i = 0; i < acc.data().size(); ++i) acc.data()[i] += d.data()[i];
}

}  // namespace

// ---------------------------------------------------------------------------
// 2-layer MLP
// ---------------------------------------------------------------------------

void Mlp::init(int in, int hidden, int out, Rng& rng) {
  l1.init(in, hidden, rng);
  l2.init(hidden, out, rng);
}

DenseMatrix Mlp::forward(const DenseMatrix& x, const DropoutMask* mask,
                         Cache* cache) const {
  if (x.cols() != l1.w.rows())
    throw ShapeError("mlp: input width " + std::to_string(x.cols()) +
                     " disagrees with layer width " + std::to_string(l1.w.rows()));
  DenseMatrix pre1 = l1.forward(x);
  DenseMatrix hidden = pre1;
  for (double& v : hidden.data()) v = v > 0.0 ? v : 0.0;
  if (mask) apply_dropout(hidden, *mask);
  DenseMatrix out = l2.forward(hidden);
  if (cache) {
    cache->input = x;
    cache->pre1 = std::move(pre1);
    cache->hidden = std::move(hidden);
    cache->mask = mask;
  }
  return out;
}

DenseMatrix Mlp::backward(const Cache& cache, const DenseMatrix& dout, bool want_dx) {
  accumulate_matrix(l2.gw, matmul_at_b(cache.hidden, dout));
  accumulate_bias_grad(l2.gb, dout);
  DenseMatrix dhidden = matmul_a_bt(dout, l2.w);
  if (cache.mask) {
    const double scale = 1.0 / (1.0 - cache.mask->rate);
    for (std::size_t i = 0; i < dhidden.data().size(); ++i)
      dhidden.data()[i] *= cache.mask->keep.data()[i] * scale;
  }
  for (std::size_t i = 0; i < dhidden.data().size(); ++i)
    if (cache.pre1.data()[i] <= 0.0) dhidden.data()[i] = 0.0;
  accumulate_matrix(l1.gw, matmul_at_b(cache.input, dhidden));
  accumulate_bias_grad(l1.gb, dhidden);
  if (!want_dx) return DenseMatrix();
  return matmul_a_bt(dhidden, l1.w);
}

void Mlp::zero_grad() {
  l1.zero_grad();
  l2.zero_grad();
}

DenseMatrix mlp_forward(const Mlp& m, const DenseMatrix& x, const DropoutMask* mask) {
  return m.forward(x, mask, nullptr);
}

// ---------------------------------------------------------------------------
// inception network
// ---------------------------------------------------------------------------

InceptionModel InceptionModel::make(const std::vector<int>& block_widths, int hidden,
                                    int classes, double dropout_rate, Rng& rng) {
  InceptionModel model;
  model.hidden = hidden;
  model.classes = classes;
  model.dropout_rate = dropout_rate;
  model.block_mlps.resize(block_widths.size());
  for (std::size_t b = 0; b < block_widths.size(); ++b)
    model.block_mlps[b].init(block_widths[b], hidden, hidden, rng);
  model.classifier.init(static_cast<int>(block_widths.size()) * hidden, classes, rng);
  return model;
}

InceptionModel::Masks InceptionModel::sample_masks(int rows, Rng& rng) const {
  Masks masks;
  masks.hidden.reserve(block_mlps.size());
  for (std::size_t b = 0; b < block_mlps.size(); ++b)
    masks.hidden.push_back(DropoutMask::sample(rows, hidden, dropout_rate, rng));
  masks.concat = DropoutMask::sample(rows, static_cast<int>(block_mlps.size()) * hidden,
                                     dropout_rate, rng);
  return masks;
}

DenseMatrix InceptionModel::forward(const std::vector<DenseMatrix>& blocks,
                                    const Masks* masks, Cache* cache) const {
  if (blocks.size() != block_mlps.size())
    throw ShapeError("inception: got " + std::to_string(blocks.size()) +
                     " blocks, model has " + std::to_string(block_mlps.size()));
  if (masks && masks->hidden.size() != blocks.size())
    throw ShapeError("inception: mask count disagrees with block count");
  const int rows = blocks.empty() ? 0 : blocks[0].rows();
  DenseMatrix concat(rows, static_cast<int>(block_mlps.size()) * hidden);
  if (cache) cache->block_caches.resize(block_mlps.size());
  for (std::size_t b = 0; b < block_mlps.size(); ++b) {
    if (blocks[b].rows() != rows) throw ShapeError("inception: block row counts disagree");
    const DropoutMask* mask = masks ? &masks->hidden[b] : nullptr;
    DenseMatrix h = block_mlps[b].forward(blocks[b], mask,
                                          cache ? &cache->block_caches[b] : nullptr);
    const int off = static_cast<int>(b) * hidden;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < hidden; ++j) concat(i, off + j) = h(i, j);
  }
  if (masks) apply_dropout(concat, masks->concat);
  DenseMatrix logits = classifier.forward(concat);
  if (cache) {
    cache->concat = std::move(concat);
    cache->masks = masks;
  }
  return logits;
}

void InceptionModel::backward(const Cache& cache, const DenseMatrix& dlogits) {
  accumulate_matrix(classifier.gw, matmul_at_b(cache.concat, dlogits));
  accumulate_bias_grad(classifier.gb, dlogits);
  DenseMatrix dconcat = matmul_a_bt(dlogits, classifier.w);
  if (cache.masks) {
    const double scale = 1.0 / (1.0 - cache.masks->concat.rate);
    for (std::size_t i = 0; i < dconcat.data().size(); ++i)
      dconcat.data()[i] *= cache.masks->concat.keep.data()[i] * scale;
  }
  const int rows = dconcat.rows();
  for (std::size_t b = 0; b < block_mlps.size(); ++b) {
    DenseMatrix dh(rows, hidden);
    const int off = static_cast<int>(b) * hidden;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < hidden; ++j) dh(i, j) = dconcat(i, off + j);
    block_mlps[b].backward(cache.block_caches[b], dh, false);
  }
}

void InceptionModel::zero_grad() {
  for (auto& m : block_mlps) m.zero_grad();
  classifier.zero_grad();
}

DenseMatrix inception_forward(const InceptionModel& model,
                              const std::vector<DenseMatrix>& blocks,
                              const InceptionModel::Masks* masks) {
  return model.forward(blocks, masks, nullptr);
}

// ---------------------------------------------------------------------------
// convolution stack
// ---------------------------------------------------------------------------

GcnModel GcnModel::make(int in, int hidden, int classes, int depth,
                        double dropout_rate, Rng& rng) {
  if (depth < 1) throw InvalidParams("gcn: depth must be >= 1");
  GcnModel model;
  model.dropout_rate = dropout_rate;
  model.weights.reserve(depth);
  model.gweights.reserve(depth);
  int width = in;
  for (int l = 0; l < depth; ++l) {
    DenseMatrix w(width, hidden);
    const double bound = std::sqrt(6.0 / static_cast<double>(width));
    for (double& v : w.data()) v = rng.next_uniform(-bound, bound);
    model.weights.push_back(std::move(w));
    model.gweights.emplace_back(width, hidden);
    width = hidden;
  }
  model.head.init(hidden, classes, rng);
  return model;
}

GcnModel::Masks GcnModel::sample_masks(int rows, Rng& rng) const {
  Masks masks;
  masks.hidden.reserve(weights.size());
  for (const auto& w : weights)
    masks.hidden.push_back(DropoutMask::sample(rows, w.cols(), dropout_rate, rng));
  return masks;
}

DenseMatrix GcnModel::forward(const Graph& g, const DenseMatrix& x, const Masks* masks,
                              Cache* cache) const {
  if (masks && masks->hidden.size() != weights.size())
    throw ShapeError("gcn: mask count disagrees with depth");
  DenseMatrix h = x;
  if (cache) {
    cache->propagated.clear();
    cache->pre.clear();
    cache->activations.clear();
    cache->activations.push_back(h);
    cache->masks = masks;
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    DenseMatrix p = apply_operator(OperatorKind::SymLaplacian, g, h);
    DenseMatrix z = matmul(p, weights[l]);
    h = z;
    for (double& v : h.data()) v = v > 0.0 ? v : 0.0;
    if (masks) apply_dropout(h, masks->hidden[l]);
    if (cache) {
      cache->propagated.push_back(std::move(p));
      cache->pre.push_back(std::move(z));
      cache->activations.push_back(h);
    }
  }
  return head.forward(h);
}

void GcnModel::backward(const Graph& g, const Cache& cache, const DenseMatrix& dlogits) {
  accumulate_matrix(head.gw, matmul_at_b(cache.activations.back(), dlogits));
  accumulate_bias_grad(head.gb, dlogits);
  DenseMatrix dh = matmul_a_bt(dlogits, head.w);
  for (int l = static_cast<int>(weights.size()) - 1; l >= 0; --l) {
    if (cache.masks) {
      const DropoutMask& mask = cache.masks->hidden[l];
      const double scale = 1.0 / (1.0 - mask.rate);
      for (std::size_t i = 0; i < dh.data().size(); ++i)
        dh.data()[i] *= mask.keep.data()[i] * scale;
    }
    for (std::size_t i = 0; i < dh.data().size(); ++i)
      if (cache.pre[l].data()[i] <= 0.0) dh.data()[i] = 0.0;
    accumulate_matrix(gweights[l], matmul_at_b(cache.propagated[l], dh));
    DenseMatrix dp = matmul_a_bt(dh, weights[l]);
    // symmetric operator: S^T = S
    dh = apply_operator(OperatorKind::SymLaplacian, g, dp);
  }
}

void GcnModel::zero_grad() {
  for (auto& gw : gweights) std::fill(gw.data().begin(), gw.data().end(), 0.0);
  head.zero_grad();
}

// ---------------------------------------------------------------------------
// loss
// ---------------------------------------------------------------------------

CrossEntropy cross_entropy(const DenseMatrix& logits, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != logits.rows())
    throw ShapeError("cross_entropy: label count disagrees with logits rows");
  const int rows = logits.rows(), classes = logits.cols();
  CrossEntropy result;
  result.grad = DenseMatrix(rows, classes);
  double total = 0.0;
  for (int i = 0; i < rows; ++i) {
    const int y = labels[i];
    if (y < 0 || y >= classes)
      throw InvalidLabel("cross_entropy: label " + std::to_string(y) +
                         " outside [0, " + std::to_string(classes) + ")");
    double maxv = logits(i, 0);
    for (int j = 1; j < classes; ++j) maxv = std::max(maxv, logits(i, j));
    double sum = 0.0;
    for (int j = 0; j < classes; ++j) sum += std::exp(logits(i, j) - maxv);
    const double lse = maxv + std::log(sum);
    total += lse - logits(i, y);
    for (int j = 0; j < classes; ++j)
      result.grad(i, j) = std::exp(logits(i, j) - maxv) / sum;
    result.grad(i, y) -= 1.0;
  }
  const double inv = rows > 0 ? 1.0 / rows : 0.0;
  for (double& v : result.grad.data()) v *= inv;
  result.loss = rows > 0 ? total / rows : 0.0;
  return result;
}

CrossEntropy cross_entropy_masked(const DenseMatrix& logits,
                                  const std::vector<int>& labels,
                                  const std::vector<int>& rows) {
  if (static_cast<int>(labels.size()) != logits.rows())
    throw ShapeError("cross_entropy_masked: label count disagrees with logits rows");
  const int classes = logits.cols();
  CrossEntropy result;
  result.grad = DenseMatrix(logits.rows(), classes);
  if (rows.empty()) {
    result.loss = 0.0;
    return result;
  }
  double total = 0.0;
  for (int i : rows) {
    if (i < 0 || i >= logits.rows())
      throw InvalidParams("cross_entropy_masked: row index out of range");
    const int y = labels[i];
    if (y < 0 || y >= classes) throw InvalidLabel("cross_entropy_masked: bad label");
    double maxv = logits(i, 0);
    for (int j = 1; j < classes; ++j) maxv = std::max(maxv, logits(i, j));
    double sum = 0.0;
    for (int j = 0; j < classes; ++j) sum += std::exp(logits(i, j) - maxv);
    total += maxv + std::log(sum) - logits(i, y);
    for (int j = 0; j < classes; ++j)
      result.grad(i, j) = std::exp(logits(i, j) - maxv) / sum;
    result.grad(i, y) -= 1.0;
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (int i : rows)
    for (int j = 0; j < classes; ++j) result.grad(i, j) *= inv;
  result.loss = total / static_cast<double>(rows.size());
  return result;
}

// ---------------------------------------------------------------------------
// parameters and optimizer
// ---------------------------------------------------------------------------

namespace {

void push_layer(std::vector<ParamRef>& refs, LinearLayer& l) {
  refs.push_back({l.w.data().data(), l.gw.data().data(), l.w.data().size()});
  refs.push_back({l.b.data(), l.gb.data(), l.b.size()});
}

std::size_t total_size(const std::vector<ParamRef>& refs) {
  std::size_t n = 0;
  for (const auto& r : refs) n += r.size;
  return n;
}

}  // namespace

std::vector<ParamRef> parameters(Mlp& m) {
  std::vector<ParamRef> refs;
  push_layer(refs, m.l1);
  push_layer(refs, m.l2);
  return refs;
}

std::vector<ParamRef> parameters(InceptionModel& m) {
  std::vector<ParamRef> refs;
  for (auto& mlp : m.block_mlps) {
    push_layer(refs, mlp.l1);
    push_layer(refs, mlp.l2);
  }
  push_layer(refs, m.classifier);
  return refs;
}

std::vector<ParamRef> parameters(GcnModel& m) {
  std::vector<ParamRef> refs;
  for (std::size_t l = 0; l < m.weights.size(); ++l)
    refs.push_back({m.weights[l].data().data(), m.gweights[l].data().data(),
                    m.weights[l].data().size()});
  push_layer(refs, m.head);
  return refs;
}

void adam_step(const std::vector<ParamRef>& params, AdamState& state, double lr, int t,
               double weight_decay) {
  if (t < 1) throw InvalidParams("adam_step: t must be >= 1");
  const std::size_t total = total_size(params);
  if (state.m.size() != total) {
    state.m.assign(total, 0.0);
    state.v.assign(total, 0.0);
  }
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  const double bc1 = 1.0 - std::pow(beta1, t);
  const double bc2 = 1.0 - std::pow(beta2, t);
  std::size_t off = 0;
  for (const auto& ref : params) {
    for (std::size_t i = 0; i < ref.size; ++i) {
      double g = ref.grad[i];
      if (weight_decay != 0.0) g += weight_decay * ref.value[i];
      double& m = state.m[off + i];
      double& v = state.v[off + i];
      m = beta1 * m + (1.0 - beta1) * g;
      v = beta2 * v + (1.0 - beta2) * g * g;
      const double mhat = m / bc1;
      const double vhat = v / bc2;
      ref.value[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
    off += ref.size;
  }
}

// ---------------------------------------------------------------------------
// training loops
// ---------------------------------------------------------------------------

InceptionModel train_inception(const std::vector<DenseMatrix>& train_blocks,
                               const std::vector<int>& train_labels, int classes,
                               const TrainConfig& cfg,
                               std::vector<double>* loss_history) {
  cfg.validate();
  if (train_blocks.empty()) throw InvalidParams("train_inception: no blocks");
  const int rows = train_blocks[0].rows();
  if (rows < 1) throw InvalidParams("train_inception: empty training set");
  if (static_cast<int>(train_labels.size()) != rows)
    throw ShapeError("train_inception: label count disagrees with rows");

  std::vector<int> widths;
  widths.reserve(train_blocks.size());
  for (const auto& b : train_blocks) widths.push_back(b.cols());

  Rng rng(cfg.seed);
  InceptionModel model =
      InceptionModel::make(widths, cfg.hidden, classes, cfg.dropout, rng);
  auto refs = parameters(model);
  AdamState adam;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    InceptionModel::Masks masks;
    const bool use_dropout = cfg.dropout > 0.0;
    if (use_dropout) masks = model.sample_masks(rows, rng);
    InceptionModel::Cache cache;
    const DenseMatrix logits =
        model.forward(train_blocks, use_dropout ? &masks : nullptr, &cache);
    const CrossEntropy ce = cross_entropy(logits, train_labels);
    if (loss_history) loss_history->push_back(ce.loss);
    model.zero_grad();
    model.backward(cache, ce.grad);
    adam_step(refs, adam, cfg.lr, epoch, cfg.weight_decay);
  }
  return model;
}

Mlp train_mlp(const DenseMatrix& train_x, const std::vector<int>& train_labels,
              int classes, const TrainConfig& cfg, std::vector<double>* loss_history) {
  cfg.validate();
  const int rows = train_x.rows();
  if (rows < 1) throw InvalidParams("train_mlp: empty training set");
  if (static_cast<int>(train_labels.size()) != rows)
    throw ShapeError("train_mlp: label count disagrees with rows");

  Rng rng(cfg.seed);
  Mlp model;
  model.init(train_x.cols(), cfg.hidden, classes, rng);
  auto refs = parameters(model);
  AdamState adam;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const bool use_dropout = cfg.dropout > 0.0;
    DropoutMask mask;
    if (use_dropout) mask = DropoutMask::sample(rows, cfg.hidden, cfg.dropout, rng);
    Mlp::Cache cache;
    const DenseMatrix logits = model.forward(train_x, use_dropout ? &mask : nullptr, &cache);
    const CrossEntropy ce = cross_entropy(logits, train_labels);
    if (loss_history) loss_history->push_back(ce.loss);
    model.zero_grad();
    model.backward(cache, ce.grad, false);
    adam_step(refs, adam, cfg.lr, epoch, cfg.weight_decay);
  }
  return model;
}

std::vector<int> argmax_rows(const DenseMatrix& logits) {
  std::vector<int> out(logits.rows());
  for (int i = 0; i < logits.rows(); ++i) {
    int best = 0;
    for (int j = 1; j < logits.cols(); ++j)
      if (logits(i, j) > logits(i, best)) best = j;
    out[i] = best;
  }
  return out;
}

std::vector<int> predict(const InceptionModel& model,
                         const std::vector<DenseMatrix>& blocks) {
  return argmax_rows(inception_forward(model, blocks));
}

std::vector<int> predict(const Mlp& model, const DenseMatrix& x) {
  return argmax_rows(mlp_forward(model, x));
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw ShapeError("accuracy: prediction/truth size mismatch");
  if (predicted.empty()) return 0.0;
  int hit = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++hit;
  return static_cast<double>(hit) / static_cast<double>(predicted.size());
}

double gcn_train_eval(const Graph& g, const DenseMatrix& x,
                      const std::vector<int>& labels,
                      const std::vector<int>& train_rows,
                      const std::vector<int>& test_rows, int depth,
                      const TrainConfig& cfg) {
  cfg.validate();
  if (train_rows.empty()) throw InvalidParams("gcn_train_eval: empty training set");
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);

  Rng rng(cfg.seed);
  GcnModel model = GcnModel::make(x.cols(), cfg.hidden, classes, depth, cfg.dropout, rng);
  auto refs = parameters(model);
  AdamState adam;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const bool use_dropout = cfg.dropout > 0.0;
    GcnModel::Masks masks;
    if (use_dropout) masks = model.sample_masks(x.rows(), rng);
    GcnModel::Cache cache;
    const DenseMatrix logits = model.forward(g, x, use_dropout ? &masks : nullptr, &cache);
    const CrossEntropy ce = cross_entropy_masked(logits, labels, train_rows);
    model.zero_grad();
    model.backward(g, cache, ce.grad);
    adam_step(refs, adam, cfg.lr, epoch, cfg.weight_decay);
  }
  const DenseMatrix logits = model.forward(g, x, nullptr, nullptr);
  const std::vector<int> pred = argmax_rows(logits);
  int hit = 0;
  for (int i : test_rows)
    if (pred[i] == labels[i]) ++hit;
  return test_rows.empty() ? 0.0 : static_cast<double>(hit) / test_rows.size();
}

// ---------------------------------------------------------------------------
// checkpoint
// ---------------------------------------------------------------------------

namespace {

void write_values(std::ostream& os, const std::vector<ParamRef>& refs) {
  char buf[64];
  for (const auto& ref : refs)
    for (std::size_t i = 0; i < ref.size; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", ref.value[i]);
      os << buf << '\n';
    }
}

void read_values(std::istream& is, const std::vector<ParamRef>& refs) {
  for (const auto& ref : refs)
    for (std::size_t i = 0; i < ref.size; ++i)
      if (!(is >> ref.value[i])) throw IoError("checkpoint: truncated parameter block");
}

}  // namespace

void save_inception(const InceptionModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("checkpoint: cannot open '" + path + "' for writing");
  os << "inception 1\n";
  os << "blocks " << model.block_mlps.size() << '\n';
  os << "widths";
  for (const auto& mlp : model.block_mlps) os << ' ' << mlp.l1.w.rows();
  os << '\n';
  os << "hidden " << model.hidden << '\n';
  os << "classes " << model.classes << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", model.dropout_rate);
  os << "dropout " << buf << '\n';
  auto refs = parameters(const_cast<InceptionModel&>(model));
  os << "params " << [&] {
    std::size_t n = 0;
    for (const auto& r : refs) n += r.size;
    return n;
  }() << '\n';
  write_values(os, refs);
  if (!os) throw IoError("checkpoint: write failed for '" + path + "'");
}

InceptionModel load_inception(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("checkpoint: cannot open '" + path + "'");
  std::string word;
  int version = 0;
  is >> word >> version;
  if (word != "inception" || version != 1)
    throw IoError("checkpoint: unrecognized header in '" + path + "'");
  std::size_t blocks = 0;
  is >> word >> blocks;
  if (word != "blocks") throw IoError("checkpoint: expected 'blocks'");
  is >> word;
  if (word != "widths") throw IoError("checkpoint: expected 'widths'");
  std::vector<int> widths(blocks);
  for (auto& w : widths) is >> w;
  int hidden = 0, classes = 0;
  double dropout = 0.0;
  is >> word >> hidden;
  if (word != "hidden") throw IoError("checkpoint: expected 'hidden'");
  is >> word >> classes;
  if (word != "classes") throw IoError("checkpoint: expected 'classes'");
  is >> word >> dropout;
  if (word != "dropout") throw IoError("checkpoint: expected 'dropout'");
  std::size_t count = 0;
  is >> word >> count;
  if (word != "params") throw IoError("checkpoint: expected 'params'");
  if (!is) throw IoError("checkpoint: malformed header");

  Rng rng(0);
  InceptionModel model = InceptionModel::make(widths, hidden, classes, dropout, rng);
  auto refs = parameters(model);
  std::size_t total = 0;
  for (const auto& r : refs) total += r.size;
  if (total != count) throw IoError("checkpoint: parameter count mismatch");
  read_values(is, refs);
  return model;
}

}  // namespace graphembed
