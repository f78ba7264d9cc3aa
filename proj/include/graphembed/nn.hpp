#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graphembed/embeddings.hpp"
#include "graphembed/graph.hpp"
#include "graphembed/matrix.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

struct TrainConfig {
  int epochs = 100;
  double lr = 0.01;
  double dropout = 0.5;
  double weight_decay = 0.0;
  std::uint64_t seed = 0;
  int hidden = 64;  // k'

  void validate() const;  // throws InvalidParams
};

// Affine layer with parameter and gradient storage.
struct LinearLayer {
  DenseMatrix w;           // in x out
  std::vector<double> b;   // out
  DenseMatrix gw;
  std::vector<double> gb;

  void init(int in, int out, Rng& rng);  // Kaiming-uniform fan-in, zero bias
  DenseMatrix forward(const DenseMatrix& x) const;
  void zero_grad();
};

// Inverted-dropout mask: entries 0 or 1, scaling 1/(1-rate) applied at use.
struct DropoutMask {
  DenseMatrix keep;  // 0/1
  double rate = 0.0;

  static DropoutMask sample(int rows, int cols, double rate, Rng& rng);
  DropoutMask reindexed_rows(const std::vector<int>& perm) const;
};

// 2-layer perceptron: ReLU(X W1 + b1) [dropout] W2 + b2.
struct Mlp {
  LinearLayer l1;
  LinearLayer l2;

  struct Cache {
    DenseMatrix input;
    DenseMatrix pre1;
    DenseMatrix hidden;  // post-ReLU, post-dropout
    const DropoutMask* mask = nullptr;
  };

  void init(int in, int hidden, int out, Rng& rng);
  DenseMatrix forward(const DenseMatrix& x, const DropoutMask* mask,
                      Cache* cache) const;
  // Accumulates parameter gradients; returns d loss / d input when
  // want_dx is set.
  DenseMatrix backward(const Cache& cache, const DenseMatrix& dout, bool want_dx);
  void zero_grad();
};

DenseMatrix mlp_forward(const Mlp& m, const DenseMatrix& x,
                        const DropoutMask* mask = nullptr);

// One per-block MLP (k -> k' -> k'), concatenated hidden features, affine
// classifier to K classes. Dropout on each block's hidden layer and on the
// concatenated features.
struct InceptionModel {
  std::vector<Mlp> block_mlps;
  LinearLayer classifier;
  double dropout_rate = 0.0;
  int hidden = 0;
  int classes = 0;

  struct Masks {
    std::vector<DropoutMask> hidden;  // one per block
    DropoutMask concat;
  };
  struct Cache {
    std::vector<Mlp::Cache> block_caches;
    DenseMatrix concat;  // post-dropout H'
    const Masks* masks = nullptr;
  };

  static InceptionModel make(const std::vector<int>& block_widths, int hidden,
                             int classes, double dropout_rate, Rng& rng);
  Masks sample_masks(int rows, Rng& rng) const;
  DenseMatrix forward(const std::vector<DenseMatrix>& blocks, const Masks* masks,
                      Cache* cache) const;
  void backward(const Cache& cache, const DenseMatrix& dlogits);
  void zero_grad();
};

DenseMatrix inception_forward(const InceptionModel& model,
                              const std::vector<DenseMatrix>& blocks,
                              const InceptionModel::Masks* masks = nullptr);

// Message-passing stack per the symmetric-Laplacian convolution: propagation
// layers without bias, ReLU, then an affine head.
struct GcnModel {
  std::vector<DenseMatrix> weights;   // layer l: in_l x hidden
  std::vector<DenseMatrix> gweights;
  LinearLayer head;
  double dropout_rate = 0.0;

  struct Masks {
    std::vector<DropoutMask> hidden;
  };
  struct Cache {
    std::vector<DenseMatrix> propagated;   // P_l = S H_l
    std::vector<DenseMatrix> pre;          // Z_l = P_l W_l
    std::vector<DenseMatrix> activations;  // H_0 = X, H_{l+1}
    const Masks* masks = nullptr;
  };

  static GcnModel make(int in, int hidden, int classes, int depth,
                       double dropout_rate, Rng& rng);
  Masks sample_masks(int rows, Rng& rng) const;
  DenseMatrix forward(const Graph& g, const DenseMatrix& x, const Masks* masks,
                      Cache* cache) const;
  void backward(const Graph& g, const Cache& cache, const DenseMatrix& dlogits);
  void zero_grad();
};

// Mean softmax cross-entropy with log-sum-exp stabilization.
// grad = (softmax - onehot) / rows. Throws InvalidLabel.
struct CrossEntropy {
  double loss;
  DenseMatrix grad;
};
CrossEntropy cross_entropy(const DenseMatrix& logits, const std::vector<int>& labels);

// Loss over a row subset only; gradient rows outside the subset are zero.
CrossEntropy cross_entropy_masked(const DenseMatrix& logits,
                                  const std::vector<int>& labels,
                                  const std::vector<int>& rows);

// Flattened parameter/gradient traversal in a fixed order.
struct ParamRef {
  double* value;
  double* grad;
  std::size_t size;
};
std::vector<ParamRef> parameters(Mlp& m);
std::vector<ParamRef> parameters(InceptionModel& m);
std::vector<ParamRef> parameters(GcnModel& m);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

// Standard Adam (beta1 0.9, beta2 0.999, eps 1e-8, bias correction at step
// t >= 1); weight decay enters as a plain L2 gradient term.
void adam_step(const std::vector<ParamRef>& params, AdamState& state, double lr,
               int t, double weight_decay = 0.0);

// Full-batch training of the inception classifier on the given blocks
// (already restricted to training rows). Deterministic given cfg.seed.
InceptionModel train_inception(const std::vector<DenseMatrix>& train_blocks,
                               const std::vector<int>& train_labels, int classes,
                               const TrainConfig& cfg,
                               std::vector<double>* loss_history = nullptr);

// Plain 2-layer MLP classifier for single-matrix embeddings.
Mlp train_mlp(const DenseMatrix& train_x, const std::vector<int>& train_labels,
              int classes, const TrainConfig& cfg,
              std::vector<double>* loss_history = nullptr);

std::vector<int> predict(const InceptionModel& model,
                         const std::vector<DenseMatrix>& blocks);
std::vector<int> predict(const Mlp& model, const DenseMatrix& x);
std::vector<int> argmax_rows(const DenseMatrix& logits);
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// End-to-end transductive training of the convolution stack; loss on train
// rows, reported accuracy on test rows.
double gcn_train_eval(const Graph& g, const DenseMatrix& x,
                      const std::vector<int>& labels,
                      const std::vector<int>& train_rows,
                      const std::vector<int>& test_rows, int depth,
                      const TrainConfig& cfg);

// Checkpoint: text header (shapes, config) + flat parameter arrays;
// round-trip exact.
void save_inception(const InceptionModel& model, const std::string& path);
InceptionModel load_inception(const std::string& path);

}  // namespace graphembed
