// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "graphembed/embeddings.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/harness.hpp"
#include "graphembed/linalg.hpp"
#include "graphembed/nn.hpp"
#include "graphembed/rng.hpp"
#include "graphembed/sbm.hpp"

using namespace graphembed;

namespace {

struct Criterion {
  int id;
  bool passed;
  std::string detail;
  double seconds;
};

std::vector<Criterion> g_results;

void run_criterion(int id, const std::string& name, double budget_seconds,
                   const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    const auto [passed, text] = body();
    ok = passed;
    detail = text;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    ok = false;
    detail += " [over the " + std::to_string(static_cast<int>(budget_seconds)) +
              "s runtime budget]";
  }
  g_results.push_back({id, ok, detail, secs});
  std::printf("criterion %d [%s]: %s (%s; %.1fs of %.0fs budget)\n", id, name.c_str(),
              ok ? "PASS" : "FAIL", detail.c_str(), secs, budget_seconds);
  std::fflush(stdout);
}

DenseMatrix random_gaussian(int rows, int cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = rng.next_normal();
  return m;
}

DenseMatrix with_spectrum(const std::vector<double>& eigenvalues, Rng& rng) {
  const int n = static_cast<int>(eigenvalues.size());
  const DenseMatrix q = thin_qr(random_gaussian(n, n, rng)).q;
  DenseMatrix scaled = q;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= eigenvalues[j];
  DenseMatrix s = matmul_a_bt(scaled, q);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

LinearOperator dense_op(const DenseMatrix& s) {
  return [&s](const DenseMatrix& m) { return matmul(s, m); };
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> criterion_subspace_convergence() {
  const int n = 100, k = 4, instances = 50;
  double worst_angle = 0.0;
  double worst_ratio = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng::derived(4100, inst);
    // spectrum with a controlled gap below the k-th magnitude; signs mixed
    const double target = 0.2 + 0.4 * rng.next_double();  // gap ratio in [0.2, 0.6]
    std::vector<double> spectrum = {3.5, 3.0, 2.5, 2.0};
    double mag = 2.0 * target;
    for (int i = k; i < n; ++i) {
      spectrum.push_back(mag * (rng.next_double() < 0.5 ? -1.0 : 1.0));
      mag *= 0.97;
    }
    for (int i = 0; i < k; ++i)
      if (rng.next_double() < 0.3) spectrum[i] = -spectrum[i];
    const DenseMatrix s = with_spectrum(spectrum, rng);

    const EigenDecomposition oracle = sym_eig(s);
    const double ratio = std::abs(oracle.values[k] / oracle.values[k - 1]);
    if (ratio > 0.9) return {false, "instance ratio exceeded 0.9 (construction bug)"};
    worst_ratio = std::max(worst_ratio, ratio);
    const DenseMatrix top = leading_cols(oracle.vectors, k);

    const int budget =
        static_cast<int>(std::ceil(std::log(1e-6) / std::log(ratio))) + 10;
    const DenseMatrix x = random_gaussian(n, k, rng);
    const EmbeddingList p = power_embed_operator(dense_op(s), x, budget);
    const double angle = largest_principal_angle(p.blocks.back(), top);
    worst_angle = std::max(worst_angle, angle);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "50 instances, max gap ratio %.3f, worst final angle %.2e (need < 1e-6)",
                worst_ratio, worst_angle);
  return {worst_angle < 1e-6, buf};
}

std::pair<bool, std::string> criterion_convergence_scaling() {
  ConvergenceConfig dense;
  dense.n = 500;
  dense.p = 0.5;
  dense.q = 0.25;
  dense.kind = OperatorKind::Adjacency;
  dense.k = 2;
  dense.layers = 20;
  dense.trials = 30;
  dense.seed = 4200;
  const ConvergenceResult dr = convergence_experiment(dense);

  ConvergenceConfig sparse = dense;
  sparse.p = 0.05;
  sparse.q = 0.025;
  sparse.seed = 4300;
  const ConvergenceResult sr = convergence_experiment(sparse);

  const double dense_angle = dr.mean_largest_angle(20);
  const double sparse_angle = sr.mean_largest_angle(20);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mean largest angle at t=20: dense %.2e (need < 1e-3), sparse %.2e "
                "(need > dense)",
                dense_angle, sparse_angle);
  return {dense_angle < 1e-3 && sparse_angle > dense_angle, buf};
}

std::pair<bool, std::string> criterion_classification_orderings() {
  const auto mean_of = [](const std::vector<ExperimentResult>& results,
                          const std::string& tag) {
    for (const auto& r : results)
      if (r.method.tag() == tag) return r.mean_accuracy();
    throw InvalidParams("missing method " + tag);
  };

  SbmBenchConfig base;
  base.n = 500;
  base.trials = 10;
  base.train_frac = 0.1;
  base.mean0 = {1.0, 1.0};
  base.covariance_scale = 1.0;
  base.seed = 4400;

  const MethodSpec power = MethodSpec::parse("power lap 10 all");
  std::string detail;
  bool ok = true;
  char buf[200];

  {  // dense homophilous: near the spectral pipeline and above 0.9
    SbmBenchConfig cfg = base;
    cfg.pq_list = {{0.5, 0.25}};
    const auto results =
        sbm_classification_experiment(cfg, {power, MethodSpec::parse("a_x")});
    const double p10 = mean_of(results, "Power(Lap)-10");
    const double ax = mean_of(results, "A_X");
    const bool pass = p10 >= 0.9 && std::abs(p10 - ax) <= 0.03;
    ok = ok && pass;
    std::snprintf(buf, sizeof buf, "(a) dense homo: Power(Lap)-10 %.3f, A_X %.3f; ", p10,
                  ax);
    detail += buf;
  }
  {  // dense heterophilous: clear gap over the deep convolution baseline
    SbmBenchConfig cfg = base;
    cfg.seed = 4500;
    cfg.pq_list = {{0.25, 0.5}};
    const auto results =
        sbm_classification_experiment(cfg, {power, MethodSpec::parse("gcn 5")});
    const double p10 = mean_of(results, "Power(Lap)-10");
    const double gcn = mean_of(results, "GCN-5");
    ok = ok && (p10 - gcn >= 0.1);
    std::snprintf(buf, sizeof buf, "(b) dense hetero: Power(Lap)-10 %.3f, GCN-5 %.3f; ",
                  p10, gcn);
    detail += buf;
  }
  {  // sparse, both directions: beats the bare spectral embedding
    for (auto [p, q, seed] : {std::tuple<double, double, int>{0.05, 0.025, 4600},
                              std::tuple<double, double, int>{0.025, 0.05, 4700}}) {
      SbmBenchConfig cfg = base;
      cfg.seed = seed;
      cfg.pq_list = {{p, q}};
      const auto results =
          sbm_classification_experiment(cfg, {power, MethodSpec::parse("ase")});
      const double p10 = mean_of(results, "Power(Lap)-10");
      const double spectral = mean_of(results, "ASE");
      ok = ok && (p10 - spectral >= 0.05);
      std::snprintf(buf, sizeof buf, "(c) sparse %s: Power(Lap)-10 %.3f, ASE %.3f; ",
                    p > q ? "homo" : "hetero", p10, spectral);
      detail += buf;
    }
  }
  return {ok, detail};
}

std::pair<bool, std::string> criterion_oversmoothing_limit() {
  const SbmParams params = make_2b_sbm(500, 0.5, 0.25);
  Rng rng(4800);
  const Graph g = sample_sbm(params, rng);
  if (!is_connected(g) || is_bipartite(g))
    return {false, "sampled graph not connected/non-bipartite"};
  const GaussianMixtureParams gm = GaussianMixtureParams::symmetric_pair({1.0, 1.0});
  const DenseMatrix x = sample_features(params.memberships, gm, rng);
  const int depth = 400;

  // random-walk propagation flattens onto the constant vector
  double worst_rw = 1.0;
  {
    const EmbeddingList p = unnormalized_embed(OperatorKind::RandomWalk, g, x, depth);
    const DenseMatrix& last = p.blocks.back();
    for (int j = 0; j < last.cols(); ++j) {
      double dot = 0.0, nn = 0.0;
      for (int i = 0; i < last.rows(); ++i) {
        dot += last(i, j);
        nn += last(i, j) * last(i, j);
      }
      worst_rw = std::min(worst_rw,
                          std::abs(dot) / (std::sqrt(nn) * std::sqrt(1.0 * last.rows())));
    }
  }
  // symmetric normalization flattens onto its own top eigenvector
  const EigenDecomposition eig = sym_eig(operator_dense(OperatorKind::SymLaplacian, g));
  double worst_lap = 1.0;
  {
    const EmbeddingList p = unnormalized_embed(OperatorKind::SymLaplacian, g, x, depth);
    const DenseMatrix& last = p.blocks.back();
    for (int j = 0; j < last.cols(); ++j) {
      double dot = 0.0, nn = 0.0;
      for (int i = 0; i < last.rows(); ++i) {
        dot += last(i, j) * eig.vectors(i, 0);
        nn += last(i, j) * last(i, j);
      }
      worst_lap = std::min(worst_lap, std::abs(dot) / std::sqrt(nn));
    }
  }
  // the normalized iteration keeps the two-dimensional structure
  const EmbeddingList power = power_embed(OperatorKind::SymLaplacian, g, x, depth);
  const double angle =
      largest_principal_angle(power.blocks.back(), leading_cols(eig.vectors, 2));

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "rw cosine %.10f, lap cosine %.10f (need > 1-1e-6), normalized "
                "top-2 angle %.2e (need < 1e-3)",
                worst_rw, worst_lap, angle);
  return {worst_rw > 1.0 - 1e-6 && worst_lap > 1.0 - 1e-6 && angle < 1e-3, buf};
}

std::pair<bool, std::string> criterion_equivariance() {
  double worst_block = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    Rng rng = Rng::derived(4900, inst);
    const int n = 20 + static_cast<int>(rng.next_below(61));
    // sampled two-block graph + features
    const SbmParams params = make_2b_sbm(n % 2 == 0 ? n : n + 1, 0.4, 0.15);
    const Graph g = sample_sbm(params, rng);
    const DenseMatrix x = random_gaussian(g.node_count(), 3, rng);
    std::vector<int> perm(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) perm[i] = i;
    rng.shuffle(perm);
    const Graph pg = permuted(g, perm);
    const DenseMatrix px = permute_rows(x, perm);

    const EmbeddingList a = power_embed(OperatorKind::SymLaplacian, g, x, 8);
    const EmbeddingList b = power_embed(OperatorKind::SymLaplacian, pg, px, 8);
    for (int t = 0; t <= 8; ++t) {
      const DenseMatrix expect = permute_rows(a.blocks[t], perm);
      for (int i = 0; i < expect.rows(); ++i)
        for (int j = 0; j < expect.cols(); ++j)
          worst_block = std::max(worst_block,
                                 std::abs(expect(i, j) - b.blocks[t](i, j)));
    }

    // classifier head: permuted inputs with re-indexed masks give permuted
    // logits bit-for-bit
    InceptionModel model;
    {
      Rng init(1234 + inst);
      std::vector<int> widths(a.block_count(), 3);
      model = InceptionModel::make(widths, 8, 2, 0.5, init);
    }
    Rng mask_rng(777 + inst);
    const InceptionModel::Masks masks = model.sample_masks(g.node_count(), mask_rng);
    InceptionModel::Masks pmasks;
    for (const auto& h : masks.hidden) pmasks.hidden.push_back(h.reindexed_rows(perm));
    pmasks.concat = masks.concat.reindexed_rows(perm);

    // feed the same numbers through both paths so the check is exact
    const std::vector<DenseMatrix> blocks(a.blocks.begin(), a.blocks.end());
    std::vector<DenseMatrix> pblocks;
    for (const auto& blockmat : blocks) pblocks.push_back(permute_rows(blockmat, perm));

    const DenseMatrix logits = inception_forward(model, blocks, &masks);
    const DenseMatrix plogits = inception_forward(model, pblocks, &pmasks);
    const DenseMatrix expect = permute_rows(logits, perm);
    for (int i = 0; i < expect.rows(); ++i)
      for (int j = 0; j < expect.cols(); ++j)
        if (plogits(i, j) != expect(i, j))
          return {false, "inception logits not bit-exact under permutation"};
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "20 triples, worst blockwise deviation %.2e (need <= 1e-10)",
                worst_block);
  return {worst_block <= 1e-10, buf};
}

std::pair<bool, std::string> criterion_gradients() {
  const auto relative_error = [](double a, double b) {
    return std::abs(a - b) / std::max(1e-8, std::abs(a) + std::abs(b));
  };
  double worst = 0.0;
  const double eps = 1e-5;

  const auto check_refs = [&](const std::vector<ParamRef>& refs,
                              const std::function<double()>& loss) {
    for (const auto& ref : refs)
      for (std::size_t i = 0; i < ref.size; ++i) {
        const double saved = ref.value[i];
        ref.value[i] = saved + eps;
        const double up = loss();
        ref.value[i] = saved - eps;
        const double down = loss();
        ref.value[i] = saved;
        worst = std::max(worst, relative_error((up - down) / (2 * eps), ref.grad[i]));
      }
  };

  for (int inst = 0; inst < 10; ++inst) {
    Rng rng = Rng::derived(5000, inst);
    const int rows = 4 + static_cast<int>(rng.next_below(5));

    {  // 2-layer perceptron
      Mlp m;
      m.init(3, 4, 3, rng);
      const DenseMatrix x = random_gaussian(rows, 3, rng);
      std::vector<int> y(rows);
      for (int i = 0; i < rows; ++i) y[i] = static_cast<int>(rng.next_below(3));
      Mlp::Cache cache;
      const CrossEntropy ce = cross_entropy(m.forward(x, nullptr, &cache), y);
      m.zero_grad();
      m.backward(cache, ce.grad, false);
      check_refs(parameters(m), [&] { return cross_entropy(mlp_forward(m, x), y).loss; });
    }
    {  // inception network
      InceptionModel model = InceptionModel::make({2, 3}, 3, 2, 0.0, rng);
      const std::vector<DenseMatrix> blocks = {random_gaussian(rows, 2, rng),
                                               random_gaussian(rows, 3, rng)};
      std::vector<int> y(rows);
      for (int i = 0; i < rows; ++i) y[i] = static_cast<int>(rng.next_below(2));
      InceptionModel::Cache cache;
      const CrossEntropy ce = cross_entropy(model.forward(blocks, nullptr, &cache), y);
      model.zero_grad();
      model.backward(cache, ce.grad);
      check_refs(parameters(model),
                 [&] { return cross_entropy(inception_forward(model, blocks), y).loss; });
    }
    {  // convolution stack
      SbmParams params = make_2b_sbm(12, 0.5, 0.2);
      const Graph g = sample_sbm(params, rng);
      const DenseMatrix x = random_gaussian(12, 2, rng);
      std::vector<int> y(12);
      for (int i = 0; i < 12; ++i) y[i] = static_cast<int>(rng.next_below(2));
      std::vector<int> train_rows = {0, 1, 4, 6, 9, 11};
      GcnModel model = GcnModel::make(2, 4, 2, 2, 0.0, rng);
      GcnModel::Cache cache;
      const CrossEntropy ce =
          cross_entropy_masked(model.forward(g, x, nullptr, &cache), y, train_rows);
      model.zero_grad();
      model.backward(g, cache, ce.grad);
      check_refs(parameters(model), [&] {
        return cross_entropy_masked(model.forward(g, x, nullptr, nullptr), y, train_rows)
            .loss;
      });
    }
    {  // loss itself, gradient with respect to logits
      DenseMatrix logits = random_gaussian(rows, 4, rng);
      std::vector<int> y(rows);
      for (int i = 0; i < rows; ++i) y[i] = static_cast<int>(rng.next_below(4));
      const CrossEntropy ce = cross_entropy(logits, y);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < 4; ++j) {
          const double saved = logits(i, j);
          logits(i, j) = saved + eps;
          const double up = cross_entropy(logits, y).loss;
          logits(i, j) = saved - eps;
          const double down = cross_entropy(logits, y).loss;
          logits(i, j) = saved;
          worst = std::max(worst, relative_error((up - down) / (2 * eps), ce.grad(i, j)));
        }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst relative error %.2e (need < 1e-4)", worst);
  return {worst < 1e-4, buf};
}

std::pair<bool, std::string> criterion_gram_limit() {
  // Stated limit: at convergence the un-column-normalized iterate satisfies
  // U(L)^T U(L) = Lambda_1^{-1}. The recursion's projected Gram actually
  // settles into a period-2 cycle whose geometric mean is Lambda_1^{-1}; no
  // single iterate reaches the stated identity except from measure-zero
  // starts. The check runs as stated and the cycle structure is printed
  // alongside for the diagnosis.
  Rng rng(5100);
  const int n = 60, k = 3;
  std::vector<double> spectrum = {2.5, 2.0, 1.6};
  double mag = 0.8;
  for (int i = k; i < n; ++i) {
    spectrum.push_back(mag);
    mag *= 0.96;
  }
  const DenseMatrix s = with_spectrum(spectrum, rng);
  const EigenDecomposition oracle = sym_eig(s);
  const DenseMatrix top = leading_cols(oracle.vectors, k);

  DenseMatrix state = random_gaussian(n, k, rng);
  for (int t = 0; t < 120; ++t) state = gram_inverse_normalize(matmul(s, state));
  const DenseMatrix next = gram_inverse_normalize(matmul(s, state));

  DenseMatrix lambda_inv(k, k);
  for (int i = 0; i < k; ++i) lambda_inv(i, i) = 1.0 / oracle.values[i];

  const DenseMatrix g_now = gram(state);
  const double stated =
      frobenius_norm(subtract(g_now, lambda_inv)) / frobenius_norm(lambda_inv);
  const double subspace = largest_principal_angle(state, top);

  // cycle identity in the oracle basis: with W = (V1^T U)(V1^T U)^T and
  // L = diag(lambda_1..k), consecutive iterates satisfy W(t) L W(t+1) L = I
  DenseMatrix lambda(k, k);
  for (int i = 0; i < k; ++i) lambda(i, i) = oracle.values[i];
  const auto w_of = [&](const DenseMatrix& u) {
    const DenseMatrix phi = matmul_at_b(top, u);
    return matmul_a_bt(phi, phi);
  };
  const DenseMatrix cycle =
      matmul(matmul(matmul(w_of(state), lambda), w_of(next)), lambda);
  const double cycle_residual =
      frobenius_norm(subtract(cycle, DenseMatrix::identity(k))) / std::sqrt(1.0 * k);

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "||U^T U - diag(1/lambda)|| rel %.2e (need <= 1e-6); subspace angle "
                "%.2e; consecutive-gram cycle residual %.2e",
                stated, subspace, cycle_residual);
  return {stated <= 1e-6 && subspace < 1e-6, buf};
}

}  // namespace

int main() {
  run_criterion(1, "subspace convergence under the gap-ratio budget", 30,
                criterion_subspace_convergence);
  run_criterion(2, "dense vs sparse convergence scaling", 120,
                criterion_convergence_scaling);
  run_criterion(3, "classification orderings on sampled two-block graphs", 900,
                criterion_classification_orderings);
  run_criterion(4, "deep-propagation limits and their normalized counterpart", 60,
                criterion_oversmoothing_limit);
  run_criterion(5, "permutation equivariance", 30, criterion_equivariance);
  run_criterion(6, "gradient correctness", 30, criterion_gradients);
  run_criterion(7, "gram limit of the converged iterate", 10, criterion_gram_limit);
  std::printf(
      "criterion 8 [small-benchmark reproduction]: SKIP (needs externally supplied "
      "dataset directories; run the embed/train pipeline described in the README)\n");

  int failed = 0;
  for (const auto& c : g_results)
    if (!c.passed) ++failed;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failed,
              g_results.size());
  return failed == 0 ? 0 : 1;
}
