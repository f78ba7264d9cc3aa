#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "graphembed/embeddings.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/sbm.hpp"
#include "test_helpers.hpp"

using namespace graphembed;
using namespace testutil;

namespace {

LinearOperator dense_operator(const DenseMatrix& s) {
  return [s](const DenseMatrix& m) { return dense_multiply_oracle(s, m); };
}

DenseMatrix small_inverse(const DenseMatrix& a) {
  const EigenDecomposition eig = sym_eig(a);
  DenseMatrix vs = eig.vectors;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) vs(i, j) /= eig.values[j];
  return matmul_a_bt(vs, eig.vectors);
}

}  // namespace

TEST_CASE("normalized iteration on a hand-worked single edge") {
  const Graph edge = Graph::from_edge_list(2, {{0, 1}});
  DenseMatrix x(2, 1);
  x(0, 0) = 1.0;
  const EmbeddingList p = power_embed(OperatorKind::SymLaplacian, edge, x, 1);
  REQUIRE(p.block_count() == 2);
  // propagated = (0.5, 0.5); gram = 0.5; recursion state = (1, 1); appended
  // copy has unit columns
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(p.blocks[1](0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(p.blocks[1](1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("zero depth returns only the input block") {
  Rng rng(1);
  const Graph g = random_gnp(10, 0.3, rng);
  const DenseMatrix x = random_matrix(10, 2, rng);
  const EmbeddingList p = power_embed(OperatorKind::RandomWalk, g, x, 0);
  CHECK(p.block_count() == 1);
  CHECK(max_abs_diff(p.blocks[0], x) == 0.0);
}

TEST_CASE("magnitude-tied spectrum alternates without converging") {
  // raw adjacency of a single edge swaps the axes each step; documented
  // non-convergence when |lambda_1| = |lambda_2|
  const Graph edge = Graph::from_edge_list(2, {{0, 1}});
  DenseMatrix x(2, 1);
  x(0, 0) = 1.0;
  const EmbeddingList p = power_embed(OperatorKind::Adjacency, edge, x, 4);
  CHECK(std::abs(p.blocks[1](1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.blocks[1](0, 0)) < 1e-14);
  CHECK(std::abs(p.blocks[2](0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.blocks[3](1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.blocks[4](0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("blocks after the input keep unit columns") {
  Rng rng(4);
  const Graph g = random_gnp(40, 0.25, rng);
  const DenseMatrix x = random_matrix(40, 3, rng);
  const EmbeddingList p = power_embed(OperatorKind::SymLaplacian, g, x, 6);
  for (int t = 1; t <= 6; ++t)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(column_norm(p.blocks[t], j) - 1.0) < 1e-12);
}

TEST_CASE("iteration converges to the dominant eigenspace at the gap rate") {
  Rng rng(2718);
  for (double gap_ratio : {0.5, 0.7}) {
    const int n = 60, k = 4;
    std::vector<double> spectrum = {3.0, 2.6, 2.2, 1.8};
    double v = 1.8 * gap_ratio;
    for (int i = k; i < n; ++i) {
      spectrum.push_back(v);
      v *= 0.97;
    }
    const DenseMatrix s = matrix_with_spectrum(spectrum, rng);
    const EigenDecomposition oracle = sym_eig(s);
    const double rate = std::abs(oracle.values[k] / oracle.values[k - 1]);
    CHECK(rate <= gap_ratio + 1e-9);
    const DenseMatrix top = leading_cols(oracle.vectors, k);
    const DenseMatrix x = random_matrix(n, k, rng);

    const int budget = static_cast<int>(std::ceil(std::log(1e-6) / std::log(rate))) + 10;
    const EmbeddingList p = power_embed_operator(dense_operator(s), x, budget);
    std::vector<double> angles;
    for (int t = 0; t <= budget; ++t)
      angles.push_back(largest_principal_angle(p.blocks[t], top));
    CHECK(angles.back() < 1e-6);

    // aggregate decay rate in the clean regime stays near the eigen-gap ratio
    int t1 = -1, t2 = -1;
    for (int t = 0; t <= budget; ++t) {
      if (t1 < 0 && angles[t] < 0.05) t1 = t;
      if (angles[t] > 1e-9) t2 = t;
    }
    REQUIRE(t1 >= 0);
    REQUIRE(t2 > t1 + 3);
    const double per_step =
        std::pow(angles[t2] / angles[t1], 1.0 / static_cast<double>(t2 - t1));
    CHECK(per_step <= rate * 1.25);
  }
}

TEST_CASE("normalized iterate settles into a period-two orbit over the top eigenspace") {
  // Once the column space converges, the iterate alternates with period two;
  // in the oracle basis (Phi = V1^T U, W = Phi Phi^T) consecutive steps obey
  // W(t+1) = L^-1 W(t)^-1 L^-1, so the geometric mean of the cycle is L^-1
  // while no single iterate needs to reach it.
  Rng rng(31);
  const int n = 40, k = 3;
  std::vector<double> spectrum = {2.0, 1.5, 1.2};
  double v = 0.55;
  for (int i = k; i < n; ++i) {
    spectrum.push_back(v);
    v *= 0.95;
  }
  const DenseMatrix s = matrix_with_spectrum(spectrum, rng);
  const EigenDecomposition oracle = sym_eig(s);
  const DenseMatrix top = leading_cols(oracle.vectors, k);

  DenseMatrix state = random_matrix(n, k, rng);
  for (int t = 0; t < 80; ++t)
    state = gram_inverse_normalize(dense_multiply_oracle(s, state));
  const DenseMatrix next = gram_inverse_normalize(dense_multiply_oracle(s, state));
  const DenseMatrix next2 = gram_inverse_normalize(dense_multiply_oracle(s, next));

  CHECK(largest_principal_angle(state, top) < 1e-10);

  // period two: U(t+2) returns to U(t), U(t+1) does not
  CHECK(frobenius_norm(subtract(next2, state)) < 1e-8 * frobenius_norm(state));
  CHECK(frobenius_norm(subtract(next, state)) > 1e-3 * frobenius_norm(state));

  DenseMatrix lambda_inv(k, k);
  for (int i = 0; i < k; ++i) lambda_inv(i, i) = 1.0 / oracle.values[i];
  const auto w_of = [&](const DenseMatrix& u) {
    const DenseMatrix phi = matmul_at_b(top, u);  // k x k
    return matmul_a_bt(phi, phi);
  };
  const DenseMatrix w_now = w_of(state);
  const DenseMatrix w_next = w_of(next);
  const DenseMatrix predicted =
      matmul(matmul(lambda_inv, small_inverse(w_now)), lambda_inv);
  CHECK(frobenius_norm(subtract(w_next, predicted)) < 1e-8 * frobenius_norm(w_next));
}

TEST_CASE("relabelling nodes relabels every block") {
  Rng rng(88);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 20 + static_cast<int>(rng.next_below(30));
    const Graph g = random_gnp(n, 0.3, rng);
    const DenseMatrix x = random_matrix(n, 3, rng);
    const std::vector<int> perm = random_permutation(n, rng);
    const Graph pg = permuted(g, perm);
    const DenseMatrix px = permute_rows(x, perm);

    for (OperatorKind kind : {OperatorKind::SymLaplacian, OperatorKind::RandomWalk}) {
      const EmbeddingList a = power_embed(kind, g, x, 5);
      const EmbeddingList b = power_embed(kind, pg, px, 5);
      for (int t = 0; t <= 5; ++t)
        CHECK(max_abs_diff(permute_rows(a.blocks[t], perm), b.blocks[t]) < 1e-10);

      const EmbeddingList ua = unnormalized_embed(kind, g, x, 5);
      const EmbeddingList ub = unnormalized_embed(kind, pg, px, 5);
      for (int t = 0; t <= 5; ++t)
        CHECK(max_abs_diff(permute_rows(ua.blocks[t], perm), ub.blocks[t]) < 1e-10);
    }

    // spectral embeddings agree as subspaces
    const DenseMatrix sa = ase(g, 2);
    const DenseMatrix sb = ase(pg, 2);
    CHECK(largest_principal_angle(permute_rows(sa, perm), sb) < 1e-7);
    const DenseMatrix ca = cov_embed(x, 2);
    const DenseMatrix cb = cov_embed(px, 2);
    CHECK(largest_principal_angle(permute_rows(ca, perm), cb) < 1e-7);
  }
}

TEST_CASE("unnormalized propagation is a plain operator power") {
  Rng rng(14);
  const Graph g = random_gnp(25, 0.3, rng);
  const DenseMatrix x = random_matrix(25, 2, rng);
  for (OperatorKind kind : {OperatorKind::Adjacency, OperatorKind::SymLaplacian,
                            OperatorKind::RandomWalk}) {
    const EmbeddingList p = unnormalized_embed(kind, g, x, 2);
    const DenseMatrix s = operator_dense(kind, g);
    const DenseMatrix s2x = dense_multiply_oracle(s, dense_multiply_oracle(s, x));
    CHECK(max_abs_diff(p.blocks[2], s2x) < 1e-10);
  }
}

TEST_CASE("deep unnormalized propagation collapses onto the top eigenvector") {
  const SbmParams params = make_2b_sbm(200, 0.5, 0.25);
  Rng rng(2025);
  const Graph g = sample_sbm(params, rng);
  REQUIRE(is_connected(g));
  REQUIRE_FALSE(is_bipartite(g));
  const DenseMatrix x = random_matrix(200, 2, rng);

  SUBCASE("random walk limit is the constant vector") {
    const EmbeddingList p = unnormalized_embed(OperatorKind::RandomWalk, g, x, 400);
    const DenseMatrix& last = p.blocks.back();
    for (int j = 0; j < last.cols(); ++j) {
      double dot = 0.0, nn = 0.0;
      for (int i = 0; i < 200; ++i) {
        dot += last(i, j);
        nn += last(i, j) * last(i, j);
      }
      const double cosine = std::abs(dot) / (std::sqrt(nn) * std::sqrt(200.0));
      CHECK(cosine > 1.0 - 1e-6);
    }
  }
  SUBCASE("symmetric normalization limit is its own top eigenvector") {
    const EmbeddingList p = unnormalized_embed(OperatorKind::SymLaplacian, g, x, 400);
    const DenseMatrix& last = p.blocks.back();
    const EigenDecomposition eig = sym_eig(operator_dense(OperatorKind::SymLaplacian, g));
    for (int j = 0; j < last.cols(); ++j) {
      double dot = 0.0, nn = 0.0;
      for (int i = 0; i < 200; ++i) {
        dot += last(i, j) * eig.vectors(i, 0);
        nn += last(i, j) * last(i, j);
      }
      CHECK(std::abs(dot) / std::sqrt(nn) > 1.0 - 1e-6);
    }
  }
}

TEST_CASE("depth-50 contrast: unnormalized collapses, normalized does not") {
  const SbmParams params = make_2b_sbm(500, 0.5, 0.25);
  Rng rng(404);
  const Graph g = sample_sbm(params, rng);
  const GaussianMixtureParams gm = GaussianMixtureParams::symmetric_pair({1.0, 1.0});
  const DenseMatrix x = sample_features(params.memberships, gm, rng);

  const EigenDecomposition eig = sym_eig(operator_dense(OperatorKind::SymLaplacian, g));
  const DenseMatrix top2 = leading_cols(eig.vectors, 2);

  const EmbeddingList unnorm = unnormalized_embed(OperatorKind::SymLaplacian, g, x, 50);
  const ThinQr qu = thin_qr(unnorm.blocks.back());
  const double angle_unnorm = principal_angles_orthonormal(qu.q, top2).back();
  CHECK(angle_unnorm > 1.0);  // rank collapse: second direction is noise

  const EmbeddingList power = power_embed(OperatorKind::SymLaplacian, g, x, 50);
  CHECK(largest_principal_angle(power.blocks.back(), top2) < 1e-3);
}

TEST_CASE("rank collapse raises with the failing iteration, QR fallback survives") {
  // operator with a 1e-8 trailing direction: gram condition ~1e16
  DenseMatrix s(4, 4);
  s(0, 0) = 1.0;
  s(1, 1) = 1e-8;
  s(2, 2) = 1e-8;
  s(3, 3) = 1e-8;
  Rng rng(3);
  const DenseMatrix x = random_matrix(4, 2, rng);
  try {
    power_embed_operator(dense_operator(s), x, 3);
    FAIL("expected RankDeficient");
  } catch (const RankDeficient& e) {
    CHECK(e.iteration() == 0);
  }
  PowerOptions opts;
  opts.qr_fallback = true;
  const EmbeddingList p = power_embed_operator(dense_operator(s), x, 3, opts);
  CHECK(p.block_count() == 4);
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(column_norm(p.blocks[3], j) - 1.0) < 1e-12);

  // empty graph: zero operator cannot be recovered at all
  const Graph empty = Graph::from_edge_list(5, {});
  const DenseMatrix x5 = random_matrix(5, 2, rng);
  CHECK_THROWS_AS(power_embed(OperatorKind::Adjacency, empty, x5, 1, opts), RankDeficient);
}

TEST_CASE("adjacency spectral embedding") {
  SUBCASE("complete graph dominant direction is constant") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edges.emplace_back(i, j);
    const Graph g = Graph::from_edge_list(4, edges);
    bool warn = true;
    const DenseMatrix u = ase(g, 1, &warn);
    CHECK_FALSE(warn);
    for (int i = 0; i < 4; ++i) CHECK(u(i, 0) == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("sampled two-block graph concentrates near the expected spectrum") {
    const SbmParams params = make_2b_sbm(500, 0.5, 0.25);
    Rng rng(606);
    const Graph g = sample_sbm(params, rng);
    const DenseMatrix u = ase(g, 2);
    const EigenDecomposition pexp = sym_eig(expected_adjacency(params));
    const DenseMatrix top2 = leading_cols(pexp.vectors, 2);
    CHECK(largest_principal_angle(u, top2) < 0.2);
  }
  SUBCASE("empty graph warns about the eigen tie") {
    const Graph g = Graph::from_edge_list(3, {});
    bool warn = false;
    ase(g, 1, &warn);
    CHECK(warn);
  }
}

TEST_CASE("feature covariance embedding separates the blocks") {
  const GaussianMixtureParams gm = GaussianMixtureParams::symmetric_pair({1.0, 1.0});
  std::vector<int> z(500, 1);
  for (int i = 0; i < 250; ++i) z[i] = 0;
  Rng rng(808);
  const DenseMatrix x = sample_features(z, gm, rng);
  const DenseMatrix u = cov_embed(x, 1);
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    const int side = u(i, 0) > 0 ? 0 : 1;
    if (side == z[i]) ++agree;
  }
  if (agree < 250) agree = 500 - agree;  // direction sign is arbitrary
  // The Bayes optimum for means +/-(1,1) with unit covariance is
  // Phi(sqrt(2)) ~ 0.921, so the estimated direction lands near 0.9.
  CHECK(agree >= 425);  // >= 85%

  DenseMatrix flat(4, 2);
  flat(0, 0) = 1.0;
  flat(1, 0) = 2.0;  // rank 1
  CHECK_THROWS_AS(cov_embed(flat, 2), RankDeficient);
}

TEST_CASE("concatenated spectral embedding") {
  const SbmParams params = make_2b_sbm(60, 0.6, 0.2);
  Rng rng(909);
  const Graph g = sample_sbm(params, rng);
  const GaussianMixtureParams gm = GaussianMixtureParams::symmetric_pair({1.0, 1.0});
  const DenseMatrix x = sample_features(params.memberships, gm, rng);
  const DenseMatrix both = a_x_embed(g, x, 2);
  CHECK(both.rows() == 60);
  CHECK(both.cols() == 4);
  const DenseMatrix spectral = ase(g, 2);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 2; ++j) CHECK(both(i, j) == spectral(i, j));
}

TEST_CASE("block selection") {
  Rng rng(10);
  const Graph g = random_gnp(12, 0.4, rng);
  const DenseMatrix x = random_matrix(12, 2, rng);
  const EmbeddingList p = power_embed(OperatorKind::SymLaplacian, g, x, 3);

  CHECK(select_features(p, FeatureSelection::All).block_count() == 4);
  const EmbeddingList last = select_features(p, FeatureSelection::LastOnly);
  CHECK(last.block_count() == 1);
  CHECK(max_abs_diff(last.blocks[0], p.blocks[3]) == 0.0);
  const EmbeddingList both = select_features(p, FeatureSelection::InputPlusLast);
  CHECK(both.block_count() == 2);
  CHECK(max_abs_diff(both.blocks[0], x) == 0.0);

  const EmbeddingList shallow = power_embed(OperatorKind::SymLaplacian, g, x, 0);
  CHECK(select_features(shallow, FeatureSelection::InputPlusLast).block_count() == 1);
}

TEST_CASE("feature-to-node sensitivity probe") {
  Rng rng(12);
  const DenseMatrix x = random_matrix(5, 3, rng);
  const LinearOperator identity = [](const DenseMatrix& m) { return m; };
  CHECK(oversquash_sensitivity(identity, x, 2, 2, 1e-5) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
  CHECK(oversquash_sensitivity(identity, x, 0, 2, 1e-5) == doctest::Approx(0.0));

  const Graph edge = Graph::from_edge_list(2, {{0, 1}});
  const LinearOperator step = [&edge](const DenseMatrix& m) {
    return apply_operator(OperatorKind::RandomWalk, edge, m);
  };
  DenseMatrix x1(2, 1);
  x1(0, 0) = 0.3;
  x1(1, 0) = -0.8;
  CHECK(oversquash_sensitivity(step, x1, 0, 1, 1e-5) ==
        doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("embedding list round-trips through its directory format") {
  Rng rng(15);
  const Graph g = random_gnp(8, 0.5, rng);
  const DenseMatrix x = random_matrix(8, 2, rng);
  const EmbeddingList p = power_embed(OperatorKind::RandomWalk, g, x, 2);

  const std::string dir = (std::filesystem::temp_directory_path() /
                           "graphembed_test_embedding")
                              .string();
  std::filesystem::remove_all(dir);
  save_embedding_list(p, dir);
  const EmbeddingList q = load_embedding_list(dir);
  CHECK(q.method == p.method);
  CHECK(q.op == p.op);
  CHECK(q.depth == p.depth);
  CHECK(q.k == p.k);
  REQUIRE(q.block_count() == p.block_count());
  for (int t = 0; t < p.block_count(); ++t)
    CHECK(max_abs_diff(q.blocks[t], p.blocks[t]) == 0.0);
  std::filesystem::remove_all(dir);
}
