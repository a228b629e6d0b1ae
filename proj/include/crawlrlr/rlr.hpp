#pragma once

// Relational logistic regression core: soft-max prediction, per-node
// log-likelihood and gradient, full-graph likelihood/gradient, and a
// deterministic full-batch optimizer (proximal gradient with backtracking)
// used to produce global estimates.
//
// The penalized objective minimized everywhere in this project is
//   F(w) = -sum_v g(v) + N * lambda * Omega(w),
// where N is the number of training nodes (or its unbiased crawl estimate),
// Omega is 0.5*||w||^2 (L2) or ||w||_1 (L1) over non-intercept coordinates,
// and the intercept column is never penalized.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crawlrlr/features.hpp"
#include "crawlrlr/graph.hpp"

namespace crawlrlr {

enum class Regularizer { None, L1, L2 };

std::string regularizer_name(Regularizer r);
Regularizer regularizer_from_name(const std::string& name);

struct WeightMatrix {
  std::size_t num_classes = 0;  // H
  std::size_t dim = 0;          // d
  std::vector<double> values;   // row-major H x d
  Regularizer reg = Regularizer::L2;
  double lambda = 1e-3;

  static WeightMatrix zeros(std::size_t num_classes, std::size_t dim,
                            Regularizer reg = Regularizer::L2,
                            double lambda = 1e-3);

  std::span<const double> row(std::size_t h) const {
    return {values.data() + h * dim, dim};
  }
  std::span<double> row(std::size_t h) {
    return {values.data() + h * dim, dim};
  }
  double& at(std::size_t h, std::size_t j) { return values[h * dim + j]; }
  double at(std::size_t h, std::size_t j) const { return values[h * dim + j]; }
};

// Soft-max class distribution, computed with max-subtraction.
std::vector<double> predict(const WeightMatrix& w, std::span<const double> phi);

// Per-node log-likelihood g(v) = w_y . phi - logsumexp_h(w_h . phi).
double node_loglik(const WeightMatrix& w, std::span<const double> phi, int y);

// Per-node gradient for class j: (1{y==j} - p_j) * phi.
std::vector<double> node_loglik_grad(const WeightMatrix& w,
                                     std::span<const double> phi, int y, int j);

// Scratch-free inner kernel: writes class probabilities into probs (resized
// to H) and returns logsumexp. Shared by the likelihood and gradient paths.
double softmax_into(const WeightMatrix& w, std::span<const double> phi,
                    std::vector<double>& probs);

// Sum of g(v) over nodes, exact features. Nodes must all be labeled.
double full_loglik(const AttributedGraph& g, const WeightMatrix& w,
                   const FeatureSpec& spec, std::span<const NodeId> nodes,
                   const LabelSplit* visibility = nullptr);

// Gradient of full_loglik with respect to w_j.
std::vector<double> full_gradient(const AttributedGraph& g, const WeightMatrix& w,
                                  const FeatureSpec& spec,
                                  std::span<const NodeId> nodes, int j,
                                  const LabelSplit* visibility = nullptr);

// Cached-feature variants (hot path for the optimizer and estimators).
double full_loglik_cached(const FeatureMatrix& phi, const std::vector<int>& y,
                          std::span<const NodeId> nodes, const WeightMatrix& w);
std::vector<double> full_gradient_cached(const FeatureMatrix& phi,
                                         const std::vector<int>& y,
                                         std::span<const NodeId> nodes,
                                         const WeightMatrix& w, int j);

struct FitConfig {
  std::size_t max_iters = 20000;
  double tol = 1e-6;  // infinity-norm of the (prox-)gradient residual
  std::optional<WeightMatrix> init;
};

struct FitResult {
  WeightMatrix weights;
  bool converged = false;
  double grad_norm = 0.0;  // residual at the last iterate
  std::size_t iters = 0;
  double objective = 0.0;  // penalized negative log-likelihood
};

// Deterministic full-batch fit of the penalized objective on node_set.
FitResult fit_global(const AttributedGraph& g, const FeatureSpec& spec,
                     std::span<const NodeId> node_set, Regularizer reg,
                     double lambda, const FitConfig& cfg = {},
                     const LabelSplit* visibility = nullptr);

FitResult fit_global_cached(const FeatureMatrix& phi, const std::vector<int>& y,
                            std::span<const NodeId> node_set,
                            std::size_t num_classes, Regularizer reg,
                            double lambda, const FitConfig& cfg = {});

// Soft-threshold prox operator: shrinks |x| by min(|x|, t) toward zero.
inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Penalty value N*lambda*Omega(w) and its gradient contribution; intercept
// column (index 0 when the spec has one) is exempt.
double penalty_value(const WeightMatrix& w, Regularizer reg, double scale,
                     bool skip_first_column);

}  // namespace crawlrlr
