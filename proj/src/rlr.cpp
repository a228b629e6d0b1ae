#include "crawlrlr/rlr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crawlrlr/error.hpp"

namespace crawlrlr {

std::string regularizer_name(Regularizer r) {
  switch (r) {
    case Regularizer::None: return "none";
    case Regularizer::L1: return "l1";
    case Regularizer::L2: return "l2";
  }
  return "?";
}

Regularizer regularizer_from_name(const std::string& name) {
  if (name == "none") return Regularizer::None;
  if (name == "l1") return Regularizer::L1;
  if (name == "l2") return Regularizer::L2;
  throw ArgumentError("unknown regularizer: " + name);
}

WeightMatrix WeightMatrix::zeros(std::size_t num_classes, std::size_t dim,
                                 Regularizer reg, double lambda) {
  WeightMatrix w;
  w.num_classes = num_classes;
  w.dim = dim;
  w.values.assign(num_classes * dim, 0.0);
  w.reg = reg;
  w.lambda = lambda;
  return w;
}

namespace {

void check_inputs(const WeightMatrix& w, std::span<const double> phi) {
  if (w.dim != phi.size()) {
    throw ArgumentError("predict: weight/feature dimension mismatch");
  }
  if (w.num_classes < 2) {
    throw ArgumentError("predict: need at least two classes");
  }
  for (double x : w.values) {
    if (!std::isfinite(x)) throw ArgumentError("predict: non-finite weight");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double softmax_into(const WeightMatrix& w, std::span<const double> phi,
                    std::vector<double>& probs) {
  const std::size_t H = w.num_classes;
  probs.resize(H);
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < H; ++h) {
    probs[h] = dot(w.row(h), phi);
    max_score = std::max(max_score, probs[h]);
  }
  double z = 0.0;
  for (std::size_t h = 0; h < H; ++h) z += std::exp(probs[h] - max_score);
  const double logsumexp = max_score + std::log(z);
  for (std::size_t h = 0; h < H; ++h) probs[h] = std::exp(probs[h] - logsumexp);
  return logsumexp;
}

std::vector<double> predict(const WeightMatrix& w, std::span<const double> phi) {
  check_inputs(w, phi);
  std::vector<double> probs;
  softmax_into(w, phi, probs);
  return probs;
}

double node_loglik(const WeightMatrix& w, std::span<const double> phi, int y) {
  check_inputs(w, phi);
  if (y < 0 || static_cast<std::size_t>(y) >= w.num_classes) {
    throw ArgumentError("node_loglik: class index out of range");
  }
  std::vector<double> probs;
  const double logsumexp = softmax_into(w, phi, probs);
  return dot(w.row(static_cast<std::size_t>(y)), phi) - logsumexp;
}

std::vector<double> node_loglik_grad(const WeightMatrix& w,
                                     std::span<const double> phi, int y, int j) {
  check_inputs(w, phi);
  if (y < 0 || static_cast<std::size_t>(y) >= w.num_classes ||
      j < 0 || static_cast<std::size_t>(j) >= w.num_classes) {
    throw ArgumentError("node_loglik_grad: class index out of range");
  }
  std::vector<double> probs;
  softmax_into(w, phi, probs);
  const double coef = (y == j ? 1.0 : 0.0) - probs[static_cast<std::size_t>(j)];
  std::vector<double> grad(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) grad[i] = coef * phi[i];
  return grad;
}

double full_loglik_cached(const FeatureMatrix& phi, const std::vector<int>& y,
                          std::span<const NodeId> nodes, const WeightMatrix& w) {
  std::vector<double> probs;
  double total = 0.0;
  for (NodeId v : nodes) {
    if (y[v] < 0) throw ArgumentError("full_loglik: unlabeled node in node set");
    const auto row = phi.row(v);
    const double logsumexp = softmax_into(w, row, probs);
    total += dot(w.row(static_cast<std::size_t>(y[v])), row) - logsumexp;
  }
  return total;
}

std::vector<double> full_gradient_cached(const FeatureMatrix& phi,
                                         const std::vector<int>& y,
                                         std::span<const NodeId> nodes,
                                         const WeightMatrix& w, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= w.num_classes) {
    throw ArgumentError("full_gradient: class index out of range");
  }
  std::vector<double> probs;
  std::vector<double> grad(w.dim, 0.0);
  for (NodeId v : nodes) {
    if (y[v] < 0) throw ArgumentError("full_gradient: unlabeled node in node set");
    const auto row = phi.row(v);
    softmax_into(w, row, probs);
    const double coef = (y[v] == j ? 1.0 : 0.0) - probs[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < w.dim; ++i) grad[i] += coef * row[i];
  }
  return grad;
}

double full_loglik(const AttributedGraph& g, const WeightMatrix& w,
                   const FeatureSpec& spec, std::span<const NodeId> nodes,
                   const LabelSplit* visibility) {
  const LabelSplit all = LabelSplit::all_observed(g.node_count());
  const LabelSplit& vis = visibility ? *visibility : all;
  double total = 0.0;
  for (NodeId v : nodes) {
    if (!g.is_labeled(v)) {
      throw ArgumentError("full_loglik: unlabeled node in node set");
    }
    total += node_loglik(w, build_features(g, spec, v, vis), g.label(v));
  }
  return total;
}

std::vector<double> full_gradient(const AttributedGraph& g, const WeightMatrix& w,
                                  const FeatureSpec& spec,
                                  std::span<const NodeId> nodes, int j,
                                  const LabelSplit* visibility) {
  const LabelSplit all = LabelSplit::all_observed(g.node_count());
  const LabelSplit& vis = visibility ? *visibility : all;
  std::vector<double> grad(w.dim, 0.0);
  for (NodeId v : nodes) {
    if (!g.is_labeled(v)) {
      throw ArgumentError("full_gradient: unlabeled node in node set");
    }
    const std::vector<double> gv =
        node_loglik_grad(w, build_features(g, spec, v, vis), g.label(v), j);
    for (std::size_t i = 0; i < w.dim; ++i) grad[i] += gv[i];
  }
  return grad;
}

double penalty_value(const WeightMatrix& w, Regularizer reg, double scale,
                     bool skip_first_column) {
  if (reg == Regularizer::None || scale == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t h = 0; h < w.num_classes; ++h) {
    const auto row = w.row(h);
    for (std::size_t i = skip_first_column ? 1 : 0; i < row.size(); ++i) {
      acc += reg == Regularizer::L2 ? 0.5 * row[i] * row[i] : std::abs(row[i]);
    }
  }
  return scale * acc;
}

namespace {

// Smooth part of the objective: negative log-likelihood plus (for L2) the
// ridge term. Gradient is written into grad (H x d, row-major).
struct SmoothObjective {
  const FeatureMatrix& phi;
  const std::vector<int>& y;
  std::span<const NodeId> nodes;
  Regularizer reg;
  double penalty_scale;  // N * lambda
  bool skip_first;

  double value(const WeightMatrix& w) const {
    double v = -full_loglik_cached(phi, y, nodes, w);
    if (reg == Regularizer::L2) {
      v += penalty_value(w, Regularizer::L2, penalty_scale, skip_first);
    }
    return v;
  }

  void gradient(const WeightMatrix& w, std::vector<double>& grad) const {
    const std::size_t H = w.num_classes;
    const std::size_t d = w.dim;
    grad.assign(H * d, 0.0);
    std::vector<double> probs;
    for (NodeId v : nodes) {
      if (y[v] < 0) throw ArgumentError("fit: unlabeled node in node set");
      const auto row = phi.row(v);
      softmax_into(w, row, probs);
      for (std::size_t h = 0; h < H; ++h) {
        const double coef = probs[h] - (y[v] == static_cast<int>(h) ? 1.0 : 0.0);
        double* out = grad.data() + h * d;
        for (std::size_t i = 0; i < d; ++i) out[i] += coef * row[i];
      }
    }
    if (reg == Regularizer::L2 && penalty_scale > 0.0) {
      for (std::size_t h = 0; h < H; ++h) {
        double* out = grad.data() + h * d;
        const auto wr = w.row(h);
        for (std::size_t i = skip_first ? 1 : 0; i < d; ++i) {
          out[i] += penalty_scale * wr[i];
        }
      }
    }
  }
};

}  // namespace

FitResult fit_global_cached(const FeatureMatrix& phi, const std::vector<int>& y,
                            std::span<const NodeId> node_set, Regularizer reg,
                            double lambda, const FitConfig& cfg) {
  if (node_set.empty()) throw ArgumentError("fit_global: empty node set");
  if (lambda < 0.0) throw ArgumentError("fit_global: lambda must be >= 0");
  int num_classes = 0;
  for (NodeId v : node_set) num_classes = std::max(num_classes, y[v] + 1);
  num_classes = std::max(num_classes, 2);

  const double penalty_scale = static_cast<double>(node_set.size()) * lambda;
  const bool skip_first = phi.intercept_column;
  SmoothObjective f{phi, y, node_set, reg, penalty_scale, skip_first};
  const double l1_scale = reg == Regularizer::L1 ? penalty_scale : 0.0;

  WeightMatrix w = cfg.init ? *cfg.init
                            : WeightMatrix::zeros(static_cast<std::size_t>(num_classes),
                                                  phi.dim, reg, lambda);
  if (cfg.init && (w.num_classes < static_cast<std::size_t>(num_classes) ||
                   w.dim != phi.dim)) {
    throw ArgumentError("fit_global: init weights have wrong shape");
  }
  w.reg = reg;
  w.lambda = lambda;

  const std::size_t total = w.values.size();
  std::vector<double> grad(total), trial(total);
  double fw = f.value(w);
  double eta = 1.0 / std::max<double>(1.0, static_cast<double>(node_set.size()));
  double residual = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;

  for (; iter < cfg.max_iters; ++iter) {
    f.gradient(w, grad);

    // Backtracking proximal-gradient step on the majorization
    //   f(w+) <= f(w) + <grad, w+ - w> + ||w+ - w||^2 / (2 eta).
    eta *= 2.0;  // allow the step to grow back between iterations
    WeightMatrix next = w;
    double f_next = 0.0;
    for (;;) {
      for (std::size_t i = 0; i < total; ++i) trial[i] = w.values[i] - eta * grad[i];
      if (l1_scale > 0.0) {
        const double t = eta * l1_scale;
        for (std::size_t h = 0; h < w.num_classes; ++h) {
          double* row = trial.data() + h * w.dim;
          for (std::size_t i = skip_first ? 1 : 0; i < w.dim; ++i) {
            row[i] = soft_threshold(row[i], t);
          }
        }
      }
      next.values = trial;
      f_next = f.value(next);
      double lin = 0.0, quad = 0.0;
      for (std::size_t i = 0; i < total; ++i) {
        const double diff = trial[i] - w.values[i];
        lin += grad[i] * diff;
        quad += diff * diff;
      }
      if (f_next <= fw + lin + quad / (2.0 * eta) + 1e-12 * std::abs(fw)) break;
      eta *= 0.5;
      if (eta < 1e-18) break;
    }

    residual = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      residual = std::max(residual, std::abs(next.values[i] - w.values[i]) / eta);
    }
    w.values.swap(next.values);
    fw = f_next;
    if (residual < cfg.tol) {
      ++iter;
      break;
    }
  }

  FitResult result;
  result.weights = std::move(w);
  result.converged = residual < cfg.tol;
  result.grad_norm = residual;
  result.iters = iter;
  result.objective = fw + (reg == Regularizer::L1
                               ? penalty_value(result.weights, Regularizer::L1,
                                               penalty_scale, skip_first)
                               : 0.0);
  return result;
}

FitResult fit_global(const AttributedGraph& g, const FeatureSpec& spec,
                     std::span<const NodeId> node_set, Regularizer reg,
                     double lambda, const FitConfig& cfg,
                     const LabelSplit* visibility) {
  const LabelSplit all = LabelSplit::all_observed(g.node_count());
  const LabelSplit& vis = visibility ? *visibility : all;
  const FeatureMatrix phi = build_feature_matrix(g, spec, vis);
  std::vector<int> y(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) y[v] = g.label(v);
  FitResult result = fit_global_cached(phi, y, node_set, reg, lambda, cfg);
  // H comes from the graph dictionary, not just the classes present.
  if (result.weights.num_classes < static_cast<std::size_t>(g.num_classes())) {
    throw DataError("fit_global: node set lacks examples of some classes");
  }
  return result;
}

}  // namespace crawlrlr
