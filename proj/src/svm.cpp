#include "compsim/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace compsim {

namespace {

constexpr double kLambdaEps = 1e-12;  // below this a multiplier counts as 0

void check_kernel(const KernelSpec& spec) {
  if (spec.scale <= 0.0) {
    throw std::invalid_argument("kernel scale must be positive");
  }
  if (spec.kind == KernelSpec::Kind::Polynomial && spec.degree < 1) {
    throw std::invalid_argument("polynomial degree must be >= 1");
  }
}

bool is_free(double lambda, double c) {
  return lambda > 1e-8 * c && lambda < (1.0 - 1e-8) * c;
}

// Full kernel matrix via matrix products; grid search trains hundreds of
// models per window, so the O(n^2) pairwise loop is too slow here.
Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& x) {
  const double s2 = spec.scale * spec.scale;
  switch (spec.kind) {
    case KernelSpec::Kind::Linear:
      return (x * x.transpose()) / s2;
    case KernelSpec::Kind::Polynomial: {
      Eigen::MatrixXd g = (x * x.transpose()) / s2;
      return (g.array() + 1.0).pow(spec.degree).matrix();
    }
    case KernelSpec::Kind::Gaussian: {
      const Eigen::VectorXd sq = x.rowwise().squaredNorm();
      Eigen::MatrixXd d2 = -2.0 * (x * x.transpose());
      d2.colwise() += sq;
      d2.rowwise() += sq.transpose();
      return (-d2.cwiseMax(0.0) / (2.0 * s2)).array().exp().matrix();
    }
  }
  return Eigen::MatrixXd::Zero(x.rows(), x.rows());
}

}  // namespace

std::string KernelSpec::name() const {
  switch (kind) {
    case Kind::Linear:
      return "linear";
    case Kind::Gaussian:
      return "gaussian";
    case Kind::Polynomial:
      return "poly" + std::to_string(degree);
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& a,
                   const Eigen::VectorXd& b) {
  check_kernel(spec);
  const double s2 = spec.scale * spec.scale;
  switch (spec.kind) {
    case KernelSpec::Kind::Linear:
      return a.dot(b) / s2;
    case KernelSpec::Kind::Gaussian:
      return std::exp(-(a - b).squaredNorm() / (2.0 * s2));
    case KernelSpec::Kind::Polynomial:
      return std::pow(1.0 + a.dot(b) / s2, spec.degree);
  }
  return 0.0;
}

double hinge_loss(const Eigen::VectorXd& decisions, const Eigen::VectorXi& y) {
  if (decisions.size() != y.size()) {
    throw std::invalid_argument("hinge_loss: length mismatch");
  }
  if (decisions.size() == 0) {
    throw std::invalid_argument("hinge_loss: empty input");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double yt = y(i) == 1 ? 1.0 : -1.0;
    total += std::max(0.0, 1.0 - yt * decisions(i));
  }
  return total / static_cast<double>(y.size());
}

double misclassification_error(const Eigen::VectorXi& y_pred,
                               const Eigen::VectorXi& y_true) {
  if (y_pred.size() != y_true.size()) {
    throw std::invalid_argument("misclassification_error: length mismatch");
  }
  if (y_pred.size() == 0) {
    throw std::invalid_argument("misclassification_error: empty labels");
  }
  int wrong = 0;
  for (Eigen::Index i = 0; i < y_pred.size(); ++i) {
    wrong += y_pred(i) != y_true(i) ? 1 : 0;
  }
  return static_cast<double>(wrong) / static_cast<double>(y_pred.size());
}

Eigen::VectorXd SvmModel::apply_normalization(const Eigen::VectorXd& x) const {
  if (!normalize_) return x;
  return (x - feature_mean_).cwiseQuotient(feature_scale_);
}

SvmModel SvmModel::train(const Dataset& data, const KernelSpec& kernel,
                         const TrainOptions& options, TrainReport* report) {
  check_kernel(kernel);
  if (options.c <= 0.0) throw std::invalid_argument("box constraint C <= 0");
  const Eigen::Index n = data.x.rows();
  if (n < 2) throw DegenerateWindowError("fewer than two training samples");
  if (data.y.size() != n) {
    throw std::invalid_argument("label count does not match sample count");
  }
  if (!data.x.allFinite()) {
    throw std::invalid_argument("non-finite feature values");
  }

  int n_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (data.y(i) != 0 && data.y(i) != 1) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
    n_pos += data.y(i);
  }
  if (n_pos == 0 || n_pos == n) {
    throw DegenerateWindowError("degenerate window: single-class data");
  }

  SvmModel model;
  model.kernel_ = kernel;
  model.normalize_ = options.normalize;

  Eigen::MatrixXd x = data.x;
  if (options.normalize) {
    model.feature_mean_ = x.colwise().mean();
    Eigen::VectorXd scale(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double var =
          (x.col(j).array() - model.feature_mean_(j)).square().mean();
      const double sd = std::sqrt(var);
      scale(j) = sd > 1e-12 ? sd : 1.0;  // constant feature stays as-is
    }
    model.feature_scale_ = scale;
    x = (x.rowwise() - model.feature_mean_.transpose()).array().rowwise() /
        scale.transpose().array();
  }

  Eigen::VectorXd y(n);  // +-1 labels
  for (Eigen::Index i = 0; i < n; ++i) y(i) = data.y(i) == 1 ? 1.0 : -1.0;

  // Q_ij = y_i y_j K(x_i, x_j); minimize 1/2 l'Ql - 1'l over the box.
  const Eigen::MatrixXd q =
      kernel_gram(kernel, x).cwiseProduct(y * y.transpose());

  const double c = options.c;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);

  // maximal-violating-pair selection; stop below half the KKT tolerance so
  // the per-point check after bias recovery has headroom
  const double stop_tol = options.kkt_tol * 0.5;
  int iterations = 0;
  while (true) {
    Eigen::Index i_up = -1, j_low = -1;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y(t) * grad(t);
      const bool in_up = (y(t) > 0.0 && lambda(t) < c - kLambdaEps) ||
                         (y(t) < 0.0 && lambda(t) > kLambdaEps);
      const bool in_low = (y(t) > 0.0 && lambda(t) > kLambdaEps) ||
                          (y(t) < 0.0 && lambda(t) < c - kLambdaEps);
      if (in_up && v > m_up) {
        m_up = v;
        i_up = t;
      }
      if (in_low && v < m_low) {
        m_low = v;
        j_low = t;
      }
    }
    if (i_up < 0 || j_low < 0 || m_up - m_low <= stop_tol) break;
    if (iterations >= options.max_iterations) {
      throw SolverError("SMO did not converge within the iteration cap");
    }
    ++iterations;

    const Eigen::Index i = i_up, j = j_low;
    double quad = q(i, i) + q(j, j) - 2.0 * y(i) * y(j) * q(i, j);
    if (quad <= 0.0) quad = 1e-12;
    // step along d_i = y_i, d_j = -y_j, which preserves y'l
    double step = (m_up - m_low) / quad;
    const double room_i = y(i) > 0.0 ? c - lambda(i) : lambda(i);
    const double room_j = y(j) > 0.0 ? lambda(j) : c - lambda(j);
    step = std::min(step, std::min(room_i, room_j));
    // snap float residue onto the box so bound states stay exact
    const auto snap = [c](double v) {
      if (v < kLambdaEps) return 0.0;
      if (v > c - kLambdaEps) return c;
      return v;
    };
    lambda(i) = snap(lambda(i) + y(i) * step);
    lambda(j) = snap(lambda(j) - y(j) * step);
    grad += step * (y(i) * q.col(i) - y(j) * q.col(j));
  }

  // bias: average over free support vectors, else the KKT interval midpoint
  double bias;
  {
    double free_sum = 0.0;
    int free_count = 0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y(t) * grad(t);
      if (is_free(lambda(t), c)) {
        free_sum += v;
        ++free_count;
      }
      const bool in_up = (y(t) > 0.0 && lambda(t) < c - kLambdaEps) ||
                         (y(t) < 0.0 && lambda(t) > kLambdaEps);
      const bool in_low = (y(t) > 0.0 && lambda(t) > kLambdaEps) ||
                          (y(t) < 0.0 && lambda(t) < c - kLambdaEps);
      if (in_up) lo = std::max(lo, v);
      if (in_low) hi = std::min(hi, v);
    }
    bias = free_count > 0 ? free_sum / free_count : 0.5 * (lo + hi);
  }
  model.bias_ = bias;

  // KKT verification on the trained multipliers (margin = y_i f(x_i))
  double max_violation = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double f = y(t) * (grad(t) + 1.0) + bias;  // (Ql)_t = y_t(sum+..)
    const double margin = y(t) * f;
    double violation = 0.0;
    if (lambda(t) <= kLambdaEps) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (lambda(t) >= c - kLambdaEps) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(margin - 1.0);
    }
    max_violation = std::max(max_violation, violation);
    if (lambda(t) < -1e-9 || lambda(t) > c + 1e-9) {
      throw SolverError("dual variable escaped the box constraint");
    }
  }
  const double sum_ly = lambda.dot(y);
  if (max_violation > options.kkt_tol || std::abs(sum_ly) > 1e-6) {
    throw SolverError("trained model violates the KKT conditions");
  }

  int n_support = 0, n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (lambda(t) > kLambdaEps) ++n_support;
    if (is_free(lambda(t), c)) ++n_free;
  }
  model.support_vectors_.resize(n_support, x.cols());
  model.dual_coeffs_.resize(n_support);
  int row = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (lambda(t) <= kLambdaEps) continue;
    model.support_vectors_.row(row) = x.row(t);
    model.dual_coeffs_(row) = lambda(t) * y(t);
    ++row;
  }

  if (report != nullptr) {
    report->dual_objective =
        lambda.sum() - 0.5 * lambda.dot(q * lambda);
    report->max_kkt_violation = max_violation;
    report->sum_lambda_y = sum_ly;
    report->iterations = iterations;
    report->n_support = n_support;
    report->n_free = n_free;
    report->lambdas = lambda;
  }
  return model;
}

double SvmModel::decision_function(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd z = apply_normalization(x);
  double f = bias_;
  for (Eigen::Index i = 0; i < support_vectors_.rows(); ++i) {
    f += dual_coeffs_(i) * kernel_eval(kernel_, support_vectors_.row(i), z);
  }
  return f;
}

int SvmModel::predict(const Eigen::VectorXd& x) const {
  return decision_function(x) >= 0.0 ? 1 : 0;
}

double SvmModel::misclassification_error(const Dataset& data) const {
  Eigen::VectorXi pred(data.y.size());
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    pred(i) = predict(data.x.row(i));
  }
  return compsim::misclassification_error(pred, data.y);
}

double SvmModel::hinge_loss(const Dataset& data) const {
  Eigen::VectorXd decisions(data.x.rows());
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    decisions(i) = decision_function(data.x.row(i));
  }
  return compsim::hinge_loss(decisions, data.y);
}

}  // namespace compsim
