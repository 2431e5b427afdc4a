#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace compsim {

// Thrown when a training window cannot produce a classifier (single class).
struct DegenerateWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the dual solver fails to converge within its iteration cap.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KernelSpec {
  enum class Kind { Linear, Gaussian, Polynomial };

  Kind kind = Kind::Linear;
  double scale = 1.0;
  int degree = 2;  // polynomial only

  std::string name() const;
};

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& a,
                   const Eigen::VectorXd& b);

// Fraction of positions where the labels disagree. Throws on length
// mismatch or empty input.
double misclassification_error(const Eigen::VectorXi& y_pred,
                               const Eigen::VectorXi& y_true);

// Mean of max(0, 1 - y_tilde * f) for 0/1 labels y and decision values f.
double hinge_loss(const Eigen::VectorXd& decisions, const Eigen::VectorXi& y);

// Rows are samples; labels are 0/1 and mapped to -1/+1 internally.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXi y;

  Eigen::Index size() const { return x.rows(); }
};

struct TrainOptions {
  double c = 1.0;
  bool normalize = false;
  double kkt_tol = 1e-3;
  int max_iterations = 10000;
};

struct TrainReport {
  double dual_objective = 0.0;
  double max_kkt_violation = 0.0;  // over all multipliers, at termination
  double sum_lambda_y = 0.0;       // equality constraint residual
  int iterations = 0;
  int n_support = 0;
  int n_free = 0;  // 0 < lambda < C
  Eigen::VectorXd lambdas;
};

class SvmModel {
 public:
  // Trains a soft-margin SVM by SMO on the dual. Throws
  // DegenerateWindowError if `data` holds a single class and SolverError if
  // the iteration cap is hit before the KKT tolerance is met.
  static SvmModel train(const Dataset& data, const KernelSpec& kernel,
                        const TrainOptions& options,
                        TrainReport* report = nullptr);

  // Signed decision value; sign is the predicted class.
  double decision_function(const Eigen::VectorXd& x) const;

  // Predicted label in {0, 1}. decision >= 0 maps to 1.
  int predict(const Eigen::VectorXd& x) const;

  // Fraction of misclassified samples in [0, 1].
  double misclassification_error(const Dataset& data) const;

  // Mean of max(0, 1 - y_tilde * f(x)) over the dataset.
  double hinge_loss(const Dataset& data) const;

  const KernelSpec& kernel() const { return kernel_; }
  double bias() const { return bias_; }
  const Eigen::MatrixXd& support_vectors() const { return support_vectors_; }
  const Eigen::VectorXd& dual_coefficients() const { return dual_coeffs_; }
  bool normalized() const { return normalize_; }

 private:
  KernelSpec kernel_;
  // Stored in normalized feature space when normalize_ is set.
  Eigen::MatrixXd support_vectors_;
  Eigen::VectorXd dual_coeffs_;  // lambda_i * y_tilde_i
  double bias_ = 0.0;

  bool normalize_ = false;
  Eigen::VectorXd feature_mean_;
  Eigen::VectorXd feature_scale_;  // std, floored at 1e-12

  Eigen::VectorXd apply_normalization(const Eigen::VectorXd& x) const;
};

}  // namespace compsim
