#include "compsim/model_selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "compsim/rng.hpp"

namespace compsim {

namespace {

int kind_rank(KernelSpec::Kind k) {
  switch (k) {
    case KernelSpec::Kind::Linear:
      return 0;
    case KernelSpec::Kind::Gaussian:
      return 1;
    case KernelSpec::Kind::Polynomial:
      return 2;
  }
  return 3;
}

Dataset subset(const Dataset& data, const std::vector<Eigen::Index>& rows) {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(rows[i]);
    out.y(static_cast<Eigen::Index>(i)) = data.y(rows[i]);
  }
  return out;
}

std::array<std::vector<Eigen::Index>, 2> indices_by_class(const Dataset& data) {
  std::array<std::vector<Eigen::Index>, 2> by_class;
  for (Eigen::Index i = 0; i < data.y.size(); ++i) {
    by_class[data.y(i) == 1 ? 1 : 0].push_back(i);
  }
  return by_class;
}

}  // namespace

bool grid_point_less(const GridPoint& a, const GridPoint& b) {
  const int ra = kind_rank(a.kernel.kind), rb = kind_rank(b.kernel.kind);
  if (ra != rb) return ra < rb;
  if (a.c != b.c) return a.c < b.c;
  if (a.kernel.scale != b.kernel.scale) return a.kernel.scale < b.kernel.scale;
  if (a.kernel.degree != b.kernel.degree) return a.kernel.degree < b.kernel.degree;
  return !a.normalize && b.normalize;
}

std::vector<GridPoint> default_grid() {
  const std::vector<KernelSpec> kernels = {
      {KernelSpec::Kind::Linear, 1.0, 2},
      {KernelSpec::Kind::Gaussian, 1.0, 2},
      {KernelSpec::Kind::Polynomial, 1.0, 2},
      {KernelSpec::Kind::Polynomial, 1.0, 3},
      {KernelSpec::Kind::Polynomial, 1.0, 4},
  };
  const std::vector<double> scales = {0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> cs = {0.1, 1.0, 10.0, 100.0};

  std::vector<GridPoint> grid;
  grid.reserve(kernels.size() * scales.size() * cs.size() * 2);
  for (const auto& kernel : kernels) {
    for (const double scale : scales) {
      for (const double c : cs) {
        for (const bool normalize : {false, true}) {
          GridPoint p;
          p.kernel = kernel;
          p.kernel.scale = scale;
          p.c = c;
          p.normalize = normalize;
          grid.push_back(p);
        }
      }
    }
  }
  return grid;
}

SplitResult split_train_test(const Dataset& data, double r_train,
                             std::uint64_t seed) {
  const Eigen::Index n = data.x.rows();
  if (n < 3) throw DegenerateWindowError("degenerate window: fewer than 3 rows");
  if (r_train <= 0.0 || r_train >= 1.0) {
    throw std::invalid_argument("r_train must lie in (0, 1)");
  }

  Eigen::Index n_train = static_cast<Eigen::Index>(
      std::ceil(r_train * static_cast<double>(n)));
  // keep both sides nonempty even for extreme ratios
  n_train = std::clamp<Eigen::Index>(n_train, 1, n - 1);

  auto by_class = indices_by_class(data);
  Rng rng(seed);
  for (auto& rows : by_class) rng.shuffle(rows);

  // largest-remainder seat allocation of train slots across the classes
  std::array<Eigen::Index, 2> take{0, 0};
  std::array<double, 2> remainder{0.0, 0.0};
  Eigen::Index assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double quota = static_cast<double>(n_train) *
                         static_cast<double>(by_class[c].size()) /
                         static_cast<double>(n);
    take[c] = static_cast<Eigen::Index>(std::floor(quota));
    remainder[c] = quota - static_cast<double>(take[c]);
    assigned += take[c];
  }
  for (Eigen::Index s = assigned; s < n_train; ++s) {
    const int c = remainder[0] >= remainder[1] ? 0 : 1;
    ++take[c];
    remainder[c] = -1.0;
  }

  std::vector<Eigen::Index> train_rows, test_rows;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < by_class[c].size(); ++i) {
      (static_cast<Eigen::Index>(i) < take[c] ? train_rows : test_rows)
          .push_back(by_class[c][i]);
    }
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {subset(data, train_rows), subset(data, test_rows)};
}

GridSearchResult grid_search_cv(const Dataset& data,
                                const std::vector<GridPoint>& grid, int k,
                                std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("empty hyperparameter grid");
  auto by_class = indices_by_class(data);
  const auto minority =
      std::min(by_class[0].size(), by_class[1].size());
  const int k_used = std::min<int>(k, static_cast<int>(minority));
  if (k_used < 2) {
    throw DegenerateWindowError(
        "degenerate window: minority class below 2 samples");
  }

  // stratified folds: shuffle within each class, deal round-robin
  Rng rng(seed);
  std::vector<int> fold_of(static_cast<std::size_t>(data.y.size()));
  for (auto& rows : by_class) {
    rng.shuffle(rows);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      fold_of[static_cast<std::size_t>(rows[p])] =
          static_cast<int>(p % static_cast<std::size_t>(k_used));
    }
  }

  std::vector<std::vector<Eigen::Index>> train_rows(
      static_cast<std::size_t>(k_used)),
      validate_rows(static_cast<std::size_t>(k_used));
  for (Eigen::Index i = 0; i < data.y.size(); ++i) {
    for (int f = 0; f < k_used; ++f) {
      (fold_of[static_cast<std::size_t>(i)] == f ? validate_rows : train_rows)
          [static_cast<std::size_t>(f)].push_back(i);
    }
  }

  std::vector<Dataset> fold_train, fold_validate;
  for (int f = 0; f < k_used; ++f) {
    fold_train.push_back(subset(data, train_rows[static_cast<std::size_t>(f)]));
    fold_validate.push_back(
        subset(data, validate_rows[static_cast<std::size_t>(f)]));
  }

  bool have_best = false;
  GridPoint best;
  double best_loss = std::numeric_limits<double>::infinity();
  for (const auto& point : grid) {
    double total = 0.0;
    bool failed = false;
    for (int f = 0; f < k_used && !failed; ++f) {
      TrainOptions options;
      options.c = point.c;
      options.normalize = point.normalize;
      try {
        const SvmModel model = SvmModel::train(
            fold_train[static_cast<std::size_t>(f)], point.kernel, options);
        total += model.hinge_loss(fold_validate[static_cast<std::size_t>(f)]);
      } catch (const SolverError&) {
        failed = true;  // a non-converging configuration loses the search
      }
    }
    const double loss =
        failed ? std::numeric_limits<double>::infinity() : total / k_used;
    if (!have_best || loss < best_loss ||
        (loss == best_loss && grid_point_less(point, best))) {
      have_best = true;
      best = point;
      best_loss = loss;
    }
  }
  if (!std::isfinite(best_loss)) {
    throw SolverError("no grid point produced a converged model");
  }
  return {best, best_loss, k_used};
}

}  // namespace compsim
