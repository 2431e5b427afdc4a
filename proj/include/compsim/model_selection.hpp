#pragma once

#include <cstdint>
#include <vector>

#include "compsim/svm.hpp"

namespace compsim {

struct GridPoint {
  KernelSpec kernel;
  double c = 1.0;
  bool normalize = false;
};

// Canonical ordering for deterministic tie-breaks: kernel kind
// (linear < gaussian < polynomial), then smaller C, then smaller scale,
// then smaller degree, then normalize false before true.
bool grid_point_less(const GridPoint& a, const GridPoint& b);

// Full search space: kernels {linear, gaussian, polynomial d in 2..4} x
// scale {0.25, 0.5, 1, 2, 4} x C {0.1, 1, 10, 100} x normalize {off, on};
// 200 points.
std::vector<GridPoint> default_grid();

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Stratified split with |train| = ceil(r_train * N); per-class train counts
// by largest remainder. Throws DegenerateWindowError when N < 3.
SplitResult split_train_test(const Dataset& data, double r_train,
                             std::uint64_t seed);

struct GridSearchResult {
  GridPoint best;
  double best_cv_loss = 0.0;
  int k_used = 0;
};

// Exhaustive grid search minimizing mean held-out hinge loss over stratified
// K folds. K shrinks to the minority class count when that is below K;
// a minority count below 2 throws DegenerateWindowError. Fold membership
// depends only on (data order, k_used, seed).
GridSearchResult grid_search_cv(const Dataset& data,
                                const std::vector<GridPoint>& grid, int k,
                                std::uint64_t seed);

}  // namespace compsim
