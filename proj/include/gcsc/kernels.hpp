#pragma once

#include <utility>
#include <vector>

#include "gcsc/types.hpp"

// Data-parallel inner kernels. Each has a serial reference implementation
// and an OpenMP version; both compute every output element with identical
// arithmetic, so results are bitwise equal for any thread count.
namespace gcsc::kernels {

/// Squared Euclidean distances between all row pairs of X (N x m),
/// via the expanded form with clamping at zero.
Matrix pairwise_sq_dists_serial(const Matrix& X);
Matrix pairwise_sq_dists(const Matrix& X);

Matrix gaussian_from_sq_dists_serial(const Matrix& D2, double gamma);
Matrix gaussian_from_sq_dists(const Matrix& D2, double gamma);

/// Flattened window x window x bands patch per coordinate, mirror padding
/// at the borders, feature order (row offset, col offset, band).
Matrix patch_features_serial(const HsiCube& cube,
                             const std::vector<std::pair<int, int>>& coords,
                             int window);
Matrix patch_features(const HsiCube& cube,
                      const std::vector<std::pair<int, int>>& coords,
                      int window);

}  // namespace gcsc::kernels
