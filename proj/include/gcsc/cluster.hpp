#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gcsc/types.hpp"

namespace gcsc {

enum class AffinityMode { Symmetrize, EdscEnhanced };

AffinityMode parse_affinity_mode(const std::string& s);

struct AffinityOptions {
    int d_per_cluster = 10;
    double power = 8.0;
};

/// Symmetrize: (|Z| + |Z|')/2. EdscEnhanced: rank-(d*K+1) SVD of Z,
/// row-normalized sqrt-scaled left factor, powered absolute inner
/// products, symmetrized and scaled to unit maximum.
Matrix build_affinity(const Matrix& Z, int n_clusters, AffinityMode mode,
                      const AffinityOptions& opts = {},
                      std::vector<std::string>* warnings = nullptr);

struct ClusterAssignment {
    std::vector<int> labels;  // values in [0, n_clusters)
    int n_clusters = 0;
    uint64_t seed = 0;
};

/// Normalized-cut spectral clustering: symmetric normalized Laplacian,
/// K smallest eigenvectors, row normalization, seeded k-means++ restarts.
ClusterAssignment spectral_cluster(const Matrix& affinity, int n_clusters,
                                   uint64_t seed, int restarts = 50);

/// Seeded k-means++ with restarts on row vectors; returns labels of the
/// lowest-inertia run. Deterministic for a fixed seed.
std::vector<int> kmeans(const Matrix& points, int n_clusters, uint64_t seed,
                        int restarts, int max_iters = 300, double tol = 1e-6);

/// Renders per-sample labels back onto the (rows x cols) pixel grid;
/// pixels without a sample are black. Colors come from a fixed palette
/// indexed by label value, so pre-matched labels render comparably with
/// ground truth.
void render_cluster_map(const std::vector<int>& labels,
                        const std::vector<std::pair<int, int>>& coords,
                        int rows, int cols,
                        const std::filesystem::path& path);

}  // namespace gcsc
