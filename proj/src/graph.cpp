#include "gcsc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gcsc/kernels.hpp"

namespace gcsc {

KnnSymmetrize parse_knn_symmetrize(const std::string& s) {
    if (s == "or") return KnnSymmetrize::Or;
    if (s == "and") return KnnSymmetrize::And;
    if (s == "none") return KnnSymmetrize::None;
    throw ArgumentError("unknown symmetrization mode: " + s);
}

KnnGraph build_knn(const Matrix& samples, int k, KnnSymmetrize symmetrize) {
    const Eigen::Index n = samples.rows();
    if (n < 2) throw ArgumentError("build_knn needs at least 2 samples");
    if (k < 1 || k >= n)
        throw ArgumentError("k must satisfy 1 <= k <= N-1");

    Matrix d2 = kernels::pairwise_sq_dists(samples);

    KnnGraph g;
    g.k = k;
    g.symmetrize = symmetrize;
    g.adjacency = Matrix::Zero(n, n);
#pragma omp parallel
    {
        std::vector<Eigen::Index> order(n);
#pragma omp for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) {
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            // ties broken by lower index; self pushed last
            std::partial_sort(
                order.begin(), order.begin() + k + 1, order.end(),
                [&](Eigen::Index a, Eigen::Index b) {
                    if (a == i) return false;
                    if (b == i) return true;
                    if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
                    return a < b;
                });
            for (int j = 0; j < k; ++j) g.adjacency(i, order[j]) = 1.0;
        }
    }

    Matrix a_eff = g.adjacency;
    switch (symmetrize) {
        case KnnSymmetrize::Or:
            a_eff = g.adjacency.cwiseMax(g.adjacency.transpose());
            break;
        case KnnSymmetrize::And:
            a_eff = g.adjacency.cwiseMin(g.adjacency.transpose());
            break;
        case KnnSymmetrize::None:
            break;
    }
    g.normalized = normalize_adjacency(a_eff);
    return g;
}

Matrix normalize_adjacency(const Matrix& A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw ArgumentError("adjacency must be square");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (A(i, i) != 0.0)
            throw ArgumentError("adjacency diagonal must be zero");
        for (Eigen::Index j = 0; j < n; ++j)
            if (A(i, j) != 0.0 && A(i, j) != 1.0)
                throw ArgumentError("adjacency entries must be 0 or 1");
    }
    Matrix tilde = A + Matrix::Identity(n, n);
    Vector deg = tilde.rowwise().sum();
    Vector dinv_sqrt = deg.array().rsqrt();
    return dinv_sqrt.asDiagonal() * tilde * dinv_sqrt.asDiagonal();
}

Matrix graph_embed(const Matrix& samples, const Matrix& normalized) {
    if (normalized.rows() != samples.rows() ||
        normalized.cols() != samples.rows())
        throw ArgumentError("graph_embed: dimension mismatch");
    return normalized * samples;
}

}  // namespace gcsc
