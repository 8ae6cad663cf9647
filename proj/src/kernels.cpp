#include "gcsc/kernels.hpp"

#include <cmath>

namespace gcsc::kernels {

namespace {

inline double sq_dist_row(const Matrix& X, const Vector& norms, Eigen::Index i,
                          Eigen::Index j) {
    double d2 = norms[i] + norms[j] - 2.0 * X.row(i).dot(X.row(j));
    return d2 < 0.0 ? 0.0 : d2;
}

inline int mirror(int idx, int n) {
    while (idx < 0 || idx >= n) {
        if (idx < 0) idx = -idx - 1;
        if (idx >= n) idx = 2 * n - idx - 1;
    }
    return idx;
}

void patch_row(const HsiCube& cube, int r, int c, int window, double* out) {
    int h = window / 2;
    int k = 0;
    for (int dr = -h; dr <= h; ++dr) {
        int rr = mirror(r + dr, cube.rows);
        for (int dc = -h; dc <= h; ++dc) {
            int cc = mirror(c + dc, cube.cols);
            for (int b = 0; b < cube.bands; ++b) out[k++] = cube.at(rr, cc, b);
        }
    }
}

}  // namespace

Matrix pairwise_sq_dists_serial(const Matrix& X) {
    const Eigen::Index n = X.rows();
    Vector norms = X.rowwise().squaredNorm();
    Matrix D2(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        D2(i, i) = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) D2(i, j) = sq_dist_row(X, norms, i, j);
    }
    return D2;
}

Matrix pairwise_sq_dists(const Matrix& X) {
    const Eigen::Index n = X.rows();
    Vector norms = X.rowwise().squaredNorm();
    Matrix D2(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        D2(i, i) = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) D2(i, j) = sq_dist_row(X, norms, i, j);
    }
    return D2;
}

Matrix gaussian_from_sq_dists_serial(const Matrix& D2, double gamma) {
    Matrix K(D2.rows(), D2.cols());
    for (Eigen::Index i = 0; i < D2.rows(); ++i)
        for (Eigen::Index j = 0; j < D2.cols(); ++j)
            K(i, j) = std::exp(-gamma * D2(i, j));
    return K;
}

Matrix gaussian_from_sq_dists(const Matrix& D2, double gamma) {
    Matrix K(D2.rows(), D2.cols());
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < D2.rows(); ++i)
        for (Eigen::Index j = 0; j < D2.cols(); ++j)
            K(i, j) = std::exp(-gamma * D2(i, j));
    return K;
}

Matrix patch_features_serial(const HsiCube& cube,
                             const std::vector<std::pair<int, int>>& coords,
                             int window) {
    const Eigen::Index n = static_cast<Eigen::Index>(coords.size());
    const Eigen::Index m =
        static_cast<Eigen::Index>(window) * window * cube.bands;
    Matrix F(n, m);
    std::vector<double> buf(m);
    for (Eigen::Index i = 0; i < n; ++i) {
        patch_row(cube, coords[i].first, coords[i].second, window, buf.data());
        for (Eigen::Index k = 0; k < m; ++k) F(i, k) = buf[k];
    }
    return F;
}

Matrix patch_features(const HsiCube& cube,
                      const std::vector<std::pair<int, int>>& coords,
                      int window) {
    const Eigen::Index n = static_cast<Eigen::Index>(coords.size());
    const Eigen::Index m =
        static_cast<Eigen::Index>(window) * window * cube.bands;
    Matrix F(n, m);
#pragma omp parallel
    {
        std::vector<double> buf(m);
#pragma omp for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) {
            patch_row(cube, coords[i].first, coords[i].second, window,
                      buf.data());
            for (Eigen::Index k = 0; k < m; ++k) F(i, k) = buf[k];
        }
    }
    return F;
}

}  // namespace gcsc::kernels
