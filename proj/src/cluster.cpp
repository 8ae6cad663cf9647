#include "gcsc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcsc/png.hpp"

namespace gcsc {

AffinityMode parse_affinity_mode(const std::string& s) {
    if (s == "symmetrize" || s == "sym") return AffinityMode::Symmetrize;
    if (s == "edsc" || s == "edsc-enhanced") return AffinityMode::EdscEnhanced;
    throw ArgumentError("unknown affinity mode: " + s);
}

Matrix build_affinity(const Matrix& Z, int n_clusters, AffinityMode mode,
                      const AffinityOptions& opts,
                      std::vector<std::string>* warnings) {
    const Eigen::Index n = Z.rows();
    if (Z.cols() != n) throw ArgumentError("Z must be square");
    if (n_clusters < 2) throw ArgumentError("need at least 2 clusters");
    if (!Z.allFinite()) throw DataError("non-finite entries in Z");

    if (mode == AffinityMode::Symmetrize) {
        Matrix c = 0.5 * (Z.cwiseAbs() + Z.cwiseAbs().transpose());
        return c;
    }

    if (Z.cwiseAbs().maxCoeff() == 0.0)
        throw NumericalError("all-zero coefficient matrix yields a degenerate affinity");

    Eigen::Index r = Eigen::Index(opts.d_per_cluster) * n_clusters + 1;
    if (r > n) {
        if (warnings)
            warnings->push_back("affinity rank " + std::to_string(r) +
                                " clamped to N=" + std::to_string(n));
        r = n;
    }

    Eigen::BDCSVD<Matrix> svd(Z, Eigen::ComputeThinU);
    Matrix l = svd.matrixU().leftCols(r) *
               svd.singularValues().head(r).cwiseSqrt().asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        double norm = l.row(i).norm();
        if (norm > 0.0) l.row(i) /= norm;
    }
    Matrix c = (l * l.transpose()).cwiseAbs();
    c = c.array().pow(opts.power).matrix();
    c = Matrix(0.5 * (c + c.transpose()));  // enforce exact symmetry
    double mx = c.maxCoeff();
    if (mx <= 0.0) throw NumericalError("degenerate affinity matrix");
    return c / mx;
}

namespace {

struct KmeansRun {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_single(const Matrix& x, int k, uint64_t seed, int max_iters,
                        double tol) {
    const Eigen::Index n = x.rows();
    std::mt19937_64 rng(seed);

    // k-means++ seeding
    Matrix centers(k, x.cols());
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    centers.row(0) = x.row(first(rng));
    Vector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        double total = d2.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);
        }
        centers.row(c) = x.row(pick);
        d2 = d2.cwiseMin(
            (x.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        // assignment, ties to the lower center index
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (x.row(i) - centers.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                double d = (x.row(i) - centers.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            labels[i] = best;
        }

        Matrix next = Matrix::Zero(k, x.cols());
        std::vector<Eigen::Index> count(k, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            next.row(labels[i]) += x.row(i);
            ++count[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) {
                next.row(c) /= double(count[c]);
            } else {
                // move an empty center to the point farthest from its center
                Eigen::Index far = 0;
                double far_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    double d = (x.row(i) - centers.row(labels[i])).squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next.row(c) = x.row(far);
            }
        }
        double shift = (next - centers).rowwise().norm().maxCoeff();
        centers = next;
        if (shift <= tol) break;
    }

    // final assignment + inertia
    KmeansRun run;
    run.labels.assign(n, 0);
    run.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        double best_d = (x.row(i) - centers.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
            double d = (x.row(i) - centers.row(c)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        run.labels[i] = best;
        run.inertia += best_d;
    }
    return run;
}

}  // namespace

std::vector<int> kmeans(const Matrix& points, int n_clusters, uint64_t seed,
                        int restarts, int max_iters, double tol) {
    if (n_clusters < 1 || n_clusters > points.rows())
        throw ArgumentError("kmeans: invalid cluster count");
    if (restarts < 1) throw ArgumentError("kmeans: restarts must be >= 1");
    KmeansRun best;
    for (int r = 0; r < restarts; ++r) {
        KmeansRun run = kmeans_single(points, n_clusters,
                                      seed * 0x9e3779b97f4a7c15ULL + r,
                                      max_iters, tol);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best.labels;
}

ClusterAssignment spectral_cluster(const Matrix& affinity, int n_clusters,
                                   uint64_t seed, int restarts) {
    const Eigen::Index n = affinity.rows();
    if (affinity.cols() != n) throw ArgumentError("affinity must be square");
    if (n_clusters < 1 || n_clusters > n)
        throw ArgumentError("cluster count must satisfy 1 <= K <= N");
    if (affinity.minCoeff() < 0.0)
        throw ArgumentError("affinity must be nonnegative");

    Matrix c = affinity;
    Vector deg = c.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (deg[i] == 0.0) {  // keep D invertible
            c(i, i) = 1.0;
            deg[i] = 1.0;
        }
    }
    Vector dinv_sqrt = deg.array().rsqrt();
    Matrix lsym = Matrix::Identity(n, n) -
                  Matrix(dinv_sqrt.asDiagonal() * c * dinv_sqrt.asDiagonal());
    lsym = 0.5 * (lsym + lsym.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> es(lsym);
    if (es.info() != Eigen::Success)
        throw NumericalError("spectral embedding eigensolver failed");
    Matrix embed = es.eigenvectors().leftCols(n_clusters);
    for (Eigen::Index i = 0; i < n; ++i) {
        double norm = embed.row(i).norm();
        if (norm > 0.0) embed.row(i) /= norm;
    }

    ClusterAssignment out;
    out.n_clusters = n_clusters;
    out.seed = seed;
    out.labels = kmeans(embed, n_clusters, seed, restarts);
    return out;
}

namespace {

// fixed categorical palette; index 0 is reserved for the background
constexpr uint8_t kPalette[][3] = {
    {230, 25, 75},  {60, 180, 75},   {255, 225, 25}, {0, 130, 200},
    {245, 130, 48}, {145, 30, 180},  {70, 240, 240}, {240, 50, 230},
    {210, 245, 60}, {250, 190, 212}, {0, 128, 128},  {220, 190, 255},
    {170, 110, 40}, {255, 250, 200}, {128, 0, 0},    {170, 255, 195},
    {128, 128, 0},  {255, 215, 180}, {0, 0, 128},    {128, 128, 128},
    {255, 255, 255}, {100, 160, 90},
};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

void render_cluster_map(const std::vector<int>& labels,
                        const std::vector<std::pair<int, int>>& coords,
                        int rows, int cols,
                        const std::filesystem::path& path) {
    if (coords.empty()) throw StateError("no coordinates available for map rendering");
    if (labels.size() != coords.size())
        throw ArgumentError("labels and coords length mismatch");
    std::vector<uint8_t> rgb(static_cast<size_t>(rows) * cols * 3, 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        auto [r, c] = coords[i];
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw ArgumentError("coordinate out of bounds for map shape");
        const uint8_t* color = kPalette[labels[i] % kPaletteSize];
        size_t off = (static_cast<size_t>(r) * cols + c) * 3;
        rgb[off] = color[0];
        rgb[off + 1] = color[1];
        rgb[off + 2] = color[2];
    }
    png::write_rgb(path, cols, rows, rgb);
}

}  // namespace gcsc
