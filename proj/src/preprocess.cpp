#include "gcsc/preprocess.hpp"

#include <cmath>

#include "gcsc/ingest.hpp"
#include "gcsc/kernels.hpp"

namespace gcsc {

PcaModel fit_pca(const Matrix& samples, PcaTarget target) {
    const Eigen::Index n = samples.rows();
    const Eigen::Index b = samples.cols();
    if (n < 2) throw ArgumentError("fit_pca needs at least 2 samples");
    if (!samples.allFinite()) throw DataError("non-finite input to fit_pca");

    if (target.mode == PcaTarget::Mode::NComponents) {
        if (target.d < 1 || target.d > std::min(n, b))
            throw ArgumentError("PCA component count out of range");
    } else if (target.tau <= 0.0 || target.tau > 1.0) {
        throw ArgumentError("PCA variance threshold must lie in (0,1]");
    }

    Vector mean = samples.colwise().mean();
    Matrix centered = samples.rowwise() - mean.transpose();
    Matrix cov = (centered.transpose() * centered) / double(n - 1);

    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    if (es.info() != Eigen::Success)
        throw NumericalError("PCA eigendecomposition failed");

    // Eigen returns ascending order; flip to descending.
    Vector eigvals = es.eigenvalues().reverse();
    Matrix eigvecs = es.eigenvectors().rowwise().reverse();
    for (Eigen::Index i = 0; i < eigvals.size(); ++i)
        if (eigvals[i] < 0.0) eigvals[i] = 0.0;

    double total = eigvals.sum();
    Eigen::Index d;
    if (target.mode == PcaTarget::Mode::NComponents) {
        d = target.d;
    } else {
        if (total <= 0.0)
            throw DataError("zero-variance input with variance-threshold PCA");
        double cum = 0.0;
        d = eigvals.size();
        for (Eigen::Index i = 0; i < eigvals.size(); ++i) {
            cum += eigvals[i] / total;
            if (cum >= target.tau) {
                d = i + 1;
                break;
            }
        }
        d = std::min<Eigen::Index>(d, std::min(n, b));
    }

    PcaModel model;
    model.mean = std::move(mean);
    model.components = eigvecs.leftCols(d);
    model.explained_variance_ratio =
        total > 0.0 ? Vector(eigvals.head(d) / total) : Vector(Vector::Zero(d));

    // Deterministic sign: largest-magnitude entry of each component positive.
    for (Eigen::Index c = 0; c < d; ++c) {
        Eigen::Index imax = 0;
        model.components.col(c).cwiseAbs().maxCoeff(&imax);
        if (model.components(imax, c) < 0.0) model.components.col(c) *= -1.0;
    }
    return model;
}

Matrix transform_pca(const PcaModel& model, const Matrix& samples) {
    if (samples.cols() != model.n_features())
        throw ArgumentError("transform_pca: feature count mismatch");
    return (samples.rowwise() - model.mean.transpose()) * model.components;
}

HsiCube transform_pca(const PcaModel& model, const HsiCube& cube) {
    if (cube.bands != model.n_features())
        throw ArgumentError("transform_pca: cube band count mismatch");
    const int d = static_cast<int>(model.n_components());
    HsiCube out;
    out.rows = cube.rows;
    out.cols = cube.cols;
    out.bands = d;
    out.name = cube.name;
    out.labels = cube.labels;
    out.data.resize(size_t(out.rows) * out.cols * d);
    Vector spectrum(cube.bands);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            for (int b = 0; b < cube.bands; ++b) spectrum[b] = cube.at(r, c, b);
            Vector scores =
                model.components.transpose() * (spectrum - model.mean);
            for (int b = 0; b < d; ++b) out.at(r, c, b) = scores[b];
        }
    return out;
}

LabeledSamples extract_patches(const HsiCube& cube, int window) {
    if (window < 1 || window % 2 == 0)
        throw ArgumentError("patch window must be odd and >= 1");
    if (window > 2 * std::min(cube.rows, cube.cols))
        throw ArgumentError("patch window larger than twice the scene extent");
    LabeledSamples base = to_labeled_samples(cube);
    LabeledSamples out;
    out.labels = std::move(base.labels);
    out.coords = std::move(base.coords);
    out.features = kernels::patch_features(cube, out.coords, window);
    return out;
}

Matrix minmax_scale(const Matrix& samples) {
    if (samples.rows() < 1) throw ArgumentError("minmax_scale: empty input");
    if (!samples.allFinite())
        throw DataError("non-finite input to minmax_scale");
    Vector lo = samples.colwise().minCoeff();
    Vector hi = samples.colwise().maxCoeff();
    Matrix out(samples.rows(), samples.cols());
    for (Eigen::Index c = 0; c < samples.cols(); ++c) {
        double range = hi[c] - lo[c];
        if (range == 0.0) {
            out.col(c).setZero();
        } else {
            out.col(c) = (samples.col(c).array() - lo[c]) / range;
        }
    }
    return out;
}

}  // namespace gcsc
