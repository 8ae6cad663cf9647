#pragma once

#include "gcsc/types.hpp"

namespace gcsc {

struct PcaModel {
    Vector mean;                       // length b
    Matrix components;                 // b x d, orthonormal columns
    Vector explained_variance_ratio;   // length d, nonincreasing

    Eigen::Index n_features() const { return mean.size(); }
    Eigen::Index n_components() const { return components.cols(); }
};

struct PcaTarget {
    enum class Mode { NComponents, VarianceThreshold } mode;
    int d = 0;
    double tau = 0.0;

    static PcaTarget n_components(int d) {
        return {Mode::NComponents, d, 0.0};
    }
    static PcaTarget variance_threshold(double tau) {
        return {Mode::VarianceThreshold, 0, tau};
    }
};

/// Covariance-space PCA; the sign of each component is fixed so that its
/// entry of largest magnitude is positive.
PcaModel fit_pca(const Matrix& samples, PcaTarget target);

/// (input - mean) * components, rows are samples.
Matrix transform_pca(const PcaModel& model, const Matrix& samples);

/// Applies the model to every pixel's spectrum; labels carry over.
HsiCube transform_pca(const PcaModel& model, const HsiCube& cube);

/// One sample per labeled pixel, window x window x bands flattened patch
/// with mirror padding. Row order matches to_labeled_samples.
LabeledSamples extract_patches(const HsiCube& cube, int window);

/// Per-feature affine map onto [0,1]; constant features map to 0.
Matrix minmax_scale(const Matrix& samples);

}  // namespace gcsc
