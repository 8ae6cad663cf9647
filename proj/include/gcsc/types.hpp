#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcsc/common.hpp"

namespace gcsc {

/// A hyperspectral cube: rows x cols x bands reflectance values stored
/// band-interleaved-by-pixel (index (r*cols + c)*bands + b), with an
/// optional per-pixel label map (0 = unlabeled background).
struct HsiCube {
    int rows = 0;
    int cols = 0;
    int bands = 0;
    std::vector<double> data;
    std::vector<int> labels;  // empty, or rows*cols entries
    std::string name;

    bool has_labels() const { return !labels.empty(); }

    double at(int r, int c, int b) const {
        return data[(static_cast<size_t>(r) * cols + c) * bands + b];
    }
    double& at(int r, int c, int b) {
        return data[(static_cast<size_t>(r) * cols + c) * bands + b];
    }
    int label_at(int r, int c) const {
        return labels[static_cast<size_t>(r) * cols + c];
    }

    void validate() const;
};

/// N samples x m features plus the ground-truth label (>= 1) and the
/// originating (row, col) of each sample.
struct LabeledSamples {
    Matrix features;              // N x m
    std::vector<int> labels;      // length N, values >= 1
    std::vector<std::pair<int, int>> coords;  // length N, or empty

    Eigen::Index count() const { return features.rows(); }
    int n_classes() const;
};

}  // namespace gcsc
