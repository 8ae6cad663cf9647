#pragma once

#include <string>

#include "gcsc/types.hpp"

namespace gcsc {

enum class KnnSymmetrize { Or, And, None };

KnnSymmetrize parse_knn_symmetrize(const std::string& s);

struct KnnGraph {
    Matrix adjacency;   // raw kNN relation, 0/1, zero diagonal, k ones per row
    int k = 0;
    KnnSymmetrize symmetrize = KnnSymmetrize::Or;
    Matrix normalized;  // D^{-1/2} (I + A') D^{-1/2} with A' per symmetrize
};

/// Row i marks the k nearest rows of `samples` by Euclidean distance
/// (self excluded, ties broken by lower index).
KnnGraph build_knn(const Matrix& samples, int k,
                   KnnSymmetrize symmetrize = KnnSymmetrize::Or);

/// Adds self-loops and degree-normalizes: D^{-1/2} (I + A) D^{-1/2}.
/// A must be square, binary, zero-diagonal; it is not symmetrized here.
Matrix normalize_adjacency(const Matrix& A);

/// The graph-smoothed dictionary: normalized adjacency times the sample
/// matrix (samples-major orientation).
Matrix graph_embed(const Matrix& samples, const Matrix& normalized);

}  // namespace gcsc
