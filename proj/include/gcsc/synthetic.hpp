#pragma once

#include <cstdint>

#include "gcsc/types.hpp"

namespace gcsc {

struct SyntheticSpec {
    int n_subspaces = 3;
    int ambient_dim = 30;
    int subspace_dim = 4;
    int points_per_subspace = 100;
    double noise_sigma = 0.01;
    uint64_t seed = 0;
};

/// Union-of-subspaces data: an orthonormal basis per subspace, uniform
/// coefficients in [-1,1], isotropic Gaussian noise. Labels are the
/// subspace index (1-based). Deterministic per seed.
LabeledSamples gen_synthetic(const SyntheticSpec& spec);

}  // namespace gcsc
