#include "gcsc/synthetic.hpp"

#include <random>

namespace gcsc {

LabeledSamples gen_synthetic(const SyntheticSpec& spec) {
    if (spec.n_subspaces < 1 || spec.points_per_subspace < 1)
        throw ArgumentError("synthetic spec: counts must be positive");
    if (spec.subspace_dim < 1 || spec.subspace_dim >= spec.ambient_dim)
        throw ArgumentError("subspace_dim must lie in [1, ambient_dim)");
    if (spec.noise_sigma < 0.0)
        throw ArgumentError("noise_sigma must be nonnegative");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    const int n = spec.n_subspaces * spec.points_per_subspace;
    LabeledSamples out;
    out.features.resize(n, spec.ambient_dim);
    out.labels.reserve(n);

    int row = 0;
    for (int s = 0; s < spec.n_subspaces; ++s) {
        Matrix raw(spec.ambient_dim, spec.subspace_dim);
        for (Eigen::Index i = 0; i < raw.rows(); ++i)
            for (Eigen::Index j = 0; j < raw.cols(); ++j) raw(i, j) = gauss(rng);
        Eigen::HouseholderQR<Matrix> qr(raw);
        Matrix basis = Matrix(qr.householderQ()).leftCols(spec.subspace_dim);

        for (int p = 0; p < spec.points_per_subspace; ++p) {
            Vector c(spec.subspace_dim);
            for (int j = 0; j < spec.subspace_dim; ++j) c[j] = coeff(rng);
            Vector x = basis * c;
            for (int j = 0; j < spec.ambient_dim; ++j)
                x[j] += spec.noise_sigma * gauss(rng);
            out.features.row(row) = x.transpose();
            out.labels.push_back(s + 1);
            ++row;
        }
    }
    return out;
}

}  // namespace gcsc
