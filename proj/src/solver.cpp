#include "gcsc/solver.hpp"

#include <cmath>

#include "gcsc/kernels.hpp"

namespace gcsc {

Model parse_model(const std::string& s) {
    if (s == "egcsc") return Model::Egcsc;
    if (s == "ekgcsc") return Model::Ekgcsc;
    throw ArgumentError("unknown model: " + s);
}

KernelDescriptor KernelDescriptor::gaussian(double gamma) {
    if (gamma <= 0.0) throw ArgumentError("gaussian gamma must be positive");
    KernelDescriptor d;
    d.kind = Kind::Gaussian;
    d.gamma = gamma;
    return d;
}

KernelDescriptor KernelDescriptor::linear() {
    KernelDescriptor d;
    d.kind = Kind::Linear;
    return d;
}

KernelDescriptor KernelDescriptor::polynomial(int degree, double coef0) {
    if (degree < 1) throw ArgumentError("polynomial degree must be >= 1");
    KernelDescriptor d;
    d.kind = Kind::Polynomial;
    d.degree = degree;
    d.coef0 = coef0;
    return d;
}

namespace {

// Shared normal-equations solve: (abar' G abar + lambda I) Z = abar' G.
CoefficientMatrix solve_regularized(const Matrix& gram, const Matrix& abar,
                                    double lambda, Model model) {
    const Eigen::Index n = gram.rows();
    if (abar.rows() != n || abar.cols() != n)
        throw ArgumentError("normalized adjacency dimension mismatch");
    if (lambda <= 0.0) throw ArgumentError("lambda must be positive");

    Matrix ga = gram * abar;
    Matrix m = abar.transpose() * ga;
    Matrix rhs = abar.transpose() * gram;
    Matrix lhs = m + lambda * Matrix::Identity(n, n);

    Eigen::LLT<Matrix> llt(lhs);
    CoefficientMatrix out;
    out.lambda = lambda;
    out.model = model;
    if (llt.info() == Eigen::Success) {
        out.Z = llt.solve(rhs);
    } else {
        // lhs is PD in exact arithmetic; fall back if round-off broke LLT
        out.Z = Eigen::LDLT<Matrix>(lhs).solve(rhs);
    }
    if (!out.Z.allFinite())
        throw NumericalError(
            "non-finite solve result; condition estimate " +
            std::to_string(lhs.norm() / lambda));
    out.residual =
        (lhs * out.Z - rhs).norm() / std::max(1.0, rhs.norm());
    return out;
}

}  // namespace

CoefficientMatrix egcsc_solve(const Matrix& samples, const Matrix& abar,
                              double lambda) {
    Matrix gram = samples * samples.transpose();
    return solve_regularized(gram, abar, lambda, Model::Egcsc);
}

Matrix compute_kernel(const Matrix& samples, const KernelDescriptor& desc) {
    Matrix K;
    switch (desc.kind) {
        case KernelDescriptor::Kind::Gaussian: {
            Matrix d2 = kernels::pairwise_sq_dists(samples);
            K = kernels::gaussian_from_sq_dists(d2, desc.gamma);
            break;
        }
        case KernelDescriptor::Kind::Linear:
            K = samples * samples.transpose();
            break;
        case KernelDescriptor::Kind::Polynomial: {
            Matrix lin = samples * samples.transpose();
            K = (lin.array() + desc.coef0).pow(desc.degree).matrix();
            break;
        }
    }
    if (!K.allFinite()) throw NumericalError("non-finite kernel entries");
    return K;
}

CoefficientMatrix ekgcsc_solve(const Matrix& K, const Matrix& abar,
                               double lambda) {
    double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
    if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw ArgumentError("kernel matrix is not symmetric");
    return solve_regularized(K, abar, lambda, Model::Ekgcsc);
}

double objective_value(Model model, const Matrix& samples_or_kernel,
                       const Matrix& abar, const Matrix& Z, double lambda) {
    const Eigen::Index n = abar.rows();
    if (Z.rows() != n || Z.cols() != n || abar.cols() != n ||
        samples_or_kernel.rows() != n)
        throw ArgumentError("objective_value: shape mismatch");
    double reg = 0.5 * lambda * Z.squaredNorm();
    if (model == Model::Egcsc) {
        const Matrix& x = samples_or_kernel;  // N x m
        Matrix az = abar * Z;
        return 0.5 * ((az - Matrix::Identity(n, n)).transpose() * x)
                         .squaredNorm() +
               reg;
    }
    const Matrix& k = samples_or_kernel;  // N x N
    if (k.cols() != n) throw ArgumentError("kernel must be N x N");
    Matrix az = abar * Z;
    Matrix kaz = k * az;
    double fit = (az.transpose() * kaz).trace() - 2.0 * kaz.trace() + k.trace();
    return 0.5 * fit + reg;
}

double gradient_residual(Model model, const Matrix& samples_or_kernel,
                         const Matrix& abar, const Matrix& Z, double lambda) {
    const Eigen::Index n = abar.rows();
    if (Z.rows() != n || Z.cols() != n || samples_or_kernel.rows() != n)
        throw ArgumentError("gradient_residual: shape mismatch");
    Matrix gram = model == Model::Egcsc
                      ? Matrix(samples_or_kernel * samples_or_kernel.transpose())
                      : samples_or_kernel;
    Matrix ga = gram * abar;
    Matrix grad =
        abar.transpose() * (ga * Z) - abar.transpose() * gram + lambda * Z;
    return grad.norm();
}

}  // namespace gcsc
