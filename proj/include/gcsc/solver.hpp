#pragma once

#include <string>

#include "gcsc/types.hpp"

namespace gcsc {

enum class Model { Egcsc, Ekgcsc };

Model parse_model(const std::string& s);

struct KernelDescriptor {
    enum class Kind { Gaussian, Linear, Polynomial } kind = Kind::Gaussian;
    double gamma = 1.0;   // gaussian
    int degree = 2;       // polynomial
    double coef0 = 1.0;   // polynomial

    static KernelDescriptor gaussian(double gamma);
    static KernelDescriptor linear();
    static KernelDescriptor polynomial(int degree, double coef0);
};

struct CoefficientMatrix {
    Matrix Z;           // N x N
    double lambda = 0;
    Model model = Model::Egcsc;
    double residual = 0;  // relative gradient-residual certificate
};

// Relative residual bound every solve must satisfy.
inline constexpr double kResidualTolerance = 1e-8;

/// Solves (Ab' X'X Ab + lambda I) Z = Ab' X'X by Cholesky factorization,
/// where X'X denotes the N x N Gram of the samples (rows = samples).
CoefficientMatrix egcsc_solve(const Matrix& samples, const Matrix& abar,
                              double lambda);

/// Kernel Gram matrix for the given descriptor.
Matrix compute_kernel(const Matrix& samples, const KernelDescriptor& desc);

/// Solves (Ab' K Ab + lambda I) Z = Ab' K; K must be symmetric PSD.
CoefficientMatrix ekgcsc_solve(const Matrix& K, const Matrix& abar,
                               double lambda);

/// Ridge self-representation objective. For Egcsc pass the N x m sample
/// matrix; for Ekgcsc pass the N x N kernel (trace form).
double objective_value(Model model, const Matrix& samples_or_kernel,
                       const Matrix& abar, const Matrix& Z, double lambda);

/// Frobenius norm of the objective gradient at Z.
double gradient_residual(Model model, const Matrix& samples_or_kernel,
                         const Matrix& abar, const Matrix& Z, double lambda);

}  // namespace gcsc
