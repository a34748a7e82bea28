#pragma once

// Automorphic potential phi_lambda built from the unit sphere S^{2n-1} and the
// flow z -> diag(|alpha_i|^{-s}) z. phi = exp(lambda * t(z)) where t(z) is the
// flow time that carries z onto the sphere:
//     sum_i |alpha_i|^{-2t} |z_i|^2 = 1.
//
// Hermitian matrices below are coefficient matrices [d^2 f / dz_i dzbar_j] of
// i dd-bar f.

#include "hopflab/eigendata.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace hopflab {

using Point = std::vector<std::complex<double>>;
using HermitianMatrix = Eigen::MatrixXcd;

class ShellPotential {
public:
    ShellPotential(ContractionSpec spec, double lambda, double root_tolerance = 1e-13,
                   double hessian_step = 1e-4);

    const ContractionSpec& spec() const noexcept { return spec_; }
    double lambda() const noexcept { return lambda_; }
    double root_tolerance() const noexcept { return root_tolerance_; }
    double hessian_step() const noexcept { return hessian_step_; }
    /// log|alpha_i|, cached.
    const std::vector<double>& log_moduli() const noexcept { return log_moduli_; }

private:
    ContractionSpec spec_;
    double lambda_;
    double root_tolerance_;
    double hessian_step_;
    std::vector<double> log_moduli_;
};

/// Unique t with sum |alpha_i|^{-2t} |z_i|^2 = 1. Bracketed, safeguarded
/// Newton. Throws ZeroPoint, NonConvergence.
double time_to_shell(std::span<const std::complex<double>> z, const ContractionSpec& spec,
                     double root_tolerance = 1e-13);
double time_to_shell(std::span<const std::complex<double>> z, std::span<const double> log_moduli,
                     double root_tolerance = 1e-13);

double potential(std::span<const std::complex<double>> z, const ShellPotential& p);

/// exp(lambda): phi(A z) = phi(A_1 z) = exp(lambda) phi(z).
double automorphy_factor(const ShellPotential& p);

/// z -> diag(|alpha_i|^s) z.
Point flow(std::span<const std::complex<double>> z, const ShellPotential& p, double s);

/// Central differences of phi with step hessian_step, Hermitian-symmetrized.
/// Throws StepTooLarge if the raw Hermitian defect exceeds 1e-6.
HermitianMatrix complex_hessian(std::span<const std::complex<double>> z, const ShellPotential& p);

struct VaismanSample {
    Point z;
    double phi = 0;
    std::vector<double> theta;        // -d log phi in (x_1, y_1, ..., x_n, y_n)
    HermitianMatrix omega0;           // d^c theta = i dd-bar log phi
    HermitianMatrix hessian;          // i dd-bar phi
    Eigen::VectorXd omega0_eigenvalues;
    Eigen::VectorXd hessian_eigenvalues;
    double lee_kernel_residual = 0;      // |omega0 xi|, xi_i = log|alpha_i| z_i
    double anti_lee_kernel_residual = 0; // |omega0 (i xi)|
    double theta_on_lee = 0;             // theta(xi), equals -lambda
    double identity_residual = 0;        // |omega0 - (omega - theta ^ I theta)| in matrix form
    std::size_t omega0_rank = 0;         // eigenvalues above rank_threshold
    double rank_threshold = 1e-6;
};

VaismanSample vaisman_sample(std::span<const std::complex<double>> z, const ShellPotential& p);

/// Smallest lambda in [lo, hi] (bisection, `iterations` steps) at which the
/// sampled complex Hessian of phi_lambda has min eigenvalue >= -psd_tolerance
/// at every point. Empirical; returns lo if lo already passes and throws
/// InvalidArgument if hi fails.
double empirical_psd_threshold(const ContractionSpec& spec, std::span<const Point> points, double lo = 0.05,
                               double hi = 64.0, int iterations = 20, double psd_tolerance = 1e-6);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& h);

} // namespace hopflab
