#include "hopflab/shell_potential.hpp"

#include "hopflab/error.hpp"
#include "hopflab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopflab {

ShellPotential::ShellPotential(ContractionSpec spec, double lambda, double root_tolerance,
                               double hessian_step)
    : spec_(std::move(spec)), lambda_(lambda), root_tolerance_(root_tolerance),
      hessian_step_(hessian_step), log_moduli_(lee_generator(spec_)) {
    if (!(lambda_ > 0))
        throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
    if (!(root_tolerance_ > 0) || !(hessian_step_ > 0))
        throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
}

double time_to_shell(std::span<const std::complex<double>> z, const ContractionSpec& spec,
                     double root_tolerance) {
    if (z.size() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from spec");
    const std::vector<double> rho = lee_generator(spec);
    return time_to_shell(z, rho, root_tolerance);
}

double time_to_shell(std::span<const std::complex<double>> z, std::span<const double> rho,
                     double root_tolerance) {
    if (z.size() != rho.size())
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from spec");
    // Work with g(t) = log sum_i exp(log|z_i|^2 - 2 rho_i t): strictly
    // decreasing and convex, with the same root as the shell equation.
    std::vector<double> log_sq, rates;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = std::abs(z[i]);
        if (a > 0) {
            log_sq.push_back(2 * std::log(a));
            rates.push_back(rho[i]);
        }
    }
    if (log_sq.empty())
        throw Error(ErrorCode::ZeroPoint, "point is the origin");

    const auto g_and_slope = [&](double t) {
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < log_sq.size(); ++i)
            peak = std::max(peak, log_sq[i] - 2 * rates[i] * t);
        double sum = 0, weighted = 0;
        for (std::size_t i = 0; i < log_sq.size(); ++i) {
            const double w = std::exp(log_sq[i] - 2 * rates[i] * t - peak);
            sum += w;
            weighted += w * rates[i];
        }
        return std::pair{peak + std::log(sum), -2 * weighted / sum};
    };

    double log_norm_sq = -std::numeric_limits<double>::infinity();
    {
        double peak = *std::max_element(log_sq.begin(), log_sq.end());
        double sum = 0;
        for (double v : log_sq)
            sum += std::exp(v - peak);
        log_norm_sq = peak + std::log(sum);
    }
    const auto [rmin, rmax] = std::minmax_element(rates.begin(), rates.end());
    double lo = std::min(log_norm_sq / (2 * *rmax), log_norm_sq / (2 * *rmin));
    double hi = std::max(log_norm_sq / (2 * *rmax), log_norm_sq / (2 * *rmin));
    // Pad against rounding in the bound itself (lo == hi for equal moduli).
    lo -= 1e-9 * (1 + std::abs(lo));
    hi += 1e-9 * (1 + std::abs(hi));

    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const auto [g, slope] = g_and_slope(t);
        if (std::abs(std::expm1(g)) < root_tolerance)
            return t;
        if (g > 0)
            lo = t;
        else
            hi = t;
        double next = t - g / slope;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == t)
            break;
        t = next;
    }
    const auto [g, slope] = g_and_slope(t);
    if (std::abs(std::expm1(g)) < root_tolerance)
        return t;
    throw Error(ErrorCode::NonConvergence, "shell equation did not converge");
}

double potential(std::span<const std::complex<double>> z, const ShellPotential& p) {
    return std::exp(p.lambda() * time_to_shell(z, p.log_moduli(), p.root_tolerance()));
}

double automorphy_factor(const ShellPotential& p) {
    return std::exp(p.lambda());
}

Point flow(std::span<const std::complex<double>> z, const ShellPotential& p, double s) {
    if (z.size() != p.spec().n())
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from spec");
    Point out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = std::exp(s * p.log_moduli()[i]) * z[i];
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

namespace {

// Moves real coordinate a (x_1, y_1, x_2, ...) of z by delta.
Point nudge(Point z, std::size_t a, double delta) {
    auto& c = z[a / 2];
    c += (a % 2 == 0) ? std::complex<double>(delta, 0) : std::complex<double>(0, delta);
    return z;
}

template <class F>
Eigen::MatrixXd real_hessian(F&& f, const Point& z, double h) {
    const std::size_t d = 2 * z.size();
    Eigen::MatrixXd out(d, d);
    const double f0 = f(z);
    for (std::size_t a = 0; a < d; ++a) {
        out(a, a) = (f(nudge(z, a, h)) - 2 * f0 + f(nudge(z, a, -h))) / (h * h);
        for (std::size_t b = a + 1; b < d; ++b) {
            const double pp = f(nudge(nudge(z, a, h), b, h));
            const double pm = f(nudge(nudge(z, a, h), b, -h));
            const double mp = f(nudge(nudge(z, a, -h), b, h));
            const double mm = f(nudge(nudge(z, a, -h), b, -h));
            out(a, b) = out(b, a) = (pp - pm - mp + mm) / (4 * h * h);
        }
    }
    return out;
}

template <class F>
std::vector<double> real_gradient(F&& f, const Point& z, double h) {
    std::vector<double> g(2 * z.size());
    for (std::size_t a = 0; a < g.size(); ++a)
        g[a] = (f(nudge(z, a, h)) - f(nudge(z, a, -h))) / (2 * h);
    return g;
}

// d^2/dz_i dzbar_j = (1/4) [f_xx + f_yy + i (f_{x_i y_j} - f_{y_i x_j})].
HermitianMatrix complex_part(const Eigen::MatrixXd& r) {
    const Eigen::Index n = r.rows() / 2;
    HermitianMatrix c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            c(i, j) = 0.25 * std::complex<double>(r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1),
                                                  r(2 * i, 2 * j + 1) - r(2 * i + 1, 2 * j));
    return c;
}

HermitianMatrix symmetrized(const HermitianMatrix& c) {
    const double defect = (c - c.adjoint()).cwiseAbs().maxCoeff();
    if (!(defect <= 1e-6))
        throw Error(ErrorCode::StepTooLarge, "finite-difference Hessian is not Hermitian");
    return 0.5 * (c + c.adjoint());
}

Point as_point(std::span<const std::complex<double>> z) {
    return Point(z.begin(), z.end());
}

} // namespace

HermitianMatrix complex_hessian(std::span<const std::complex<double>> z, const ShellPotential& p) {
    if (z.size() != p.spec().n())
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from spec");
    const auto phi = [&](const Point& w) { return potential(w, p); };
    return symmetrized(complex_part(real_hessian(phi, as_point(z), p.hessian_step())));
}

VaismanSample vaisman_sample(std::span<const std::complex<double>> z, const ShellPotential& p) {
    const std::size_t n = p.spec().n();
    if (z.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "point dimension differs from spec");
    const Point base = as_point(z);
    const double h = p.hessian_step();
    const auto log_phi = [&](const Point& w) {
        return p.lambda() * time_to_shell(w, p.log_moduli(), p.root_tolerance());
    };

    VaismanSample s;
    s.z = base;
    s.phi = potential(base, p);
    s.theta = real_gradient(log_phi, base, h);
    for (auto& v : s.theta)
        v = -v;
    s.omega0 = symmetrized(complex_part(real_hessian(log_phi, base, h)));
    s.hessian = complex_hessian(base, p);
    s.omega0_eigenvalues = hermitian_eigenvalues(s.omega0);
    s.hessian_eigenvalues = hermitian_eigenvalues(s.hessian);

    Eigen::VectorXcd xi(n);
    for (std::size_t i = 0; i < n; ++i)
        xi(static_cast<Eigen::Index>(i)) = p.log_moduli()[i] * base[i];
    // The form is sum C_ij u_i conj(v_j), so u is in the kernel iff C^T u = 0.
    // Both residuals are reported although the second is |i| times the first.
    s.lee_kernel_residual = (s.omega0.transpose() * xi).norm();
    s.anti_lee_kernel_residual = (s.omega0.transpose() * (std::complex<double>(0, 1) * xi)).norm();
    s.theta_on_lee = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = xi(static_cast<Eigen::Index>(i));
        s.theta_on_lee += s.theta[2 * i] * x.real() + s.theta[2 * i + 1] * x.imag();
    }

    // d log phi = -theta, so d phi / dz_i = -phi (theta_{x_i} - i theta_{y_i}) / 2.
    Eigen::VectorXcd dphi(n);
    for (std::size_t i = 0; i < n; ++i)
        dphi(static_cast<Eigen::Index>(i)) =
            -s.phi * 0.5 * std::complex<double>(s.theta[2 * i], -s.theta[2 * i + 1]);
    const HermitianMatrix rhs = s.hessian / s.phi - dphi * dphi.adjoint() / (s.phi * s.phi);
    s.identity_residual = (s.omega0 - rhs).cwiseAbs().maxCoeff();

    s.omega0_rank = static_cast<std::size_t>((s.omega0_eigenvalues.array() > s.rank_threshold).count());
    return s;
}

double empirical_psd_threshold(const ContractionSpec& spec, std::span<const Point> points, double lo,
                               double hi, int iterations, double psd_tolerance) {
    if (!(lo > 0) || !(hi > lo))
        throw Error(ErrorCode::InvalidArgument, "need 0 < lo < hi");
    const auto passes = [&](double lambda) {
        const ShellPotential p(spec, lambda);
        std::vector<double> min_eig(points.size());
        parallel_for(points.size(), [&](std::size_t i) {
            min_eig[i] = hermitian_eigenvalues(complex_hessian(points[i], p)).minCoeff();
        });
        return std::all_of(min_eig.begin(), min_eig.end(), [&](double e) { return e >= -psd_tolerance; });
    };
    if (!passes(hi))
        throw Error(ErrorCode::InvalidArgument, "Hessian is not PSD even at the upper lambda");
    if (passes(lo))
        return lo;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace hopflab
