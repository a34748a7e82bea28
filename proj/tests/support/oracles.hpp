#pragma once

// Test-side reference implementations. They share only the number types with
// the library and use the most direct method available, so agreement with
// the library is meaningful.

#include "hopflab/eigendata.hpp"
#include "hopflab/field_tensors.hpp"
#include "hopflab/integer_lattice.hpp"
#include "hopflab/relation_lattice.hpp"
#include "hopflab/shell_potential.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using hopflab::Integer;
using hopflab::IntVector;
using hopflab::Rational;

inline Rational rat_pow(const Rational& x, std::int64_t e) {
    Rational out = 1;
    const Rational base = e >= 0 ? x : Rational(1) / x;
    for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i)
        out *= base;
    return out;
}

/// prod alpha_i^{m_i} == 1, by multiplying out the moduli and summing the
/// arguments (in units of pi) directly.
inline bool exact_power_is_one(const hopflab::ContractionSpec& spec, std::span<const std::int64_t> m) {
    Rational modulus = 1, turns = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& a = spec[i].as_exact();
        modulus *= rat_pow(a.modulus(), m[i]);
        turns += a.arg_over_pi() * m[i];
    }
    if (modulus != 1)
        return false;
    // turns must be an even integer
    return boost::multiprecision::denominator(turns) == 1 && boost::multiprecision::numerator(turns) % 2 == 0;
}

/// Calls f on every m in [-bound, bound]^n.
inline void for_each_in_box(std::size_t n, std::int64_t bound, const std::function<void(const IntVector&)>& f) {
    IntVector m(n, -bound);
    for (;;) {
        f(m);
        std::size_t i = 0;
        while (i < n && m[i] == bound)
            m[i++] = -bound;
        if (i == n)
            return;
        ++m[i];
    }
}

/// Calls f on every tuple in {0..n-1}^len.
inline void for_each_tuple(std::size_t n, std::size_t len, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> t(len, 0);
    for (;;) {
        f(t);
        std::size_t i = len;
        while (i > 0 && t[i - 1] == n - 1)
            t[--i] = 0;
        if (i == 0)
            return;
        ++t[i - 1];
    }
}

// ---------------------------------------------------------------------------
// Random exact specs.

struct CorpusOptions {
    std::size_t max_n = 5;
    bool plant = true;
};

inline Rational random_arg(std::mt19937_64& rng) {
    static const std::int64_t dens[] = {1, 2, 3, 4, 6, 8, 12};
    const std::int64_t d = dens[rng() % 7];
    const std::int64_t num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * d)) - d + 1;
    return Rational(num, d);
}

inline Rational random_modulus(std::mt19937_64& rng) {
    static const std::int64_t nums[][2] = {{2, 1}, {3, 1}, {5, 1}, {3, 2}, {4, 3}, {5, 2}, {7, 1},
                                           {6, 1}, {7, 3}, {10, 9}, {9, 4}, {11, 5}, {4, 1}, {8, 5}};
    const auto& p = nums[rng() % 14];
    return Rational(p[0], p[1]);
}

/// Eigenvalues drawn from small rationals and rational turns. With `plant`,
/// later entries are often products of powers of earlier ones, so the corpus
/// has nontrivial lattices of varied rank.
inline hopflab::ContractionSpec random_exact_spec(std::mt19937_64& rng, const CorpusOptions& opts = {}) {
    const std::size_t n = 1 + rng() % opts.max_n;
    std::vector<hopflab::ExactPolar> eig;
    for (std::size_t i = 0; i < n; ++i) {
        if (opts.plant && i > 0 && rng() % 2 == 0) {
            // alpha_i = alpha_j^a * alpha_k^b * (root of unity), with a modulus > 1
            for (;;) {
                const auto& x = eig[rng() % i];
                const auto& y = eig[rng() % i];
                const std::int64_t a = static_cast<std::int64_t>(rng() % 3) + 1;
                const std::int64_t b = static_cast<std::int64_t>(rng() % 5) - 2;
                hopflab::ExactPolar v = x.pow(a) * y.pow(b) * hopflab::ExactPolar(1, random_arg(rng));
                if (v.modulus() > 1 && v.modulus() < 1000) {
                    eig.push_back(v);
                    break;
                }
            }
        } else {
            eig.emplace_back(random_modulus(rng), random_arg(rng));
        }
    }
    std::vector<hopflab::Eigenvalue> out(eig.begin(), eig.end());
    return hopflab::make_spec(std::move(out));
}

inline hopflab::ContractionSpec exact_spec(std::initializer_list<std::pair<Rational, Rational>> eigs) {
    std::vector<hopflab::Eigenvalue> v;
    for (const auto& [r, q] : eigs)
        v.push_back(hopflab::Scalar::exact(r, q));
    return hopflab::make_spec(std::move(v));
}

inline hopflab::ContractionSpec float_spec(std::initializer_list<std::complex<double>> eigs) {
    std::vector<hopflab::Eigenvalue> v(eigs.begin(), eigs.end());
    return hopflab::make_spec(std::move(v));
}

// ---------------------------------------------------------------------------
// Monomial tensor fields.

/// A random field whose exponent vector lies in the lattice, padded with
/// cancelling (dz_i, d/dz_i) pairs and z_i d/dz_i factors.
inline hopflab::MonomialTensorField random_descending_field(const hopflab::RelationLattice& lattice,
                                                            std::mt19937_64& rng) {
    const std::size_t n = lattice.n;
    IntVector e(n, 0);
    for (const auto& row : lattice.basis) {
        const std::int64_t c = static_cast<std::int64_t>(rng() % 3) - 1;
        for (std::size_t i = 0; i < n; ++i)
            e[i] += c * row[i];
    }
    hopflab::MonomialTensorField t;
    t.m.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (e[i] > 0)
            t.m[i] = e[i];
        for (std::int64_t c = 0; c < -e[i]; ++c)
            t.vector_slots.push_back(i);
    }
    const std::size_t pads = rng() % 4;
    for (std::size_t p = 0; p < pads; ++p) {
        const std::size_t i = rng() % n;
        if (rng() % 2 == 0) {
            t.form_slots.push_back(i);
            t.vector_slots.push_back(i);
        } else {
            t.m[i] += 1;
            t.vector_slots.push_back(i);
        }
    }
    std::shuffle(t.vector_slots.begin(), t.vector_slots.end(), rng);
    return t;
}

/// (Phi^* T) / T for Phi = diag(d): prod d^m * prod_{forms} d_k / prod_{vectors} d_j.
inline std::complex<double> diagonal_pullback(const hopflab::MonomialTensorField& t,
                                              std::span<const std::complex<double>> d) {
    std::complex<double> r = 1;
    for (std::size_t i = 0; i < t.m.size(); ++i)
        for (std::int64_t c = 0; c < t.m[i]; ++c)
            r *= d[i];
    for (auto k : t.form_slots)
        r *= d[k];
    for (auto j : t.vector_slots)
        r /= d[j];
    return r;
}

// ---------------------------------------------------------------------------
// Shell potential, differentiated analytically.
//
// t(z) solves F(t, z) = sum_k e^{-2 rho_k t} |z_k|^2 - 1 = 0. With
// w_k = e^{-2 rho_k t}, Q = sum_k rho_k w_k |z_k|^2 and
// R = sum_k rho_k^2 w_k |z_k|^2:
//   t_{zbar_j} = w_j z_j / (2Q),   t_{z_i} = conj(t_{zbar_i}),
//   d/dz_i Q   = rho_i w_i zbar_i - 2 R t_{z_i},
// and t_{z_i zbar_j} follows from the quotient rule.
// phi = e^{lambda t}:  phi_{i jbar} = lambda phi (lambda t_i t_jbar + t_{i jbar}).

struct ShellDerivatives {
    double t = 0;
    Eigen::VectorXcd t_z;    // dt/dz_i
    Eigen::MatrixXcd t_zzb;  // d^2 t / dz_i dzbar_j
};

inline ShellDerivatives shell_derivatives(const std::vector<std::complex<double>>& z, const std::vector<double>& rho) {
    const std::size_t n = z.size();
    // Solve for t by plain bisection (independent of the library's Newton).
    auto f = [&](double t) {
        double s = 0;
        for (std::size_t k = 0; k < n; ++k)
            s += std::exp(-2 * rho[k] * t) * std::norm(z[k]);
        return s - 1;
    };
    double lo = -50, hi = 50;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    ShellDerivatives d;
    d.t = 0.5 * (lo + hi);
    std::vector<double> w(n);
    double q = 0, r = 0;
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = std::exp(-2 * rho[k] * d.t);
        q += rho[k] * w[k] * std::norm(z[k]);
        r += rho[k] * rho[k] * w[k] * std::norm(z[k]);
    }
    Eigen::VectorXcd tzb(n);
    d.t_z.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        tzb(j) = w[j] * z[j] / (2 * q);
        d.t_z(j) = std::conj(tzb(j));
    }
    // t_{zbar_j} = w_j z_j / (2Q). Differentiate in z_i:
    //   d w_j / dz_i = -2 rho_j w_j t_{z_i}
    //   d z_j / dz_i = delta_ij
    //   d Q / dz_i   = rho_i w_i zbar_i - 2 R t_{z_i}
    d.t_zzb.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> dq = rho[i] * w[i] * std::conj(z[i]) - 2 * r * d.t_z(i);
        for (std::size_t j = 0; j < n; ++j) {
            const std::complex<double> num_d =
                -2 * rho[j] * w[j] * d.t_z(i) * z[j] + (i == j ? w[j] : 0.0);
            d.t_zzb(i, j) = num_d / (2 * q) - w[j] * z[j] * dq / (2 * q * q);
        }
    }
    return d;
}

/// [d^2 phi / dz_i dzbar_j] for phi = exp(lambda t).
inline Eigen::MatrixXcd analytic_phi_hessian(const std::vector<std::complex<double>>& z,
                                             const std::vector<double>& rho, double lambda) {
    const ShellDerivatives d = shell_derivatives(z, rho);
    const double phi = std::exp(lambda * d.t);
    const Eigen::VectorXcd tzb = d.t_z.conjugate();
    return lambda * phi * (lambda * d.t_z * tzb.transpose() + d.t_zzb);
}

/// [d^2 log phi / dz_i dzbar_j] = lambda t_{i jbar}.
inline Eigen::MatrixXcd analytic_omega0(const std::vector<std::complex<double>>& z, const std::vector<double>& rho,
                                        double lambda) {
    return lambda * shell_derivatives(z, rho).t_zzb;
}

} // namespace oracle
