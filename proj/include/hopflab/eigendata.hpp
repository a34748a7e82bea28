#pragma once

// Diagonal deck generators A = diag(alpha_1, ..., alpha_n) of a Hopf manifold
// (C^n \ 0) / <A>, stored with all |alpha_i| > 1.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hopflab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode) noexcept;

/// Reduces a rational multiple of pi into the half-open interval (-1, 1].
Rational reduce_turn(const Rational& arg_over_pi);

/// log of a positive rational, accurate to double precision even when the
/// numerator or denominator exceeds the double range.
double log_rational(const Rational& value);

/// Exact complex number r * exp(i pi q) with r a positive rational and q a
/// rational reduced into (-1, 1].
class ExactPolar {
public:
    ExactPolar() = default;
    ExactPolar(Rational modulus, Rational arg_over_pi);

    const Rational& modulus() const noexcept { return modulus_; }
    const Rational& arg_over_pi() const noexcept { return arg_over_pi_; }

    ExactPolar operator*(const ExactPolar& other) const;
    ExactPolar inverse() const;
    ExactPolar pow(std::int64_t exponent) const;
    bool is_one() const { return modulus_ == 1 && arg_over_pi_ == 0; }
    std::complex<double> to_complex() const;

    friend bool operator==(const ExactPolar&, const ExactPolar&) = default;

private:
    Rational modulus_{1};
    Rational arg_over_pi_{0};
};

/// A nonzero complex number, either exact (ExactPolar) or a double-precision
/// complex. Products of two exact scalars stay exact; anything touching a
/// float scalar is float.
class Scalar {
public:
    Scalar() : value_(ExactPolar{}) {}
    Scalar(ExactPolar value) : value_(std::move(value)) {}
    Scalar(std::complex<double> value) : value_(value) {}

    static Scalar exact(Rational modulus, Rational arg_over_pi = 0) {
        return Scalar(ExactPolar(std::move(modulus), std::move(arg_over_pi)));
    }

    Mode mode() const noexcept { return is_exact() ? Mode::Exact : Mode::Float; }
    bool is_exact() const noexcept { return std::holds_alternative<ExactPolar>(value_); }
    const ExactPolar& as_exact() const;
    std::complex<double> to_complex() const;
    double modulus() const;
    double log_modulus() const;
    double arg_over_pi() const;

    Scalar operator*(const Scalar& other) const;
    Scalar inverse() const;
    Scalar pow(std::int64_t exponent) const;

    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    std::variant<ExactPolar, std::complex<double>> value_;
};

using Eigenvalue = Scalar;

/// g in GL(n, C), diagonal in the eigenbasis of A.
struct DiagonalElement {
    std::vector<Scalar> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool is_exact() const;
    static DiagonalElement identity(std::size_t n);
};

/// Validated deck generator. Construct with make_spec.
class ContractionSpec {
public:
    std::size_t n() const noexcept { return eigenvalues_.size(); }
    Mode mode() const noexcept { return mode_; }
    bool is_exact() const noexcept { return mode_ == Mode::Exact; }
    const std::vector<Eigenvalue>& eigenvalues() const noexcept { return eigenvalues_; }
    const Eigenvalue& operator[](std::size_t i) const { return eigenvalues_.at(i); }

    /// The generator A itself as a group element.
    DiagonalElement as_element() const { return DiagonalElement{eigenvalues_}; }

    friend bool operator==(const ContractionSpec&, const ContractionSpec&) = default;

private:
    friend ContractionSpec make_spec(std::vector<Eigenvalue> eigenvalues);
    ContractionSpec(Mode mode, std::vector<Eigenvalue> eigenvalues)
        : mode_(mode), eigenvalues_(std::move(eigenvalues)) {}

    Mode mode_;
    std::vector<Eigenvalue> eigenvalues_;
};

/// Throws ParseError (empty list), MixedModes, ModulusNotGreaterThanOne.
ContractionSpec make_spec(std::vector<Eigenvalue> eigenvalues);

/// A_1 = diag(|alpha_1|, ..., |alpha_n|); exact when the spec is exact.
DiagonalElement real_part_operator(const ContractionSpec& spec);

/// (log|alpha_1|, ..., log|alpha_n|), the generator of t -> A_1^t. The Lee
/// field of the shell-potential Vaisman metric is its negative.
std::vector<double> lee_generator(const ContractionSpec& spec);

/// Casts every eigenvalue to a double-precision complex number.
ContractionSpec to_float_spec(const ContractionSpec& spec);

/// The spec of A^p, p >= 1.
ContractionSpec power_spec(const ContractionSpec& spec, std::int64_t p);

/// The spec with eigenvalues reordered as spec[perm[0]], spec[perm[1]], ...
ContractionSpec permute_spec(const ContractionSpec& spec, std::span<const std::size_t> perm);

} // namespace hopflab
