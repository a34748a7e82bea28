#include "hopflab/eigendata.hpp"

#include "hopflab/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>

namespace hopflab {

namespace mp = boost::multiprecision;

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::Exact ? "exact" : "float";
}

Rational reduce_turn(const Rational& arg_over_pi) {
    // q - 2 * floor((q + 1) / 2) lies in [-1, 1); map -1 to 1.
    Rational shifted = (arg_over_pi + 1) / 2;
    Integer fl = mp::numerator(shifted) / mp::denominator(shifted);
    if (mp::numerator(shifted) < 0 && fl * mp::denominator(shifted) != mp::numerator(shifted))
        fl -= 1;
    Rational r = arg_over_pi - Rational(2 * fl);
    if (r == -1)
        r = 1;
    return r;
}

double log_rational(const Rational& value) {
    if (value <= 0)
        throw Error(ErrorCode::InvalidArgument, "log of a non-positive rational");
    mp::cpp_bin_float_50 num(mp::numerator(value));
    mp::cpp_bin_float_50 den(mp::denominator(value));
    return static_cast<double>(mp::log(num) - mp::log(den));
}

ExactPolar::ExactPolar(Rational modulus, Rational arg_over_pi)
    : modulus_(std::move(modulus)), arg_over_pi_(reduce_turn(arg_over_pi)) {
    if (modulus_ <= 0)
        throw Error(ErrorCode::InvalidArgument, "exact modulus must be positive");
}

ExactPolar ExactPolar::operator*(const ExactPolar& other) const {
    return ExactPolar(modulus_ * other.modulus_, arg_over_pi_ + other.arg_over_pi_);
}

ExactPolar ExactPolar::inverse() const {
    return ExactPolar(1 / modulus_, -arg_over_pi_);
}

ExactPolar ExactPolar::pow(std::int64_t exponent) const {
    if (exponent == 0)
        return {};
    const ExactPolar base = exponent > 0 ? *this : inverse();
    const auto e = static_cast<unsigned>(exponent > 0 ? exponent : -exponent);
    Rational m(mp::pow(mp::numerator(base.modulus_), e), mp::pow(mp::denominator(base.modulus_), e));
    return ExactPolar(std::move(m), base.arg_over_pi_ * e);
}

std::complex<double> ExactPolar::to_complex() const {
    const double r = std::exp(log_rational(modulus_));
    return std::polar(r, std::numbers::pi * static_cast<double>(arg_over_pi_));
}

const ExactPolar& Scalar::as_exact() const {
    if (const auto* p = std::get_if<ExactPolar>(&value_))
        return *p;
    throw Error(ErrorCode::MixedModes, "exact value requested from a float scalar");
}

std::complex<double> Scalar::to_complex() const {
    if (const auto* p = std::get_if<ExactPolar>(&value_))
        return p->to_complex();
    return std::get<std::complex<double>>(value_);
}

double Scalar::modulus() const {
    if (const auto* p = std::get_if<ExactPolar>(&value_))
        return static_cast<double>(p->modulus());
    return std::abs(std::get<std::complex<double>>(value_));
}

double Scalar::log_modulus() const {
    if (const auto* p = std::get_if<ExactPolar>(&value_))
        return log_rational(p->modulus());
    return std::log(std::abs(std::get<std::complex<double>>(value_)));
}

double Scalar::arg_over_pi() const {
    if (const auto* p = std::get_if<ExactPolar>(&value_))
        return static_cast<double>(p->arg_over_pi());
    const double q = std::arg(std::get<std::complex<double>>(value_)) / std::numbers::pi;
    return q <= -1.0 ? 1.0 : q;
}

Scalar Scalar::operator*(const Scalar& other) const {
    if (is_exact() && other.is_exact())
        return Scalar(as_exact() * other.as_exact());
    return Scalar(to_complex() * other.to_complex());
}

Scalar Scalar::inverse() const {
    if (is_exact())
        return Scalar(as_exact().inverse());
    return Scalar(1.0 / to_complex());
}

Scalar Scalar::pow(std::int64_t exponent) const {
    if (is_exact())
        return Scalar(as_exact().pow(exponent));
    return Scalar(std::pow(to_complex(), static_cast<double>(exponent)));
}

bool DiagonalElement::is_exact() const {
    for (const auto& e : entries)
        if (!e.is_exact())
            return false;
    return true;
}

DiagonalElement DiagonalElement::identity(std::size_t n) {
    return DiagonalElement{std::vector<Scalar>(n, Scalar::exact(1))};
}

ContractionSpec make_spec(std::vector<Eigenvalue> eigenvalues) {
    if (eigenvalues.empty())
        throw Error(ErrorCode::ParseError, "eigenvalue list is empty");
    const Mode mode = eigenvalues.front().mode();
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const auto& e = eigenvalues[i];
        if (e.mode() != mode)
            throw Error(ErrorCode::MixedModes, "exact and float eigenvalues in one spec");
        const bool expanding = e.is_exact() ? e.as_exact().modulus() > 1 : e.modulus() > 1.0;
        if (!expanding)
            throw Error(ErrorCode::ModulusNotGreaterThanOne,
                        "eigenvalue " + std::to_string(i + 1) + " has modulus <= 1");
        if (!e.is_exact()) {
            const auto z = e.to_complex();
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error(ErrorCode::ParseError, "non-finite eigenvalue");
        }
    }
    return ContractionSpec(mode, std::move(eigenvalues));
}

DiagonalElement real_part_operator(const ContractionSpec& spec) {
    DiagonalElement out;
    out.entries.reserve(spec.n());
    for (const auto& e : spec.eigenvalues()) {
        if (e.is_exact())
            out.entries.push_back(Scalar::exact(e.as_exact().modulus()));
        else
            out.entries.emplace_back(std::complex<double>(e.modulus(), 0.0));
    }
    return out;
}

std::vector<double> lee_generator(const ContractionSpec& spec) {
    std::vector<double> v;
    v.reserve(spec.n());
    for (const auto& e : spec.eigenvalues())
        v.push_back(e.log_modulus());
    return v;
}

ContractionSpec to_float_spec(const ContractionSpec& spec) {
    std::vector<Eigenvalue> out;
    out.reserve(spec.n());
    for (const auto& e : spec.eigenvalues())
        out.emplace_back(e.to_complex());
    return make_spec(std::move(out));
}

ContractionSpec power_spec(const ContractionSpec& spec, std::int64_t p) {
    if (p < 1)
        throw Error(ErrorCode::InvalidArgument, "power must be >= 1");
    std::vector<Eigenvalue> out;
    out.reserve(spec.n());
    for (const auto& e : spec.eigenvalues())
        out.push_back(e.pow(p));
    return make_spec(std::move(out));
}

ContractionSpec permute_spec(const ContractionSpec& spec, std::span<const std::size_t> perm) {
    if (perm.size() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "permutation length differs from n");
    std::vector<Eigenvalue> out;
    out.reserve(spec.n());
    for (auto i : perm)
        out.push_back(spec[i]);
    return make_spec(std::move(out));
}

} // namespace hopflab
