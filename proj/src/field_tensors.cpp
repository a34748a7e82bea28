#include "hopflab/field_tensors.hpp"

#include "hopflab/error.hpp"

#include <cmath>

namespace hopflab {

IntVector MonomialTensorField::exponents() const {
    const std::size_t dim = n();
    if (dim == 0)
        throw Error(ErrorCode::InvalidArgument, "tensor field has empty coefficient exponent");
    IntVector e = m;
    for (auto x : m)
        if (x < 0)
            throw Error(ErrorCode::InvalidArgument, "coefficient exponents must be nonnegative");
    for (auto k : form_slots) {
        if (k >= dim)
            throw Error(ErrorCode::DimensionMismatch, "form slot out of range");
        ++e[k];
    }
    for (auto j : vector_slots) {
        if (j >= dim)
            throw Error(ErrorCode::DimensionMismatch, "vector slot out of range");
        --e[j];
    }
    return e;
}

TensorMonomialIndex MonomialTensorField::slot_index() const {
    return TensorMonomialIndex{form_slots, vector_slots};
}

Scalar deck_weight(const MonomialTensorField& t, const ContractionSpec& spec) {
    if (t.n() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "field dimension differs from spec");
    return character(t.exponents(), spec.as_element());
}

bool descends(const MonomialTensorField& t, const ContractionSpec& spec, const Tolerance& tol) {
    const Scalar w = deck_weight(t, spec);
    if (w.is_exact())
        return w.as_exact().is_one();
    const Verdict v = tol.classify(std::abs(w.to_complex() - 1.0));
    if (v == Verdict::Indeterminate)
        throw Error(ErrorCode::PrecisionExhausted, "deck weight is within the tolerance band of 1");
    return v == Verdict::True;
}

std::complex<double> lie_eigenvalue(const MonomialTensorField& t, std::span<const std::complex<double>> v) {
    if (v.size() != t.n())
        throw Error(ErrorCode::DimensionMismatch, "flow vector has wrong length");
    const IntVector e = t.exponents();
    std::complex<double> mu = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        mu += static_cast<double>(e[i]) * v[i];
    return mu;
}

Rational lee_eigenvalue_argument(const MonomialTensorField& t, const ContractionSpec& spec) {
    if (!spec.is_exact())
        throw Error(ErrorCode::NotCertified, "symbolic Lee eigenvalue needs an exact spec");
    if (t.n() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "field dimension differs from spec");
    const Scalar r = character(t.exponents(), real_part_operator(spec));
    return r.as_exact().modulus();
}

std::complex<double> pullback_ratio(const MonomialTensorField& t, std::span<const std::complex<double>> d,
                                    std::span<const std::complex<double>> z) {
    const std::size_t n = t.n();
    if (d.size() != n || z.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "flow or point has wrong length");
    t.exponents();
    const auto apply = [&](std::span<const std::complex<double>> x) {
        std::vector<std::complex<double>> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = d[i] * x[i];
        return y;
    };
    const auto coefficient = [&](std::span<const std::complex<double>> x) {
        std::complex<double> c = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::int64_t p = 0; p < t.m[i]; ++p)
                c *= x[i];
        return c;
    };
    // Jacobian columns: Phi is linear, so Phi(e_j) is its j-th column.
    std::vector<std::complex<double>> diag_jacobian(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::complex<double>> unit(n, 0.0);
        unit[j] = 1.0;
        diag_jacobian[j] = apply(unit)[j];
    }
    std::complex<double> pulled = coefficient(apply(z));
    for (auto k : t.form_slots)
        pulled *= diag_jacobian[k];
    for (auto j : t.vector_slots)
        pulled /= diag_jacobian[j];
    return pulled / coefficient(z);
}

std::vector<std::complex<double>> default_probe_point(std::size_t n) {
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = {0.9 - 0.13 * static_cast<double>(i), 0.35 + 0.21 * static_cast<double>(i % 3)};
    return z;
}

LeeInvarianceReport verify_lee_invariance(const MonomialTensorField& t, const ContractionSpec& spec,
                                          std::span<const std::complex<double>> at) {
    if (!descends(t, spec))
        throw Error(ErrorCode::NotDescending, "deck weight is not 1; not a tensor on the quotient");
    const std::size_t n = spec.n();
    const std::vector<std::complex<double>> point = at.empty() ? default_probe_point(n)
                                                               : std::vector(at.begin(), at.end());
    const std::vector<double> lee = lee_generator(spec);
    std::vector<std::complex<double>> v(n), iv(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lee[i];
        iv[i] = {0.0, lee[i]};
    }

    LeeInvarianceReport r;
    r.descends = true;
    r.certified = spec.is_exact();
    r.mu_lee = lie_eigenvalue(t, v);
    r.mu_anti_lee = lie_eigenvalue(t, iv);
    if (spec.is_exact()) {
        r.symbolic_zero = lee_eigenvalue_argument(t, spec) == 1;
    } else {
        // |w - 1| < 1e-10 bounds |log|w|| = |mu| by about the same amount.
        r.symbolic_zero = std::abs(r.mu_lee) < 1e-9;
    }
    check_invariant(r.symbolic_zero, "descending field with nonzero Lee eigenvalue");

    for (double s : {0.1, 0.5, 1.0}) {
        std::vector<std::complex<double>> lee_flow(n), anti_flow(n);
        for (std::size_t i = 0; i < n; ++i) {
            lee_flow[i] = std::exp(s * lee[i]);
            anti_flow[i] = std::polar(1.0, s * lee[i]);
        }
        r.flow_checks.push_back({"lee", s, std::abs(pullback_ratio(t, lee_flow, point) - 1.0)});
        r.flow_checks.push_back({"anti-lee", s, std::abs(pullback_ratio(t, anti_flow, point) - 1.0)});
    }
    bool numeric_ok = true;
    for (const auto& c : r.flow_checks)
        numeric_ok = numeric_ok && c.residual < r.flow_tolerance;
    if (numeric_ok != r.symbolic_zero)
        throw Error(ErrorCode::NumericMismatch, "flow pullback disagrees with the symbolic Lie eigenvalue");
    r.invariant = r.symbolic_zero && numeric_ok;
    return r;
}

} // namespace hopflab
