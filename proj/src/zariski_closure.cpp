#include "hopflab/zariski_closure.hpp"

#include "hopflab/error.hpp"

#include <cmath>

namespace hopflab {

TorusClosure closure(const ContractionSpec& spec, const HeuristicOptions& options) {
    return closure(relation_lattice(spec, options));
}

TorusClosure closure(RelationLattice lattice) {
    TorusClosure c{lattice.n, std::move(lattice)};
    check_invariant(c.dim_connected() >= 1, "closure of an expanding cyclic group must be positive-dimensional");
    return c;
}

Scalar character(std::span<const std::int64_t> m, const DiagonalElement& g) {
    if (m.size() != g.size())
        throw Error(ErrorCode::DimensionMismatch, "character and element have different lengths");
    Scalar acc = Scalar::exact(1);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0)
            acc = acc * g.entries[i].pow(m[i]);
    return acc;
}

Verdict contains_verdict(const TorusClosure& c, const DiagonalElement& g, const Tolerance& tol) {
    if (g.size() != c.n)
        throw Error(ErrorCode::DimensionMismatch, "element dimension differs from closure dimension");
    Verdict worst = Verdict::True;
    for (const auto& m : c.lattice.basis) {
        const Scalar chi = character(m, g);
        if (chi.is_exact()) {
            if (!chi.as_exact().is_one())
                return Verdict::False;
            continue;
        }
        const Verdict v = tol.classify(std::abs(chi.to_complex() - 1.0));
        if (v == Verdict::False)
            return Verdict::False;
        if (v == Verdict::Indeterminate)
            worst = Verdict::Indeterminate;
    }
    return worst;
}

bool contains(const TorusClosure& c, const DiagonalElement& g, const Tolerance& tol) {
    const Verdict v = contains_verdict(c, g, tol);
    if (v == Verdict::Indeterminate)
        throw Error(ErrorCode::PrecisionExhausted, "membership is within the tolerance band");
    return v == Verdict::True;
}

bool verify_real_part(const ContractionSpec& spec) {
    if (!spec.is_exact())
        throw Error(ErrorCode::NotCertified, "real-part verification needs a certified lattice");
    return contains(closure(spec), real_part_operator(spec));
}

bool lie_algebra_contains(const TorusClosure& c, std::span<const std::complex<double>> v,
                          double relative_tolerance) {
    if (v.size() != c.n)
        throw Error(ErrorCode::DimensionMismatch, "Lie algebra vector has wrong length");
    for (const auto& m : c.lattice.basis) {
        std::complex<double> sum = 0;
        double scale = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            sum += static_cast<double>(m[i]) * v[i];
            scale += std::abs(static_cast<double>(m[i])) * std::abs(v[i]);
        }
        if (std::abs(sum) > relative_tolerance * scale)
            return false;
    }
    return true;
}

bool lie_algebra_contains(const TorusClosure& c, std::span<const double> v, double relative_tolerance) {
    std::vector<std::complex<double>> z(v.begin(), v.end());
    return lie_algebra_contains(c, z, relative_tolerance);
}

bool lie_algebra_contains_log_real_part(const TorusClosure& c, const ContractionSpec& spec) {
    if (!spec.is_exact())
        throw Error(ErrorCode::NotCertified, "exact Lie algebra test needs an exact spec");
    const DiagonalElement a1 = real_part_operator(spec);
    for (const auto& m : c.lattice.basis)
        if (!character(m, a1).as_exact().is_one())
            return false;
    return true;
}

} // namespace hopflab
