#pragma once

// The Zariski closure of <A> in GL(n, C), modelled as the diagonal subgroup
// { g : prod g_i^{m_i} = 1 for every m in the relation lattice }.

#include "hopflab/eigendata.hpp"
#include "hopflab/relation_lattice.hpp"

#include <complex>
#include <span>
#include <vector>

namespace hopflab {

enum class Verdict { True, False, Indeterminate };

/// Float comparisons against 1 (or 0): below `accept` is a match, at or above
/// `reject` a mismatch, anything in between is indeterminate.
struct Tolerance {
    double accept = 1e-10;
    double reject = 1e-7;

    Verdict classify(double residual) const {
        if (residual < accept)
            return Verdict::True;
        if (residual >= reject)
            return Verdict::False;
        return Verdict::Indeterminate;
    }
};

struct TorusClosure {
    std::size_t n = 0;
    RelationLattice lattice;

    std::size_t dim_connected() const noexcept { return n - lattice.rank(); }
    bool certified() const noexcept { return lattice.certified; }
};

TorusClosure closure(const ContractionSpec& spec, const HeuristicOptions& options = {});
TorusClosure closure(RelationLattice lattice);

/// chi_m(g) = prod g_i^{m_i}.
Scalar character(std::span<const std::int64_t> m, const DiagonalElement& g);

/// Exact when g is exact; otherwise classified with `tol` on |chi_m(g) - 1|.
Verdict contains_verdict(const TorusClosure& c, const DiagonalElement& g, const Tolerance& tol = {});

/// Strict form: throws PrecisionExhausted on an indeterminate float verdict.
bool contains(const TorusClosure& c, const DiagonalElement& g, const Tolerance& tol = {});

/// contains(closure(spec), A_1). Requires a certified (exact) spec.
bool verify_real_part(const ContractionSpec& spec);

/// sum_i m_i v_i == 0 for every basis relation m, up to a relative tolerance.
bool lie_algebra_contains(const TorusClosure& c, std::span<const std::complex<double>> v,
                          double relative_tolerance = 1e-12);
bool lie_algebra_contains(const TorusClosure& c, std::span<const double> v,
                          double relative_tolerance = 1e-12);

/// Exact test that log A_1 lies in Lie(G): prod |alpha_i|^{m_i} == 1 for
/// every basis relation. Requires an exact spec.
bool lie_algebra_contains_log_real_part(const TorusClosure& c, const ContractionSpec& spec);

} // namespace hopflab
