#pragma once

// Plurigenera and Kodaira dimension of diagonal Hopf manifolds, and
// quasi-regularity of the canonical foliation.

#include "hopflab/eigendata.hpp"
#include "hopflab/integer_lattice.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hopflab {

enum class CountMethod { ClosedForm, Enumeration };

struct PluricanonicalCount {
    std::size_t k = 0;
    std::uint64_t count = 0;
    CountMethod method = CountMethod::ClosedForm;
};

/// Number of monomials z^m (|m| <= max_degree, m >= 0) with
/// alpha^m (prod alpha_i)^k == 1. Exact for exact specs; float specs compare
/// log-moduli.
std::uint64_t enumerate_pluricanonical(const ContractionSpec& spec, std::size_t k, std::size_t max_degree);

/// Closed form: 1 for k = 0 and 0 for k >= 1, since every weight has modulus
/// prod |alpha_i|^{m_i + k} > 1. With verify_degree > 0 the enumerator is
/// run as well and a disagreement raises InternalAssertion.
PluricanonicalCount pluricanonical_dimension(const ContractionSpec& spec, std::size_t k,
                                             std::size_t verify_degree = 0);

/// Value in {-inf} u {0, 1, 2, ...}; nullopt encodes -inf.
struct KodairaDimension {
    std::optional<int> value;
    std::string certificate;

    bool is_minus_infinity() const noexcept { return !value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "-inf"; }
};

KodairaDimension kodaira_dimension(const ContractionSpec& spec);

/// Growth exponent of a plurigenus sequence counts[k-1], k = 1..K: -inf when
/// the sequence vanishes, 0 when bounded, else the rounded log-log slope of
/// the nonzero tail.
KodairaDimension kodaira_from_counts(std::span<const std::uint64_t> counts);

struct QuasiRegularReport {
    bool is_quasi_regular = false;
    IntVector weights;          // coprime, positive
    Rational base_modulus;      // |c| with |alpha_i| = |c|^{w_i}
    std::int64_t power = 0;     // least p >= 1 with A^p = c_p^w for one complex c_p
    Rational base_arg_over_pi;  // arg(c_p) / pi
};

/// Quasi-regular iff the log-moduli are commensurable, i.e. the Lee /
/// anti-Lee orbits close up. Exact specs only (NotCertified otherwise).
QuasiRegularReport detect_quasi_regular(const ContractionSpec& spec);

/// Number of monomials of weighted degree `degree` for weights w.
std::uint64_t weighted_monomial_count(std::span<const std::int64_t> weights, std::int64_t degree);

struct LeafSpaceSummary {
    IntVector weights;
    std::string leaf_space;          // "P^1", "P(1,2,3)", ...
    KodairaDimension kodaira_leaf_space;
    KodairaDimension kodaira_manifold;
    std::vector<std::uint64_t> leaf_plurigenera; // k = 1..max_k
    bool consistent = false;         // kappa(M) == kappa(X)
    std::string adjunction;
};

/// Throws NotQuasiRegular when the report is negative.
LeafSpaceSummary leaf_space_summary(const QuasiRegularReport& report, const ContractionSpec& spec,
                                    std::size_t max_k = 10);

} // namespace hopflab
