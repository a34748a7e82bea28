#pragma once

// L = { m in Z^n : prod_i alpha_i^{m_i} = 1 }, the multiplicative relations
// among the eigenvalues of the deck generator.

#include "hopflab/eigendata.hpp"
#include "hopflab/integer_lattice.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hopflab {

struct RelationLattice {
    std::size_t n = 0;
    IntMatrix basis; // HNF rows
    bool certified = false;

    std::size_t rank() const noexcept { return basis.size(); }
    friend bool operator==(const RelationLattice&, const RelationLattice&) = default;
};

/// Integer data deciding prod alpha_i^{e_i} == 1 exactly for an exact spec:
/// the exponent vector must kill every prime row and the argument sum must be
/// an even multiple of pi.
struct CharacterTable {
    std::vector<std::uint64_t> primes;
    IntMatrix prime_exponents;   // primes.size() rows, n columns
    IntVector turn_numerators;   // arg_over_pi_i == turn_numerators[i] / turn_denominator
    std::int64_t turn_denominator = 1;

    std::size_t n() const noexcept { return turn_numerators.size(); }
    bool is_trivial(std::span<const std::int64_t> exponents) const;
    /// Modulus part only: prod |alpha_i|^{e_i} == 1.
    bool modulus_is_trivial(std::span<const std::int64_t> exponents) const;
};

CharacterTable character_table(const ContractionSpec& spec, std::uint64_t trial_bound = 1u << 16);

/// Certified lattice for an exact spec.
RelationLattice exact_relation_lattice(const ContractionSpec& spec);

struct HeuristicOptions {
    int height_bound = 12;
    double tolerance = 1e-12;
};

/// Integer relation detection by LLL on (log|alpha|, arg alpha, 2 pi) for a
/// float spec. Every returned vector is verified in 50-digit arithmetic.
/// Throws PrecisionExhausted when a candidate falls in the band
/// [tolerance, 1e3 * tolerance) or when two embedding scales disagree.
RelationLattice heuristic_relation_lattice(const ContractionSpec& spec, int height_bound,
                                           double tolerance);

/// Exact lattice for exact specs, heuristic lattice (default options) otherwise.
RelationLattice relation_lattice(const ContractionSpec& spec, const HeuristicOptions& options = {});

/// Membership of m in the Z-span of the basis. Throws DimensionMismatch.
bool is_relation(const RelationLattice& lattice, std::span<const std::int64_t> m);

/// Lattice with coordinates reordered the same way permute_spec reorders
/// eigenvalues.
RelationLattice permute_lattice(const RelationLattice& lattice, std::span<const std::size_t> perm);

} // namespace hopflab
