#pragma once

// A-invariant eigenvectors z_{up_1} x ... x z_{up_k} x zeta_{down_1} x ... x zeta_{down_l}
// of W = V^{(x)k} (x) (V*)^{(x)l}.

#include "hopflab/eigendata.hpp"
#include "hopflab/relation_lattice.hpp"

#include <cstdint>
#include <vector>

namespace hopflab {

/// Indices are 0-based internally; JSON output is 1-based.
struct TensorMonomialIndex {
    std::vector<std::size_t> up;   // V factors
    std::vector<std::size_t> down; // V* factors

    /// e_j = #{i : up_i = j} - #{i : down_i = j}. Throws DimensionMismatch
    /// if an index is out of range.
    IntVector exponents(std::size_t n) const;

    friend auto operator<=>(const TensorMonomialIndex&, const TensorMonomialIndex&) = default;
};

/// prod g_{up_i} * prod g_{down_j}^{-1}; exact when g is exact.
Scalar weight(const TensorMonomialIndex& idx, const DiagonalElement& g);

struct EnumerationCaps {
    std::size_t max_total_degree = 8;   // k + l
    std::size_t max_tuples = 10'000'000; // n^(k+l)
};

struct InvariantSet {
    std::size_t k = 0;
    std::size_t l = 0;
    std::vector<TensorMonomialIndex> indices; // sorted
    std::size_t exponent_count = 0;           // distinct exponent vectors
    bool certified = false;

    std::size_t ordered_count() const noexcept { return indices.size(); }
};

struct InvariantCount {
    std::size_t ordered_count = 0;
    std::size_t exponent_count = 0;
    bool certified = false;
};

/// Throws EnumerationCapExceeded if (k, l) breaks the caps.
void check_caps(std::size_t n, std::size_t k, std::size_t l, const EnumerationCaps& caps);

InvariantSet enumerate_invariants(const RelationLattice& lattice, std::size_t k, std::size_t l,
                                  const EnumerationCaps& caps = {});
InvariantSet enumerate_invariants(const ContractionSpec& spec, std::size_t k, std::size_t l,
                                  const EnumerationCaps& caps = {});

/// Counts without materialising the tuples (multinomial expansion).
InvariantCount count_invariants(const RelationLattice& lattice, std::size_t k, std::size_t l,
                                const EnumerationCaps& caps = {});

std::size_t invariant_dimension(const ContractionSpec& spec, std::size_t k, std::size_t l,
                                const EnumerationCaps& caps = {});

/// weight(idx, A_1) == 1 for every enumerated A-invariant idx.
bool check_A1_fixes_invariants(const ContractionSpec& spec, std::size_t k, std::size_t l,
                               const EnumerationCaps& caps = {});

} // namespace hopflab
