#include "hopflab/tensor_invariants.hpp"

#include "hopflab/error.hpp"
#include "hopflab/zariski_closure.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hopflab {

namespace {

// Calls f(counts) for every vector of n nonnegative integers summing to total.
void for_each_composition(std::size_t total, std::size_t n,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> counts(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == n) {
            counts[pos] = left;
            f(counts);
            return;
        }
        for (std::size_t c = left + 1; c-- > 0;) {
            counts[pos] = c;
            rec(pos + 1, left - c);
        }
    };
    rec(0, total);
}

std::size_t multinomial(const std::vector<std::size_t>& counts) {
    std::size_t result = 1, seen = 0;
    for (auto c : counts)
        for (std::size_t i = 1; i <= c; ++i) {
            ++seen;
            result = result * seen / i;
        }
    return result;
}

std::vector<std::vector<std::size_t>> arrangements(const std::vector<std::size_t>& counts) {
    std::vector<std::size_t> seq;
    for (std::size_t j = 0; j < counts.size(); ++j)
        seq.insert(seq.end(), counts[j], j);
    std::vector<std::vector<std::size_t>> out;
    do
        out.push_back(seq);
    while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

// Visits every (up-counts, down-counts) pair whose exponent vector is a relation.
template <class Visit>
void for_each_invariant_stratum(const RelationLattice& lattice, std::size_t k, std::size_t l,
                                std::map<IntVector, bool>& memo, Visit&& visit) {
    const std::size_t n = lattice.n;
    for_each_composition(k, n, [&](const std::vector<std::size_t>& up) {
        for_each_composition(l, n, [&](const std::vector<std::size_t>& down) {
            IntVector e(n);
            for (std::size_t j = 0; j < n; ++j)
                e[j] = static_cast<std::int64_t>(up[j]) - static_cast<std::int64_t>(down[j]);
            auto it = memo.find(e);
            if (it == memo.end())
                it = memo.emplace(e, is_relation(lattice, e)).first;
            if (it->second)
                visit(up, down);
        });
    });
}

} // namespace

IntVector TensorMonomialIndex::exponents(std::size_t n) const {
    IntVector e(n, 0);
    for (auto i : up) {
        if (i >= n)
            throw Error(ErrorCode::DimensionMismatch, "tensor index out of range");
        ++e[i];
    }
    for (auto i : down) {
        if (i >= n)
            throw Error(ErrorCode::DimensionMismatch, "tensor index out of range");
        --e[i];
    }
    return e;
}

Scalar weight(const TensorMonomialIndex& idx, const DiagonalElement& g) {
    return character(idx.exponents(g.size()), g);
}

void check_caps(std::size_t n, std::size_t k, std::size_t l, const EnumerationCaps& caps) {
    if (k + l > caps.max_total_degree)
        throw Error(ErrorCode::EnumerationCapExceeded,
                    "k + l = " + std::to_string(k + l) + " exceeds cap " +
                        std::to_string(caps.max_total_degree));
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < k + l; ++i) {
        tuples *= n;
        if (tuples > caps.max_tuples)
            throw Error(ErrorCode::EnumerationCapExceeded,
                        "n^(k+l) exceeds tuple cap " + std::to_string(caps.max_tuples));
    }
}

InvariantSet enumerate_invariants(const RelationLattice& lattice, std::size_t k, std::size_t l,
                                  const EnumerationCaps& caps) {
    check_caps(lattice.n, k, l, caps);
    InvariantSet out{k, l, {}, 0, lattice.certified};
    std::map<IntVector, bool> memo;
    std::map<IntVector, bool> distinct;
    for_each_invariant_stratum(lattice, k, l, memo, [&](const auto& up, const auto& down) {
        IntVector e(lattice.n);
        for (std::size_t j = 0; j < lattice.n; ++j)
            e[j] = static_cast<std::int64_t>(up[j]) - static_cast<std::int64_t>(down[j]);
        distinct[e] = true;
        const auto ups = arrangements(up);
        const auto downs = arrangements(down);
        for (const auto& u : ups)
            for (const auto& d : downs)
                out.indices.push_back(TensorMonomialIndex{u, d});
    });
    std::sort(out.indices.begin(), out.indices.end());
    out.exponent_count = distinct.size();
    return out;
}

InvariantSet enumerate_invariants(const ContractionSpec& spec, std::size_t k, std::size_t l,
                                  const EnumerationCaps& caps) {
    check_caps(spec.n(), k, l, caps);
    return enumerate_invariants(relation_lattice(spec), k, l, caps);
}

InvariantCount count_invariants(const RelationLattice& lattice, std::size_t k, std::size_t l,
                                const EnumerationCaps& caps) {
    check_caps(lattice.n, k, l, caps);
    InvariantCount out{0, 0, lattice.certified};
    std::map<IntVector, bool> memo;
    std::map<IntVector, bool> distinct;
    for_each_invariant_stratum(lattice, k, l, memo, [&](const auto& up, const auto& down) {
        IntVector e(lattice.n);
        for (std::size_t j = 0; j < lattice.n; ++j)
            e[j] = static_cast<std::int64_t>(up[j]) - static_cast<std::int64_t>(down[j]);
        distinct[e] = true;
        out.ordered_count += multinomial(up) * multinomial(down);
    });
    out.exponent_count = distinct.size();
    return out;
}

std::size_t invariant_dimension(const ContractionSpec& spec, std::size_t k, std::size_t l,
                                const EnumerationCaps& caps) {
    check_caps(spec.n(), k, l, caps);
    return count_invariants(relation_lattice(spec), k, l, caps).ordered_count;
}

bool check_A1_fixes_invariants(const ContractionSpec& spec, std::size_t k, std::size_t l,
                               const EnumerationCaps& caps) {
    const InvariantSet set = enumerate_invariants(spec, k, l, caps);
    const DiagonalElement a1 = real_part_operator(spec);
    const Tolerance tol;
    for (const auto& idx : set.indices) {
        const Scalar w = weight(idx, a1);
        if (w.is_exact() ? !w.as_exact().is_one()
                         : tol.classify(std::abs(w.to_complex() - 1.0)) != Verdict::True)
            return false;
    }
    return true;
}

} // namespace hopflab
