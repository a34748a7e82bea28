#include "doctest.h"

#include "hopflab/error.hpp"
#include "hopflab/tensor_invariants.hpp"
#include "oracles.hpp"

#include <set>

using namespace hopflab;
using oracle::exact_spec;

namespace {

// Every ordered tuple, weight evaluated by the exact-power oracle.
std::vector<TensorMonomialIndex> brute_force(const ContractionSpec& spec, std::size_t k, std::size_t l) {
    std::vector<TensorMonomialIndex> out;
    const std::size_t n = spec.n();
    oracle::for_each_tuple(n, k + l, [&](const std::vector<std::size_t>& t) {
        TensorMonomialIndex idx{{t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k)},
                                {t.begin() + static_cast<std::ptrdiff_t>(k), t.end()}};
        IntVector e(n, 0);
        for (auto i : idx.up)
            ++e[i];
        for (auto i : idx.down)
            --e[i];
        if (oracle::exact_power_is_one(spec, e))
            out.push_back(idx);
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("weights") {
    const auto s = exact_spec({{2, 0}, {3, 0}});
    CHECK(weight({{0}, {1}}, s.as_element()).as_exact().modulus() == Rational(2, 3));
    CHECK(weight({{1}, {1}}, s.as_element()).as_exact().is_one());
    const auto t = exact_spec({{2, 0}, {2, Rational(1, 2)}});
    CHECK(weight({{1, 1, 1, 1}, {0, 0, 0, 0}}, t.as_element()).as_exact().is_one());
}

TEST_CASE("enumeration examples") {
    const auto s = exact_spec({{2, 0}, {3, 0}});
    const auto set = enumerate_invariants(s, 1, 1);
    CHECK(set.indices == std::vector<TensorMonomialIndex>{{{0}, {0}}, {{1}, {1}}});
    CHECK(set.ordered_count() == 2);
    CHECK(invariant_dimension(s, 2, 1) == 0);
    const auto scalar = exact_spec({{5, Rational(1, 7)}, {5, Rational(1, 7)}});
    CHECK(enumerate_invariants(scalar, 1, 1).ordered_count() == 4);
    CHECK(invariant_dimension(scalar, 2, 1) == 0);
    CHECK(invariant_dimension(scalar, 3, 1) == 0);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i)
        CHECK(invariant_dimension(oracle::random_exact_spec(rng), 1, 0) == 0);
}

TEST_CASE("A_1 fixes the invariants of (2, 2i)") {
    CHECK(check_A1_fixes_invariants(exact_spec({{2, 0}, {2, Rational(1, 2)}}), 4, 4));
    CHECK(check_A1_fixes_invariants(exact_spec({{2, 0}, {3, 0}}), 2, 3));
}

TEST_CASE("property: enumeration equals brute force over all tuples") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = oracle::random_exact_spec(rng, {4, true});
        for (std::size_t k = 0; k <= 3; ++k)
            for (std::size_t l = 0; l + k <= 4; ++l) {
                const auto set = enumerate_invariants(spec, k, l);
                CHECK(set.indices == brute_force(spec, k, l));
                const auto count = count_invariants(relation_lattice(spec), k, l);
                CHECK(count.ordered_count == set.ordered_count());
                CHECK(count.exponent_count == set.exponent_count);
                std::set<IntVector> distinct;
                for (const auto& idx : set.indices)
                    distinct.insert(idx.exponents(spec.n()));
                CHECK(distinct.size() == set.exponent_count);
            }
    }
}

TEST_CASE("property: A_1 fixes every A-invariant, modulus argument") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto a1 = real_part_operator(spec);
        for (std::size_t k = 0; k <= 3; ++k)
            for (std::size_t l = 0; k + l <= 4; ++l)
                for (const auto& idx : enumerate_invariants(spec, k, l).indices) {
                    CHECK(weight(idx, spec.as_element()).as_exact().modulus() == 1);
                    CHECK(weight(idx, a1).as_exact().is_one());
                }
    }
}

TEST_CASE("property: (k, l) <-> (l, k) with inverted eigenvalues") {
    // alpha^{-1} is expanding, so it is not a valid spec; its weights are
    // checked directly. A tuple of type (l, k) for alpha^{-1} has exponent
    // vector -e, so the invariant counts must match the (k, l) counts.
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = oracle::random_exact_spec(rng, {4, true});
        std::vector<ExactPolar> inv;
        for (const auto& e : spec.eigenvalues())
            inv.push_back(e.as_exact().inverse());
        const auto lattice = relation_lattice(spec);
        for (std::size_t k = 0; k <= 3; ++k)
            for (std::size_t j = 0; j + k <= 4; ++j) {
                std::size_t inverted = 0;
                oracle::for_each_tuple(spec.n(), k + j, [&](const std::vector<std::size_t>& t) {
                    ExactPolar w;
                    for (std::size_t s = 0; s < t.size(); ++s)
                        w = w * (s < j ? inv[t[s]] : inv[t[s]].inverse());
                    inverted += w.is_one();
                });
                CHECK(count_invariants(lattice, k, j).ordered_count == inverted);
            }
    }
}

TEST_CASE("caps are enforced") {
    const auto s = exact_spec({{2, 0}, {3, 0}});
    CHECK_THROWS_AS(enumerate_invariants(s, 5, 4), Error);
    const auto big = exact_spec({{2, 0}, {3, 0}, {5, 0}, {7, 0}, {11, 0}, {13, 0}, {17, 0}, {19, 0}, {23, 0},
                                 {29, 0}, {31, 0}, {37, 0}, {41, 0}, {43, 0}, {47, 0}, {53, 0}, {59, 0}, {61, 0},
                                 {67, 0}, {71, 0}, {73, 0}, {79, 0}, {83, 0}, {89, 0}, {97, 0}, {101, 0}});
    try {
        enumerate_invariants(big, 3, 3);
        FAIL("expected cap error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EnumerationCapExceeded);
    }
}
