#include "doctest.h"

#include "hopflab/error.hpp"
#include "hopflab/relation_lattice.hpp"
#include "oracles.hpp"

using namespace hopflab;
using oracle::exact_spec;
using oracle::float_spec;

namespace {

// is_relation(L, m) <=> alpha^m == 1 on the whole box.
void check_against_brute_force(const ContractionSpec& spec, const RelationLattice& l, std::int64_t bound) {
    oracle::for_each_in_box(spec.n(), bound, [&](const IntVector& m) {
        CHECK(is_relation(l, m) == oracle::exact_power_is_one(spec, m));
    });
    for (const auto& row : l.basis)
        CHECK(oracle::exact_power_is_one(spec, row));
}

} // namespace

TEST_CASE("equal moduli give (1, -1)") {
    const auto spec = exact_spec({{2, 0}, {2, 0}});
    const auto l = exact_relation_lattice(spec);
    CHECK(l.basis == IntMatrix{{1, -1}});
    CHECK(l.certified);
    check_against_brute_force(spec, l, 5);
}

TEST_CASE("(2, 3) has no relation") {
    const auto spec = exact_spec({{2, 0}, {3, 0}});
    const auto l = exact_relation_lattice(spec);
    CHECK(l.rank() == 0);
    check_against_brute_force(spec, l, 8);
}

TEST_CASE("(2, 2i) gives (4, -4)") {
    const auto spec = exact_spec({{2, 0}, {2, Rational(1, 2)}});
    const auto l = exact_relation_lattice(spec);
    CHECK(l.basis == IntMatrix{{4, -4}});
    check_against_brute_force(spec, l, 8);
}

TEST_CASE("single eigenvalue has rank 0") {
    CHECK(exact_relation_lattice(exact_spec({{2, 0}})).rank() == 0);
    // even a root-of-unity argument cannot make a modulus > 1 trivial
    CHECK(exact_relation_lattice(exact_spec({{2, Rational(1, 3)}})).rank() == 0);
}

TEST_CASE("membership examples") {
    RelationLattice l{2, {{1, -1}}, true};
    CHECK(is_relation(l, IntVector{3, -3}));
    CHECK_FALSE(is_relation(l, IntVector{1, 1}));
    RelationLattice l4{2, {{4, -4}}, true};
    CHECK_FALSE(is_relation(l4, IntVector{2, -2}));
    CHECK_THROWS_AS(is_relation(l, IntVector{1, 1, 1}), Error);
}

TEST_CASE("property: random exact specs agree with brute force") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto l = exact_relation_lattice(spec);
        CHECK(l.certified);
        const std::int64_t bound = spec.n() <= 2 ? 6 : spec.n() == 3 ? 4 : 2;
        check_against_brute_force(spec, l, bound);
    }
}

TEST_CASE("property: lattice is canonical under permutation and reconstruction") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 80; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto l = exact_relation_lattice(spec);
        std::vector<std::size_t> perm(spec.n());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(exact_relation_lattice(permute_spec(spec, perm)) == permute_lattice(l, perm));
        CHECK(exact_relation_lattice(spec) == l);
    }
}

TEST_CASE("property: A^p has a superlattice") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto l = exact_relation_lattice(spec);
        const auto p = 1 + static_cast<std::int64_t>(rng() % 3);
        RelationLattice lp;
        try {
            lp = exact_relation_lattice(power_spec(spec, p));
        } catch (const Error& e) {
            // moduli must fit in 64 bits; nothing else may fail
            CHECK(e.code() == ErrorCode::Overflow);
            continue;
        }
        for (const auto& row : l.basis)
            CHECK(is_relation(lp, row));
        CHECK(lp.rank() >= l.rank());
    }
}

TEST_CASE("character table decides triviality exactly") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto table = character_table(spec);
        oracle::for_each_in_box(spec.n(), spec.n() <= 2 ? 5 : 2, [&](const IntVector& m) {
            CHECK(table.is_trivial(m) == oracle::exact_power_is_one(spec, m));
        });
    }
    CHECK_THROWS_AS(character_table(float_spec({{2.0, 0.0}})), Error);
}

TEST_CASE("heuristic lattice examples") {
    CHECK(heuristic_relation_lattice(float_spec({{2.0, 0.0}, {2.0, 0.0}}), 10, 1e-12).basis == IntMatrix{{1, -1}});
    CHECK(heuristic_relation_lattice(float_spec({{2.0, 0.0}, {3.0, 0.0}}), 10, 1e-12).rank() == 0);
    const auto near = heuristic_relation_lattice(float_spec({{2.0, 0.0}, {2.0000001, 0.0}}), 10, 1e-12);
    CHECK(near.rank() == 0);
    CHECK_FALSE(near.certified);
    CHECK(heuristic_relation_lattice(float_spec({{2.0, 0.0}, {0.0, 2.0}}), 12, 1e-12).basis == IntMatrix{{4, -4}});
    CHECK_THROWS_AS(heuristic_relation_lattice(exact_spec({{2, 0}}), 10, 1e-12), Error);
}

TEST_CASE("heuristic lattice: exhaustive oracle on the near-relation example") {
    // no m with |m_i| <= 10 verifies to 1e-12 for (2, 2.0000001)
    const std::complex<double> a(2.0, 0.0), b(2.0000001, 0.0);
    bool any = false;
    oracle::for_each_in_box(2, 10, [&](const IntVector& m) {
        if (m[0] == 0 && m[1] == 0)
            return;
        const auto v = std::pow(a, static_cast<double>(m[0])) * std::pow(b, static_cast<double>(m[1]));
        any = any || std::abs(v - 1.0) < 1e-12;
    });
    CHECK_FALSE(any);
}

TEST_CASE("heuristic reproduces the exact lattice on cast specs") {
    std::mt19937_64 rng(31337);
    int agree = 0, flagged = 0, wrong = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto exact = exact_relation_lattice(spec);
        // relations beyond the height bound are out of reach by design
        std::int64_t height = 0;
        for (const auto& row : exact.basis)
            for (auto x : row)
                height = std::max<std::int64_t>(height, std::abs(x));
        if (height > 12)
            continue;
        try {
            const auto h = heuristic_relation_lattice(to_float_spec(spec), 12, 1e-12);
            if (h.basis == exact.basis)
                ++agree;
            else
                ++wrong;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PrecisionExhausted);
            ++flagged;
        }
    }
    CHECK(wrong == 0);
    CHECK(agree >= 0.95 * (agree + flagged));
}
