#include "doctest.h"

#include "hopflab/error.hpp"
#include "hopflab/field_tensors.hpp"
#include "hopflab/relation_lattice.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace hopflab;
using oracle::exact_spec;
using oracle::float_spec;

namespace {

MonomialTensorField field(IntVector m, std::vector<std::size_t> vectors, std::vector<std::size_t> forms = {}) {
    return {std::move(m), std::move(vectors), std::move(forms)};
}

} // namespace

TEST_CASE("deck weights") {
    const auto s = exact_spec({{2, 0}, {3, 0}});
    CHECK(deck_weight(field({1, 0}, {0}), s).as_exact().is_one());
    CHECK(deck_weight(field({1, 0}, {1}), s).as_exact().modulus() == Rational(2, 3));
    CHECK(deck_weight(field({0, 0}, {}, {0, 1}), s).as_exact().modulus() == 6);
}

TEST_CASE("descent") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const auto spec = oracle::random_exact_spec(rng);
        IntVector m(spec.n(), 0);
        m[0] = 1;
        CHECK(descends(field(m, {0}), spec));
    }
    CHECK_FALSE(descends(field({1, 0}, {1}), exact_spec({{2, 0}, {3, 0}})));
    CHECK(descends(field({0, 4}, {0, 0, 0, 0}), exact_spec({{2, 0}, {2, Rational(1, 2)}})));
}

TEST_CASE("Lie eigenvalues") {
    const std::vector<std::complex<double>> v{std::numbers::ln2, std::log(3.0)};
    CHECK(std::abs(lie_eigenvalue(field({1, 0}, {0}), v)) == 0.0);
    CHECK(std::abs(lie_eigenvalue(field({1, 0}, {1}), v) - (std::numbers::ln2 - std::log(3.0))) < 1e-15);
    CHECK(std::abs(lie_eigenvalue(field({0, 0}, {}), v)) == 0.0);
}

TEST_CASE("Lee invariance examples") {
    const auto s = exact_spec({{2, 0}, {2, Rational(1, 2)}});
    const auto euler = verify_lee_invariance(field({1, 0}, {0}), s);
    CHECK(euler.invariant);
    CHECK(euler.mu_lee == std::complex<double>(0));
    CHECK(euler.mu_anti_lee == std::complex<double>(0));
    const auto quartic = verify_lee_invariance(field({0, 4}, {0, 0, 0, 0}), s);
    CHECK(quartic.invariant);
    CHECK(quartic.certified);
    try {
        verify_lee_invariance(field({1, 0}, {1}), exact_spec({{2, 0}, {3, 0}}));
        FAIL("expected NotDescending");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDescending);
    }
}

TEST_CASE("invalid fields") {
    CHECK_THROWS_AS(field({-1, 0}, {}).exponents(), Error);
    CHECK_THROWS_AS(field({1, 0}, {2}).exponents(), Error);
}

TEST_CASE("pullback ratio matches the diagonal closed form") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto t = oracle::random_descending_field(relation_lattice(spec), rng);
        std::vector<std::complex<double>> d(spec.n());
        for (auto& x : d)
            x = std::polar(0.5 + static_cast<double>(rng() % 100) / 50.0, static_cast<double>(rng() % 628) / 100.0);
        const auto z = default_probe_point(spec.n());
        const auto expected = oracle::diagonal_pullback(t, d);
        CHECK(std::abs(pullback_ratio(t, d, z) - expected) < 1e-10 * std::abs(expected));
    }
}

TEST_CASE("property: descending fields are Lee and anti-Lee invariant") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = oracle::random_exact_spec(rng);
        const auto t = oracle::random_descending_field(relation_lattice(spec), rng);
        CHECK(deck_weight(t, spec).as_exact().is_one());
        CHECK(lee_eigenvalue_argument(t, spec) == 1);
        const auto r = verify_lee_invariance(t, spec);
        CHECK(r.invariant);
        for (const auto& c : r.flow_checks)
            CHECK(c.residual < 1e-10);
    }
}

TEST_CASE("float specs use the tolerance") {
    const auto s = float_spec({{2.0, 0.0}, {0.0, 2.0}});
    const auto r = verify_lee_invariance(field({0, 4}, {0, 0, 0, 0}), s);
    CHECK(r.invariant);
    CHECK_FALSE(r.certified);
}
