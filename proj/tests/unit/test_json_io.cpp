#include "doctest.h"

#include "hopflab/error.hpp"
#include "hopflab/json_io.hpp"
#include "oracles.hpp"

using namespace hopflab;

namespace {

ErrorCode code_of(std::string_view text) {
    try {
        spec_from_text(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalAssertion;
}

} // namespace

TEST_CASE("exact spec input") {
    const auto s = spec_from_text(
        R"({"mode":"exact","eigenvalues":[{"modulus":{"num":3,"den":2},"arg_over_pi":{"num":1,"den":3}},{"modulus":2}]})");
    CHECK(s.n() == 2);
    CHECK(s[0].as_exact().modulus() == Rational(3, 2));
    CHECK(s[0].as_exact().arg_over_pi() == Rational(1, 3));
    CHECK(s[1].as_exact().arg_over_pi() == 0);
    const auto t = spec_from_text(R"({"eigenvalues":[{"modulus":"7/3","arg_over_pi":"-1/4"}]})");
    CHECK(t[0].as_exact().modulus() == Rational(7, 3));
}

TEST_CASE("float spec input") {
    const auto s = spec_from_text(R"({"mode":"float","eigenvalues":[{"re":0.0,"im":2.0}]})");
    CHECK_FALSE(s.is_exact());
    CHECK(s[0].to_complex() == std::complex<double>(0, 2));
}

TEST_CASE("bad input is reported with a specific code") {
    CHECK(code_of("not json") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"exact"})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[]})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"weird","eigenvalues":[{"re":2}]})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[{"modulus":1.5}]})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[{"modulus":{"num":1,"den":0}}]})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[{"modulus":1}]})") == ErrorCode::ModulusNotGreaterThanOne);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[{"modulus":-3}]})") == ErrorCode::ModulusNotGreaterThanOne);
    CHECK(code_of(R"({"mode":"float","eigenvalues":[{"re":1.0},{"re":2.0}]})") ==
          ErrorCode::ModulusNotGreaterThanOne);
    CHECK(code_of(R"({"mode":"exact","eigenvalues":[{"re":2.0}]})") == ErrorCode::MixedModes);
    CHECK(code_of(R"({"mode":"float","eigenvalues":[{"modulus":2}]})") == ErrorCode::MixedModes);
}

TEST_CASE("round trip") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
        const auto s = oracle::random_exact_spec(rng);
        CHECK(spec_from_json(spec_to_json(s)) == s);
        const auto f = to_float_spec(s);
        CHECK(spec_from_json(spec_to_json(f)) == f);
    }
    const Rational huge = oracle::rat_pow(Rational(10), 30) + 1;
    CHECK(rational_from_json(rational_to_json(huge)) == huge);
}

TEST_CASE("lattices and fields") {
    const RelationLattice l{2, {{4, -4}}, true};
    CHECK(lattice_from_json(lattice_to_json(l)) == l);
    const auto f = field_from_json(json::parse(R"({"m":[0,4],"vector_slots":[1,1,1,1],"form_slots":[]})"));
    CHECK(f.vector_slots == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(field_to_json(f)["vector_slots"] == json::parse("[1,1,1,1]"));
    CHECK_THROWS_AS(field_from_json(json::parse(R"({"m":[0,4],"vector_slots":[3]})")), Error);
    CHECK_THROWS_AS(field_from_json(json::parse(R"({"m":[-1,4]})")), Error);
    CHECK(index_to_json({{0}, {1}}) == json::parse(R"({"up":[1],"down":[2]})"));
}

TEST_CASE("points") {
    const auto p = parse_point("1,0");
    CHECK(p == std::vector<std::complex<double>>{1, 0});
    const auto q = parse_point("1+2i, -0.5i, 3-1e-3i, i");
    CHECK(q[0] == std::complex<double>(1, 2));
    CHECK(q[1] == std::complex<double>(0, -0.5));
    CHECK(q[2] == std::complex<double>(3, -1e-3));
    CHECK(q[3] == std::complex<double>(0, 1));
    CHECK(parse_point("2e-1")[0] == std::complex<double>(0.2, 0));
    CHECK_THROWS_AS(parse_point("1,,2"), Error);
    CHECK_THROWS_AS(parse_point("abc"), Error);
}
