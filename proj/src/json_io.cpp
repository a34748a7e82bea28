#include "hopflab/json_io.hpp"

#include "hopflab/error.hpp"

#include <cctype>
#include <limits>

namespace hopflab {

namespace mp = boost::multiprecision;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw Error(ErrorCode::ParseError, what);
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned())
        return Integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
            parse_fail("not an integer: \"" + s + "\"");
        return Integer(s);
    }
    parse_fail("expected an integer, got " + j.dump());
}

json integer_to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

double double_from_json(const json& j, const char* field) {
    if (!j.is_number())
        parse_fail(std::string("field '") + field + "' must be a number");
    return j.get<double>();
}

} // namespace

Rational rational_from_json(const json& j) {
    Integer num, den = 1;
    if (j.is_object()) {
        if (!j.contains("num"))
            parse_fail("rational object needs 'num'");
        num = integer_from_json(j.at("num"));
        if (j.contains("den"))
            den = integer_from_json(j.at("den"));
    } else if (j.is_string()) {
        const auto s = j.get<std::string>();
        const auto slash = s.find('/');
        num = integer_from_json(json(s.substr(0, slash)));
        if (slash != std::string::npos)
            den = integer_from_json(json(s.substr(slash + 1)));
    } else if (j.is_number_integer() || j.is_number_unsigned()) {
        num = integer_from_json(j);
    } else {
        parse_fail("expected a rational, got " + j.dump());
    }
    if (den == 0)
        parse_fail("zero denominator");
    return Rational(num, den);
}

json rational_to_json(const Rational& r) {
    return {{"num", integer_to_json(mp::numerator(r))}, {"den", integer_to_json(mp::denominator(r))}};
}

json scalar_to_json(const Scalar& s) {
    if (s.is_exact())
        return {{"modulus", rational_to_json(s.as_exact().modulus())},
                {"arg_over_pi", rational_to_json(s.as_exact().arg_over_pi())}};
    const auto z = s.to_complex();
    return {{"re", z.real()}, {"im", z.imag()}};
}

ContractionSpec spec_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("eigenvalues") || !j.at("eigenvalues").is_array())
            parse_fail("spec must be an object with an 'eigenvalues' array");
        const std::string mode = j.value("mode", "exact");
        std::vector<Eigenvalue> eigs;
        for (const auto& e : j.at("eigenvalues")) {
            if (!e.is_object())
                parse_fail("eigenvalue entries must be objects");
            if (mode == "exact") {
                if (e.contains("re") || e.contains("im"))
                    throw Error(ErrorCode::MixedModes, "float eigenvalue in an exact spec");
                if (!e.contains("modulus"))
                    parse_fail("exact eigenvalue needs 'modulus'");
                const Rational modulus = rational_from_json(e.at("modulus"));
                const Rational arg = e.contains("arg_over_pi") ? rational_from_json(e.at("arg_over_pi"))
                                                               : Rational(0);
                if (modulus <= 0)
                    throw Error(ErrorCode::ModulusNotGreaterThanOne, "modulus must be > 1");
                eigs.push_back(Scalar::exact(modulus, arg));
            } else if (mode == "float") {
                if (e.contains("modulus"))
                    throw Error(ErrorCode::MixedModes, "exact eigenvalue in a float spec");
                if (!e.contains("re"))
                    parse_fail("float eigenvalue needs 're'");
                const double re = double_from_json(e.at("re"), "re");
                const double im = e.contains("im") ? double_from_json(e.at("im"), "im") : 0.0;
                eigs.emplace_back(std::complex<double>(re, im));
            } else {
                parse_fail("mode must be 'exact' or 'float'");
            }
        }
        return make_spec(std::move(eigs));
    } catch (const json::exception& ex) {
        parse_fail(ex.what());
    }
}

ContractionSpec spec_from_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        parse_fail(ex.what());
    }
    return spec_from_json(j);
}

json spec_to_json(const ContractionSpec& spec) {
    json eigs = json::array();
    for (const auto& e : spec.eigenvalues())
        eigs.push_back(scalar_to_json(e));
    return {{"mode", std::string(to_string(spec.mode()))}, {"eigenvalues", eigs}};
}

json lattice_to_json(const RelationLattice& lattice) {
    return {{"rank", lattice.rank()}, {"certified", lattice.certified}, {"basis", lattice.basis}};
}

RelationLattice lattice_from_json(const json& j) {
    try {
        RelationLattice l;
        l.certified = j.at("certified").get<bool>();
        l.basis = j.at("basis").get<IntMatrix>();
        if (j.contains("n"))
            l.n = j.at("n").get<std::size_t>();
        else if (!l.basis.empty())
            l.n = l.basis.front().size();
        else
            parse_fail("empty lattice needs an explicit 'n'");
        l.basis = hermite_normal_form(l.basis, l.n);
        return l;
    } catch (const json::exception& ex) {
        parse_fail(ex.what());
    }
}

json closure_report(const TorusClosure& c, bool contains_a1) {
    return {{"dim_connected", c.dim_connected()},
            {"rank", c.lattice.rank()},
            {"contains_A1", contains_a1},
            {"certified", c.certified()},
            // Membership is decided by the lattice characters alone; the
            // component group is not modelled separately.
            {"membership_model", "lattice-characters"}};
}

json index_to_json(const TensorMonomialIndex& idx) {
    json up = json::array(), down = json::array();
    for (auto i : idx.up)
        up.push_back(i + 1);
    for (auto i : idx.down)
        down.push_back(i + 1);
    return {{"up", up}, {"down", down}};
}

MonomialTensorField field_from_json(const json& j) {
    try {
        MonomialTensorField t;
        t.m = j.at("m").get<IntVector>();
        const auto slots = [&](const char* key) {
            std::vector<std::size_t> out;
            if (!j.contains(key))
                return out;
            for (const auto& s : j.at(key)) {
                const auto v = s.get<std::int64_t>();
                if (v < 1 || static_cast<std::size_t>(v) > t.m.size())
                    throw Error(ErrorCode::DimensionMismatch, std::string(key) + " entry out of range");
                out.push_back(static_cast<std::size_t>(v - 1));
            }
            return out;
        };
        t.vector_slots = slots("vector_slots");
        t.form_slots = slots("form_slots");
        t.exponents();
        return t;
    } catch (const json::exception& ex) {
        parse_fail(ex.what());
    }
}

json field_to_json(const MonomialTensorField& t) {
    json vs = json::array(), fs = json::array();
    for (auto i : t.vector_slots)
        vs.push_back(i + 1);
    for (auto i : t.form_slots)
        fs.push_back(i + 1);
    return {{"m", t.m}, {"vector_slots", vs}, {"form_slots", fs}};
}

namespace {

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        parse_fail("bad number '" + s + "'");
    }
    if (used != s.size())
        parse_fail("bad number '" + s + "'");
    return v;
}

std::complex<double> parse_complex(std::string s) {
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    if (s.empty())
        parse_fail("empty coordinate");
    if (s.back() != 'i')
        return {parse_double(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not a leading sign or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    const auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return parse_double(t);
    };
    if (split == std::string::npos)
        return {0.0, imag_of(s)};
    return {parse_double(s.substr(0, split)), imag_of(s.substr(split))};
}

} // namespace

std::vector<std::complex<double>> parse_point(std::string_view text) {
    std::vector<std::complex<double>> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(parse_complex(std::string(text.substr(start, comma - start))));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace hopflab
