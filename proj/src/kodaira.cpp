#include "hopflab/kodaira.hpp"

#include "hopflab/error.hpp"
#include "hopflab/relation_lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>
#include <numeric>

namespace hopflab {

namespace mp = boost::multiprecision;

namespace {

// Calls f(m) for every m in Z_{>=0}^n with |m| <= max_degree.
void for_each_monomial(std::size_t n, std::size_t max_degree, const std::function<void(const IntVector&)>& f) {
    IntVector m(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos == n) {
            f(m);
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            m[pos] = static_cast<std::int64_t>(c);
            rec(pos + 1, left - c);
        }
        m[pos] = 0;
    };
    rec(0, max_degree);
}

bool float_weight_is_one(const ContractionSpec& spec, const IntVector& e) {
    double log_mod = 0, scale = 0;
    std::complex<double> w = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        log_mod += static_cast<double>(e[i]) * spec[i].log_modulus();
        scale += std::abs(static_cast<double>(e[i]) * spec[i].log_modulus());
        w *= std::pow(spec[i].to_complex(), static_cast<double>(e[i]));
    }
    if (std::abs(log_mod) > 1e-12 * std::max(scale, 1.0))
        return false;
    return std::abs(w - 1.0) < 1e-10;
}

} // namespace

std::uint64_t enumerate_pluricanonical(const ContractionSpec& spec, std::size_t k, std::size_t max_degree) {
    const std::size_t n = spec.n();
    const auto shift = static_cast<std::int64_t>(k);
    std::uint64_t count = 0;
    if (n == 1) {
        // On C^* the coefficient may be any Laurent monomial z^m, |m| <= max_degree.
        const CharacterTable table = spec.is_exact() ? character_table(spec) : CharacterTable{};
        const auto deg = static_cast<std::int64_t>(max_degree);
        for (std::int64_t m = -deg; m <= deg; ++m) {
            const IntVector e{m + shift};
            if (spec.is_exact() ? table.is_trivial(e) : float_weight_is_one(spec, e))
                ++count;
        }
        return count;
    }
    const CharacterTable table = spec.is_exact() ? character_table(spec) : CharacterTable{};
    for_each_monomial(n, max_degree, [&](const IntVector& m) {
        IntVector e(m);
        for (auto& x : e)
            x += shift;
        if (spec.is_exact() ? table.is_trivial(e) : float_weight_is_one(spec, e))
            ++count;
    });
    return count;
}

PluricanonicalCount pluricanonical_dimension(const ContractionSpec& spec, std::size_t k,
                                             std::size_t verify_degree) {
    PluricanonicalCount out{k, 0, CountMethod::ClosedForm};
    // n >= 2: sections extend over the origin, so coefficients are monomials
    // z^m with m >= 0 and the weight has modulus prod |alpha_i|^{m_i + k}.
    // n == 1: the quotient is an elliptic curve and (dz / z)^k is invariant.
    out.count = (k == 0 || spec.n() == 1) ? 1 : 0;
    if (verify_degree > 0) {
        const std::uint64_t brute = enumerate_pluricanonical(spec, k, std::max(verify_degree, k));
        check_invariant(brute == out.count, "closed-form plurigenus disagrees with enumeration");
    }
    return out;
}

KodairaDimension kodaira_dimension(const ContractionSpec& spec) {
    if (spec.n() == 1)
        return {0, "n = 1: M is an elliptic curve; (dz/z)^k spans H^0(K^k) for every k"};
    return {std::nullopt,
            "every monomial section z^m (dz_1 ^ ... ^ dz_n)^k has deck weight of modulus "
            "prod |alpha_i|^(m_i + k) > 1, so H^0(K^k) = 0 for all k >= 1"};
}

KodairaDimension kodaira_from_counts(std::span<const std::uint64_t> counts) {
    const std::size_t tail_start = counts.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = tail_start; i < counts.size(); ++i)
        if (counts[i] > 0) {
            xs.push_back(std::log(static_cast<double>(i + 1)));
            ys.push_back(std::log(static_cast<double>(counts[i])));
        }
    if (xs.empty())
        return {std::nullopt, "plurigenera vanish on the sampled tail"};
    if (xs.size() == 1)
        return {0, "single nonzero plurigenus on the tail"};
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const int slope = static_cast<int>(std::lround(std::max(0.0, sxy / sxx)));
    return {slope, "log-log slope of the nonzero plurigenus tail"};
}

QuasiRegularReport detect_quasi_regular(const ContractionSpec& spec) {
    if (!spec.is_exact())
        throw Error(ErrorCode::NotCertified, "quasi-regularity is only decided for exact specs");
    const CharacterTable table = character_table(spec);
    const std::size_t n = spec.n();
    const std::size_t primes = table.primes.size();
    const auto column = [&](std::size_t i) {
        IntVector v(primes);
        for (std::size_t p = 0; p < primes; ++p)
            v[p] = table.prime_exponents[p][i];
        return v;
    };

    // Primitive direction u of the first prime-exponent column.
    IntVector u = column(0);
    std::int64_t g0 = 0;
    for (auto x : u)
        g0 = std::gcd(g0, x);
    for (auto& x : u)
        x /= g0;
    std::size_t pivot = 0;
    while (u[pivot] == 0)
        ++pivot;

    QuasiRegularReport out;
    IntVector c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const IntVector v = column(i);
        if (v[pivot] % u[pivot] != 0)
            return out;
        c[i] = v[pivot] / u[pivot];
        for (std::size_t p = 0; p < primes; ++p)
            if (v[p] != c[i] * u[p])
                return out;
        if (c[i] <= 0)
            return out;
    }
    std::int64_t g = 0;
    for (auto x : c)
        g = std::gcd(g, x);
    out.is_quasi_regular = true;
    for (auto x : c)
        out.weights.push_back(x / g);

    Rational base = 1;
    for (std::size_t p = 0; p < primes; ++p) {
        const Integer prime(table.primes[p]);
        const auto e = u[p] * g;
        if (e > 0)
            base *= Rational(mp::pow(prime, static_cast<unsigned>(e)));
        else if (e < 0)
            base /= Rational(mp::pow(prime, static_cast<unsigned>(-e)));
    }
    out.base_modulus = base;

    // Least p with x such that w_i x == p q_i (mod 2) for all i.
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (out.weights[i] < out.weights[smallest])
            smallest = i;
    const auto turn = [&](std::size_t i) { return spec[i].as_exact().arg_over_pi(); };
    const auto is_even_integer = [](const Rational& r) {
        return mp::denominator(r) == 1 && mp::numerator(r) % 2 == 0;
    };
    const std::int64_t max_power = 2 * table.turn_denominator;
    for (std::int64_t p = 1; p <= max_power; ++p) {
        const std::int64_t w0 = out.weights[smallest];
        for (std::int64_t j = 0; j < w0; ++j) {
            const Rational x = (turn(smallest) * p + 2 * j) / w0;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = is_even_integer(x * out.weights[i] - turn(i) * p);
            if (ok) {
                out.power = p;
                out.base_arg_over_pi = reduce_turn(x);
                return out;
            }
        }
    }
    check_invariant(false, "no power of A lies on a one-parameter subgroup");
    return out;
}

std::uint64_t weighted_monomial_count(std::span<const std::int64_t> weights, std::int64_t degree) {
    if (degree < 0)
        return 0;
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(degree) + 1, 0);
    ways[0] = 1;
    for (auto w : weights) {
        if (w <= 0)
            throw Error(ErrorCode::InvalidArgument, "weights must be positive");
        for (std::int64_t d = w; d <= degree; ++d)
            ways[static_cast<std::size_t>(d)] += ways[static_cast<std::size_t>(d - w)];
    }
    return ways[static_cast<std::size_t>(degree)];
}

LeafSpaceSummary leaf_space_summary(const QuasiRegularReport& report, const ContractionSpec& spec,
                                    std::size_t max_k) {
    if (!report.is_quasi_regular)
        throw Error(ErrorCode::NotQuasiRegular, "leaf space is only described for quasi-regular specs");
    LeafSpaceSummary s;
    s.weights = report.weights;
    const std::size_t n = report.weights.size();
    const bool unweighted = std::all_of(s.weights.begin(), s.weights.end(), [](auto w) { return w == 1; });
    if (unweighted) {
        s.leaf_space = "P^" + std::to_string(n - 1);
    } else {
        s.leaf_space = "P(";
        for (std::size_t i = 0; i < n; ++i)
            s.leaf_space += (i ? "," : "") + std::to_string(s.weights[i]);
        s.leaf_space += ")";
    }
    // K_X = O(-sum w) on P(w); a point (n = 1) has trivial canonical bundle.
    const std::int64_t canonical_degree = -std::accumulate(s.weights.begin(), s.weights.end(), std::int64_t{0});
    for (std::size_t k = 1; k <= max_k; ++k)
        s.leaf_plurigenera.push_back(
            n == 1 ? 1 : weighted_monomial_count(s.weights, static_cast<std::int64_t>(k) * canonical_degree));
    s.kodaira_leaf_space = kodaira_from_counts(s.leaf_plurigenera);
    s.kodaira_manifold = kodaira_dimension(spec);
    s.consistent = s.kodaira_leaf_space.value == s.kodaira_manifold.value;
    s.adjunction = "H^0(K_{M'}^k) = H^0(K_X^k)";
    return s;
}

} // namespace hopflab
