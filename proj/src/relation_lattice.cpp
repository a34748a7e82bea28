#include "hopflab/relation_lattice.hpp"

#include "hopflab/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace hopflab {

namespace mp = boost::multiprecision;

namespace {

std::uint64_t to_u64(const Integer& x) {
    if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::Overflow, "modulus numerator/denominator exceeds 64 bits");
    return static_cast<std::uint64_t>(x);
}

std::int64_t to_i64(const Integer& x) {
    if (x < std::numeric_limits<std::int64_t>::min() || x > std::numeric_limits<std::int64_t>::max())
        throw Error(ErrorCode::Overflow, "value exceeds 64 bits");
    return static_cast<std::int64_t>(x);
}

void require_length(std::size_t expected, std::size_t got) {
    if (expected != got)
        throw Error(ErrorCode::DimensionMismatch,
                    "expected length " + std::to_string(expected) + ", got " + std::to_string(got));
}

} // namespace

bool CharacterTable::modulus_is_trivial(std::span<const std::int64_t> e) const {
    require_length(n(), e.size());
    for (const auto& row : prime_exponents) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            acc += static_cast<__int128>(row[i]) * e[i];
        if (acc != 0)
            return false;
    }
    return true;
}

bool CharacterTable::is_trivial(std::span<const std::int64_t> e) const {
    if (!modulus_is_trivial(e))
        return false;
    __int128 acc = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        acc += static_cast<__int128>(turn_numerators[i]) * e[i];
    return acc % (2 * static_cast<__int128>(turn_denominator)) == 0;
}

CharacterTable character_table(const ContractionSpec& spec, std::uint64_t trial_bound) {
    if (!spec.is_exact())
        throw Error(ErrorCode::NotCertified, "character table needs an exact spec");
    const std::size_t n = spec.n();
    std::map<std::uint64_t, IntVector> by_prime;
    Integer den_lcm = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const ExactPolar& a = spec[i].as_exact();
        const auto add = [&](const Integer& v, int sign) {
            for (auto [p, k] : factorize(to_u64(v), trial_bound)) {
                auto& row = by_prime.try_emplace(p, IntVector(n, 0)).first->second;
                row[i] += sign * k;
            }
        };
        add(mp::numerator(a.modulus()), +1);
        add(mp::denominator(a.modulus()), -1);
        den_lcm = mp::lcm(den_lcm, mp::denominator(a.arg_over_pi()));
    }
    CharacterTable table;
    for (auto& [p, row] : by_prime) {
        table.primes.push_back(p);
        table.prime_exponents.push_back(std::move(row));
    }
    table.turn_denominator = to_i64(den_lcm);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& q = spec[i].as_exact().arg_over_pi();
        table.turn_numerators.push_back(to_i64(mp::numerator(q) * (den_lcm / mp::denominator(q))));
    }
    return table;
}

RelationLattice exact_relation_lattice(const ContractionSpec& spec) {
    const CharacterTable table = character_table(spec);
    const std::size_t n = spec.n();

    // Relations among the moduli: kernel of the prime exponent matrix.
    const IntMatrix modulus_kernel = integer_kernel(table.prime_exponents, n);
    const std::size_t r = modulus_kernel.size();
    RelationLattice out{n, {}, true};
    if (r == 0)
        return out;

    // Restrict to the sublattice whose argument sum is 0 mod 2:
    // sum_j t_j c_j == 0 (mod 2D), c_j = <kernel_j, turn_numerators>.
    const __int128 modulus = 2 * static_cast<__int128>(table.turn_denominator);
    IntMatrix congruence(1, IntVector(r + 1));
    for (std::size_t j = 0; j < r; ++j) {
        __int128 c = 0;
        for (std::size_t i = 0; i < n; ++i)
            c += static_cast<__int128>(modulus_kernel[j][i]) * table.turn_numerators[i];
        c %= modulus;
        congruence[0][j] = static_cast<std::int64_t>(c);
    }
    congruence[0][r] = static_cast<std::int64_t>(modulus);
    const IntMatrix solutions = integer_kernel(congruence, r + 1);

    IntMatrix generators;
    for (const auto& t : solutions) {
        std::vector<Integer> v(n, 0);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < n; ++i)
                v[i] += Integer(t[j]) * modulus_kernel[j][i];
        IntVector row;
        for (const auto& x : v)
            row.push_back(to_i64(x));
        generators.push_back(std::move(row));
    }
    out.basis = hermite_normal_form(generators, n);
    check_invariant(out.basis.size() == r, "argument congruence changed the lattice rank");
    for (const auto& m : out.basis)
        check_invariant(table.is_trivial(m), "relation basis vector is not a relation");
    return out;
}

namespace {

using Real = mp::cpp_bin_float_50;

struct Embedding {
    std::vector<Real> log_modulus;
    std::vector<Real> arg;
};

Embedding embed(const ContractionSpec& spec) {
    Embedding e;
    for (const auto& a : spec.eigenvalues()) {
        const auto z = a.to_complex();
        const Real re(z.real()), im(z.imag());
        e.log_modulus.push_back(mp::log(re * re + im * im) / 2);
        e.arg.push_back(mp::atan2(im, re));
    }
    return e;
}

// |prod alpha_i^{m_i} - 1| evaluated in 50-digit arithmetic on the given doubles.
Real verification_residual(const Embedding& e, std::span<const std::int64_t> m) {
    Real log_r = 0, phi = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        log_r += e.log_modulus[i] * m[i];
        phi += e.arg[i] * m[i];
    }
    const Real r = mp::exp(log_r);
    const Real s = mp::sin(phi / 2);
    return mp::sqrt((r - 1) * (r - 1) + 4 * r * s * s);
}

// Textbook LLL with incremental Gram-Schmidt updates.
void lll_reduce(std::vector<std::vector<Real>>& b, const Real& delta) {
    const std::size_t d = b.size();
    const auto dot = [](const std::vector<Real>& x, const std::vector<Real>& y) {
        Real s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] * y[i];
        return s;
    };
    std::vector<std::vector<Real>> mu(d, std::vector<Real>(d, 0));
    std::vector<Real> bnorm(d);
    std::vector<std::vector<Real>> star = b;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = dot(b[i], star[j]) / bnorm[j];
            for (std::size_t c = 0; c < star[i].size(); ++c)
                star[i][c] -= mu[i][j] * star[j][c];
        }
        bnorm[i] = dot(star[i], star[i]);
    }
    const auto size_reduce = [&](std::size_t k, std::size_t j) {
        const Real q = mp::round(mu[k][j]);
        if (q == 0)
            return;
        for (std::size_t c = 0; c < b[k].size(); ++c)
            b[k][c] -= q * b[j][c];
        for (std::size_t i = 0; i < j; ++i)
            mu[k][i] -= q * mu[j][i];
        mu[k][j] -= q;
    };
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < d) {
        if (++guard > 1'000'000)
            throw Error(ErrorCode::PrecisionExhausted, "lattice reduction did not terminate");
        size_reduce(k, k - 1);
        if (bnorm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bnorm[k - 1]) {
            for (std::size_t j = k - 1; j-- > 0;)
                size_reduce(k, j);
            ++k;
            continue;
        }
        const Real m = mu[k][k - 1];
        const Real bn = bnorm[k] + m * m * bnorm[k - 1];
        mu[k][k - 1] = m * bnorm[k - 1] / bn;
        bnorm[k] = bnorm[k - 1] * bnorm[k] / bn;
        bnorm[k - 1] = bn;
        std::swap(b[k], b[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j)
            std::swap(mu[k][j], mu[k - 1][j]);
        for (std::size_t i = k + 1; i < d; ++i) {
            const Real t = mu[i][k];
            mu[i][k] = mu[i][k - 1] - m * t;
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
        }
        if (k > 1)
            --k;
    }
}

IntMatrix detect_relations(const Embedding& e, const Real& weight, int height_bound,
                           double tolerance) {
    const std::size_t n = e.log_modulus.size();
    const std::size_t dim = n + 3;
    std::vector<std::vector<Real>> basis(n + 1, std::vector<Real>(dim, 0));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n + 1] = weight * e.log_modulus[i];
        basis[i][n + 2] = weight * e.arg[i];
    }
    basis[n][n] = 1;
    basis[n][n + 2] = weight * 2 * boost::math::constants::pi<Real>();
    lll_reduce(basis, Real(0.99));

    const Real accept = tolerance;
    const Real reject = 1e3 * tolerance;
    IntMatrix relations;
    for (const auto& v : basis) {
        IntVector m(n);
        bool in_bound = true;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = static_cast<std::int64_t>(mp::round(v[i]));
            if (std::llabs(m[i]) > height_bound)
                in_bound = false;
        }
        if (!in_bound || std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; }))
            continue;
        const Real residual = verification_residual(e, m);
        if (residual < accept)
            relations.push_back(std::move(m));
        else if (residual < reject)
            throw Error(ErrorCode::PrecisionExhausted,
                        "candidate relation verifies only to " +
                            std::to_string(static_cast<double>(residual)));
    }
    return hermite_normal_form(relations, n);
}

} // namespace

RelationLattice heuristic_relation_lattice(const ContractionSpec& spec, int height_bound,
                                           double tolerance) {
    if (spec.is_exact())
        throw Error(ErrorCode::InvalidArgument, "heuristic relation detection expects a float spec");
    if (height_bound < 1)
        throw Error(ErrorCode::InvalidArgument, "height bound must be >= 1");
    if (!(tolerance > 0))
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    const Embedding e = embed(spec);
    const IntMatrix coarse = detect_relations(e, Real(1e10), height_bound, tolerance);
    const IntMatrix fine = detect_relations(e, Real(1e13), height_bound, tolerance);
    if (coarse != fine)
        throw Error(ErrorCode::PrecisionExhausted, "relation lattice depends on the embedding scale");
    return RelationLattice{spec.n(), fine, false};
}

RelationLattice relation_lattice(const ContractionSpec& spec, const HeuristicOptions& options) {
    if (spec.is_exact())
        return exact_relation_lattice(spec);
    return heuristic_relation_lattice(spec, options.height_bound, options.tolerance);
}

bool is_relation(const RelationLattice& lattice, std::span<const std::int64_t> m) {
    require_length(lattice.n, m.size());
    return in_hnf_span(lattice.basis, m);
}

RelationLattice permute_lattice(const RelationLattice& lattice, std::span<const std::size_t> perm) {
    require_length(lattice.n, perm.size());
    IntMatrix rows;
    for (const auto& b : lattice.basis) {
        IntVector r(lattice.n);
        for (std::size_t i = 0; i < lattice.n; ++i)
            r[i] = b[perm[i]];
        rows.push_back(std::move(r));
    }
    return RelationLattice{lattice.n, hermite_normal_form(rows, lattice.n), lattice.certified};
}

} // namespace hopflab
