#include "hopflab/integer_lattice.hpp"

#include "hopflab/eigendata.hpp"
#include "hopflab/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hopflab {

namespace {

using BigRow = std::vector<Integer>;
using BigMatrix = std::vector<BigRow>;

BigMatrix widen(const IntMatrix& m, std::size_t ncols) {
    BigMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        if (row.size() != ncols)
            throw Error(ErrorCode::DimensionMismatch, "matrix row has wrong length");
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

IntMatrix narrow(const BigMatrix& m) {
    static const Integer lo = std::numeric_limits<std::int64_t>::min();
    static const Integer hi = std::numeric_limits<std::int64_t>::max();
    IntMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        IntVector r;
        r.reserve(row.size());
        for (const auto& x : row) {
            if (x < lo || x > hi)
                throw Error(ErrorCode::Overflow, "lattice entry does not fit in 64 bits");
            r.push_back(static_cast<std::int64_t>(x));
        }
        out.push_back(std::move(r));
    }
    return out;
}

void axpy_row(BigRow& dst, const Integer& q, const BigRow& src) {
    for (std::size_t k = 0; k < dst.size(); ++k)
        if (src[k] != 0)
            dst[k] -= q * src[k];
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b != a && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

// Row echelon form by unimodular row operations; `t` (if given) receives the
// same operations. Returns the rank.
std::size_t echelonize(BigMatrix& a, BigMatrix* t, std::size_t ncols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            if (best == a.size())
                break;
            std::swap(a[r], a[best]);
            if (t)
                std::swap((*t)[r], (*t)[best]);
            bool cleared = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0)
                    continue;
                const Integer q = a[i][c] / a[r][c];
                axpy_row(a[i], q, a[r]);
                if (t)
                    axpy_row((*t)[i], q, (*t)[r]);
                if (a[i][c] != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (a[r][c] != 0)
            ++r;
    }
    return r;
}

std::size_t pivot_column(const BigRow& row) {
    for (std::size_t k = 0; k < row.size(); ++k)
        if (row[k] != 0)
            return k;
    return row.size();
}

BigMatrix hnf_big(BigMatrix a, std::size_t ncols) {
    const std::size_t rank = echelonize(a, nullptr, ncols);
    a.resize(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const std::size_t p = pivot_column(a[i]);
        if (a[i][p] < 0)
            for (auto& x : a[i])
                x = -x;
        for (std::size_t j = 0; j < i; ++j) {
            const Integer q = floor_div(a[j][p], a[i][p]);
            if (q != 0)
                axpy_row(a[j], q, a[i]);
        }
    }
    return a;
}

} // namespace

IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t ncols) {
    return narrow(hnf_big(widen(rows, ncols), ncols));
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t ncols) {
    const BigMatrix wide = widen(a, ncols);
    // Work on the transpose so that row operations act on the unknowns.
    BigMatrix at(ncols, BigRow(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            at[j][i] = wide[i][j];
    BigMatrix t(ncols, BigRow(ncols));
    for (std::size_t j = 0; j < ncols; ++j)
        t[j][j] = 1;
    const std::size_t rank = echelonize(at, &t, a.size());
    BigMatrix kernel(t.begin() + static_cast<std::ptrdiff_t>(rank), t.end());
    return narrow(hnf_big(std::move(kernel), ncols));
}

bool in_hnf_span(const IntMatrix& hnf, std::span<const std::int64_t> v) {
    BigRow rest(v.begin(), v.end());
    for (const auto& row : hnf) {
        if (row.size() != rest.size())
            throw Error(ErrorCode::DimensionMismatch, "vector length differs from lattice dimension");
        BigRow big(row.begin(), row.end());
        const std::size_t p = pivot_column(big);
        if (p == big.size())
            continue;
        if (rest[p] % big[p] != 0)
            return false;
        const Integer q = rest[p] / big[p];
        if (q != 0)
            axpy_row(rest, q, big);
    }
    return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Pollard-Brent; returns a nontrivial factor or 0 after exhausting attempts.
u64 find_factor(u64 n) {
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1; c < 64; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && r < (u64{1} << 24));
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    return 0;
}

void split(u64 n, std::vector<u64>& primes) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    const u64 d = find_factor(n);
    if (d == 0)
        throw Error(ErrorCode::FactorizationFailed, "could not split " + std::to_string(n));
    split(d, primes);
    split(n / d, primes);
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0)
            return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all 64-bit n.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n, std::uint64_t trial_bound) {
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "cannot factor zero");
    std::vector<u64> primes;
    for (u64 p = 2; p <= trial_bound && p * p <= n; p += (p == 2 ? 1 : 2))
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    split(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

} // namespace hopflab
