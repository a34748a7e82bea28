#pragma once

// Exact integer linear algebra on small dense matrices: row-style Hermite
// normal form, integer kernels and lattice membership. Arithmetic runs on
// arbitrary-precision integers; results are narrowed back to int64 and an
// Overflow error is raised if they do not fit.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hopflab {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

/// Row HNF of the lattice generated by `rows` (each of length `ncols`).
/// Zero rows are dropped; pivots are positive; entries above a pivot lie in
/// [0, pivot). Equal lattices give identical output.
IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t ncols);

/// HNF basis of {x in Z^ncols : a x = 0}. The kernel is saturated.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t ncols);

/// True iff v lies in the Z-span of the rows of an HNF basis.
bool in_hnf_span(const IntMatrix& hnf, std::span<const std::int64_t> v);

/// Prime factorization of n >= 1 as ascending (prime, exponent) pairs.
/// Trial division up to `trial_bound`, then Pollard-Brent with a
/// deterministic Miller-Rabin primality test. Throws FactorizationFailed if
/// a cofactor resists splitting.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n,
                                                     std::uint64_t trial_bound = 1u << 16);

bool is_prime(std::uint64_t n);

} // namespace hopflab
