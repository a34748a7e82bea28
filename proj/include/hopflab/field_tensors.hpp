#pragma once

// Monomial holomorphic tensor fields z^m (x) d/dz_J (x) dz_K on C^n \ 0 and
// their behaviour under the deck group and the Lee / anti-Lee flows.

#include "hopflab/eigendata.hpp"
#include "hopflab/integer_lattice.hpp"
#include "hopflab/tensor_invariants.hpp"
#include "hopflab/zariski_closure.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace hopflab {

struct MonomialTensorField {
    IntVector m;                             // coefficient exponents, all >= 0
    std::vector<std::size_t> vector_slots;   // factors d/dz_j (0-based)
    std::vector<std::size_t> form_slots;     // factors dz_k (0-based)

    std::size_t n() const noexcept { return m.size(); }
    /// m + #form slots - #vector slots, per coordinate. Validates the field.
    IntVector exponents() const;
    /// The slot data read as a tensor monomial (forms up, vectors down).
    TensorMonomialIndex slot_index() const;
};

/// Factor by which pullback along A multiplies T.
Scalar deck_weight(const MonomialTensorField& t, const ContractionSpec& spec);

/// deck_weight == 1; exact for exact specs, otherwise classified with `tol`
/// (PrecisionExhausted inside the band).
bool descends(const MonomialTensorField& t, const ContractionSpec& spec, const Tolerance& tol = {});

/// Eigenvalue of the Lie derivative along X_v = sum v_i z_i d/dz_i.
std::complex<double> lie_eigenvalue(const MonomialTensorField& t, std::span<const std::complex<double>> v);

/// The Lee eigenvalue written as log R with R = prod |alpha_i|^{e_i}; zero
/// exactly iff R == 1. Exact specs only.
Rational lee_eigenvalue_argument(const MonomialTensorField& t, const ContractionSpec& spec);

/// (Phi^* T)(z) / T(z) for the linear map Phi = diag(d), computed from the
/// numerical action of Phi on the point and on the coordinate frame.
std::complex<double> pullback_ratio(const MonomialTensorField& t, std::span<const std::complex<double>> d,
                                    std::span<const std::complex<double>> z);

struct FlowCheck {
    std::string flow; // "lee" or "anti-lee"
    double time = 0;
    double residual = 0; // |Phi^*T(z) - T(z)| / |T(z)|
};

struct LeeInvarianceReport {
    bool descends = false;
    bool symbolic_zero = false;          // mu == 0 (exactly, for exact specs)
    std::complex<double> mu_lee;         // eigenvalue along v_Lee
    std::complex<double> mu_anti_lee;    // eigenvalue along i v_Lee (= i mu_lee)
    std::vector<FlowCheck> flow_checks;
    double flow_tolerance = 1e-10;
    bool certified = false;
    bool invariant = false;
};

/// Throws NotDescending if deck_weight != 1 and NumericMismatch if the flow
/// pullback disagrees with the symbolic eigenvalue. `at` defaults to a fixed
/// generic point.
LeeInvarianceReport verify_lee_invariance(const MonomialTensorField& t, const ContractionSpec& spec,
                                          std::span<const std::complex<double>> at = {});

/// Deterministic generic evaluation point used when none is given.
std::vector<std::complex<double>> default_probe_point(std::size_t n);

} // namespace hopflab
