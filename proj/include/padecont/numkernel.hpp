#pragma once

#include <complex>
#include <span>
#include <vector>

#include "padecont/errors.hpp"

namespace padecont {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficients in ascending degree order.
///
/// The zero polynomial is represented by an empty coefficient vector.
/// Nonzero polynomials keep a nonzero trailing coefficient: construction
/// trims coefficients below trim_tol * max|coeff|.
class ComplexPoly {
public:
    static constexpr double trim_tol = 1e-13;

    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> coeffs) { assign(std::move(coeffs)); }

    static ComplexPoly zero() { return ComplexPoly{}; }
    static ComplexPoly constant(cplx c) { return ComplexPoly{{c}}; }
    /// Monic product of (z - r) over the given roots, scaled by lead.
    static ComplexPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : cplx{0.0};
    }
    cplx lead() const { return coeffs_.empty() ? cplx{0.0} : coeffs_.back(); }
    double max_abs_coeff() const;

private:
    void assign(std::vector<cplx> coeffs);
    std::vector<cplx> coeffs_;
};

/// Horner evaluation of p at z. The zero polynomial evaluates to 0.
cplx poly_eval(const ComplexPoly& p, cplx z);

/// Coefficient convolution; deg(ab) = deg(a) + deg(b) for nonzero inputs.
ComplexPoly poly_mul(const ComplexPoly& a, const ComplexPoly& b);

ComplexPoly poly_add(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly poly_sub(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly poly_scale(const ComplexPoly& a, cplx s);

/// Synthetic division of p by the linear factor (z - root).
/// Returns the quotient and stores p(root) in *remainder if requested.
ComplexPoly poly_deflate(const ComplexPoly& p, cplx root, cplx* remainder = nullptr);

/// Taylor coefficients of p about the point a (exact shift, Horner-based).
std::vector<cplx> poly_shift(const ComplexPoly& p, cplx a);

/// Roots of a polynomial, with multiplicity, plus the residual max|p(root)|.
struct RootMultiset {
    std::vector<cplx> roots;
    double residual = 0.0;
};

struct RootOptions {
    int max_iters = 500;
    double residual_tol = 1e-10;  // relative to max|coeff|
};

/// All complex roots via Durand-Kerner simultaneous iteration, initialized
/// on a perturbed equispaced circle. Requires degree >= 1.
/// Throws NonConvergence if the residual tolerance is unmet after max_iters.
RootMultiset poly_roots(const ComplexPoly& p, const RootOptions& opts = {});

/// Null vector of a k x (k+1) complex matrix (row-major), k >= 0.
struct NullVectorResult {
    std::vector<cplx> v;        // nonzero, length k+1
    double pivot_ratio = 1.0;   // |smallest diag pivot| / |largest diag pivot|
    bool rank_deficient = false;  // more than one pivot below tolerance
};

struct NullVectorOptions {
    double nullspace_tol = 1e-8;   // residual contract ||Mv|| <= tol ||M|| ||v||
    double rank_tol = 1e-10;       // diag pivot below rank_tol * |largest pivot| counts as zero
};

/// Householder QR with column pivoting; the unknown in the column with the
/// smallest final pivot is pinned to 1 and the rest back-substituted.
/// Rank deficiency is reported as a warning flag, not an error.
NullVectorResult null_vector(std::span<const cplx> M, int rows, int cols,
                             const NullVectorOptions& opts = {});

} // namespace padecont
