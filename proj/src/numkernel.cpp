#include "padecont/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace padecont {

void ComplexPoly::assign(std::vector<cplx> coeffs) {
    double maxabs = 0.0;
    for (const cplx& c : coeffs) maxabs = std::max(maxabs, std::abs(c));
    if (maxabs == 0.0) {
        coeffs_.clear();
        return;
    }
    std::size_t len = coeffs.size();
    while (len > 0 && std::abs(coeffs[len - 1]) <= trim_tol * maxabs) --len;
    coeffs.resize(len);
    coeffs_ = std::move(coeffs);
}

ComplexPoly ComplexPoly::from_roots(std::span<const cplx> roots, cplx lead) {
    std::vector<cplx> c{lead};
    for (const cplx& r : roots) {
        c.push_back(c.back());
        for (std::size_t k = c.size() - 2; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return ComplexPoly{std::move(c)};
}

double ComplexPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

cplx poly_eval(const ComplexPoly& p, cplx z) {
    const auto& c = p.coeffs();
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

ComplexPoly poly_mul(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return ComplexPoly::zero();
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<cplx> out(ca.size() + cb.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
    return ComplexPoly{std::move(out)};
}

ComplexPoly poly_add(const ComplexPoly& a, const ComplexPoly& b) {
    std::vector<cplx> out(std::max(a.coeffs().size(), b.coeffs().size()), cplx{0.0});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) out[i] += b.coeffs()[i];
    return ComplexPoly{std::move(out)};
}

ComplexPoly poly_sub(const ComplexPoly& a, const ComplexPoly& b) {
    return poly_add(a, poly_scale(b, -1.0));
}

ComplexPoly poly_scale(const ComplexPoly& a, cplx s) {
    std::vector<cplx> out = a.coeffs();
    for (cplx& c : out) c *= s;
    return ComplexPoly{std::move(out)};
}

ComplexPoly poly_deflate(const ComplexPoly& p, cplx root, cplx* remainder) {
    if (p.is_zero() || p.degree() == 0) {
        if (remainder) *remainder = p.is_zero() ? cplx{0.0} : p.coeffs()[0];
        return ComplexPoly::zero();
    }
    const auto& c = p.coeffs();
    std::vector<cplx> q(c.size() - 1);
    cplx acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        q[k] = acc;
        acc = c[k] + root * acc;
    }
    if (remainder) *remainder = acc;
    return ComplexPoly{std::move(q)};
}

std::vector<cplx> poly_shift(const ComplexPoly& p, cplx a) {
    // Repeated synthetic division by (z - a): remainders are the shifted
    // Taylor coefficients.
    std::vector<cplx> work = p.coeffs();
    std::vector<cplx> out(p.is_zero() ? 1 : p.coeffs().size(), cplx{0.0});
    for (std::size_t j = 0; j < out.size() && !work.empty(); ++j) {
        cplx rem = work.back();
        for (std::size_t k = work.size() - 1; k-- > 0;) rem = work[k] + a * rem;
        out[j] = rem;
        // deflate in place
        if (work.size() == 1) {
            work.clear();
        } else {
            std::vector<cplx> q(work.size() - 1);
            cplx acc = work.back();
            for (std::size_t k = work.size() - 1; k-- > 0;) {
                q[k] = acc;
                acc = work[k] + a * acc;
            }
            work = std::move(q);
        }
    }
    return out;
}

RootMultiset poly_roots(const ComplexPoly& p, const RootOptions& opts) {
    if (p.degree() < 1) throw NonConvergence("poly_roots: degree must be >= 1");
    const int d = p.degree();
    const double coeff_scale = p.max_abs_coeff();

    // Monic copy.
    std::vector<cplx> a(p.coeffs());
    const cplx lead = a.back();
    for (cplx& c : a) c /= lead;

    auto eval_monic = [&](cplx z) {
        cplx acc = 0.0;
        for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
        return acc;
    };

    // Perturbed equispaced circle; the angular offset breaks conjugate and
    // root-of-unity symmetries that stall the iteration.
    double radius = 0.0;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(a[k]));
    radius = 1.0 + radius;
    std::vector<cplx> z(d);
    for (int k = 0; k < d; ++k) {
        double theta = 2.0 * std::numbers::pi * k / d + 0.3891;
        z[k] = radius * cplx{std::cos(theta), std::sin(theta)};
    }

    const double abs_lead = std::abs(lead);
    double residual = 0.0;
    bool settled = false;
    for (int iter = 0; iter < opts.max_iters && !settled; ++iter) {
        double max_step = 0.0;
        double max_z = 0.0;
        for (int k = 0; k < d; ++k) {
            cplx denom = 1.0;
            for (int j = 0; j < d; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom == cplx{0.0}) {
                // coincident iterates: nudge and continue
                z[k] += 1e-8 * radius * cplx{1.0, 1.0};
                continue;
            }
            cplx step = eval_monic(z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));
            max_z = std::max(max_z, std::abs(z[k]));
        }
        settled = max_step <= 1e-14 * (1.0 + max_z);
    }
    for (int k = 0; k < d; ++k) residual = std::max(residual, abs_lead * std::abs(eval_monic(z[k])));

    if (residual > opts.residual_tol * coeff_scale)
        throw NonConvergence("poly_roots: residual " + std::to_string(residual) +
                             " above tolerance after max_iters");
    return RootMultiset{std::move(z), residual};
}

NullVectorResult null_vector(std::span<const cplx> M, int rows, int cols,
                             const NullVectorOptions& opts) {
    if (cols != rows + 1) throw Error("null_vector: expected k x (k+1) matrix");
    const int k = rows;
    NullVectorResult res;
    if (k == 0) {
        res.v = {cplx{1.0}};
        return res;
    }

    // Working copy, row-major; column pivoting tracked by perm.
    std::vector<cplx> R(M.begin(), M.end());
    std::vector<int> perm(cols);
    for (int j = 0; j < cols; ++j) perm[j] = j;
    auto at = [&](int i, int j) -> cplx& { return R[i * cols + j]; };

    for (int step = 0; step < k; ++step) {
        // pivot: remaining column with largest trailing norm
        int best = step;
        double best_norm = -1.0;
        for (int j = step; j < cols; ++j) {
            double s = 0.0;
            for (int i = step; i < k; ++i) s += std::norm(at(i, j));
            if (s > best_norm) {
                best_norm = s;
                best = j;
            }
        }
        if (best != step) {
            for (int i = 0; i < k; ++i) std::swap(at(i, step), at(i, best));
            std::swap(perm[step], perm[best]);
        }
        // Householder reflector zeroing below the diagonal of column `step`
        double xnorm = 0.0;
        for (int i = step; i < k; ++i) xnorm += std::norm(at(i, step));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        cplx x0 = at(step, step);
        cplx alpha = (std::abs(x0) == 0.0) ? cplx{-xnorm}
                                           : -x0 / std::abs(x0) * xnorm;
        std::vector<cplx> v(k - step);
        v[0] = x0 - alpha;
        for (int i = step + 1; i < k; ++i) v[i - step] = at(i, step);
        double vnorm2 = 0.0;
        for (const cplx& c : v) vnorm2 += std::norm(c);
        if (vnorm2 == 0.0) continue;
        for (int j = step; j < cols; ++j) {
            cplx dot = 0.0;
            for (int i = step; i < k; ++i) dot += std::conj(v[i - step]) * at(i, j);
            cplx f = 2.0 * dot / vnorm2;
            for (int i = step; i < k; ++i) at(i, j) -= f * v[i - step];
        }
        at(step, step) = alpha;
        for (int i = step + 1; i < k; ++i) at(i, step) = 0.0;
    }

    double max_pivot = 0.0, min_pivot = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        double p = std::abs(at(i, i));
        max_pivot = std::max(max_pivot, p);
        min_pivot = std::min(min_pivot, p);
    }
    res.pivot_ratio = (max_pivot > 0.0) ? min_pivot / max_pivot : 0.0;
    int small = 0;
    for (int i = 0; i < k; ++i)
        if (std::abs(at(i, i)) <= opts.rank_tol * max_pivot) ++small;
    // The (k+1)-th permuted column never receives a pivot; it counts as the
    // one allowed "small pivot", so any small diagonal makes more than one.
    res.rank_deficient = small >= 1;

    // Pin the pivotless column's unknown to 1, back-substitute the rest.
    std::vector<cplx> y(cols, cplx{0.0});
    y[k] = 1.0;
    for (int i = k - 1; i >= 0; --i) {
        cplx rhs = -at(i, k) * y[k];
        for (int j = i + 1; j < k; ++j) rhs -= at(i, j) * y[j];
        cplx diag = at(i, i);
        if (std::abs(diag) <= 1e-300) {
            // exactly singular row: free choice
            y[i] = 0.0;
        } else {
            y[i] = rhs / diag;
        }
    }
    res.v.assign(cols, cplx{0.0});
    for (int j = 0; j < cols; ++j) res.v[perm[j]] = y[j];
    return res;
}

} // namespace padecont
