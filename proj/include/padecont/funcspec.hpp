#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padecont/numkernel.hpp"

namespace padecont {

/// Analytic function given as an expression tree over: complex constants,
/// the variable z, + - * /, integer powers, exp, log, sqrt, and composition.
/// log and sqrt use principal branches.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Pow, Exp, Log, Sqrt, Compose };

struct Expr {
    ExprKind kind;
    cplx value{};     // Const
    int exponent = 0; // Pow
    ExprPtr a, b;     // children (a only for unary, a=outer/b=inner for Compose)
};

ExprPtr expr_const(cplx c);
ExprPtr expr_var();
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr a, int k);
ExprPtr expr_exp(ExprPtr a);
ExprPtr expr_log(ExprPtr a);
ExprPtr expr_sqrt(ExprPtr a);
ExprPtr expr_compose(ExprPtr outer, ExprPtr inner);
/// Expression with the coefficients of p hard-wired (Horner chain).
ExprPtr expr_poly(const ComplexPoly& p);

struct EvalOptions {
    double sing_tol = 1e-13;  // |denominator| or |log argument| below this is singular
};

/// Exact complex evaluation with principal branches.
/// Throws SingularEvaluation on division by ~0 or log of ~0.
cplx eval(const Expr& f, cplx z, const EvalOptions& opts = {});

/// Truncated Taylor expansion of f about `center`, order k:
/// coeffs c_0..c_k with f(z) = sum c_j (z - center)^j + O((z-center)^{k+1}).
struct Jet {
    cplx center{};
    std::vector<cplx> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

Jet jet(const Expr& f, cplx center, int order, const EvalOptions& opts = {});

// Truncated-series arithmetic on raw coefficient vectors (all same order).
std::vector<cplx> jet_mul(std::span<const cplx> u, std::span<const cplx> v);
std::vector<cplx> jet_div(std::span<const cplx> u, std::span<const cplx> v, double sing_tol);

struct DividedDiffOptions {
    int max_jet_order = 64;  // confluent multiplicity cap
    EvalOptions eval;
};

/// Hermite divided differences [x_1], [x_1,x_2], ..., [x_1..x_n] over the
/// nodes in the given order. Coincident nodes are resolved with jets and must
/// appear contiguously. Throws NodeOrderTooHigh if a multiplicity needs a jet
/// beyond max_jet_order.
std::vector<cplx> divided_differences(const Expr& f, std::span<const cplx> nodes,
                                      const DividedDiffOptions& opts = {});

/// Same table for a polynomial integrand (exact shifts, no jets needed).
std::vector<cplx> poly_divided_differences(const ComplexPoly& p, std::span<const cplx> nodes);

/// Parse the textual expression grammar used in scenario configs,
/// e.g. "1/((z-2)*(z-3))", "exp(z)/(z-2)", "log(1-z)".
/// Throws ConfigError("function", ...) on malformed input.
ExprPtr parse_function(std::string_view text);

/// Render to a parse-stable textual form: parse(render(e)) == e structurally.
std::string render(const Expr& f);

bool structurally_equal(const Expr& a, const Expr& b);

} // namespace padecont
