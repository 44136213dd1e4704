#include "padecont/funcspec.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace padecont {

namespace {

ExprPtr make(ExprKind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

bool is_const(const ExprPtr& e) { return e && e->kind == ExprKind::Const; }

cplx eval_pow_int(cplx base, int k) {
    cplx acc = 1.0;
    cplx sq = base;
    for (unsigned e = static_cast<unsigned>(k); e > 0; e >>= 1) {
        if (e & 1u) acc *= sq;
        sq *= sq;
    }
    return acc;
}

} // namespace

ExprPtr expr_const(cplx c) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Const;
    e->value = c;
    return e;
}

ExprPtr expr_var() { return make(ExprKind::Var); }

// Arithmetic on two constants folds at construction; this keeps parsed
// constant subexpressions (like "1+2*i") as single Const nodes so the
// textual form is render-stable.
ExprPtr expr_add(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return expr_const(a->value + b->value);
    return make(ExprKind::Add, std::move(a), std::move(b));
}

ExprPtr expr_sub(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return expr_const(a->value - b->value);
    return make(ExprKind::Sub, std::move(a), std::move(b));
}

ExprPtr expr_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return expr_const(a->value * b->value);
    return make(ExprKind::Mul, std::move(a), std::move(b));
}

ExprPtr expr_div(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b) && std::abs(b->value) > 1e-13)
        return expr_const(a->value / b->value);
    return make(ExprKind::Div, std::move(a), std::move(b));
}

ExprPtr expr_pow(ExprPtr a, int k) {
    if (is_const(a) && (k >= 0 || std::abs(a->value) > 1e-13))
        return expr_const(std::pow(a->value, cplx(static_cast<double>(k))));
    auto e = make(ExprKind::Pow, std::move(a));
    e = std::const_pointer_cast<Expr>(e), nullptr;
    auto m = std::make_shared<Expr>(*e);
    m->exponent = k;
    return m;
}

ExprPtr expr_exp(ExprPtr a) { return make(ExprKind::Exp, std::move(a)); }
ExprPtr expr_log(ExprPtr a) { return make(ExprKind::Log, std::move(a)); }
ExprPtr expr_sqrt(ExprPtr a) { return make(ExprKind::Sqrt, std::move(a)); }
ExprPtr expr_compose(ExprPtr outer, ExprPtr inner) {
    return make(ExprKind::Compose, std::move(outer), std::move(inner));
}

ExprPtr expr_poly(const ComplexPoly& p) {
    if (p.is_zero()) return expr_const(0.0);
    const auto& c = p.coeffs();
    ExprPtr acc = expr_const(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;)
        acc = expr_add(expr_mul(acc, expr_var()), expr_const(c[k]));
    return acc;
}

cplx eval(const Expr& f, cplx z, const EvalOptions& opts) {
    switch (f.kind) {
        case ExprKind::Const: return f.value;
        case ExprKind::Var: return z;
        case ExprKind::Add: return eval(*f.a, z, opts) + eval(*f.b, z, opts);
        case ExprKind::Sub: return eval(*f.a, z, opts) - eval(*f.b, z, opts);
        case ExprKind::Mul: return eval(*f.a, z, opts) * eval(*f.b, z, opts);
        case ExprKind::Div: {
            cplx num = eval(*f.a, z, opts);
            cplx den = eval(*f.b, z, opts);
            if (std::abs(den) <= opts.sing_tol)
                throw SingularEvaluation("division by ~0 at z=(" + std::to_string(z.real()) +
                                         "," + std::to_string(z.imag()) + ")");
            return num / den;
        }
        case ExprKind::Pow: {
            cplx base = eval(*f.a, z, opts);
            int k = f.exponent;
            if (k < 0) {
                if (std::abs(base) <= opts.sing_tol)
                    throw SingularEvaluation("negative power of ~0");
                return 1.0 / eval_pow_int(base, -k);
            }
            return eval_pow_int(base, k);
        }
        case ExprKind::Exp: return std::exp(eval(*f.a, z, opts));
        case ExprKind::Log: {
            cplx x = eval(*f.a, z, opts);
            if (std::abs(x) <= opts.sing_tol) throw SingularEvaluation("log of ~0");
            return std::log(x);
        }
        case ExprKind::Sqrt: return std::sqrt(eval(*f.a, z, opts));
        case ExprKind::Compose: return eval(*f.a, eval(*f.b, z, opts), opts);
    }
    throw Error("eval: unreachable");
}

cplx eval_pow_int(cplx base, int k) {
    cplx acc = 1.0;
    cplx sq = base;
    for (unsigned e = static_cast<unsigned>(k); e > 0; e >>= 1) {
        if (e & 1u) acc *= sq;
        sq *= sq;
    }
    return acc;
}

// --- jet arithmetic -------------------------------------------------------

std::vector<cplx> jet_mul(std::span<const cplx> u, std::span<const cplx> v) {
    const std::size_t n = u.size();
    std::vector<cplx> w(n, cplx{0.0});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) w[j] += u[i] * v[j - i];
    return w;
}

std::vector<cplx> jet_div(std::span<const cplx> u, std::span<const cplx> v, double sing_tol) {
    const std::size_t n = u.size();
    if (std::abs(v[0]) <= sing_tol) throw SingularEvaluation("jet division by ~0");
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx acc = u[j];
        for (std::size_t i = 1; i <= j; ++i) acc -= v[i] * w[j - i];
        w[j] = acc / v[0];
    }
    return w;
}

namespace {

std::vector<cplx> jet_pow_int(std::vector<cplx> base, int k, double sing_tol) {
    const std::size_t n = base.size();
    if (k < 0) {
        std::vector<cplx> one(n, cplx{0.0});
        one[0] = 1.0;
        base = jet_div(one, base, sing_tol);
        k = -k;
    }
    std::vector<cplx> acc(n, cplx{0.0});
    acc[0] = 1.0;
    while (k > 0) {
        if (k & 1) acc = jet_mul(acc, base);
        k >>= 1;
        if (k > 0) base = jet_mul(base, base);
    }
    return acc;
}

std::vector<cplx> jet_exp(std::span<const cplx> u) {
    const std::size_t n = u.size();
    std::vector<cplx> w(n);
    w[0] = std::exp(u[0]);
    for (std::size_t j = 1; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i) acc += static_cast<double>(i) * u[i] * w[j - i];
        w[j] = acc / static_cast<double>(j);
    }
    return w;
}

std::vector<cplx> jet_log(std::span<const cplx> u, double sing_tol) {
    const std::size_t n = u.size();
    if (std::abs(u[0]) <= sing_tol) throw SingularEvaluation("jet log of ~0");
    std::vector<cplx> w(n);
    w[0] = std::log(u[0]);
    for (std::size_t j = 1; j < n; ++j) {
        cplx acc = u[j];
        for (std::size_t i = 1; i < j; ++i)
            acc -= (static_cast<double>(i) / static_cast<double>(j)) * w[i] * u[j - i];
        w[j] = acc / u[0];
    }
    return w;
}

std::vector<cplx> jet_sqrt(std::span<const cplx> u, double sing_tol) {
    const std::size_t n = u.size();
    if (std::abs(u[0]) <= sing_tol) throw SingularEvaluation("jet sqrt at branch point");
    std::vector<cplx> w(n);
    w[0] = std::sqrt(u[0]);
    for (std::size_t j = 1; j < n; ++j) {
        cplx acc = u[j];
        for (std::size_t i = 1; i < j; ++i) acc -= w[i] * w[j - i];
        w[j] = acc / (2.0 * w[0]);
    }
    return w;
}

std::vector<cplx> jet_coeffs(const Expr& f, cplx center, int order, const EvalOptions& opts) {
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    switch (f.kind) {
        case ExprKind::Const: {
            std::vector<cplx> w(n, cplx{0.0});
            w[0] = f.value;
            return w;
        }
        case ExprKind::Var: {
            std::vector<cplx> w(n, cplx{0.0});
            w[0] = center;
            if (n > 1) w[1] = 1.0;
            return w;
        }
        case ExprKind::Add: {
            auto u = jet_coeffs(*f.a, center, order, opts);
            auto v = jet_coeffs(*f.b, center, order, opts);
            for (std::size_t j = 0; j < n; ++j) u[j] += v[j];
            return u;
        }
        case ExprKind::Sub: {
            auto u = jet_coeffs(*f.a, center, order, opts);
            auto v = jet_coeffs(*f.b, center, order, opts);
            for (std::size_t j = 0; j < n; ++j) u[j] -= v[j];
            return u;
        }
        case ExprKind::Mul:
            return jet_mul(jet_coeffs(*f.a, center, order, opts),
                           jet_coeffs(*f.b, center, order, opts));
        case ExprKind::Div:
            return jet_div(jet_coeffs(*f.a, center, order, opts),
                           jet_coeffs(*f.b, center, order, opts), opts.sing_tol);
        case ExprKind::Pow:
            return jet_pow_int(jet_coeffs(*f.a, center, order, opts), f.exponent, opts.sing_tol);
        case ExprKind::Exp: return jet_exp(jet_coeffs(*f.a, center, order, opts));
        case ExprKind::Log: return jet_log(jet_coeffs(*f.a, center, order, opts), opts.sing_tol);
        case ExprKind::Sqrt: return jet_sqrt(jet_coeffs(*f.a, center, order, opts), opts.sing_tol);
        case ExprKind::Compose: {
            auto inner = jet_coeffs(*f.b, center, order, opts);
            auto outer = jet_coeffs(*f.a, inner[0], order, opts);
            std::vector<cplx> shifted = inner;
            shifted[0] = 0.0;
            // Horner substitution of the centered inner series into the outer one.
            std::vector<cplx> acc(n, cplx{0.0});
            acc[0] = outer[n - 1];
            for (std::size_t j = n - 1; j-- > 0;) {
                acc = jet_mul(acc, shifted);
                acc[0] += outer[j];
            }
            return acc;
        }
    }
    throw Error("jet: unreachable");
}

} // namespace

Jet jet(const Expr& f, cplx center, int order, const EvalOptions& opts) {
    if (order < 0) throw Error("jet: order must be >= 0");
    return Jet{center, jet_coeffs(f, center, order, opts)};
}

// --- divided differences ---------------------------------------------------

namespace {

struct NodeBlocks {
    // contiguous runs of equal node values
    std::vector<cplx> values;
    std::vector<int> block_of;  // node index -> block index
    std::vector<int> mult;      // block -> multiplicity
};

NodeBlocks split_blocks(std::span<const cplx> nodes) {
    NodeBlocks nb;
    nb.block_of.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nb.values.empty() && nodes[i] == nb.values.back()) {
            nb.block_of[i] = static_cast<int>(nb.values.size()) - 1;
            ++nb.mult.back();
            continue;
        }
        for (const cplx& v : nb.values)
            if (v == nodes[i])
                throw Error("divided_differences: coincident nodes must be contiguous");
        nb.values.push_back(nodes[i]);
        nb.mult.push_back(1);
        nb.block_of[i] = static_cast<int>(nb.values.size()) - 1;
    }
    return nb;
}

template <typename JetOf>
std::vector<cplx> dd_table(std::span<const cplx> nodes, JetOf&& jet_of) {
    const int n = static_cast<int>(nodes.size());
    if (n == 0) return {};
    NodeBlocks nb = split_blocks(nodes);
    std::vector<std::vector<cplx>> jets(nb.values.size());
    for (std::size_t b = 0; b < nb.values.size(); ++b)
        jets[b] = jet_of(nb.values[b], nb.mult[b] - 1);

    // full triangular table d[i][j] = f[x_i..x_j]
    std::vector<std::vector<cplx>> d(n);
    for (int i = 0; i < n; ++i) {
        d[i].resize(n);
        d[i][i] = jets[nb.block_of[i]][0];
    }
    for (int len = 1; len < n; ++len) {
        for (int i = 0; i + len < n; ++i) {
            int j = i + len;
            if (nodes[i] == nodes[j]) {
                d[i][j] = jets[nb.block_of[i]][len];
            } else {
                d[i][j] = (d[i + 1][j] - d[i][j - 1]) / (nodes[j] - nodes[i]);
            }
        }
    }
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) out[j] = d[0][j];
    return out;
}

} // namespace

std::vector<cplx> divided_differences(const Expr& f, std::span<const cplx> nodes,
                                      const DividedDiffOptions& opts) {
    // longest needed jet order = largest multiplicity - 1
    {
        NodeBlocks nb = split_blocks(nodes);
        for (int m : nb.mult)
            if (m - 1 > opts.max_jet_order)
                throw NodeOrderTooHigh("divided_differences: node multiplicity " +
                                       std::to_string(m) + " exceeds jet order cap");
    }
    return dd_table(nodes, [&](cplx center, int order) {
        return jet(f, center, order, opts.eval).coeffs;
    });
}

std::vector<cplx> poly_divided_differences(const ComplexPoly& p, std::span<const cplx> nodes) {
    return dd_table(nodes, [&](cplx center, int order) {
        std::vector<cplx> t = poly_shift(p, center);
        t.resize(static_cast<std::size_t>(order) + 1, cplx{0.0});
        return t;
    });
}

// --- parser / renderer ------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw ConfigError("function", msg + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr acc = parse_term();
        for (;;) {
            if (eat('+')) {
                acc = expr_add(std::move(acc), parse_term());
            } else if (eat('-')) {
                acc = expr_sub(std::move(acc), parse_term());
            } else {
                return acc;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr acc = parse_unary();
        for (;;) {
            if (eat('*')) {
                acc = expr_mul(std::move(acc), parse_unary());
            } else if (eat('/')) {
                acc = expr_div(std::move(acc), parse_unary());
            } else {
                return acc;
            }
        }
    }

    ExprPtr parse_unary() {
        if (eat('-')) {
            ExprPtr e = parse_unary();
            if (e->kind == ExprKind::Const) return expr_const(-e->value);
            return expr_mul(expr_const(-1.0), std::move(e));
        }
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (eat('^')) {
            int sign = 1;
            if (eat('-')) sign = -1;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start) fail("expected integer exponent after '^'");
            int k = 0;
            std::from_chars(text_.data() + start, text_.data() + pos_, k);
            return expr_pow(std::move(base), sign * k);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return expr_const(cplx{value, 0.0});
    }

    ExprPtr parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view id = text_.substr(start, pos_ - start);
        if (id == "z") return expr_var();
        if (id == "i") return expr_const(cplx{0.0, 1.0});
        if (id == "exp" || id == "log" || id == "sqrt") {
            if (!eat('(')) fail("expected '(' after function name");
            ExprPtr arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            if (id == "exp") return expr_exp(std::move(arg));
            if (id == "log") return expr_log(std::move(arg));
            return expr_sqrt(std::move(arg));
        }
        if (id == "compose") {
            if (!eat('(')) fail("expected '(' after compose");
            ExprPtr outer = parse_expr();
            if (!eat(',')) fail("expected ',' in compose");
            ExprPtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return expr_compose(std::move(outer), std::move(inner));
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'");
    }
};

std::string num_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

ExprPtr parse_function(std::string_view text) { return Parser(text).run(); }

std::string render(const Expr& f) {
    switch (f.kind) {
        case ExprKind::Const: {
            double re = f.value.real(), im = f.value.imag();
            if (im == 0.0) return re < 0.0 ? "(" + num_str(re) + ")" : num_str(re);
            std::string s = "(" + num_str(re);
            s += im < 0.0 ? "-" : "+";
            s += num_str(std::abs(im)) + "*i)";
            return s;
        }
        case ExprKind::Var: return "z";
        case ExprKind::Add: return "(" + render(*f.a) + "+" + render(*f.b) + ")";
        case ExprKind::Sub: return "(" + render(*f.a) + "-" + render(*f.b) + ")";
        case ExprKind::Mul: return "(" + render(*f.a) + "*" + render(*f.b) + ")";
        case ExprKind::Div: return "(" + render(*f.a) + "/" + render(*f.b) + ")";
        case ExprKind::Pow:
            return "(" + render(*f.a) + "^" + std::to_string(f.exponent) + ")";
        case ExprKind::Exp: return "exp(" + render(*f.a) + ")";
        case ExprKind::Log: return "log(" + render(*f.a) + ")";
        case ExprKind::Sqrt: return "sqrt(" + render(*f.a) + ")";
        case ExprKind::Compose:
            return "compose(" + render(*f.a) + "," + render(*f.b) + ")";
    }
    throw Error("render: unreachable");
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Const: return a.value == b.value;
        case ExprKind::Var: return true;
        case ExprKind::Pow:
            return a.exponent == b.exponent && structurally_equal(*a.a, *b.a);
        case ExprKind::Exp:
        case ExprKind::Log:
        case ExprKind::Sqrt: return structurally_equal(*a.a, *b.a);
        default:
            return structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
    }
}

} // namespace padecont
