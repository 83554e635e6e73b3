#include "kernel_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>

#include "errors.hpp"

namespace commutclass {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

struct ExprParser {
    std::string_view text;
    std::size_t pos = 0;

    using Node = Expr::Node;
    using Kind = Expr::Kind;
    using Func = Expr::Func;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void syntax(const std::string& message, std::size_t at) {
        throw ParseError(ParseErrorKind::Syntax, message, at);
    }

    Node parse_expression() {
        Node left = parse_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return left;
            const std::size_t at = pos++;
            Node parent;
            parent.kind = c == '+' ? Kind::Add : Kind::Sub;
            parent.offset = at;
            parent.kids.push_back(std::move(left));
            parent.kids.push_back(parse_term());
            left = std::move(parent);
        }
    }

    Node parse_term() {
        Node left = parse_unary();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return left;
            const std::size_t at = pos++;
            Node parent;
            parent.kind = c == '*' ? Kind::Mul : Kind::Div;
            parent.offset = at;
            parent.kids.push_back(std::move(left));
            parent.kids.push_back(parse_unary());
            left = std::move(parent);
        }
    }

    Node parse_unary() {
        if (peek() == '-') {
            const std::size_t at = pos++;
            Node n;
            n.kind = Kind::Neg;
            n.offset = at;
            n.kids.push_back(parse_unary());
            return n;
        }
        return parse_power();
    }

    Node parse_power() {
        Node base = parse_atom();
        if (peek() != '^') return base;
        const std::size_t at = pos++;
        Node n;
        n.kind = Kind::Pow;
        n.offset = at;
        n.kids.push_back(std::move(base));
        // Right-associative; the exponent may carry its own sign.
        n.kids.push_back(parse_unary());
        return n;
    }

    Node parse_atom() {
        skip_ws();
        if (pos >= text.size()) syntax("unexpected end of expression", pos);
        const char c = text[pos];

        if (c == '(') {
            ++pos;
            Node inner = parse_expression();
            if (peek() != ')') syntax("expected ')'", pos);
            ++pos;
            return inner;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();

        if (ident_start(c)) return parse_identifier();

        syntax(std::string("unexpected character '") + c + "'", pos);
    }

    Node parse_number() {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t mark = pos + 1;
            if (mark < text.size() && (text[mark] == '+' || text[mark] == '-')) ++mark;
            if (mark < text.size() && std::isdigit(static_cast<unsigned char>(text[mark]))) {
                pos = mark;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
            }
        }
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(text.data() + start, text.data() + pos, value);
        if (ec != std::errc{} || ptr != text.data() + pos) {
            syntax("malformed number", start);
        }
        Node n;
        n.kind = Kind::Number;
        n.number = value;
        n.offset = start;
        return n;
    }

    Node parse_identifier() {
        const std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        const std::string_view name = text.substr(start, pos - start);

        Node n;
        n.offset = start;
        if (peek() == '(') {
            Func fn;
            if (name == "exp") fn = Func::Exp;
            else if (name == "sin") fn = Func::Sin;
            else if (name == "cos") fn = Func::Cos;
            else if (name == "sqrt") fn = Func::Sqrt;
            else if (name == "abs") fn = Func::Abs;
            else {
                throw ParseError(ParseErrorKind::UnknownIdentifier,
                                 "unknown function '" + std::string(name) + "'", start);
            }
            ++pos;  // '('
            std::vector<Node> args;
            if (peek() == ')') {
                ++pos;
                throw ParseError(ParseErrorKind::WrongArity,
                                 "'" + std::string(name) + "' expects 1 argument, got 0", start);
            }
            args.push_back(parse_expression());
            while (peek() == ',') {
                ++pos;
                args.push_back(parse_expression());
            }
            if (peek() != ')') syntax("expected ')'", pos);
            ++pos;
            if (args.size() != 1) {
                throw ParseError(ParseErrorKind::WrongArity,
                                 "'" + std::string(name) + "' expects 1 argument, got " +
                                     std::to_string(args.size()),
                                 start);
            }
            n.kind = Kind::Call;
            n.fn = fn;
            n.kids = std::move(args);
            return n;
        }

        if (name == "E") n.kind = Kind::VarE;
        else if (name == "Ep") n.kind = Kind::VarEp;
        else if (name == "pi") n.kind = Kind::Pi;
        else if (name == "i") n.kind = Kind::ImagUnit;
        else {
            throw ParseError(ParseErrorKind::UnknownIdentifier,
                             "unknown identifier '" + std::string(name) + "'", start);
        }
        return n;
    }
};

Expr Expr::parse(std::string_view text) {
    ExprParser p{text};
    Expr e;
    e.root_ = p.parse_expression();
    if (!p.at_end()) p.syntax("trailing input", p.pos);
    return e;
}

Complex Expr::eval_node(const Node& node, double e, double ep) const {
    Complex value;
    switch (node.kind) {
        case Kind::Number: value = node.number; break;
        case Kind::Pi: value = M_PI; break;
        case Kind::ImagUnit: value = Complex(0.0, 1.0); break;
        case Kind::VarE: value = e; break;
        case Kind::VarEp: value = ep; break;
        case Kind::Neg: value = -eval_node(node.kids[0], e, ep); break;
        case Kind::Add: value = eval_node(node.kids[0], e, ep) + eval_node(node.kids[1], e, ep); break;
        case Kind::Sub: value = eval_node(node.kids[0], e, ep) - eval_node(node.kids[1], e, ep); break;
        case Kind::Mul: value = eval_node(node.kids[0], e, ep) * eval_node(node.kids[1], e, ep); break;
        case Kind::Div: value = eval_node(node.kids[0], e, ep) / eval_node(node.kids[1], e, ep); break;
        case Kind::Pow:
            value = std::pow(eval_node(node.kids[0], e, ep), eval_node(node.kids[1], e, ep));
            break;
        case Kind::Call: {
            const Complex arg = eval_node(node.kids[0], e, ep);
            switch (node.fn) {
                case Func::Exp: value = std::exp(arg); break;
                case Func::Sin: value = std::sin(arg); break;
                case Func::Cos: value = std::cos(arg); break;
                case Func::Sqrt: value = std::sqrt(arg); break;
                case Func::Abs: value = std::abs(arg); break;
            }
            break;
        }
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw EvaluationError("non-finite value", node.offset);
    }
    return value;
}

Complex Expr::evaluate(double e, double ep) const { return eval_node(root_, e, ep); }

bool Expr::uses_e() const {
    std::vector<const Node*> stack{&root_};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->kind == Kind::VarE) return true;
        for (const Node& k : n->kids) stack.push_back(&k);
    }
    return false;
}

bool Expr::uses_ep() const {
    std::vector<const Node*> stack{&root_};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->kind == Kind::VarEp) return true;
        for (const Node& k : n->kids) stack.push_back(&k);
    }
    return false;
}

namespace {

int precedence(Expr::Kind kind) {
    switch (kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const Expr::Node& node, std::string& out);

void print_child(const Expr::Node& child, bool needs_parens, std::string& out) {
    if (needs_parens) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const Expr::Node& node, std::string& out) {
    using Kind = Expr::Kind;
    const int prec = precedence(node.kind);
    switch (node.kind) {
        case Kind::Number: out += format_number(node.number); break;
        case Kind::Pi: out += "pi"; break;
        case Kind::ImagUnit: out += "i"; break;
        case Kind::VarE: out += "E"; break;
        case Kind::VarEp: out += "Ep"; break;
        case Kind::Neg:
            out += '-';
            print_child(node.kids[0], precedence(node.kids[0].kind) < prec, out);
            break;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            print_child(node.kids[0], precedence(node.kids[0].kind) < prec, out);
            switch (node.kind) {
                case Kind::Add: out += " + "; break;
                case Kind::Sub: out += " - "; break;
                case Kind::Mul: out += "*"; break;
                default: out += "/"; break;
            }
            print_child(node.kids[1], precedence(node.kids[1].kind) <= prec, out);
            break;
        }
        case Kind::Pow:
            print_child(node.kids[0], precedence(node.kids[0].kind) <= prec, out);
            out += '^';
            print_child(node.kids[1], precedence(node.kids[1].kind) < prec, out);
            break;
        case Kind::Call:
            switch (node.fn) {
                case Expr::Func::Exp: out += "exp"; break;
                case Expr::Func::Sin: out += "sin"; break;
                case Expr::Func::Cos: out += "cos"; break;
                case Expr::Func::Sqrt: out += "sqrt"; break;
                case Expr::Func::Abs: out += "abs"; break;
            }
            out += '(';
            print_node(node.kids[0], out);
            out += ')';
            break;
    }
}

}  // namespace

std::string Expr::print() const {
    std::string out;
    print_node(root_, out);
    return out;
}

Eigen::VectorXcd sample_diagonal(const Expr& diag, const EnergyGrid& grid) {
    if (diag.uses_ep()) {
        throw ValidationError("sample_diagonal: diagonal expression must not reference Ep");
    }
    Eigen::VectorXcd d(grid.cells());
    for (int j = 0; j < grid.cells(); ++j) d(j) = diag.evaluate(grid.node(j), 0.0);
    return d;
}

Eigen::MatrixXcd sample_kernel(const Expr& offdiag, const EnergyGrid& grid) {
    Eigen::MatrixXcd k(grid.cells(), grid.cells());
    for (int j = 0; j < grid.cells(); ++j) {
        for (int l = 0; l < grid.cells(); ++l) {
            k(j, l) = offdiag.evaluate(grid.node(j), grid.node(l));
        }
    }
    return k;
}

OperatorKernel sample_operator(const Expr* diag, const Expr* offdiag, const EnergyGrid& grid,
                               AlgebraTag tag) {
    Eigen::VectorXcd d = diag ? sample_diagonal(*diag, grid)
                              : Eigen::VectorXcd::Zero(grid.cells()).eval();
    Eigen::MatrixXcd k = offdiag ? sample_kernel(*offdiag, grid)
                                 : Eigen::MatrixXcd::Zero(grid.cells(), grid.cells()).eval();
    return {grid, tag, std::move(d), std::move(k)};
}

StateFunctional sample_functional(const Expr* diag, const Expr* offdiag, const EnergyGrid& grid,
                                  AlgebraTag tag) {
    Eigen::VectorXcd d = diag ? sample_diagonal(*diag, grid)
                              : Eigen::VectorXcd::Zero(grid.cells()).eval();
    Eigen::MatrixXcd k = offdiag ? sample_kernel(*offdiag, grid)
                                 : Eigen::MatrixXcd::Zero(grid.cells(), grid.cells()).eval();
    return {grid, tag, std::move(d), std::move(k)};
}

}  // namespace commutclass
