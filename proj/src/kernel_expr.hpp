#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "energy_algebra.hpp"

namespace commutclass {

/// A parsed profile expression over the variables E and Ep (E'), the
/// constants pi and i, the operators + - * / ^ and unary minus, and the
/// functions exp, sin, cos, sqrt, abs. Precedence: ^ binds tightest
/// (right-associative), then unary minus, then * /, then + -.
class Expr {
public:
    static Expr parse(std::string_view text);

    /// Complex evaluation with principal branches for sqrt and ^.
    /// Throws EvaluationError naming the node if a value goes non-finite.
    Complex evaluate(double e, double ep) const;

    bool uses_e() const;
    bool uses_ep() const;

    /// Canonical form: parse(print(x)) reproduces x.
    std::string print() const;

    enum class Kind : unsigned char {
        Number, Pi, ImagUnit, VarE, VarEp, Neg, Add, Sub, Mul, Div, Pow, Call
    };
    enum class Func : unsigned char { Exp, Sin, Cos, Sqrt, Abs };

    struct Node {
        Kind kind = Kind::Number;
        double number = 0.0;
        Func fn = Func::Exp;
        std::size_t offset = 0;
        std::vector<Node> kids;
    };

private:
    friend struct ExprParser;

    Expr() = default;

    Complex eval_node(const Node& node, double e, double ep) const;

    Node root_;
};

/// Samples d_j = diag(E_j). The expression must not reference Ep.
Eigen::VectorXcd sample_diagonal(const Expr& diag, const EnergyGrid& grid);

/// Samples K_jk = offdiag(E_j, E_k).
Eigen::MatrixXcd sample_kernel(const Expr& offdiag, const EnergyGrid& grid);

/// Builds a kernel from optional profiles; a missing profile means zero.
OperatorKernel sample_operator(const Expr* diag, const Expr* offdiag, const EnergyGrid& grid,
                               AlgebraTag tag = AlgebraTag::Free);
StateFunctional sample_functional(const Expr* diag, const Expr* offdiag, const EnergyGrid& grid,
                                  AlgebraTag tag = AlgebraTag::Free);

}  // namespace commutclass
