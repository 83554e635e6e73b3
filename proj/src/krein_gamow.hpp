#pragma once

#include <compare>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace commutclass {

using Complex = std::complex<double>;

// Coefficients below this magnitude are pruned after algebraic operations,
// keeping operator supports finite and comparisons crisp.
inline constexpr double kCoeffPrune = 1e-14;

/// A resonance pole z = E_R - i*Gamma/2 together with its conjugate.
class Resonance {
public:
    Resonance(double e_r, double gamma);

    double e_r() const { return e_r_; }
    double gamma() const { return gamma_; }
    Complex pole() const { return {e_r_, -0.5 * gamma_}; }
    Complex pole_conj() const { return {e_r_, 0.5 * gamma_}; }

private:
    double e_r_;
    double gamma_;
};

enum class KetKind : unsigned char { Decaying, Growing };

/// One of the 2N formal basis symbols |D_i) or |G_i).
struct KetSymbol {
    int index = 1;  // 1-based resonance index
    KetKind kind = KetKind::Decaying;

    friend auto operator<=>(const KetSymbol&, const KetSymbol&) = default;

    KetSymbol partner() const {
        return {index, kind == KetKind::Decaying ? KetKind::Growing : KetKind::Decaying};
    }
};

inline KetSymbol ket_d(int i) { return {i, KetKind::Decaying}; }
inline KetSymbol ket_g(int i) { return {i, KetKind::Growing}; }

/// The pseudometric pairing table: (a|b) = 1 when the symbols share an index
/// and differ in kind, 0 otherwise.
double gram(const KetSymbol& a, const KetSymbol& b);

/// The pseudometric A together with a square root B, B*B = A. A consists of
/// 2x2 antidiagonal unit blocks; B repeats the block
/// (-i)^{1/2} * [[i*sqrt2/2, sqrt2/2], [sqrt2/2, i*sqrt2/2]]
/// with the principal branch (-i)^{1/2} = exp(-i*pi/4).
struct MetricPair {
    Eigen::MatrixXd a;
    Eigen::MatrixXcd b;
};

MetricPair build_metric(int n);

/// A formal linear combination of the 2N basis symbols. Absent keys mean
/// coefficient zero.
class FormalVector {
public:
    explicit FormalVector(int n_resonances);

    int resonances() const { return n_; }
    void set(const KetSymbol& sym, Complex value);
    Complex coeff(const KetSymbol& sym) const;
    const std::map<KetSymbol, Complex>& coeffs() const { return c_; }

    FormalVector& operator+=(const FormalVector& other);
    FormalVector& operator*=(Complex scale);
    friend FormalVector operator+(FormalVector a, const FormalVector& b) { return a += b; }
    friend FormalVector operator*(Complex s, FormalVector v) { return v *= s; }

    double max_norm() const;

private:
    void check_symbol(const KetSymbol& sym) const;

    int n_;
    std::map<KetSymbol, Complex> c_;
};

/// A formal operator: a finite coefficient table over dyads |ket)(bra|.
/// Composition uses the Gram pairing, never a concrete matrix product.
class GamowOperator {
public:
    using Key = std::pair<KetSymbol, KetSymbol>;

    explicit GamowOperator(int n_resonances);

    int resonances() const { return n_; }
    void set(const KetSymbol& ket, const KetSymbol& bra, Complex value);
    Complex coeff(const KetSymbol& ket, const KetSymbol& bra) const;
    const std::map<Key, Complex>& coeffs() const { return c_; }

    GamowOperator& operator+=(const GamowOperator& other);
    GamowOperator& operator-=(const GamowOperator& other);
    GamowOperator& operator*=(Complex scale);
    friend GamowOperator operator+(GamowOperator a, const GamowOperator& b) { return a += b; }
    friend GamowOperator operator-(GamowOperator a, const GamowOperator& b) { return a -= b; }
    friend GamowOperator operator*(Complex s, GamowOperator o) { return o *= s; }

    /// Max coefficient magnitude; the basis-intrinsic norm used throughout.
    double max_norm() const;
    std::vector<Key> support() const;
    bool same_support(const GamowOperator& other) const;

    /// Drops coefficients below the pruning threshold.
    void prune();

private:
    void check_symbol(const KetSymbol& sym) const;

    int n_;
    std::map<Key, Complex> c_;
};

/// <psi|A|phi>: antilinear in psi, linear in phi.
Complex pseudo_inner(const FormalVector& psi, const FormalVector& phi);

/// Gram-rule composition: (O1 O2)[(a,b)] = sum_c O1[(a,c)] O2[(partner(c),b)].
GamowOperator compose(const GamowOperator& o1, const GamowOperator& o2);

/// Gram-rule action on vectors.
FormalVector apply(const GamowOperator& o, const FormalVector& v);

/// Formal dagger: coefficient conjugation plus dyad transposition.
GamowOperator adjoint(const GamowOperator& o);

/// I = sum_i |D_i)(G_i| + |G_i)(D_i|, the two-sided unit for compose.
GamowOperator identity_op(int n);

}  // namespace commutclass
