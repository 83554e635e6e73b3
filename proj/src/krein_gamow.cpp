#include "krein_gamow.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace commutclass {

namespace {

void check_system_size(int n, const char* what) {
    if (n < 1) {
        throw ValidationError(std::string(what) + ": system size N must be >= 1, got " +
                              std::to_string(n));
    }
}

}  // namespace

Resonance::Resonance(double e_r, double gamma) : e_r_(e_r), gamma_(gamma) {
    if (!std::isfinite(e_r)) throw ValidationError("Resonance: E_R must be finite");
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw ValidationError("Resonance: Gamma must be finite and > 0, got " +
                              std::to_string(gamma));
    }
}

double gram(const KetSymbol& a, const KetSymbol& b) {
    return (a.index == b.index && a.kind != b.kind) ? 1.0 : 0.0;
}

MetricPair build_metric(int n) {
    check_system_size(n, "build_metric");
    const int dim = 2 * n;
    MetricPair m;
    m.a = Eigen::MatrixXd::Zero(dim, dim);
    m.b = Eigen::MatrixXcd::Zero(dim, dim);

    const double s = std::sqrt(2.0) / 2.0;
    // Principal branch (-i)^{1/2} = exp(-i*pi/4).
    const Complex root_minus_i = std::polar(1.0, -M_PI / 4.0);
    Eigen::Matrix2cd block;
    block << Complex(0.0, s), Complex(s, 0.0), Complex(s, 0.0), Complex(0.0, s);
    block *= root_minus_i;

    for (int i = 0; i < n; ++i) {
        m.a(2 * i, 2 * i + 1) = 1.0;
        m.a(2 * i + 1, 2 * i) = 1.0;
        m.b.block<2, 2>(2 * i, 2 * i) = block;
    }
    return m;
}

FormalVector::FormalVector(int n_resonances) : n_(n_resonances) {
    check_system_size(n_, "FormalVector");
}

void FormalVector::check_symbol(const KetSymbol& sym) const {
    if (sym.index < 1 || sym.index > n_) {
        throw ValidationError("FormalVector: symbol index " + std::to_string(sym.index) +
                              " outside 1.." + std::to_string(n_));
    }
}

void FormalVector::set(const KetSymbol& sym, Complex value) {
    check_symbol(sym);
    if (value == Complex{}) {
        c_.erase(sym);
    } else {
        c_[sym] = value;
    }
}

Complex FormalVector::coeff(const KetSymbol& sym) const {
    check_symbol(sym);
    auto it = c_.find(sym);
    return it == c_.end() ? Complex{} : it->second;
}

FormalVector& FormalVector::operator+=(const FormalVector& other) {
    if (other.n_ != n_) throw ValidationError("FormalVector: mismatched system sizes");
    for (const auto& [sym, v] : other.c_) c_[sym] += v;
    for (auto it = c_.begin(); it != c_.end();) {
        it = std::abs(it->second) < kCoeffPrune ? c_.erase(it) : std::next(it);
    }
    return *this;
}

FormalVector& FormalVector::operator*=(Complex scale) {
    if (scale == Complex{}) {
        c_.clear();
        return *this;
    }
    for (auto& [sym, v] : c_) v *= scale;
    return *this;
}

double FormalVector::max_norm() const {
    double m = 0.0;
    for (const auto& [sym, v] : c_) m = std::max(m, std::abs(v));
    return m;
}

GamowOperator::GamowOperator(int n_resonances) : n_(n_resonances) {
    check_system_size(n_, "GamowOperator");
}

void GamowOperator::check_symbol(const KetSymbol& sym) const {
    if (sym.index < 1 || sym.index > n_) {
        throw ValidationError("GamowOperator: symbol index " + std::to_string(sym.index) +
                              " outside 1.." + std::to_string(n_));
    }
}

void GamowOperator::set(const KetSymbol& ket, const KetSymbol& bra, Complex value) {
    check_symbol(ket);
    check_symbol(bra);
    if (value == Complex{}) {
        c_.erase({ket, bra});
    } else {
        c_[{ket, bra}] = value;
    }
}

Complex GamowOperator::coeff(const KetSymbol& ket, const KetSymbol& bra) const {
    check_symbol(ket);
    check_symbol(bra);
    auto it = c_.find({ket, bra});
    return it == c_.end() ? Complex{} : it->second;
}

GamowOperator& GamowOperator::operator+=(const GamowOperator& other) {
    if (other.n_ != n_) throw ValidationError("GamowOperator: mismatched system sizes");
    for (const auto& [key, v] : other.c_) c_[key] += v;
    prune();
    return *this;
}

GamowOperator& GamowOperator::operator-=(const GamowOperator& other) {
    if (other.n_ != n_) throw ValidationError("GamowOperator: mismatched system sizes");
    for (const auto& [key, v] : other.c_) c_[key] -= v;
    prune();
    return *this;
}

GamowOperator& GamowOperator::operator*=(Complex scale) {
    if (scale == Complex{}) {
        c_.clear();
        return *this;
    }
    for (auto& [key, v] : c_) v *= scale;
    return *this;
}

double GamowOperator::max_norm() const {
    double m = 0.0;
    for (const auto& [key, v] : c_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<GamowOperator::Key> GamowOperator::support() const {
    std::vector<Key> keys;
    keys.reserve(c_.size());
    for (const auto& [key, v] : c_) keys.push_back(key);
    return keys;
}

bool GamowOperator::same_support(const GamowOperator& other) const {
    return support() == other.support();
}

void GamowOperator::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        it = std::abs(it->second) < kCoeffPrune ? c_.erase(it) : std::next(it);
    }
}

Complex pseudo_inner(const FormalVector& psi, const FormalVector& phi) {
    if (psi.resonances() != phi.resonances()) {
        throw ValidationError("pseudo_inner: mismatched system sizes");
    }
    Complex sum{};
    for (const auto& [a, va] : psi.coeffs()) {
        // gram(a, b) is nonzero only for b = partner(a).
        auto it = phi.coeffs().find(a.partner());
        if (it != phi.coeffs().end()) sum += std::conj(va) * it->second;
    }
    return sum;
}

GamowOperator compose(const GamowOperator& o1, const GamowOperator& o2) {
    if (o1.resonances() != o2.resonances()) {
        throw ValidationError("compose: mismatched system sizes");
    }
    // Bucket o2 rows by ket symbol so each o1 entry contracts in one lookup.
    std::map<KetSymbol, std::vector<std::pair<KetSymbol, Complex>>> rows;
    for (const auto& [key, v] : o2.coeffs()) rows[key.first].emplace_back(key.second, v);

    GamowOperator out(o1.resonances());
    std::map<GamowOperator::Key, Complex> acc;
    for (const auto& [key, v1] : o1.coeffs()) {
        auto it = rows.find(key.second.partner());
        if (it == rows.end()) continue;
        for (const auto& [bra, v2] : it->second) acc[{key.first, bra}] += v1 * v2;
    }
    for (const auto& [key, v] : acc) out.set(key.first, key.second, v);
    out.prune();
    return out;
}

FormalVector apply(const GamowOperator& o, const FormalVector& v) {
    if (o.resonances() != v.resonances()) {
        throw ValidationError("apply: mismatched system sizes");
    }
    FormalVector out(v.resonances());
    std::map<KetSymbol, Complex> acc;
    for (const auto& [key, ov] : o.coeffs()) {
        auto it = v.coeffs().find(key.second.partner());
        if (it != v.coeffs().end()) acc[key.first] += ov * it->second;
    }
    for (const auto& [sym, value] : acc) {
        if (std::abs(value) >= kCoeffPrune) out.set(sym, value);
    }
    return out;
}

GamowOperator adjoint(const GamowOperator& o) {
    GamowOperator out(o.resonances());
    for (const auto& [key, v] : o.coeffs()) out.set(key.second, key.first, std::conj(v));
    return out;
}

GamowOperator identity_op(int n) {
    check_system_size(n, "identity_op");
    GamowOperator out(n);
    for (int i = 1; i <= n; ++i) {
        out.set(ket_d(i), ket_g(i), 1.0);
        out.set(ket_g(i), ket_d(i), 1.0);
    }
    return out;
}

}  // namespace commutclass
