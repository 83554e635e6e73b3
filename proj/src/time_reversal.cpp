#include "time_reversal.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace commutclass {

std::pair<ConcreteVector, ConcreteVector> concrete_gamow_vectors(int n, int i) {
    if (i < 1 || i > n) {
        throw ValidationError("concrete_gamow_vectors: index " + std::to_string(i) +
                              " outside 1.." + std::to_string(n));
    }
    const MetricPair m = build_metric(n);
    ConcreteVector decaying = m.b.col(2 * (i - 1));
    ConcreteVector growing = m.b.adjoint().col(2 * (i - 1) + 1);
    return {std::move(decaying), std::move(growing)};
}

ConcreteVector apply_time_reversal(const ConcreteVector& v) {
    if (v.size() % 2 != 0) {
        throw ValidationError("apply_time_reversal: vector length must be even (2N)");
    }
    ConcreteVector out(v.size());
    for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
        out(i) = std::conj(v(i + 1));
        out(i + 1) = std::conj(v(i));
    }
    return out;
}

AppendixPairings appendix_pairings(Complex a, Complex b) {
    const double s = std::sqrt(2.0) / 2.0;
    const Complex root_i = std::polar(1.0, M_PI / 4.0);  // i^{1/2}
    const Complex i{0.0, 1.0};

    AppendixPairings p;
    p.bra_d_psi = root_i * (s * b - i * s * a);
    p.psi_ket_d = root_i * (s * std::conj(b) - i * s * std::conj(a));
    p.bra_d_t_psi = root_i * (s * std::conj(a) - i * s * std::conj(b));
    p.psi_t_ket_d = root_i * (s * std::conj(a) - i * s * std::conj(b));
    return p;
}

InvarianceReport invariance_gap(Complex a, Complex b, Complex z) {
    const AppendixPairings p = appendix_pairings(a, b);

    // (psi^G|psi) = (psi^D|psi) and (psi|psi^G) = (psi|psi^D), so both terms
    // of (psi|H|psi) share the same pairing product.
    InvarianceReport r;
    r.pairings = p;
    r.lhs = (z + std::conj(z)) * p.psi_ket_d * p.bra_d_psi;
    // All four T-pairings coincide, so (psi|THT|psi) collapses the same way.
    r.rhs = (z + std::conj(z)) * p.psi_t_ket_d * p.bra_d_t_psi;
    r.gap = r.lhs - r.rhs;
    return r;
}

InvarianceReport invariance_gap(Complex a, Complex b, const Resonance& res) {
    return invariance_gap(a, b, res.pole());
}

}  // namespace commutclass
