#pragma once

#include <utility>

#include "krein_gamow.hpp"

namespace commutclass {

/// A concrete 2N-component column in the orthonormal basis
/// |psi_1^D>, |psi_1^G>, ..., |psi_N^D>, |psi_N^G>.
using ConcreteVector = Eigen::VectorXcd;

/// The concrete images (B e_{2i-1}, B^dagger e_{2i}) of the i-th decaying and
/// growing Gamow vectors. For N = 1 the two coincide as columns, which is the
/// degeneracy that forces the formal coefficient algebra.
std::pair<ConcreteVector, ConcreteVector> concrete_gamow_vectors(int n, int i);

/// Wigner-type time reversal: each per-resonance 2-block (x, y) maps to
/// (conj(y), conj(x)). Antilinear involution.
ConcreteVector apply_time_reversal(const ConcreteVector& v);

/// The four appendix pairings for the one-resonance model with psi = (a, b)^T,
/// using the branch i^{1/2} = exp(i*pi/4).
struct AppendixPairings {
    Complex bra_d_psi;    // (psi^D|psi)
    Complex psi_ket_d;    // (psi|psi^D)
    Complex bra_d_t_psi;  // (psi^D|T|psi)
    Complex psi_t_ket_d;  // (psi|T|psi^D)
};

AppendixPairings appendix_pairings(Complex a, Complex b);

struct InvarianceReport {
    Complex lhs;  // (psi|H|psi)
    Complex rhs;  // (psi|THT|psi)
    Complex gap;  // lhs - rhs
    AppendixPairings pairings;
};

/// Compares (psi|H|psi) with (psi|THT|psi) for the one-resonance model via
/// the appendix closed forms; the gap is generically nonzero.
InvarianceReport invariance_gap(Complex a, Complex b, Complex z);
InvarianceReport invariance_gap(Complex a, Complex b, const Resonance& res);

}  // namespace commutclass
