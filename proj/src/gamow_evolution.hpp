#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "krein_gamow.hpp"

namespace commutclass {

enum class HamiltonianVariant {
    Truncated,        // sum_i z_i |D_i)(G_i|
    TruncatedDagger,  // sum_i z_i* |G_i)(D_i|
    Hermitian,        // sum of both; equals its own adjoint
};

enum class EvolutionFamily {
    Decaying,    // sum_j e^{-i t z_j} |D_j)(G_j|
    Growing,     // sum_j e^{-i t z_j*} |G_j)(D_j|
    Full,        // both, with e^{-i t z_j*} on |G_j)(D_j|; U(t)U(-t) = I
    Asymmetric,  // e^{-i t z_j} and e^{+i t z_j*}; formally Hermitian, decays
};

enum class CommutatorOrder {
    EvolveThenCommute,  // [O1(t), O2(t)]
    CommuteThenEvolve,  // ([O1, O2])(t)
};

GamowOperator build_hamiltonian(std::span<const Resonance> res, HamiltonianVariant variant);

/// n-fold Gram composition; n = 0 yields the identity.
GamowOperator operator_power(const GamowOperator& o, int n);

GamowOperator evolution_operator(std::span<const Resonance> res, EvolutionFamily family,
                                 double t);

/// Heisenberg picture: U(t)^dagger O U(t).
GamowOperator heisenberg_evolve(const GamowOperator& o, std::span<const Resonance> res,
                                EvolutionFamily family, double t);

GamowOperator commutator(const GamowOperator& o1, const GamowOperator& o2);

/// |amplitude|^2 of the (D_j, G_j) coefficient of U(t): exp(-t*Gamma_j).
double survival_probability(std::span<const Resonance> res, int j, EvolutionFamily family,
                            double t);

/// Magnitude history of one commutator entry, with the per-resonance
/// envelope rate (Gamma_j + Gamma_k)/2 that governs the
/// commute-then-evolve ordering exactly.
struct EntryEnvelope {
    KetSymbol ket;
    KetSymbol bra;
    double envelope_rate = 0.0;
    std::vector<double> magnitudes;
};

struct DecayScanResult {
    std::vector<double> times;
    std::vector<double> norms;      // max coefficient magnitude per time
    std::vector<double> log_norms;  // natural log; -inf where the norm is 0
    // Least-squares slope of log norm against t over samples with
    // norm > 1e-13; absent when the commutator is identically zero.
    std::optional<double> fitted_rate;
    std::vector<EntryEnvelope> entries;
};

DecayScanResult decay_scan(const GamowOperator& o1, const GamowOperator& o2,
                           std::span<const Resonance> res, EvolutionFamily family,
                           std::span<const double> times, CommutatorOrder order);

/// Uniform sweep 0..t_max inclusive, the window used for rate fits.
std::vector<double> uniform_times(double t_max, int samples);

/// A dense operator with every coefficient drawn uniformly from the unit
/// square; the stock input for randomized scans.
GamowOperator random_dense_operator(std::mt19937_64& gen, int n);

}  // namespace commutclass
