#include "gamow_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace commutclass {

namespace {

void check_resonances(std::span<const Resonance> res, const char* what) {
    if (res.empty()) throw ValidationError(std::string(what) + ": resonance list is empty");
}

Complex decay_amplitude(const Resonance& r, double t) {
    // e^{-i t z}, z = E_R - i*Gamma/2
    return std::exp(Complex(0.0, -1.0) * (t * r.pole()));
}

}  // namespace

GamowOperator build_hamiltonian(std::span<const Resonance> res, HamiltonianVariant variant) {
    check_resonances(res, "build_hamiltonian");
    GamowOperator h(static_cast<int>(res.size()));
    for (int i = 1; i <= static_cast<int>(res.size()); ++i) {
        const Complex z = res[i - 1].pole();
        if (variant == HamiltonianVariant::Truncated || variant == HamiltonianVariant::Hermitian) {
            h.set(ket_d(i), ket_g(i), z);
        }
        if (variant == HamiltonianVariant::TruncatedDagger ||
            variant == HamiltonianVariant::Hermitian) {
            h.set(ket_g(i), ket_d(i), std::conj(z));
        }
    }
    return h;
}

GamowOperator operator_power(const GamowOperator& o, int n) {
    if (n < 0) throw ValidationError("operator_power: exponent must be >= 0");
    if (n == 0) return identity_op(o.resonances());
    GamowOperator out = o;
    for (int k = 1; k < n; ++k) out = compose(out, o);
    return out;
}

GamowOperator evolution_operator(std::span<const Resonance> res, EvolutionFamily family,
                                 double t) {
    check_resonances(res, "evolution_operator");
    GamowOperator u(static_cast<int>(res.size()));
    for (int j = 1; j <= static_cast<int>(res.size()); ++j) {
        const Resonance& r = res[j - 1];
        switch (family) {
            case EvolutionFamily::Decaying:
                u.set(ket_d(j), ket_g(j), decay_amplitude(r, t));
                break;
            case EvolutionFamily::Growing:
                u.set(ket_g(j), ket_d(j), std::exp(Complex(0.0, -1.0) * (t * r.pole_conj())));
                break;
            case EvolutionFamily::Full:
                u.set(ket_d(j), ket_g(j), decay_amplitude(r, t));
                u.set(ket_g(j), ket_d(j), std::exp(Complex(0.0, -1.0) * (t * r.pole_conj())));
                break;
            case EvolutionFamily::Asymmetric: {
                // e^{+i t z*} = conj(e^{-i t z}), so the table is exactly
                // self-adjoint at every t.
                const Complex u_dg = decay_amplitude(r, t);
                u.set(ket_d(j), ket_g(j), u_dg);
                u.set(ket_g(j), ket_d(j), std::conj(u_dg));
                break;
            }
        }
    }
    return u;
}

GamowOperator heisenberg_evolve(const GamowOperator& o, std::span<const Resonance> res,
                                EvolutionFamily family, double t) {
    if (static_cast<int>(res.size()) != o.resonances()) {
        throw ValidationError("heisenberg_evolve: mismatched system sizes");
    }
    const GamowOperator u = evolution_operator(res, family, t);
    return compose(adjoint(u), compose(o, u));
}

GamowOperator commutator(const GamowOperator& o1, const GamowOperator& o2) {
    return compose(o1, o2) - compose(o2, o1);
}

double survival_probability(std::span<const Resonance> res, int j, EvolutionFamily family,
                            double t) {
    check_resonances(res, "survival_probability");
    if (j < 1 || j > static_cast<int>(res.size())) {
        throw ValidationError("survival_probability: resonance index " + std::to_string(j) +
                              " outside 1.." + std::to_string(res.size()));
    }
    if (t < 0.0) throw ValidationError("survival_probability: t must be >= 0");
    if (family == EvolutionFamily::Growing) {
        throw ValidationError(
            "survival_probability: the growing family has no (D_j, G_j) amplitude");
    }
    const GamowOperator u = evolution_operator(res, family, t);
    return std::norm(u.coeff(ket_d(j), ket_g(j)));
}

std::vector<double> uniform_times(double t_max, int samples) {
    if (samples < 2) throw ValidationError("uniform_times: need at least 2 samples");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ValidationError("uniform_times: t_max must be finite and > 0");
    }
    std::vector<double> ts(samples);
    for (int i = 0; i < samples; ++i) ts[i] = t_max * i / (samples - 1);
    return ts;
}

DecayScanResult decay_scan(const GamowOperator& o1, const GamowOperator& o2,
                           std::span<const Resonance> res, EvolutionFamily family,
                           std::span<const double> times, CommutatorOrder order) {
    check_resonances(res, "decay_scan");
    if (o1.resonances() != static_cast<int>(res.size()) ||
        o2.resonances() != static_cast<int>(res.size())) {
        throw ValidationError("decay_scan: mismatched system sizes");
    }
    if (times.empty()) throw ValidationError("decay_scan: times is empty");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw ValidationError("decay_scan: times must be strictly increasing");
        }
    }

    const GamowOperator c0 = commutator(o1, o2);

    std::vector<GamowOperator> snapshots(times.size(), GamowOperator(o1.resonances()));
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        if (order == CommutatorOrder::CommuteThenEvolve) {
            snapshots[i] = heisenberg_evolve(c0, res, family, t);
        } else {
            snapshots[i] = commutator(heisenberg_evolve(o1, res, family, t),
                                      heisenberg_evolve(o2, res, family, t));
        }
    });

    DecayScanResult out;
    out.times.assign(times.begin(), times.end());
    out.norms.reserve(times.size());
    out.log_norms.reserve(times.size());
    for (const auto& snap : snapshots) {
        const double n = snap.max_norm();
        out.norms.push_back(n);
        out.log_norms.push_back(n > 0.0 ? std::log(n)
                                        : -std::numeric_limits<double>::infinity());
    }

    // Envelope per entry over the union of supports across the sweep.
    std::map<GamowOperator::Key, std::size_t> slot;
    for (const auto& snap : snapshots) {
        for (const auto& key : snap.support()) {
            if (!slot.contains(key)) {
                slot[key] = out.entries.size();
                EntryEnvelope env;
                env.ket = key.first;
                env.bra = key.second;
                env.envelope_rate = 0.5 * (res[key.first.index - 1].gamma() +
                                           res[key.second.index - 1].gamma());
                env.magnitudes.assign(times.size(), 0.0);
                out.entries.push_back(std::move(env));
            }
        }
    }
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        for (const auto& [key, v] : snapshots[i].coeffs()) {
            out.entries[slot[key]].magnitudes[i] = std::abs(v);
        }
    }

    // Least-squares slope of log norm over usable samples.
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < out.norms.size(); ++i) {
        if (out.norms[i] > 1e-13) {
            st += out.times[i];
            sy += out.log_norms[i];
            stt += out.times[i] * out.times[i];
            sty += out.times[i] * out.log_norms[i];
            ++count;
        }
    }
    if (count >= 2) {
        const double denom = count * stt - st * st;
        if (denom > 0.0) out.fitted_rate = (count * sty - st * sy) / denom;
    }
    return out;
}

GamowOperator random_dense_operator(std::mt19937_64& gen, int n) {
    GamowOperator o(n);
    for (int ik = 0; ik < 2 * n; ++ik) {
        for (int ib = 0; ib < 2 * n; ++ib) {
            const KetSymbol ket = ik % 2 == 0 ? ket_d(ik / 2 + 1) : ket_g(ik / 2 + 1);
            const KetSymbol bra = ib % 2 == 0 ? ket_d(ib / 2 + 1) : ket_g(ib / 2 + 1);
            o.set(ket, bra, uniform_complex(gen));
        }
    }
    return o;
}

}  // namespace commutclass
