#include "selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>

#include "energy_algebra.hpp"
#include "errors.hpp"
#include "gamow_evolution.hpp"
#include "kernel_expr.hpp"
#include "krein_gamow.hpp"
#include "rng.hpp"
#include "time_reversal.hpp"

namespace commutclass {

namespace {

struct Check {
    const char* name;
    double tolerance;
    double (*run)(std::mt19937_64&);
};

FormalVector random_vector(std::mt19937_64& gen, int n) {
    FormalVector v(n);
    for (int i = 1; i <= n; ++i) {
        v.set(ket_d(i), uniform_complex(gen));
        v.set(ket_g(i), uniform_complex(gen));
    }
    return v;
}

std::vector<Resonance> random_resonances(std::mt19937_64& gen, int n) {
    std::vector<Resonance> res;
    res.reserve(n);
    for (int i = 0; i < n; ++i) {
        res.emplace_back(1.2 * uniform_symmetric(gen), 0.1 + 0.9 * uniform01(gen));
    }
    return res;
}

// Raw coefficient-table distances, bypassing the pruning in the algebraic
// operators so "exact" checks see every deviation.
double op_distance(const GamowOperator& a, const GamowOperator& b) {
    double dev = 0.0;
    for (const auto& [key, v] : a.coeffs()) {
        dev = std::max(dev, std::abs(v - b.coeff(key.first, key.second)));
    }
    for (const auto& [key, v] : b.coeffs()) {
        dev = std::max(dev, std::abs(a.coeff(key.first, key.second) - v));
    }
    return dev;
}

double vec_distance(const FormalVector& a, const FormalVector& b) {
    double dev = 0.0;
    for (const auto& [sym, v] : a.coeffs()) dev = std::max(dev, std::abs(v - b.coeff(sym)));
    for (const auto& [sym, v] : b.coeffs()) dev = std::max(dev, std::abs(a.coeff(sym) - v));
    return dev;
}

OperatorKernel random_kernel(std::mt19937_64& gen, const EnergyGrid& grid) {
    Eigen::VectorXcd d(grid.cells());
    Eigen::MatrixXcd k(grid.cells(), grid.cells());
    for (int j = 0; j < grid.cells(); ++j) d(j) = uniform_complex(gen);
    for (int j = 0; j < grid.cells(); ++j) {
        for (int l = 0; l < grid.cells(); ++l) k(j, l) = uniform_complex(gen);
    }
    return {grid, AlgebraTag::Free, std::move(d), std::move(k)};
}

OperatorKernel random_observable(std::mt19937_64& gen, const EnergyGrid& grid) {
    Eigen::VectorXcd d(grid.cells());
    Eigen::MatrixXcd k(grid.cells(), grid.cells());
    for (int j = 0; j < grid.cells(); ++j) d(j) = uniform_symmetric(gen);
    for (int j = 0; j < grid.cells(); ++j) {
        for (int l = 0; l < grid.cells(); ++l) k(j, l) = uniform_complex(gen);
    }
    Eigen::MatrixXcd herm = 0.5 * (k + k.adjoint());
    return {grid, AlgebraTag::Free, std::move(d), std::move(herm)};
}

// --- krein_gamow ---------------------------------------------------------

double check_gram_symmetric(std::mt19937_64&) {
    double dev = 0.0;
    for (int ia = 1; ia <= 4; ++ia) {
        for (int ib = 1; ib <= 4; ++ib) {
            for (KetSymbol a : {ket_d(ia), ket_g(ia)}) {
                for (KetSymbol b : {ket_d(ib), ket_g(ib)}) {
                    dev = std::max(dev, std::abs(gram(a, b) - gram(b, a)));
                }
            }
        }
    }
    return dev;
}

double check_metric_root(std::mt19937_64&) {
    double dev = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const MetricPair m = build_metric(n);
        dev = std::max(dev,
                       (m.b * m.b - m.a.cast<Complex>()).cwiseAbs().maxCoeff());
    }
    return dev;
}

double check_compose_associative(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const GamowOperator a = random_dense_operator(gen, n);
            const GamowOperator b = random_dense_operator(gen, n);
            const GamowOperator c = random_dense_operator(gen, n);
            dev = std::max(dev, op_distance(compose(compose(a, b), c), compose(a, compose(b, c))));
        }
    }
    return dev;
}

double check_pseudo_inner_symmetry(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 16; ++rep) {
            const FormalVector x = random_vector(gen, n);
            const FormalVector y = random_vector(gen, n);
            dev = std::max(dev, std::abs(pseudo_inner(x, y) - std::conj(pseudo_inner(y, x))));
        }
    }
    return dev;
}

double check_apply_compose(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 16; ++rep) {
            const GamowOperator a = random_dense_operator(gen, n);
            const GamowOperator b = random_dense_operator(gen, n);
            const FormalVector v = random_vector(gen, n);
            dev = std::max(dev, vec_distance(apply(compose(a, b), v), apply(a, apply(b, v))));
        }
    }
    return dev;
}

// --- gamow_evolution ------------------------------------------------------

double check_eigen_relations(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 5);
        const auto res = random_resonances(gen, n);
        const GamowOperator h = build_hamiltonian(res, HamiltonianVariant::Hermitian);
        for (int i = 1; i <= n; ++i) {
            FormalVector d(n), g(n);
            d.set(ket_d(i), 1.0);
            g.set(ket_g(i), 1.0);
            dev = std::max(dev, vec_distance(apply(h, d), res[i - 1].pole() * d));
            dev = std::max(dev, vec_distance(apply(h, g), res[i - 1].pole_conj() * g));
        }
    }
    return dev;
}

double check_annihilation(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 4);
        const auto res = random_resonances(gen, n);
        const double t = 3.0 * uniform_symmetric(gen);
        const GamowOperator ud = evolution_operator(res, EvolutionFamily::Decaying, t);
        const GamowOperator ug = evolution_operator(res, EvolutionFamily::Growing, t);
        for (int j = 1; j <= n; ++j) {
            FormalVector d(n), g(n);
            d.set(ket_d(j), 1.0);
            g.set(ket_g(j), 1.0);
            dev = std::max(dev, apply(ud, g).max_norm());
            dev = std::max(dev, apply(ug, d).max_norm());
        }
    }
    return dev;
}

double check_full_group_law(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 3);
        const auto res = random_resonances(gen, n);
        const double t = 3.0 * uniform_symmetric(gen);
        const double s = 3.0 * uniform_symmetric(gen);
        const GamowOperator ut = evolution_operator(res, EvolutionFamily::Full, t);
        const GamowOperator us = evolution_operator(res, EvolutionFamily::Full, s);
        const GamowOperator uts = evolution_operator(res, EvolutionFamily::Full, t + s);
        dev = std::max(dev, op_distance(compose(ut, us), uts));
        const GamowOperator uinv = evolution_operator(res, EvolutionFamily::Full, -t);
        dev = std::max(dev, op_distance(compose(ut, uinv), identity_op(n)));
    }
    return dev;
}

double check_asymmetric_self_adjoint(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 16; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 3);
        const auto res = random_resonances(gen, n);
        const double t = 5.0 * uniform_symmetric(gen);
        const GamowOperator u = evolution_operator(res, EvolutionFamily::Asymmetric, t);
        dev = std::max(dev, op_distance(u, adjoint(u)));
    }
    return dev;
}

double check_asymmetric_square(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 3);
        const auto res = random_resonances(gen, n);
        double gmin = res[0].gamma();
        for (const auto& r : res) gmin = std::min(gmin, r.gamma());
        for (int k = 0; k < 8; ++k) {
            const double t = (10.0 / gmin) * k / 7.0;
            const GamowOperator u = evolution_operator(res, EvolutionFamily::Asymmetric, t);
            const GamowOperator u2 = compose(u, u);
            if (!u2.same_support(identity_op(n))) return 1.0;
            for (const auto& [key, v] : u2.coeffs()) {
                const double expected = std::exp(-t * res[key.first.index - 1].gamma());
                dev = std::max(dev, std::abs(std::abs(v) - expected));
            }
        }
    }
    return dev;
}

double check_commute_envelope(std::mt19937_64& gen) {
    const std::vector<Resonance> res{{1.0, 0.2}, {2.0, 0.5}, {3.5, 1.1}};
    const GamowOperator o1 = random_dense_operator(gen, 3);
    const GamowOperator o2 = random_dense_operator(gen, 3);
    const auto times = uniform_times(50.0, 64);
    const DecayScanResult scan =
        decay_scan(o1, o2, res, EvolutionFamily::Asymmetric, times, CommutatorOrder::CommuteThenEvolve);
    double dev = 0.0;
    for (const auto& entry : scan.entries) {
        const double m0 = entry.magnitudes[0];
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double predicted = m0 * std::exp(-times[i] * entry.envelope_rate);
            dev = std::max(dev, std::abs(entry.magnitudes[i] - predicted));
        }
    }
    return dev;
}

// The norm bound holds as a theorem for dyad pairs: the commutator of two
// dyads rescales by a single factor of magnitude <= exp(-2 t Gamma_min).
// Random superpositions can violate it through un-cancellation, so the
// corpus here is the exhaustive dyad set.
double check_asymmetric_decay_bound(std::mt19937_64&) {
    double dev = 0.0;
    const std::vector<std::vector<Resonance>> systems{
        {{2.0, 0.5}}, {{1.0, 0.2}, {2.0, 0.5}, {3.5, 1.1}}};
    for (const auto& res : systems) {
        const int n = static_cast<int>(res.size());
        double gmin = res[0].gamma();
        for (const auto& r : res) gmin = std::min(gmin, r.gamma());
        std::vector<KetSymbol> symbols;
        for (int i = 1; i <= n; ++i) {
            symbols.push_back(ket_d(i));
            symbols.push_back(ket_g(i));
        }
        std::vector<GamowOperator> dyads;
        for (const KetSymbol& ket : symbols) {
            for (const KetSymbol& bra : symbols) {
                GamowOperator o(n);
                o.set(ket, bra, 1.0);
                dyads.push_back(std::move(o));
            }
        }
        const auto times = uniform_times(10.0 / gmin, 16);
        for (const auto& o1 : dyads) {
            for (const auto& o2 : dyads) {
                const GamowOperator c0 = commutator(o1, o2);
                const double n0 = c0.max_norm();
                if (n0 == 0.0) continue;
                for (double t : times) {
                    const GamowOperator ct =
                        commutator(heisenberg_evolve(o1, res, EvolutionFamily::Asymmetric, t),
                                   heisenberg_evolve(o2, res, EvolutionFamily::Asymmetric, t));
                    dev = std::max(dev, ct.max_norm() - n0 * std::exp(-t * gmin));
                }
            }
        }
    }
    return std::max(dev, 0.0);
}

double check_operator_power(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 3);
        const auto res = random_resonances(gen, n);
        const GamowOperator h = build_hamiltonian(res, HamiltonianVariant::Hermitian);
        for (int p = 1; p <= 8; ++p) {
            const GamowOperator hp = operator_power(h, p);
            for (int i = 1; i <= n; ++i) {
                Complex zp = 1.0;
                for (int k = 0; k < p; ++k) zp *= res[i - 1].pole();
                dev = std::max(dev, std::abs(hp.coeff(ket_d(i), ket_g(i)) - zp));
                dev = std::max(dev, std::abs(hp.coeff(ket_g(i), ket_d(i)) - std::conj(zp)));
            }
        }
    }
    return dev;
}

// --- time_reversal --------------------------------------------------------

double check_t_antilinear_involution(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            ConcreteVector v(2 * n);
            for (int j = 0; j < 2 * n; ++j) v(j) = uniform_complex(gen);
            dev = std::max(dev, (apply_time_reversal(apply_time_reversal(v)) - v)
                                    .cwiseAbs()
                                    .maxCoeff());
            const Complex lambda = uniform_complex(gen);
            dev = std::max(dev, (apply_time_reversal((lambda * v).eval()) -
                                 std::conj(lambda) * apply_time_reversal(v))
                                    .cwiseAbs()
                                    .maxCoeff());
        }
    }
    return dev;
}

double check_gamow_swap(std::mt19937_64&) {
    double dev = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (int i = 1; i <= n; ++i) {
            const auto [d, g] = concrete_gamow_vectors(n, i);
            dev = std::max(dev, (apply_time_reversal(d) - g).cwiseAbs().maxCoeff());
            dev = std::max(dev, (apply_time_reversal(g) - d).cwiseAbs().maxCoeff());
        }
    }
    return dev;
}

double check_appendix_chain(std::mt19937_64& gen) {
    // Independent route: raw matrix arithmetic with B and the block
    // conjugation-swap, against the closed forms.
    const MetricPair m = build_metric(1);
    const Eigen::MatrixXcd b = m.b;
    const Eigen::MatrixXcd bdag = m.b.adjoint();
    double dev = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const Complex a = uniform_complex(gen);
        const Complex bb = uniform_complex(gen);
        ConcreteVector psi(2);
        psi << a, bb;
        const ConcreteVector tpsi = apply_time_reversal(psi);

        const Complex bra_d_t_psi = (bdag.row(0) * tpsi).value();
        const Complex bra_g_t_psi = (b.row(1) * tpsi).value();
        const ConcreteVector ket_dv = b.col(0);
        const ConcreteVector ket_gv = bdag.col(1);
        const Complex psi_t_ket_d = (psi.adjoint() * apply_time_reversal(ket_dv)).value();
        const Complex psi_t_ket_g = (psi.adjoint() * apply_time_reversal(ket_gv)).value();

        const AppendixPairings p = appendix_pairings(a, bb);
        for (Complex v : {bra_g_t_psi, psi_t_ket_d, psi_t_ket_g, p.bra_d_t_psi, p.psi_t_ket_d}) {
            dev = std::max(dev, std::abs(v - bra_d_t_psi));
        }
    }
    return dev;
}

double check_non_invariance(std::mt19937_64& gen) {
    int hits = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        Complex a = uniform_complex(gen);
        Complex b = uniform_complex(gen);
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        if (norm == 0.0) continue;
        a /= norm;
        b /= norm;
        const InvarianceReport r = invariance_gap(a, b, Complex(2.0, -0.5));
        if (std::abs(r.gap) > 1e-8) ++hits;
    }
    return std::max(0, 990 - hits);
}

// --- energy_algebra -------------------------------------------------------

double check_dense_homomorphism(std::mt19937_64& gen) {
    double dev = 0.0;
    for (int m : {4, 16, 64}) {
        const EnergyGrid grid(8.0, m);
        for (int rep = 0; rep < 4; ++rep) {
            const OperatorKernel o1 = random_kernel(gen, grid);
            const OperatorKernel o2 = random_kernel(gen, grid);
            dev = std::max(dev, (dense_rep(product(o1, o2)) - dense_rep(o1) * dense_rep(o2))
                                    .cwiseAbs()
                                    .maxCoeff());
        }
    }
    return dev;
}

double check_product_associative(std::mt19937_64& gen) {
    const EnergyGrid grid(8.0, 16);
    double dev = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        const OperatorKernel a = random_kernel(gen, grid);
        const OperatorKernel b = random_kernel(gen, grid);
        const OperatorKernel c = random_kernel(gen, grid);
        const OperatorKernel lhs = product(product(a, b), c);
        const OperatorKernel rhs = product(a, product(b, c));
        dev = std::max(dev, (lhs.diagonal() - rhs.diagonal()).cwiseAbs().maxCoeff());
        dev = std::max(dev, (lhs.kernel() - rhs.kernel()).cwiseAbs().maxCoeff());
        // bilinearity of the commutator
        const Complex alpha = uniform_complex(gen);
        const OperatorKernel scaled(grid, AlgebraTag::Free, (alpha * a.diagonal()).eval(),
                                    (alpha * a.kernel()).eval());
        const OperatorKernel lhs2 = commutator_kernel(scaled, c);
        const OperatorKernel rhs2 = commutator_kernel(a, c);
        dev = std::max(dev,
                       (lhs2.kernel() - alpha * rhs2.kernel()).cwiseAbs().maxCoeff());
    }
    return dev;
}

double check_commutator_diagonal(std::mt19937_64& gen) {
    const EnergyGrid grid(6.0, 12);
    double dev = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const OperatorKernel a = random_kernel(gen, grid);
        const OperatorKernel b = random_kernel(gen, grid);
        dev = std::max(dev, (product(a, b).diagonal() - product(b, a).diagonal())
                                .cwiseAbs()
                                .maxCoeff());
        dev = std::max(dev, commutator_kernel(a, b).diagonal().cwiseAbs().maxCoeff());
    }
    return dev;
}

double check_evolve_group(std::mt19937_64& gen) {
    const EnergyGrid grid(8.0, 24);
    const double bound = grid.nyquist_tmax();
    double dev = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const OperatorKernel o = random_kernel(gen, grid);
        const double t = 0.4 * bound * uniform_symmetric(gen);
        const double s = 0.4 * bound * uniform_symmetric(gen);
        const OperatorKernel two_step = evolve_kernel(evolve_kernel(o, t), s);
        const OperatorKernel one_step = evolve_kernel(o, t + s);
        dev = std::max(dev, (two_step.kernel() - one_step.kernel()).cwiseAbs().maxCoeff());
        dev = std::max(dev, (two_step.diagonal() - o.diagonal()).cwiseAbs().maxCoeff());
    }
    return dev;
}

double check_observability(std::mt19937_64& gen) {
    const EnergyGrid grid(8.0, 16);
    const OperatorKernel o = random_observable(gen, grid);
    if (!is_observable(o)) return 1.0;
    if (!is_observable(evolve_kernel(o, 0.7 * grid.nyquist_tmax()))) return 1.0;
    if (!is_observable(weak_limit(o))) return 1.0;
    // Counterexample: the product of two non-commuting observables is not
    // observable.
    Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(grid.cells(), grid.cells());
    Eigen::MatrixXcd k2 = Eigen::MatrixXcd::Zero(grid.cells(), grid.cells());
    k1(0, 1) = 1.0;
    k1(1, 0) = 1.0;
    k2(0, 1) = Complex(0.0, 1.0);
    k2(1, 0) = Complex(0.0, -1.0);
    const OperatorKernel a(grid, AlgebraTag::Free, Eigen::VectorXcd::Zero(grid.cells()), k1);
    const OperatorKernel b(grid, AlgebraTag::Free, Eigen::VectorXcd::Zero(grid.cells()), k2);
    if (!is_observable(a) || !is_observable(b)) return 1.0;
    if (is_observable(product(a, b))) return 1.0;
    return 0.0;
}

double check_riemann_lebesgue(std::mt19937_64&) {
    const EnergyGrid grid(8.0, 256);
    const Expr gauss = Expr::parse("exp(-(E-2)^2-(Ep-2)^2)");
    const OperatorKernel o = sample_operator(nullptr, &gauss, grid);
    const StateFunctional rho = sample_functional(nullptr, &gauss, grid);
    const Complex diag_part = pair(rho, weak_limit(o));

    const auto times = uniform_times(grid.nyquist_tmax(), 64);
    std::vector<double> mags;
    mags.reserve(times.size());
    for (double t : times) mags.push_back(std::abs(pair(rho, o, t) - diag_part));

    const std::size_t peak =
        std::distance(mags.begin(), std::max_element(mags.begin(), mags.end()));
    std::size_t first_below = mags.size();
    for (std::size_t i = 0; i < mags.size(); ++i) {
        if (mags[i] < 0.01 * mags[0]) {
            first_below = i;
            break;
        }
    }
    if (first_below == mags.size()) return 1.0;  // never fell below 1%
    double dev = 0.0;
    for (std::size_t i = peak; i + 1 <= first_below; ++i) {
        dev = std::max(dev, mags[i + 1] - mags[i]);  // must be non-increasing
    }
    return dev;
}

// --- kernel_expr ----------------------------------------------------------

const char* const kExprCorpus[] = {
    "2+3*4",
    "(2 + 3)*4",
    "2^3^2",
    "-E^2",
    "1-2-3",
    "exp(-(E-2)^2 - (Ep-2)^2)",
    "1/(E + i)",
    "sin(E)^2 + cos(E)^2",
    "sqrt(-1)",
    "abs(3-4*i)",
    "2^-2",
    "exp(i*pi)",
    "E*Ep/2",
    "-(-E)",
    "cos(pi)*sqrt(2)",
};

double check_print_idempotent(std::mt19937_64&) {
    double mismatches = 0.0;
    for (const char* text : kExprCorpus) {
        const std::string once = Expr::parse(text).print();
        const std::string twice = Expr::parse(once).print();
        if (once != twice) mismatches += 1.0;
        const Complex v1 = Expr::parse(text).evaluate(1.25, 0.5);
        const Complex v2 = Expr::parse(once).evaluate(1.25, 0.5);
        if (std::abs(v1 - v2) > 1e-12) mismatches += 1.0;
    }
    return mismatches;
}

double check_evaluate_pure(std::mt19937_64&) {
    const Expr e = Expr::parse("exp(-(E-2)^2 - (Ep-2)^2)*sin(E) + sqrt(Ep)/(1 + E^2)");
    const Complex a = e.evaluate(1.7, 0.3);
    const Complex b = e.evaluate(1.7, 0.3);
    return std::memcmp(&a, &b, sizeof(Complex)) == 0 ? 0.0 : 1.0;
}

double check_precedence(std::mt19937_64&) {
    double dev = 0.0;
    const auto val = [](const char* s, double e = 0.0, double ep = 0.0) {
        return Expr::parse(s).evaluate(e, ep);
    };
    dev = std::max(dev, std::abs(val("2^3^2") - Complex(512.0)));
    dev = std::max(dev, std::abs(val("-E^2", 3.0) - Complex(-9.0)));
    dev = std::max(dev, std::abs(val("1-2-3") - Complex(-4.0)));
    dev = std::max(dev, std::abs(val("2*3+4*5") - Complex(26.0)));
    dev = std::max(dev, std::abs(val("1/2/2") - Complex(0.25)));
    dev = std::max(dev, std::abs(val("2^-2") - Complex(0.25)));
    return dev;
}

const Check kChecks[] = {
    {"krein.gram_symmetric", 0.0, check_gram_symmetric},
    {"krein.metric_root", 1e-12, check_metric_root},
    {"krein.compose_associative", 1e-12, check_compose_associative},
    {"krein.pseudo_inner_conjugate_symmetry", 1e-12, check_pseudo_inner_symmetry},
    {"krein.apply_compose_consistency", 1e-12, check_apply_compose},
    {"evolution.eigen_relations", 0.0, check_eigen_relations},
    {"evolution.annihilation_table", 0.0, check_annihilation},
    {"evolution.full_group_law", 1e-12, check_full_group_law},
    {"evolution.asymmetric_self_adjoint", 0.0, check_asymmetric_self_adjoint},
    {"evolution.asymmetric_square_magnitudes", 1e-12, check_asymmetric_square},
    {"evolution.commute_then_evolve_envelope", 1e-10, check_commute_envelope},
    {"evolution.asymmetric_decay_bound", 1e-12, check_asymmetric_decay_bound},
    {"evolution.operator_power_coefficients", 1e-12, check_operator_power},
    {"time_reversal.antilinear_involution", 0.0, check_t_antilinear_involution},
    {"time_reversal.gamow_swap", 1e-12, check_gamow_swap},
    {"time_reversal.appendix_chain", 1e-12, check_appendix_chain},
    {"time_reversal.non_invariance", 0.0, check_non_invariance},
    {"energy.dense_homomorphism", 1e-12, check_dense_homomorphism},
    {"energy.product_associative", 1e-12, check_product_associative},
    {"energy.commutator_diagonal_zero", 0.0, check_commutator_diagonal},
    {"energy.evolve_group_action", 1e-12, check_evolve_group},
    {"energy.observability_preservation", 0.0, check_observability},
    {"energy.riemann_lebesgue", 1e-9, check_riemann_lebesgue},
    {"expr.print_parse_idempotent", 0.0, check_print_idempotent},
    {"expr.evaluate_pure", 0.0, check_evaluate_pure},
    {"expr.precedence_corpus", 1e-12, check_precedence},
};

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::vector<std::string> selfcheck_names() {
    std::vector<std::string> names;
    for (const Check& c : kChecks) names.emplace_back(c.name);
    return names;
}

SelfCheckReport run_selfcheck(std::uint64_t seed, std::string_view break_name, bool fail_fast) {
    if (!break_name.empty()) {
        bool known = false;
        for (const Check& c : kChecks) known = known || break_name == c.name;
        if (!known) {
            throw ValidationError("run_selfcheck: unknown invariant '" + std::string(break_name) +
                                  "'");
        }
    }

    SelfCheckReport report;
    report.all_passed = true;
    for (const Check& c : kChecks) {
        std::mt19937_64 gen(seed ^ fnv1a(c.name));
        double deviation = c.run(gen);
        if (break_name == c.name) {
            deviation += std::max(1.0, c.tolerance * 1e6);
        }
        CheckResult r{c.name, deviation <= c.tolerance, deviation, c.tolerance};
        report.all_passed = report.all_passed && r.passed;
        report.results.push_back(std::move(r));
        if (fail_fast && !report.all_passed) break;
    }
    return report;
}

}  // namespace commutclass
