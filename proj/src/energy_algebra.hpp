#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "krein_gamow.hpp"  // Complex

namespace commutclass {

/// Midpoint discretization of the energy half-line truncated to [0, E_max]:
/// M cells of width dE = E_max/M with nodes E_j = (j + 1/2) dE. The continuum
/// normalization <E|E'> = delta(E - E') becomes weight 1/dE on coincident
/// nodes.
class EnergyGrid {
public:
    EnergyGrid(double e_max, int cells);

    double e_max() const { return e_max_; }
    int cells() const { return m_; }
    double spacing() const { return de_; }
    double node(int j) const { return (j + 0.5) * de_; }
    Eigen::VectorXd nodes() const;

    /// Largest |t| for which e^{i t (E_j - E_k)} stays adequately sampled
    /// between neighboring nodes: pi / (4 dE).
    double nyquist_tmax() const;

    friend bool operator==(const EnergyGrid&, const EnergyGrid&) = default;

private:
    double e_max_;
    int m_;
    double de_;
};

/// Which algebra an element belongs to. In/out elements arise from free ones
/// by Moller conjugation, which leaves the kernel functions unchanged; the
/// tag is the bookkeeping that keeps the algebras separate.
enum class AlgebraTag { Free, In, Out };

const char* tag_name(AlgebraTag tag);

/// An operator compatible with the energy representation: a diagonal
/// function d(E) plus an off-diagonal kernel K(E, E') sampled on the grid.
/// K need not be symmetric.
class OperatorKernel {
public:
    OperatorKernel(EnergyGrid grid, AlgebraTag tag, Eigen::VectorXcd d, Eigen::MatrixXcd k);

    static OperatorKernel identity(const EnergyGrid& grid, AlgebraTag tag = AlgebraTag::Free);

    const EnergyGrid& grid() const { return grid_; }
    AlgebraTag tag() const { return tag_; }
    const Eigen::VectorXcd& diagonal() const { return d_; }
    const Eigen::MatrixXcd& kernel() const { return k_; }

private:
    EnergyGrid grid_;
    AlgebraTag tag_;
    Eigen::VectorXcd d_;
    Eigen::MatrixXcd k_;
};

/// The dual object: profiles (rho(E), rho(E,E')) acting on kernels by
/// quadrature, linearly and without conjugation.
class StateFunctional {
public:
    StateFunctional(EnergyGrid grid, AlgebraTag tag, Eigen::VectorXcd rho_d,
                    Eigen::MatrixXcd rho_k);

    const EnergyGrid& grid() const { return grid_; }
    AlgebraTag tag() const { return tag_; }
    const Eigen::VectorXcd& diagonal() const { return rho_d_; }
    const Eigen::MatrixXcd& kernel() const { return rho_k_; }

private:
    EnergyGrid grid_;
    AlgebraTag tag_;
    Eigen::VectorXcd rho_d_;
    Eigen::MatrixXcd rho_k_;
};

/// Moller conjugation O -> Omega O Omega^dagger: kernel data is unchanged,
/// only the tag moves from Free to In/Out. Retagging non-free elements is
/// rejected.
OperatorKernel moller_retag(const OperatorKernel& o, AlgebraTag tag);
StateFunctional moller_retag(const StateFunctional& rho, AlgebraTag tag);

/// Algebra product under the delta normalization:
///   d = d1 d2 (pointwise),
///   K_jk = d1_j K2_jk + K1_jk d2_k + dE sum_m K1_jm K2_mk.
/// This is the unique rule making dense_rep a homomorphism.
OperatorKernel product(const OperatorKernel& o1, const OperatorKernel& o2);

/// product(o1, o2) - product(o2, o1); its diagonal part is identically zero.
OperatorKernel commutator_kernel(const OperatorKernel& o1, const OperatorKernel& o2);

/// Heisenberg evolution: d fixed, K_jk -> e^{i t (E_j - E_k)} K_jk. Times
/// beyond the Nyquist bound are rejected unless explicitly overridden.
OperatorKernel evolve_kernel(const OperatorKernel& o, double t, bool allow_aliasing = false);

/// (rho|O(t)) = sum_j rho_j d_j dE + sum_jk e^{i t (E_j - E_k)} rhoK_jk K_jk dE^2.
Complex pair(const StateFunctional& rho, const OperatorKernel& o, double t = 0.0);

/// The t -> +-infinity weak limit: diagonal kept, off-diagonal kernel zeroed
/// (self-induced decoherence).
OperatorKernel weak_limit(const OperatorKernel& o);

/// True iff d is real and K is conjugate-symmetric, to 1e-10.
bool is_observable(const OperatorKernel& o);

/// Brute-force dense image diag(d) + dE*K used as the product oracle.
Eigen::MatrixXcd dense_rep(const OperatorKernel& o);

struct DecayCurvePoint {
    double t;
    Complex value;
    double magnitude;
};

/// value(t) = pair(rho, [O1(t), O2(t)]). Magnitudes settle onto the
/// t-independent diagonal contribution, which is exactly zero for
/// commutators.
std::vector<DecayCurvePoint> decay_curve(const StateFunctional& rho, const OperatorKernel& o1,
                                         const OperatorKernel& o2, std::span<const double> times,
                                         bool allow_aliasing = false);

}  // namespace commutclass
