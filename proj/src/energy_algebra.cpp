#include "energy_algebra.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace commutclass {

namespace {

void check_same_algebra(const EnergyGrid& ga, AlgebraTag ta, const EnergyGrid& gb, AlgebraTag tb,
                        const char* what) {
    if (!(ga == gb)) throw ValidationError(std::string(what) + ": grid mismatch");
    if (ta != tb) {
        throw ValidationError(std::string(what) + ": algebra tag mismatch (" + tag_name(ta) +
                              " vs " + tag_name(tb) + "); in/out elements do not mix");
    }
}

void check_finite(const Eigen::VectorXcd& d, const Eigen::MatrixXcd& k, const char* what) {
    if (!d.allFinite()) throw ValidationError(std::string(what) + ": diagonal has non-finite entries");
    if (!k.allFinite()) throw ValidationError(std::string(what) + ": kernel has non-finite entries");
}

void check_shapes(const EnergyGrid& grid, const Eigen::VectorXcd& d, const Eigen::MatrixXcd& k,
                  const char* what) {
    if (d.size() != grid.cells()) {
        throw ValidationError(std::string(what) + ": diagonal length " + std::to_string(d.size()) +
                              " does not match grid cells " + std::to_string(grid.cells()));
    }
    if (k.rows() != grid.cells() || k.cols() != grid.cells()) {
        throw ValidationError(std::string(what) + ": kernel must be cells x cells");
    }
}

void check_nyquist(const EnergyGrid& grid, double t, bool allow_aliasing, const char* what) {
    const double bound = grid.nyquist_tmax();
    if (!allow_aliasing && std::abs(t) > bound) {
        throw ValidationError(std::string(what) + ": |t| = " + std::to_string(std::abs(t)) +
                              " exceeds the Nyquist bound " + std::to_string(bound) +
                              " for this grid; pass the aliasing override to force it");
    }
}

}  // namespace

EnergyGrid::EnergyGrid(double e_max, int cells) : e_max_(e_max), m_(cells) {
    if (!std::isfinite(e_max) || e_max <= 0.0) {
        throw ValidationError("EnergyGrid: E_max must be finite and > 0");
    }
    if (cells < 1) throw ValidationError("EnergyGrid: M must be >= 1");
    de_ = e_max_ / m_;
}

Eigen::VectorXd EnergyGrid::nodes() const {
    Eigen::VectorXd v(m_);
    for (int j = 0; j < m_; ++j) v(j) = node(j);
    return v;
}

double EnergyGrid::nyquist_tmax() const { return M_PI / (4.0 * de_); }

const char* tag_name(AlgebraTag tag) {
    switch (tag) {
        case AlgebraTag::Free: return "free";
        case AlgebraTag::In: return "in";
        case AlgebraTag::Out: return "out";
    }
    return "?";
}

OperatorKernel::OperatorKernel(EnergyGrid grid, AlgebraTag tag, Eigen::VectorXcd d,
                               Eigen::MatrixXcd k)
    : grid_(grid), tag_(tag), d_(std::move(d)), k_(std::move(k)) {
    check_shapes(grid_, d_, k_, "OperatorKernel");
    check_finite(d_, k_, "OperatorKernel");
}

OperatorKernel OperatorKernel::identity(const EnergyGrid& grid, AlgebraTag tag) {
    return {grid, tag, Eigen::VectorXcd::Ones(grid.cells()),
            Eigen::MatrixXcd::Zero(grid.cells(), grid.cells())};
}

StateFunctional::StateFunctional(EnergyGrid grid, AlgebraTag tag, Eigen::VectorXcd rho_d,
                                 Eigen::MatrixXcd rho_k)
    : grid_(grid), tag_(tag), rho_d_(std::move(rho_d)), rho_k_(std::move(rho_k)) {
    check_shapes(grid_, rho_d_, rho_k_, "StateFunctional");
    check_finite(rho_d_, rho_k_, "StateFunctional");
}

OperatorKernel moller_retag(const OperatorKernel& o, AlgebraTag tag) {
    if (o.tag() != AlgebraTag::Free) {
        throw ValidationError(std::string("moller_retag: kernel is already tagged ") +
                              tag_name(o.tag()) + "; only free elements can be conjugated");
    }
    if (tag == AlgebraTag::Free) {
        throw ValidationError("moller_retag: target tag must be in or out");
    }
    return {o.grid(), tag, o.diagonal(), o.kernel()};
}

StateFunctional moller_retag(const StateFunctional& rho, AlgebraTag tag) {
    if (rho.tag() != AlgebraTag::Free) {
        throw ValidationError(std::string("moller_retag: functional is already tagged ") +
                              tag_name(rho.tag()) + "; only free elements can be conjugated");
    }
    if (tag == AlgebraTag::Free) {
        throw ValidationError("moller_retag: target tag must be in or out");
    }
    return {rho.grid(), tag, rho.diagonal(), rho.kernel()};
}

OperatorKernel product(const OperatorKernel& o1, const OperatorKernel& o2) {
    check_same_algebra(o1.grid(), o1.tag(), o2.grid(), o2.tag(), "product");
    const double de = o1.grid().spacing();
    Eigen::VectorXcd d = o1.diagonal().cwiseProduct(o2.diagonal());
    Eigen::MatrixXcd k = o1.diagonal().asDiagonal() * o2.kernel();
    k += o1.kernel() * o2.diagonal().asDiagonal();
    k += de * (o1.kernel() * o2.kernel());
    return {o1.grid(), o1.tag(), std::move(d), std::move(k)};
}

OperatorKernel commutator_kernel(const OperatorKernel& o1, const OperatorKernel& o2) {
    check_same_algebra(o1.grid(), o1.tag(), o2.grid(), o2.tag(), "commutator_kernel");
    const OperatorKernel ab = product(o1, o2);
    const OperatorKernel ba = product(o2, o1);
    // Diagonal parts commute pointwise; keep the zero exact.
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(o1.grid().cells());
    Eigen::MatrixXcd k = ab.kernel() - ba.kernel();
    return {o1.grid(), o1.tag(), std::move(d), std::move(k)};
}

OperatorKernel evolve_kernel(const OperatorKernel& o, double t, bool allow_aliasing) {
    check_nyquist(o.grid(), t, allow_aliasing, "evolve_kernel");
    const int m = o.grid().cells();
    Eigen::VectorXcd phase(m);
    for (int j = 0; j < m; ++j) phase(j) = std::polar(1.0, t * o.grid().node(j));
    Eigen::MatrixXcd k = phase.asDiagonal() * o.kernel() * phase.conjugate().asDiagonal();
    return {o.grid(), o.tag(), o.diagonal(), std::move(k)};
}

Complex pair(const StateFunctional& rho, const OperatorKernel& o, double t) {
    check_same_algebra(rho.grid(), rho.tag(), o.grid(), o.tag(), "pair");
    const double de = o.grid().spacing();
    Complex diag = rho.diagonal().cwiseProduct(o.diagonal()).sum() * de;
    Complex offdiag{};
    if (t == 0.0) {
        offdiag = rho.kernel().cwiseProduct(o.kernel()).sum() * (de * de);
    } else {
        const int m = o.grid().cells();
        Eigen::VectorXcd phase(m);
        for (int j = 0; j < m; ++j) phase(j) = std::polar(1.0, t * o.grid().node(j));
        offdiag = (phase.transpose() * rho.kernel().cwiseProduct(o.kernel()) * phase.conjugate())
                      .value() *
                  (de * de);
    }
    return diag + offdiag;
}

OperatorKernel weak_limit(const OperatorKernel& o) {
    return {o.grid(), o.tag(), o.diagonal(),
            Eigen::MatrixXcd::Zero(o.grid().cells(), o.grid().cells())};
}

bool is_observable(const OperatorKernel& o) {
    constexpr double tol = 1e-10;
    if (o.diagonal().imag().cwiseAbs().maxCoeff() >= tol) return false;
    return (o.kernel() - o.kernel().adjoint()).cwiseAbs().maxCoeff() < tol;
}

Eigen::MatrixXcd dense_rep(const OperatorKernel& o) {
    Eigen::MatrixXcd m = o.grid().spacing() * o.kernel();
    m += Eigen::MatrixXcd(o.diagonal().asDiagonal());
    return m;
}

std::vector<DecayCurvePoint> decay_curve(const StateFunctional& rho, const OperatorKernel& o1,
                                         const OperatorKernel& o2, std::span<const double> times,
                                         bool allow_aliasing) {
    check_same_algebra(rho.grid(), rho.tag(), o1.grid(), o1.tag(), "decay_curve");
    check_same_algebra(o1.grid(), o1.tag(), o2.grid(), o2.tag(), "decay_curve");
    if (times.empty()) throw ValidationError("decay_curve: times is empty");
    for (double t : times) check_nyquist(o1.grid(), t, allow_aliasing, "decay_curve");

    std::vector<DecayCurvePoint> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        const OperatorKernel c =
            commutator_kernel(evolve_kernel(o1, t, true), evolve_kernel(o2, t, true));
        const Complex v = pair(rho, c);
        out[i] = {t, v, std::abs(v)};
    });
    return out;
}

}  // namespace commutclass
