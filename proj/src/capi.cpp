#include "commutclass/commutclass.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "energy_algebra.hpp"
#include "errors.hpp"
#include "gamow_evolution.hpp"
#include "kernel_expr.hpp"
#include "krein_gamow.hpp"
#include "parallel.hpp"
#include "selfcheck.hpp"
#include "time_reversal.hpp"

namespace cq = commutclass;

struct cc_resonances {
    std::vector<cq::Resonance> items;
};
struct cc_gamow_scan {
    cq::DecayScanResult result;
};
struct cc_grid {
    cq::EnergyGrid grid;
};
struct cc_expr {
    cq::Expr expr;
};
struct cc_kernel {
    cq::OperatorKernel kernel;
};
struct cc_functional {
    cq::StateFunctional rho;
};
struct cc_curve {
    std::vector<cq::DecayCurvePoint> points;
};
struct cc_selfcheck {
    cq::SelfCheckReport report;
};

namespace {

thread_local std::string t_last_error;

int set_error(int code, const std::string& message) {
    t_last_error = message;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const cq::ValidationError& e) {
        return set_error(CC_ERR_INVALID, e.what());
    } catch (const cq::ParseError& e) {
        return set_error(CC_ERR_PARSE, e.what());
    } catch (const cq::EvaluationError& e) {
        return set_error(CC_ERR_EVAL, e.what());
    } catch (const std::exception& e) {
        return set_error(CC_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(CC_ERR_INTERNAL, "unknown error");
    }
}

int require(bool ok, const char* message) {
    return ok ? CC_OK : set_error(CC_ERR_INVALID, message);
}

cq::EvolutionFamily to_family(int family) {
    switch (family) {
        case CC_FAMILY_DECAYING: return cq::EvolutionFamily::Decaying;
        case CC_FAMILY_GROWING: return cq::EvolutionFamily::Growing;
        case CC_FAMILY_FULL: return cq::EvolutionFamily::Full;
        case CC_FAMILY_ASYMMETRIC: return cq::EvolutionFamily::Asymmetric;
    }
    throw cq::ValidationError("family: expected one of CC_FAMILY_*");
}

cq::CommutatorOrder to_order(int order) {
    switch (order) {
        case CC_ORDER_EVOLVE_THEN_COMMUTE: return cq::CommutatorOrder::EvolveThenCommute;
        case CC_ORDER_COMMUTE_THEN_EVOLVE: return cq::CommutatorOrder::CommuteThenEvolve;
    }
    throw cq::ValidationError("order: expected one of CC_ORDER_*");
}

cq::AlgebraTag to_tag(int tag) {
    switch (tag) {
        case CC_TAG_FREE: return cq::AlgebraTag::Free;
        case CC_TAG_IN: return cq::AlgebraTag::In;
        case CC_TAG_OUT: return cq::AlgebraTag::Out;
    }
    throw cq::ValidationError("tag: expected one of CC_TAG_*");
}

int from_tag(cq::AlgebraTag tag) {
    switch (tag) {
        case cq::AlgebraTag::Free: return CC_TAG_FREE;
        case cq::AlgebraTag::In: return CC_TAG_IN;
        case cq::AlgebraTag::Out: return CC_TAG_OUT;
    }
    return CC_TAG_FREE;
}

cc_complex to_c(cq::Complex z) { return {z.real(), z.imag()}; }

void copy_data(const Eigen::VectorXcd& d, const Eigen::MatrixXcd& k, cc_complex* out_d,
               cc_complex* out_k) {
    if (out_d) {
        for (Eigen::Index j = 0; j < d.size(); ++j) out_d[j] = to_c(d(j));
    }
    if (out_k) {
        const Eigen::Index m = k.rows();
        for (Eigen::Index j = 0; j < m; ++j) {
            for (Eigen::Index l = 0; l < m; ++l) out_k[j * m + l] = to_c(k(j, l));
        }
    }
}

void load_data(const cq::EnergyGrid& grid, const cc_complex* d, const cc_complex* k,
               Eigen::VectorXcd& out_d, Eigen::MatrixXcd& out_k) {
    const int m = grid.cells();
    out_d = Eigen::VectorXcd::Zero(m);
    out_k = Eigen::MatrixXcd::Zero(m, m);
    if (d) {
        for (int j = 0; j < m; ++j) out_d(j) = {d[j].re, d[j].im};
    }
    if (k) {
        for (int j = 0; j < m; ++j) {
            for (int l = 0; l < m; ++l) out_k(j, l) = {k[j * m + l].re, k[j * m + l].im};
        }
    }
}

}  // namespace

extern "C" {

const char* cc_last_error(void) { return t_last_error.c_str(); }

const char* cc_version(void) { return "0.1.0"; }

void cc_set_max_threads(unsigned n) { cq::set_max_threads(n); }

/* --- resonances -------------------------------------------------------- */

int cc_resonances_create(const double* e_r, const double* gamma, size_t count,
                         cc_resonances** out) {
    if (int rc = require(e_r && gamma && out && count > 0,
                         "cc_resonances_create: e_r, gamma, out must be non-null, count > 0"))
        return rc;
    return guarded([&] {
        auto handle = std::make_unique<cc_resonances>();
        handle->items.reserve(count);
        for (size_t i = 0; i < count; ++i) handle->items.emplace_back(e_r[i], gamma[i]);
        *out = handle.release();
        return CC_OK;
    });
}

void cc_resonances_destroy(cc_resonances* res) { delete res; }

size_t cc_resonances_count(const cc_resonances* res) { return res ? res->items.size() : 0; }

int cc_survival_probability(const cc_resonances* res, size_t j, int family, double t,
                            double* out) {
    if (int rc = require(res && out, "cc_survival_probability: res and out must be non-null"))
        return rc;
    return guarded([&] {
        *out = cq::survival_probability(res->items, static_cast<int>(j), to_family(family), t);
        return CC_OK;
    });
}

/* --- gamow scans --------------------------------------------------------- */

int cc_gamow_scan_run(const cc_resonances* res, int family, int order, const double* times,
                      size_t count, uint64_t seed, cc_gamow_scan** out) {
    if (int rc = require(res && times && out && count > 0,
                         "cc_gamow_scan_run: res, times, out must be non-null, count > 0"))
        return rc;
    return guarded([&] {
        std::mt19937_64 gen(seed);
        const int n = static_cast<int>(res->items.size());
        const cq::GamowOperator o1 = cq::random_dense_operator(gen, n);
        const cq::GamowOperator o2 = cq::random_dense_operator(gen, n);
        auto handle = std::make_unique<cc_gamow_scan>();
        handle->result = cq::decay_scan(o1, o2, res->items, to_family(family),
                                        std::span<const double>(times, count), to_order(order));
        *out = handle.release();
        return CC_OK;
    });
}

void cc_gamow_scan_destroy(cc_gamow_scan* scan) { delete scan; }

size_t cc_gamow_scan_count(const cc_gamow_scan* scan) {
    return scan ? scan->result.times.size() : 0;
}

int cc_gamow_scan_point(const cc_gamow_scan* scan, size_t index, double* t, double* norm,
                        double* log_norm) {
    if (int rc = require(scan != nullptr, "cc_gamow_scan_point: scan must be non-null")) return rc;
    if (int rc = require(index < scan->result.times.size(),
                         "cc_gamow_scan_point: index out of range"))
        return rc;
    if (t) *t = scan->result.times[index];
    if (norm) *norm = scan->result.norms[index];
    if (log_norm) *log_norm = scan->result.log_norms[index];
    return CC_OK;
}

int cc_gamow_scan_fitted_rate(const cc_gamow_scan* scan, int* defined, double* rate) {
    if (int rc = require(scan && defined && rate,
                         "cc_gamow_scan_fitted_rate: all arguments must be non-null"))
        return rc;
    *defined = scan->result.fitted_rate.has_value() ? 1 : 0;
    *rate = scan->result.fitted_rate.value_or(0.0);
    return CC_OK;
}

/* --- time reversal ------------------------------------------------------- */

int cc_invariance_gap(cc_complex a, cc_complex b, double e_r, double gamma,
                      cc_invariance_report* out) {
    if (int rc = require(out != nullptr, "cc_invariance_gap: out must be non-null")) return rc;
    return guarded([&] {
        const cq::Resonance res(e_r, gamma);
        const cq::InvarianceReport r =
            cq::invariance_gap(cq::Complex{a.re, a.im}, cq::Complex{b.re, b.im}, res);
        out->lhs = to_c(r.lhs);
        out->rhs = to_c(r.rhs);
        out->gap = to_c(r.gap);
        out->bra_d_psi = to_c(r.pairings.bra_d_psi);
        out->psi_ket_d = to_c(r.pairings.psi_ket_d);
        out->bra_d_t_psi = to_c(r.pairings.bra_d_t_psi);
        out->psi_t_ket_d = to_c(r.pairings.psi_t_ket_d);
        return CC_OK;
    });
}

int cc_time_reversal_swap_error(size_t n, double* max_error) {
    if (int rc = require(max_error && n > 0,
                         "cc_time_reversal_swap_error: max_error must be non-null, n > 0"))
        return rc;
    return guarded([&] {
        double dev = 0.0;
        for (int i = 1; i <= static_cast<int>(n); ++i) {
            const auto [d, g] = cq::concrete_gamow_vectors(static_cast<int>(n), i);
            dev = std::max(dev, (cq::apply_time_reversal(d) - g).cwiseAbs().maxCoeff());
            dev = std::max(dev, (cq::apply_time_reversal(g) - d).cwiseAbs().maxCoeff());
        }
        *max_error = dev;
        return CC_OK;
    });
}

/* --- expressions ---------------------------------------------------------- */

int cc_expr_parse(const char* text, cc_expr** out) {
    if (int rc = require(text && out, "cc_expr_parse: text and out must be non-null")) return rc;
    return guarded([&] {
        *out = new cc_expr{cq::Expr::parse(text)};
        return CC_OK;
    });
}

void cc_expr_destroy(cc_expr* expr) { delete expr; }

int cc_expr_eval(const cc_expr* expr, double e, double ep, cc_complex* out) {
    if (int rc = require(expr && out, "cc_expr_eval: expr and out must be non-null")) return rc;
    return guarded([&] {
        *out = to_c(expr->expr.evaluate(e, ep));
        return CC_OK;
    });
}

int cc_expr_uses_ep(const cc_expr* expr, int* out) {
    if (int rc = require(expr && out, "cc_expr_uses_ep: expr and out must be non-null")) return rc;
    *out = expr->expr.uses_ep() ? 1 : 0;
    return CC_OK;
}

int cc_expr_print(const cc_expr* expr, char* buf, size_t cap, size_t* needed) {
    if (int rc = require(expr != nullptr, "cc_expr_print: expr must be non-null")) return rc;
    return guarded([&] {
        const std::string text = expr->expr.print();
        if (needed) *needed = text.size() + 1;
        if (buf && cap > 0) {
            const size_t n = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
        return CC_OK;
    });
}

/* --- grid / kernels -------------------------------------------------------- */

int cc_grid_create(double e_max, size_t cells, cc_grid** out) {
    if (int rc = require(out != nullptr, "cc_grid_create: out must be non-null")) return rc;
    return guarded([&] {
        *out = new cc_grid{cq::EnergyGrid(e_max, static_cast<int>(cells))};
        return CC_OK;
    });
}

void cc_grid_destroy(cc_grid* grid) { delete grid; }

int cc_grid_nyquist_tmax(const cc_grid* grid, double* out) {
    if (int rc = require(grid && out, "cc_grid_nyquist_tmax: grid and out must be non-null"))
        return rc;
    *out = grid->grid.nyquist_tmax();
    return CC_OK;
}

size_t cc_grid_cells(const cc_grid* grid) {
    return grid ? static_cast<size_t>(grid->grid.cells()) : 0;
}

double cc_grid_e_max(const cc_grid* grid) { return grid ? grid->grid.e_max() : 0.0; }

int cc_kernel_from_exprs(const cc_grid* grid, const char* diag, const char* offdiag, int tag,
                         cc_kernel** out) {
    if (int rc = require(grid && out, "cc_kernel_from_exprs: grid and out must be non-null"))
        return rc;
    return guarded([&] {
        std::optional<cq::Expr> d, k;
        if (diag) d = cq::Expr::parse(diag);
        if (offdiag) k = cq::Expr::parse(offdiag);
        *out = new cc_kernel{cq::sample_operator(d ? &*d : nullptr, k ? &*k : nullptr,
                                                 grid->grid, to_tag(tag))};
        return CC_OK;
    });
}

int cc_kernel_create(const cc_grid* grid, int tag, const cc_complex* d, const cc_complex* k,
                     cc_kernel** out) {
    if (int rc = require(grid && out, "cc_kernel_create: grid and out must be non-null"))
        return rc;
    return guarded([&] {
        Eigen::VectorXcd dv;
        Eigen::MatrixXcd kv;
        load_data(grid->grid, d, k, dv, kv);
        *out = new cc_kernel{
            cq::OperatorKernel(grid->grid, to_tag(tag), std::move(dv), std::move(kv))};
        return CC_OK;
    });
}

void cc_kernel_destroy(cc_kernel* kernel) { delete kernel; }

int cc_kernel_tag(const cc_kernel* kernel, int* out) {
    if (int rc = require(kernel && out, "cc_kernel_tag: kernel and out must be non-null"))
        return rc;
    *out = from_tag(kernel->kernel.tag());
    return CC_OK;
}

size_t cc_kernel_cells(const cc_kernel* kernel) {
    return kernel ? static_cast<size_t>(kernel->kernel.grid().cells()) : 0;
}

double cc_kernel_e_max(const cc_kernel* kernel) {
    return kernel ? kernel->kernel.grid().e_max() : 0.0;
}

int cc_kernel_data(const cc_kernel* kernel, cc_complex* d, cc_complex* k) {
    if (int rc = require(kernel != nullptr, "cc_kernel_data: kernel must be non-null")) return rc;
    copy_data(kernel->kernel.diagonal(), kernel->kernel.kernel(), d, k);
    return CC_OK;
}

int cc_kernel_retag(const cc_kernel* kernel, int tag, cc_kernel** out) {
    if (int rc = require(kernel && out, "cc_kernel_retag: kernel and out must be non-null"))
        return rc;
    return guarded([&] {
        *out = new cc_kernel{cq::moller_retag(kernel->kernel, to_tag(tag))};
        return CC_OK;
    });
}

int cc_kernel_weak_limit(const cc_kernel* kernel, cc_kernel** out) {
    if (int rc = require(kernel && out, "cc_kernel_weak_limit: kernel and out must be non-null"))
        return rc;
    return guarded([&] {
        *out = new cc_kernel{cq::weak_limit(kernel->kernel)};
        return CC_OK;
    });
}

int cc_kernel_commutator(const cc_kernel* a, const cc_kernel* b, cc_kernel** out) {
    if (int rc = require(a && b && out, "cc_kernel_commutator: all arguments must be non-null"))
        return rc;
    return guarded([&] {
        *out = new cc_kernel{cq::commutator_kernel(a->kernel, b->kernel)};
        return CC_OK;
    });
}

int cc_kernel_evolve(const cc_kernel* kernel, double t, int allow_aliasing, cc_kernel** out) {
    if (int rc = require(kernel && out, "cc_kernel_evolve: kernel and out must be non-null"))
        return rc;
    return guarded([&] {
        *out = new cc_kernel{cq::evolve_kernel(kernel->kernel, t, allow_aliasing != 0)};
        return CC_OK;
    });
}

int cc_kernel_is_observable(const cc_kernel* kernel, int* out) {
    if (int rc = require(kernel && out, "cc_kernel_is_observable: kernel and out must be non-null"))
        return rc;
    *out = cq::is_observable(kernel->kernel) ? 1 : 0;
    return CC_OK;
}

int cc_functional_from_exprs(const cc_grid* grid, const char* diag, const char* offdiag, int tag,
                             cc_functional** out) {
    if (int rc = require(grid && out, "cc_functional_from_exprs: grid and out must be non-null"))
        return rc;
    return guarded([&] {
        std::optional<cq::Expr> d, k;
        if (diag) d = cq::Expr::parse(diag);
        if (offdiag) k = cq::Expr::parse(offdiag);
        *out = new cc_functional{cq::sample_functional(d ? &*d : nullptr, k ? &*k : nullptr,
                                                       grid->grid, to_tag(tag))};
        return CC_OK;
    });
}

int cc_functional_create(const cc_grid* grid, int tag, const cc_complex* d, const cc_complex* k,
                         cc_functional** out) {
    if (int rc = require(grid && out, "cc_functional_create: grid and out must be non-null"))
        return rc;
    return guarded([&] {
        Eigen::VectorXcd dv;
        Eigen::MatrixXcd kv;
        load_data(grid->grid, d, k, dv, kv);
        *out = new cc_functional{
            cq::StateFunctional(grid->grid, to_tag(tag), std::move(dv), std::move(kv))};
        return CC_OK;
    });
}

void cc_functional_destroy(cc_functional* rho) { delete rho; }

int cc_functional_data(const cc_functional* rho, cc_complex* d, cc_complex* k) {
    if (int rc = require(rho != nullptr, "cc_functional_data: rho must be non-null")) return rc;
    copy_data(rho->rho.diagonal(), rho->rho.kernel(), d, k);
    return CC_OK;
}

int cc_functional_retag(const cc_functional* rho, int tag, cc_functional** out) {
    if (int rc = require(rho && out, "cc_functional_retag: rho and out must be non-null"))
        return rc;
    return guarded([&] {
        *out = new cc_functional{cq::moller_retag(rho->rho, to_tag(tag))};
        return CC_OK;
    });
}

int cc_pair(const cc_functional* rho, const cc_kernel* kernel, double t, cc_complex* out) {
    if (int rc = require(rho && kernel && out, "cc_pair: all arguments must be non-null"))
        return rc;
    return guarded([&] {
        *out = to_c(cq::pair(rho->rho, kernel->kernel, t));
        return CC_OK;
    });
}

int cc_decay_curve_run(const cc_functional* rho, const cc_kernel* o1, const cc_kernel* o2,
                       const double* times, size_t count, int allow_aliasing, cc_curve** out) {
    if (int rc = require(rho && o1 && o2 && times && out && count > 0,
                         "cc_decay_curve_run: all arguments must be non-null, count > 0"))
        return rc;
    return guarded([&] {
        auto handle = std::make_unique<cc_curve>();
        handle->points = cq::decay_curve(rho->rho, o1->kernel, o2->kernel,
                                         std::span<const double>(times, count),
                                         allow_aliasing != 0);
        *out = handle.release();
        return CC_OK;
    });
}

void cc_curve_destroy(cc_curve* curve) { delete curve; }

size_t cc_curve_count(const cc_curve* curve) { return curve ? curve->points.size() : 0; }

int cc_curve_point(const cc_curve* curve, size_t index, double* t, cc_complex* value,
                   double* magnitude) {
    if (int rc = require(curve != nullptr, "cc_curve_point: curve must be non-null")) return rc;
    if (int rc = require(index < curve->points.size(), "cc_curve_point: index out of range"))
        return rc;
    const cq::DecayCurvePoint& p = curve->points[index];
    if (t) *t = p.t;
    if (value) *value = to_c(p.value);
    if (magnitude) *magnitude = p.magnitude;
    return CC_OK;
}

/* --- invariant suite ------------------------------------------------------- */

int cc_selfcheck_run(uint64_t seed, const char* break_name, cc_selfcheck** out) {
    if (int rc = require(out != nullptr, "cc_selfcheck_run: out must be non-null")) return rc;
    return guarded([&] {
        auto handle = std::make_unique<cc_selfcheck>();
        handle->report = cq::run_selfcheck(seed, break_name ? break_name : "");
        *out = handle.release();
        return CC_OK;
    });
}

void cc_selfcheck_destroy(cc_selfcheck* report) { delete report; }

size_t cc_selfcheck_count(const cc_selfcheck* report) {
    return report ? report->report.results.size() : 0;
}

int cc_selfcheck_item(const cc_selfcheck* report, size_t index, const char** name, int* passed,
                      double* deviation, double* tolerance) {
    if (int rc = require(report != nullptr, "cc_selfcheck_item: report must be non-null"))
        return rc;
    if (int rc = require(index < report->report.results.size(),
                         "cc_selfcheck_item: index out of range"))
        return rc;
    const cq::CheckResult& r = report->report.results[index];
    if (name) *name = r.name.c_str();
    if (passed) *passed = r.passed ? 1 : 0;
    if (deviation) *deviation = r.deviation;
    if (tolerance) *tolerance = r.tolerance;
    return CC_OK;
}

int cc_selfcheck_passed(const cc_selfcheck* report, int* out) {
    if (int rc = require(report && out, "cc_selfcheck_passed: report and out must be non-null"))
        return rc;
    *out = report->report.all_passed ? 1 : 0;
    return CC_OK;
}

}  // extern "C"
