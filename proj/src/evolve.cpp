#include "fluxband/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxband {

StepPlan StepPlan::uniform(double t0, double t1, double dt) {
    if (t1 <= t0 || dt <= 0.0) throw std::invalid_argument("bad step plan");
    return StepPlan{{Interval{t0, t1, dt}}};
}

namespace {

// midpoint-sampled exponential step: psi <- exp(-i H dt) psi with the mean
// diagonal split off so the Taylor series converges in a few terms
void exponential_steps(const HamiltonianFn& hfn, double t0, double t1, double dt_req,
                       Matrix& states, const Observer& obs, double tol) {
    const std::size_t dim = states.rows();
    Matrix h(dim, dim);
    Matrix a(dim, dim);
    const long nsteps = std::max(1L, std::lround((t1 - t0) / dt_req));
    const double dt = (t1 - t0) / static_cast<double>(nsteps);
    long since_obs = 0;
    for (long s = 0; s < nsteps; ++s) {
        const double tm = t0 + (s + 0.5) * dt;
        hfn(tm, h);
        if (h.hermiticity_error() > 1e-10)
            throw std::runtime_error("non-Hermitian Hamiltonian sample at t = " + std::to_string(tm));
        double shift = 0.0;
        for (std::size_t i = 0; i < dim; ++i) shift += h(i, i).real();
        shift /= static_cast<double>(dim);
        for (std::size_t i = 0; i < dim * dim; ++i) a.data()[i] = cd(0.0, -dt) * h.data()[i];
        for (std::size_t i = 0; i < dim; ++i) a(i, i) += cd(0.0, dt * shift);
        expm_apply_inplace(a, states);
        const cd phase = std::exp(cd(0.0, -shift * dt));
        kernels::scal(dim * states.cols(), phase, states.data());
        if (obs.stride > 0 && ++since_obs >= obs.stride) {
            since_obs = 0;
            obs.fn(t0 + (s + 1) * dt, states);
        }
    }
    (void)tol;
}

// Dormand-Prince 5(4) pair on d/dt psi = -i H(t) psi
void rk_adaptive(const HamiltonianFn& hfn, double t0, double t1, Matrix& states, double tol,
                 double dt_init, const Observer& obs) {
    static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
    static const double a21 = 1. / 5;
    static const double a31 = 3. / 40, a32 = 9. / 40;
    static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
    static const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561,
                        a54 = -212. / 729;
    static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247,
                        a64 = 49. / 176, a65 = -5103. / 18656;
    static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784,
                        b6 = 11. / 84;
    static const double e1 = 35. / 384 - 5179. / 57600, e3 = 500. / 1113 - 7571. / 16695,
                        e4 = 125. / 192 - 393. / 640, e5 = -2187. / 6784 + 92097. / 339200,
                        e6 = 11. / 84 - 187. / 2100, e7 = -1. / 40;

    const std::size_t dim = states.rows(), nc = states.cols(), nn = dim * nc;
    Matrix h(dim, dim);
    auto deriv = [&](double t, const Matrix& y, Matrix& k) {
        hfn(t, h);
        for (std::size_t i = 0; i < nn; ++i) k.data()[i] = 0.0;
        multiply_acc(h, y, k);
        kernels::scal(nn, cd(0.0, -1.0), k.data());
    };
    Matrix k1(dim, nc), k2(dim, nc), k3(dim, nc), k4(dim, nc), k5(dim, nc), k6(dim, nc),
        k7(dim, nc), y(dim, nc), y5(dim, nc);
    double t = t0, dt = dt_init;
    long steps_since_obs = 0;
    auto lincomb = [&](Matrix& out, const Matrix& base, std::initializer_list<std::pair<double, const Matrix*>> terms,
                       double scale) {
        out = base;
        for (auto& [w, m] : terms) kernels::axpy(nn, cd(scale * w), m->data(), out.data());
    };
    while (t < t1 - 1e-12) {
        dt = std::min(dt, t1 - t);
        deriv(t, states, k1);
        lincomb(y, states, {{a21, &k1}}, dt);
        deriv(t + c2 * dt, y, k2);
        lincomb(y, states, {{a31, &k1}, {a32, &k2}}, dt);
        deriv(t + c3 * dt, y, k3);
        lincomb(y, states, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, dt);
        deriv(t + c4 * dt, y, k4);
        lincomb(y, states, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, dt);
        deriv(t + c5 * dt, y, k5);
        lincomb(y, states, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, dt);
        deriv(t + dt, y, k6);
        lincomb(y5, states, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, dt);
        deriv(t + dt, y5, k7);
        double err = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            cd e = dt * (e1 * k1.data()[i] + e3 * k3.data()[i] + e4 * k4.data()[i] +
                         e5 * k5.data()[i] + e6 * k6.data()[i] + e7 * k7.data()[i]);
            err = std::max(err, std::abs(e));
        }
        if (err <= tol || dt < 1e-7) {
            t += dt;
            std::swap(states, y5);
            if (obs.stride > 0 && ++steps_since_obs >= obs.stride) {
                steps_since_obs = 0;
                obs.fn(t, states);
            }
        }
        double factor = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
        dt *= std::clamp(factor, 0.2, 2.0);
    }
}

}  // namespace

void propagate_state(const HamiltonianFn& h, const StepPlan& plan, Matrix& states,
                     const IntegratorConfig& cfg, const Observer& obs) {
    for (const auto& iv : plan.intervals) {
        if (cfg.method == IntegratorConfig::Method::piecewise_exponential) {
            exponential_steps(h, iv.t0, iv.t1, iv.dt, states, obs, cfg.tolerance);
        } else {
            rk_adaptive(h, iv.t0, iv.t1, states, cfg.tolerance, iv.dt, obs);
        }
    }
}

CollapseOp::CollapseOp(Matrix m) : op(std::move(m)) {
    const std::size_t n = op.rows();
    cdc_diag.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (op(i, j) != cd(0.0)) {
                coo.push_back({i, j, op(i, j)});
                cdc_diag[j] += std::norm(op(i, j));
            }
        }
}

void CollapseOp::sandwich_acc(const Matrix& rho, Matrix& out) const {
    // out += sum_{e,f} v_e conj(v_f) |r_e><r_f| rho[c_e, c_f]
    for (const auto& e : coo)
        for (const auto& f : coo) out(e.row, f.row) += e.val * std::conj(f.val) * rho(e.col, f.col);
}

void CollapseOp::anticomm_sub(const Matrix& rho, Matrix& out) const {
    const std::size_t n = rho.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) -= 0.5 * (cdc_diag[i] + cdc_diag[j]) * rho(i, j);
}

namespace {

void dissipator(const std::vector<CollapseOp>& ops, const Matrix& rho, Matrix& out) {
    for (std::size_t i = 0; i < out.rows() * out.cols(); ++i) out.data()[i] = 0.0;
    for (const auto& c : ops) {
        c.sandwich_acc(rho, out);
        c.anticomm_sub(rho, out);
    }
}

// second-order half-step of the pure dissipator
void dissipator_half_step(const std::vector<CollapseOp>& ops, Matrix& rho, double h, Matrix& d1,
                          Matrix& d2) {
    if (ops.empty()) return;
    dissipator(ops, rho, d1);
    dissipator(ops, d1, d2);
    const std::size_t nn = rho.rows() * rho.cols();
    kernels::axpy(nn, cd(h), d1.data(), rho.data());
    kernels::axpy(nn, cd(0.5 * h * h), d2.data(), rho.data());
}

}  // namespace

namespace {

void density_steps(const HamiltonianFn& hfn, const StepPlan& plan, std::vector<Matrix*> rhos,
                   const std::vector<CollapseOp>& collapse, const Observer* obs) {
    const std::size_t dim = rhos.front()->rows();
    Matrix h(dim, dim), a(dim, dim), d1(dim, dim), d2(dim, dim), tmp(dim, dim);
    for (const auto& iv : plan.intervals) {
        const long nsteps = std::max(1L, std::lround((iv.t1 - iv.t0) / iv.dt));
        const double dt = (iv.t1 - iv.t0) / static_cast<double>(nsteps);
        long since_obs = 0;
        for (long s = 0; s < nsteps; ++s) {
            const double tm = iv.t0 + (s + 0.5) * dt;
            for (Matrix* r : rhos) dissipator_half_step(collapse, *r, 0.5 * dt, d1, d2);
            hfn(tm, h);
            if (h.hermiticity_error() > 1e-10)
                throw std::runtime_error("non-Hermitian Hamiltonian sample at t = " + std::to_string(tm));
            double shift = 0.0;
            for (std::size_t i = 0; i < dim; ++i) shift += h(i, i).real();
            shift /= static_cast<double>(dim);
            for (std::size_t i = 0; i < dim * dim; ++i) a.data()[i] = cd(0.0, -dt) * h.data()[i];
            for (std::size_t i = 0; i < dim; ++i) a(i, i) += cd(0.0, dt * shift);
            Matrix u = taylor_expm(a);
            Matrix ud = u.adjoint();
            for (Matrix* r : rhos) {
                for (std::size_t i = 0; i < dim * dim; ++i) tmp.data()[i] = 0.0;
                multiply_acc(u, *r, tmp);
                for (std::size_t i = 0; i < dim * dim; ++i) r->data()[i] = 0.0;
                multiply_acc(tmp, ud, *r);
            }
            for (Matrix* r : rhos) dissipator_half_step(collapse, *r, 0.5 * dt, d1, d2);
            if (obs && obs->stride > 0 && ++since_obs >= obs->stride) {
                since_obs = 0;
                obs->fn(iv.t0 + (s + 1) * dt, *rhos.front());
            }
        }
    }
}

}  // namespace

void propagate_density(const HamiltonianFn& hfn, const StepPlan& plan, Matrix& rho,
                       const std::vector<CollapseOp>& collapse, const IntegratorConfig& cfg,
                       const Observer& obs) {
    (void)cfg;
    density_steps(hfn, plan, {&rho}, collapse, &obs);
}

void propagate_density_multi(const HamiltonianFn& hfn, const StepPlan& plan,
                             std::vector<Matrix>& rhos, const std::vector<CollapseOp>& collapse,
                             const IntegratorConfig& cfg) {
    (void)cfg;
    std::vector<Matrix*> ptrs;
    for (auto& r : rhos) ptrs.push_back(&r);
    density_steps(hfn, plan, std::move(ptrs), collapse, nullptr);
}

ExtractedGate extract_gate(const Matrix& final_states, const Matrix& basis,
                           const std::vector<double>& energies_ang, double t1) {
    const std::size_t dim = final_states.rows();
    const std::size_t k = final_states.cols();
    if (basis.rows() != dim || basis.cols() != k || energies_ang.size() != k)
        throw std::invalid_argument("extract_gate shape mismatch");
    ExtractedGate out;
    out.matrix = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const cd phase = std::exp(cd(0.0, energies_ang[i] * t1));
        for (std::size_t j = 0; j < k; ++j) {
            cd ov = 0.0;
            for (std::size_t r = 0; r < dim; ++r) ov += std::conj(basis(r, i)) * final_states(r, j);
            out.matrix(i, j) = phase * ov;
        }
    }
    out.leakage.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        double in_sub = 0.0;
        for (std::size_t i = 0; i < k; ++i) in_sub += std::norm(out.matrix(i, j));
        out.leakage[j] = 1.0 - in_sub;
        out.max_leakage = std::max(out.max_leakage, out.leakage[j]);
    }
    return out;
}

}  // namespace fluxband
