#pragma once

#include "fluxband/hilbert.hpp"
#include "fluxband/linalg.hpp"

#include <functional>
#include <vector>

namespace fluxband {

struct IntegratorConfig {
    enum class Method { piecewise_exponential, adaptive_rk };
    Method method = Method::piecewise_exponential;
    double max_step = 1.0 / 16.0;   // ns, cap when no drive sets a finer scale
    double tolerance = 1e-9;        // local relative target (adaptive-rk), sanity bound otherwise
    int samples_per_period = 64;    // drive-carrier sampling for the exponential method
};

// fills H(t) in angular units; the target matrix keeps its allocation
using HamiltonianFn = std::function<void(double, Matrix&)>;

// integration intervals with per-interval step (drive carriers differ per segment)
struct StepPlan {
    struct Interval {
        double t0, t1, dt;
    };
    std::vector<Interval> intervals;

    static StepPlan uniform(double t0, double t1, double dt);
    double t_begin() const { return intervals.front().t0; }
    double t_end() const { return intervals.back().t1; }
};

// observer invoked on the running states every `stride` steps (and at the end)
struct Observer {
    int stride = 0;  // 0 disables
    std::function<void(double, const Matrix&)> fn;
};

// Propagates the columns of `states` under i d/dt psi = H(t) psi.
// piecewise_exponential: midpoint-sampled exact exponential per step.
// adaptive_rk: embedded Dormand-Prince(4,5) with local error control.
void propagate_state(const HamiltonianFn& h, const StepPlan& plan, Matrix& states,
                     const IntegratorConfig& cfg, const Observer& obs = {});

struct CollapseOp {
    Matrix op;      // sqrt(rate) already folded in (angular rate)
    // internal sparse form built on construction
    struct Entry {
        std::size_t row, col;
        cd val;
    };
    std::vector<Entry> coo;
    std::vector<double> cdc_diag;  // diagonal of op^dagger op (real for our ops)

    explicit CollapseOp(Matrix m);
    // out += op rho op^dagger
    void sandwich_acc(const Matrix& rho, Matrix& out) const;
    // out -= 1/2 {op^dagger op, rho}
    void anticomm_sub(const Matrix& rho, Matrix& out) const;
};

// Lindblad propagation by Strang splitting: half dissipator, exact unitary
// step at the interval midpoint, half dissipator.
void propagate_density(const HamiltonianFn& h, const StepPlan& plan, Matrix& rho,
                       const std::vector<CollapseOp>& collapse, const IntegratorConfig& cfg,
                       const Observer& obs = {});

// same splitting applied to several operators in lockstep; the per-step
// unitary is built once and shared (the operators need not be Hermitian)
void propagate_density_multi(const HamiltonianFn& h, const StepPlan& plan,
                             std::vector<Matrix>& rhos, const std::vector<CollapseOp>& collapse,
                             const IntegratorConfig& cfg);

struct ExtractedGate {
    Matrix matrix;                   // overlaps with rotating-frame phases removed
    std::vector<double> leakage;     // 1 - column norm within the basis
    double max_leakage = 0.0;
};

// basis: dim x k matrix of target states (columns); energies: angular, per
// column; the propagated states are compared at time t1.
ExtractedGate extract_gate(const Matrix& final_states, const Matrix& basis,
                           const std::vector<double>& energies_ang, double t1);

}  // namespace fluxband
