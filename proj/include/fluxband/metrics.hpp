#pragma once

#include "fluxband/device.hpp"
#include "fluxband/evolve.hpp"
#include "fluxband/pulses.hpp"

#include <array>
#include <functional>

namespace fluxband {

struct GateFidelity {
    double F = 0.0;      // |tr(U^dagger V)|^2 / d^2
    double F_avg = 0.0;  // (d F + 1) / (d + 1)
};

GateFidelity gate_fidelity(const Matrix& u, const Matrix& v);

struct ChoiMatrix {
    Matrix m;  // trace-1 convention (1/d prefactor)
    int d = 0;
    void validate(double tol = 1e-10) const;
};

ChoiMatrix choi_of_unitary(const Matrix& u);
ChoiMatrix choi_of_channel(const std::function<Matrix(const Matrix&)>& channel, int d);
double choi_overlap(const ChoiMatrix& a, const ChoiMatrix& b);

struct PhaseFit {
    std::array<double, 3> phi{};  // [0, 2pi)
    double fidelity = 0.0;        // maximized process fidelity
};

// U_ent(phi) in the computational basis {00, 10, 01, 11}
Matrix uent_matrix(double phi1, double phi2, double phi3);
Matrix cnot_matrix();

// phases maximizing F(U_ent(phi), V); dense 64^3 grid then coordinate ascent
PhaseFit fit_phases(const Matrix& v_measured);

// same objective evaluated on evolved Choi blocks E[i][j] ~ E(|i><j|)
// projected to the computational subspace (4x4 each)
PhaseFit fit_phases_choi(const std::array<std::array<Matrix, 4>, 4>& blocks);

struct CnotAngles {
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
};

CnotAngles cnot_equivalence(const std::array<double, 3>& phases);
// Z-rotation assembly U1(t1) U_ent U2(t2) U1(t3); equals CNOT up to a phase
Matrix cnot_assembled(const Matrix& uent, const CnotAngles& a);

// Population-transfer table for the four separable inputs
// {phi+, phi-, psi+, psi-} against the Bell-state targets reached by the
// ideal U_ent(phi) (columns ordered {Phi+, Phi-, Psi+, Psi-}; the expected
// pattern puts row phi+ on column Phi-, etc., as in the published table).
Matrix bell_populations(const Matrix& v_measured, const std::array<double, 3>& phases);
// table diagonal in the published order (phi+ -> Phi-, phi- -> Phi+, ...)
std::array<double, 4> bell_diagonal(const Matrix& populations);

struct ChoiEvolutionResult {
    PhaseFit fit;
    double F_process = 0.0;  // maximized process overlap tr[C_U C_V]
    double F_avg = 0.0;      // (4 F + 1) / 5
    Matrix gate;             // extracted 4x4 (unitary path only; empty otherwise)
};

// Average fidelity of a schedule against the phase-fitted ideal U_ent via
// Choi-matrix evolution over {|00;0>, |10;0>, |01;0>, |11;0>} (dressed,
// resonator in vacuum). Without collapse operators the pure-state fast path
// is used; otherwise the 10 independent Choi blocks are evolved.
ChoiEvolutionResult average_fidelity_via_choi_evolution(const DeviceModel& model,
                                                        const PulseSchedule& schedule,
                                                        const std::vector<CollapseOp>& collapse,
                                                        const IntegratorConfig& cfg);

// collapse set of a device: cavity decay at kappa plus per-transmon MLS
// relaxation at 1/T1 (angular rates)
std::vector<CollapseOp> device_collapse_ops(const DeviceModel& model);
std::vector<CollapseOp> device_collapse_ops(const DeviceModel& model, double kappa_mhz,
                                            const std::vector<double>& t1_us);

// extracted computational-subspace gate for a schedule (dressed basis,
// rotating-frame phases of the static Hamiltonian removed at t1)
ExtractedGate extract_computational_gate(const DeviceModel& model, const PulseSchedule& schedule,
                                         const IntegratorConfig& cfg);

// carrier-phase offsets for the five-segment U_ent schedule mapping the
// measured phase triple onto a target triple (linear path-phase relations)
std::vector<double> align_uent_phases(const std::array<double, 3>& measured,
                                      const std::array<double, 3>& target);

}  // namespace fluxband
