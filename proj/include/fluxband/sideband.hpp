#pragma once

#include "fluxband/dispersive.hpp"
#include "fluxband/matrix.hpp"

namespace fluxband {

// Closed-form sideband predictions. Frequencies ordinary GHz, rates in the
// stated units; conversions to angular happen only inside the evolution ops.

enum class SpectatorPolicy {
    none,                // ignore the spectator pull
    resonant_on_ground,  // carrier on resonance for the spectator in |0>
    midpoint,            // halfway between the |0> and |1> spectator resonances
};

struct SidebandPrediction {
    int transmon = 0;       // driven transmon
    int j = 0;              // transition j <-> j+1
    int n = 0;              // photon sector n <-> n+1 (red)
    int m = 1;              // harmonic of the flux drive
    double omega_fc = 0.0;  // GHz, drive frequency
    double rabi_mhz = 0.0;  // MHz, full inversion Rabi frequency
    double delta_plus_mhz = 0.0, delta_minus_mhz = 0.0;  // spectator-split detunings
    double eps_n_mhz = 0.0;   // MHz, epsilon_n = rabi/2
    double g_crit = 0.0;      // GHz, Delta/2
    bool dispersive_valid = true;
};

// spectator shift (GHz) to subtract from the sideband detuning
double spectator_shift(const MlsDispersiveModel& model, int spectator, SpectatorPolicy policy);

// omega_FC = |Delta~ + G - spectator shift| / m
double resonance(const MlsDispersiveModel& model, const HarmonicDecomposition& harmonics, int k,
                 int j, int n, int m, double spectator_shift_ghz = 0.0);

// Rabi frequency |g_{j,j+1} / (Delta~ + G)| eps_{m omega}, in MHz
double rabi_rate(const MlsDispersiveModel& model, const HarmonicDecomposition& harmonics, int k,
                 int j, int n, int m);

SidebandPrediction predict_red_sideband(const MlsDispersiveModel& model,
                                        const HarmonicDecomposition& harmonics, int k, int j,
                                        int n, int m, SpectatorPolicy policy);

// analytic two-level evolution V(t) for epsilon, delta in MHz and t in ns
Matrix two_level_evolution(double eps_n_mhz, double delta_mhz, double t_ns);

struct AnalyticFidelity {
    double F_UV = 0.0;      // gate fidelity
    double F_avg = 0.0;     // (2 F + 1) / 3
    double F_simple = 0.0;  // small-delta form at t_p = pi / (2 eps)
};

AnalyticFidelity gate_fidelity_analytic(double eps_bar_mhz, double delta_mhz, double t_ns);

// population of the target state at t_p = pi / (2 eps)
double target_population(double eps_bar_mhz, double delta_mhz);

}  // namespace fluxband
