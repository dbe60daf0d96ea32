#pragma once

#include "fluxband/device.hpp"
#include "fluxband/hilbert.hpp"

#include <array>
#include <vector>

namespace fluxband {

// Analytic dispersive-frame machinery. All scalar frequencies here are
// ordinary (omega/2pi) GHz; operators built from them are angular (rad/ns).

// ---------------------------------------------------------------------------
// two-level theory
// ---------------------------------------------------------------------------

struct TlsDispersiveParams {
    std::array<double, 2> omega_a{}, g{};
    double omega_r = 0.0;
    std::array<double, 2> Delta{}, Sigma{};             // w_a -/+ w_r
    std::array<double, 2> lambda{}, Lambda{};           // g/Delta, g/Sigma
    std::array<double, 2> chi{}, mu{}, xi{};            // dispersive, Bloch-Siegert, squeezing
    std::array<double, 2> S{}, omega_tilde{};           // Stark per photon, Lamb-shifted freq
    double J = 0.0;
    double Delta_Q = 0.0, Sigma_Q = 0.0, Delta_S = 0.0, Sigma_S = 0.0;
    double S_J_plus = 0.0, S_J_minus = 0.0;

    double delta_q_n(int n) const { return Delta_Q + 2.0 * n * Delta_S; }
    double sigma_q_n(int n) const { return Sigma_Q + 2.0 * n * Sigma_S; }
};

TlsDispersiveParams tls_params(double omega_a1, double omega_a2, double omega_r, double g1,
                               double g2);

// 4x4 block at photon number n, basis {ee, eg, ge, gg}, angular units
Matrix block_hamiltonian(int n, const TlsDispersiveParams& p);

struct MixingAngles {
    double alpha = 0.0, beta = 0.0;  // radians
};

// arctan mixing angles; the two-argument form keeps the J -> 0 limit smooth.
// |alpha|, |beta| <= pi/4 whenever the corresponding detuning sum is >= 0.
MixingAngles mixing_angles(int n, const TlsDispersiveParams& p);

// eigenvectors of block_hamiltonian(n) built from the mixing angles,
// columns ordered {00, 10, 01, 11}, rows in the {ee, eg, ge, gg} basis
Matrix logical_states(int n, const TlsDispersiveParams& p);

// Diagonal two-qubit-plus-resonator Hamiltonian on dims {2, 2, n_max+1}
// (angular). `exact` selects the square-root form; otherwise the second-order
// expansion with the S_J shifts.
Operator h_diag(const TlsDispersiveParams& p, int n_max, bool exact);

// FC drive decomposed in the diagonal frame, evaluated at instantaneous drive
// values f1, f2 (GHz). Terms are operators on dims {2, 2, N}.
struct FcTermDecomposition {
    Operator h_z1, h_z2, h_sb1, h_sb2, h_po, h_qq, h_qq_phi;
    std::vector<double> s_n_1, s_n_2, lambda_j_n;  // photon-indexed scalars
    double x0 = 0.0;
    double x1_printed = 0.0;      // lambda1*Lambda2 + lambda1*Lambda2, as printed
    double x1_symmetrized = 0.0;  // lambda1*Lambda2 + Lambda1*lambda2

    Operator sum() const;
};

FcTermDecomposition fc_decomposition(const TlsDispersiveParams& p, int n_levels, double f1,
                                     double f2, bool exact);

// cross-resonance coefficient operator: -eps_d (cos a sin b + sin a cos b) tz1 tx2
Operator cross_resonance_term(const TlsDispersiveParams& p, int n_levels, double drive_amplitude);

// generator of the generalized dispersive transformation (anti-Hermitian)
Operator tls_dispersive_generator(const TlsDispersiveParams& p, int n_levels);
// block-diagonal unitary assembled from the mixing-angle eigenvectors
Operator tls_j_unitary(const TlsDispersiveParams& p, int n_levels);

// ---------------------------------------------------------------------------
// many-level theory
// ---------------------------------------------------------------------------

struct MlsTransmonCoefficients {
    std::vector<double> omega;        // bare level energies (GHz, ground-shifted)
    std::vector<double> g;            // g_{i,i+1}
    std::vector<double> Delta, Sigma; // transition detunings vs resonator
    std::vector<double> lambda, Lambda, chi, mu;   // size M-1
    std::vector<double> xi;                        // size M
    std::vector<double> xi_p, xi_pp;               // size M-2
    std::vector<double> zeta, zeta_p;              // size M-2
    std::vector<double> eta, eta_p;                // size M-2
    std::vector<double> L, S;                      // Lamb shift, Stark shift per photon
    std::vector<double> omega_tilde;               // omega + L
};

struct MlsDispersiveModel {
    double omega_r = 0.0;
    std::vector<MlsTransmonCoefficients> transmon;
    // inter-MLS couplings, index [i][j] for transitions i,i+1 of MLS 1 and j,j+1 of MLS 2
    std::vector<std::vector<double>> J, J_p, lambda_J, Lambda_J;

    // dressed red-sideband detuning for |j+1; n> <-> |j; n+1> on transmon k (GHz)
    double red_detuning(int k, int j, int n) const;
    // resonator pull when transmon k sits in level i (GHz)
    double stark(int k, int i) const { return transmon[k].S[i]; }
};

MlsDispersiveModel mls_model(const DeviceSpec& device);

struct SidebandCoefficient {
    int transmon = 0, level = 0;
    double red = 0.0, blue = 0.0;  // delta f_i lambda_i and delta f_i Lambda_i (GHz)
};

// first-order sideband coefficients for per-level drive amplitudes f[k][i]
std::vector<SidebandCoefficient> mls_fc_sidebands(const MlsDispersiveModel& model,
                                                  const std::vector<std::vector<double>>& f);

// generators of the MLS dispersive transformation and of U_J, on the full
// device space (anti-Hermitian, angular-consistent dimensionless)
Operator mls_dispersive_generator(const MlsDispersiveModel& model, const std::vector<int>& dims);
Operator mls_j_generator(const MlsDispersiveModel& model, const std::vector<int>& dims);

// ---------------------------------------------------------------------------
// verification utility
// ---------------------------------------------------------------------------

// Norm of the photon-block-off-diagonal part of e^{-G} H e^{G}. The last of
// H.dims is taken as the resonator. order <= 0 uses the exact exponential;
// order > 0 truncates the commutator series at that order.
double bch_residual(const Operator& h, const Operator& generator, int order = 0);

}  // namespace fluxband
