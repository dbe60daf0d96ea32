#pragma once

#include "fluxband/hilbert.hpp"
#include "fluxband/linalg.hpp"
#include "fluxband/numerics.hpp"

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace fluxband {

// Unit conventions: configuration and analytic-layer frequencies are ordinary
// (omega/2pi) in GHz, times in ns, fluxes in units of the flux quantum Phi0
// (the Josephson energy sees cos(pi * phi)). Assembled Hamiltonian operators
// are in angular units (rad/ns).
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct TransmonSpec {
    double E_J_sigma = 0.0;  // GHz, junction-sum Josephson energy
    double E_C = 0.0;        // GHz
    double phi_i = 0.0;      // static flux offset, units of Phi0
    int levels = 4;

    double ej_at(double total_phi) const;  // E_J_sigma * cos(pi * phi)
    void validate() const;                 // hard errors only
    std::vector<std::string> warnings() const;
};

struct DeviceSpec {
    std::vector<TransmonSpec> transmons;
    std::vector<double> g_ge;   // GHz, per transmon
    double omega_r = 0.0;       // GHz
    int resonator_levels = 0;
    double kappa = 0.0;           // MHz, cavity decay
    std::vector<double> T1;       // us, per transmon (<=0 means no relaxation)

    void validate() const;
    std::vector<std::string> warnings() const;

    static DeviceSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct HarmonicDecomposition {
    double G = 0.0;                     // GHz, geometric shift
    std::array<double, 4> eps{};        // GHz, eps_{m omega}, m = 1..4
    double omega_p_prime = 0.0;         // GHz, sqrt(8 E_C E_J cos(pi phi_i))
};

// Raw quartic-oscillator Hamiltonian sqrt(8 E_C E_J) b'b - E_C/12 (b+b')^4 on
// `basis_dim` oscillator states, in ordinary GHz units.
Operator duffing_hamiltonian(double E_C, double E_J, int basis_dim);

// Lowest `levels` transition energies of the Duffing Hamiltonian, converged in
// an enlarged oscillator basis (kept below the quartic turnover), ground-
// shifted, ordinary GHz.
std::vector<double> transmon_energies(const TransmonSpec& spec, double E_J);

// E_J(t) under a cosine flux drive (omega_FC ordinary GHz, t in ns)
double flux_to_EJ(const TransmonSpec& spec, double delta_phi, double omega_FC, double t);

// lowering-type coupling operator with elements g_ge * sqrt(j+1)
Operator coupling_operator(const TransmonSpec& spec, double g_ge);

// fourth-order flux-modulation decomposition of the transition frequencies
HarmonicDecomposition harmonic_decomposition(const TransmonSpec& spec, double delta_phi);

// Precomputed assembly for a device: operators, spline energy caches, the
// drive-off Hamiltonian and its dressed eigenbasis.
class DeviceModel {
public:
    explicit DeviceModel(DeviceSpec spec);

    const DeviceSpec& spec() const { return spec_; }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t dim() const { return dim_; }
    int n_transmons() const { return static_cast<int>(spec_.transmons.size()); }

    // transmon level energies at total flux phi_i + dphi (angular, ground-shifted)
    std::vector<double> energies_at(int k, double dphi) const;

    // full Hamiltonian (angular) with per-transmon flux displacements and
    // per-transmon dipole-drive amplitudes (angular) on b + b'
    Matrix hamiltonian(const std::vector<double>& dphi, const std::vector<double>& dipole_ang) const;
    // allocation-free variant for the integrator loop
    void hamiltonian_into(const std::vector<double>& dphi, const std::vector<double>& dipole_ang,
                          Matrix& out) const;
    const Matrix& static_hamiltonian() const { return h0_; }

    // dressed frame: eigendecomposition of the drive-off Hamiltonian with
    // maximum-overlap labels onto bare product states
    const Eigh& dressed() const { return dressed_; }
    // dressed eigenindex of bare |pi1 pi2; n>; throws if labeling is ambiguous
    int dressed_index(const std::vector<int>& bare_levels) const;
    std::vector<cd> dressed_state(const std::vector<int>& bare_levels) const;
    double dressed_energy(const std::vector<int>& bare_levels) const;  // angular

    std::size_t bare_index(const std::vector<int>& levels) const;
    const Matrix& dipole_x(int k) const { return xq_full_[k]; }

private:
    DeviceSpec spec_;
    std::vector<int> dims_;
    std::size_t dim_ = 0;
    std::vector<std::vector<UniformSpline>> energy_cache_;  // [transmon][level]
    double cache_phi_max_ = 0.0;
    std::vector<std::vector<std::size_t>> level_masks_;  // [transmon][level] -> basis indices stride info
    std::vector<Matrix> xq_full_;                        // embedded b + b' per transmon
    Matrix h_static_offdiag_;                            // coupling + resonator part
    std::vector<double> diag_static_;                    // resonator diagonal (angular)
    Matrix h0_;
    Eigh dressed_;
    std::vector<int> label_to_eig_;
};

}  // namespace fluxband
