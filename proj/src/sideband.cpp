#include "fluxband/sideband.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxband {

double spectator_shift(const MlsDispersiveModel& model, int spectator, SpectatorPolicy policy) {
    switch (policy) {
        case SpectatorPolicy::none:
            return 0.0;
        case SpectatorPolicy::resonant_on_ground:
            return model.stark(spectator, 0);
        case SpectatorPolicy::midpoint:
            return 0.5 * (model.stark(spectator, 0) + model.stark(spectator, 1));
    }
    throw std::logic_error("unknown spectator policy");
}

double resonance(const MlsDispersiveModel& model, const HarmonicDecomposition& harmonics, int k,
                 int j, int n, int m, double spectator_shift_ghz) {
    if (m < 1) throw std::invalid_argument("harmonic index must be >= 1");
    double det = model.red_detuning(k, j, n) + harmonics.G - spectator_shift_ghz;
    return std::abs(det) / m;
}

double rabi_rate(const MlsDispersiveModel& model, const HarmonicDecomposition& harmonics, int k,
                 int j, int n, int m) {
    const auto& t = model.transmon.at(k);
    double det = model.red_detuning(k, j, n) + harmonics.G;
    double omega = std::abs(t.g[j] * std::sqrt(n + 1.0) / det) * harmonics.eps[m - 1];
    return omega * 1e3;  // GHz -> MHz
}

SidebandPrediction predict_red_sideband(const MlsDispersiveModel& model,
                                        const HarmonicDecomposition& harmonics, int k, int j,
                                        int n, int m, SpectatorPolicy policy) {
    SidebandPrediction p;
    p.transmon = k;
    p.j = j;
    p.n = n;
    p.m = m;
    double shift = 0.0;
    int spectator = -1;
    if (policy != SpectatorPolicy::none && model.transmon.size() >= 2) {
        spectator = 1 - k;
        shift = spectator_shift(model, spectator, policy);
    }
    p.omega_fc = resonance(model, harmonics, k, j, n, m, shift);
    p.rabi_mhz = rabi_rate(model, harmonics, k, j, n, m);
    p.eps_n_mhz = 0.5 * p.rabi_mhz;
    if (spectator >= 0) {
        double base = std::abs(model.red_detuning(k, j, n) + harmonics.G);
        double r0 = std::abs(model.red_detuning(k, j, n) + harmonics.G - model.stark(spectator, 0));
        double r1 = std::abs(model.red_detuning(k, j, n) + harmonics.G - model.stark(spectator, 1));
        (void)base;
        p.delta_minus_mhz = (m * p.omega_fc - r0) * 1e3;
        p.delta_plus_mhz = (m * p.omega_fc - r1) * 1e3;
    }
    const auto& t = model.transmon.at(k);
    p.g_crit = std::abs(t.Delta[j]) / 2.0;
    p.dispersive_valid = std::abs(t.lambda[j]) < 0.5 && t.g[j] <= p.g_crit;
    return p;
}

Matrix two_level_evolution(double eps_n_mhz, double delta_mhz, double t_ns) {
    const double eps = kTwoPi * eps_n_mhz * 1e-3;   // angular rad/ns
    const double del = kTwoPi * delta_mhz * 1e-3;
    const double r = std::sqrt(del * del + 4.0 * eps * eps);
    const double half = 0.5 * r * t_ns;
    double c = std::cos(half);
    double s = (r == 0.0) ? 0.0 : std::sin(half);
    double dr = (r == 0.0) ? 0.0 : del / r;
    double er = (r == 0.0) ? 0.0 : 2.0 * eps / r;
    const cd ph = std::exp(cd(0.0, -0.5 * del * t_ns));
    Matrix v(2, 2);
    v(0, 0) = ph * (cd(c) - cd(0.0, dr * s));
    v(0, 1) = cd(0.0, -er * s) * ph;
    v(1, 0) = cd(0.0, -er * s) * std::conj(ph);
    v(1, 1) = std::conj(ph) * (cd(c) + cd(0.0, dr * s));
    return v;
}

AnalyticFidelity gate_fidelity_analytic(double eps_bar_mhz, double delta_mhz, double t_ns) {
    if (eps_bar_mhz <= 0.0) throw std::domain_error("eps_bar must be positive");
    const double eps = kTwoPi * eps_bar_mhz * 1e-3;
    const double del = kTwoPi * delta_mhz * 1e-3;
    const double r2 = del * del + 4.0 * eps * eps;
    const double r = std::sqrt(r2);
    AnalyticFidelity f;
    double s = std::sin(0.5 * r * t_ns);
    f.F_UV = 2.0 * eps * eps / r2 * s * s * (1.0 + std::cos(del * t_ns));
    f.F_avg = (2.0 * f.F_UV + 1.0) / 3.0;
    const double tp = M_PI / (2.0 * eps);
    f.F_simple = 2.0 * eps * eps / (del * del + 4.0 * eps * eps) * (1.0 + std::cos(del * tp));
    return f;
}

double target_population(double eps_bar_mhz, double delta_mhz) {
    if (eps_bar_mhz <= 0.0) throw std::domain_error("eps_bar must be positive");
    const double e2 = 4.0 * eps_bar_mhz * eps_bar_mhz;
    return e2 / (delta_mhz * delta_mhz + e2);
}

}  // namespace fluxband
