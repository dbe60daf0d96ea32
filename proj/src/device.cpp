#include "fluxband/device.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxband {

namespace {

// Oscillator basis size for the quartic diagonalization: large enough for the
// kept levels to converge, but below the turnover where the unbounded -x^4
// tail produces spurious low eigenvalues.
int duffing_basis_dim(double E_C, double E_J, int levels) {
    double wp = std::sqrt(8.0 * E_C * E_J);
    int nb = static_cast<int>(0.7 * wp / E_C);
    return std::clamp(nb, levels + 2, levels + 12);
}

}  // namespace

double TransmonSpec::ej_at(double total_phi) const {
    return E_J_sigma * std::cos(M_PI * total_phi);
}

void TransmonSpec::validate() const {
    if (levels < 2) throw std::invalid_argument("transmon needs at least 2 levels");
    if (E_C <= 0.0 || E_J_sigma <= 0.0) throw std::invalid_argument("E_C and E_J must be positive");
    if (std::abs(phi_i) > 0.25 + 1e-12)
        throw std::domain_error("phi_i outside the expansion validity |pi phi_i| <= pi/4");
    double ratio = ej_at(phi_i) / E_C;
    if (ratio < 20.0)
        throw std::domain_error("E_J(phi_i)/E_C = " + std::to_string(ratio) +
                                " below 20; transmon regime not satisfied");
}

std::vector<std::string> TransmonSpec::warnings() const {
    std::vector<std::string> w;
    double ratio = ej_at(phi_i) / E_C;
    if (ratio < 50.0)
        w.push_back("E_J(phi_i)/E_C = " + std::to_string(ratio) + " below 50 (marginal transmon regime)");
    return w;
}

void DeviceSpec::validate() const {
    if (transmons.empty()) throw std::invalid_argument("device needs at least one transmon");
    if (g_ge.size() != transmons.size()) throw std::invalid_argument("g_ge must match transmon count");
    if (!T1.empty() && T1.size() != transmons.size())
        throw std::invalid_argument("T1 must match transmon count");
    if (resonator_levels < 2) throw std::invalid_argument("resonator needs at least 2 levels");
    if (omega_r <= 0.0) throw std::invalid_argument("resonator frequency must be positive");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be non-negative");
    for (const auto& t : transmons) t.validate();
}

std::vector<std::string> DeviceSpec::warnings() const {
    std::vector<std::string> w;
    for (std::size_t k = 0; k < transmons.size(); ++k) {
        for (auto& s : transmons[k].warnings()) w.push_back("transmon " + std::to_string(k + 1) + ": " + s);
        double w01 = transmon_energies(transmons[k], transmons[k].ej_at(transmons[k].phi_i))[1];
        double delta = std::abs(w01 - omega_r);
        double lam = g_ge[k] / delta;
        if (std::abs(lam) >= 0.5)
            w.push_back("transmon " + std::to_string(k + 1) + ": |g/Delta| = " + std::to_string(lam) +
                        " outside dispersive validity");
        double gcrit = delta / 2.0;
        if (g_ge[k] > gcrit)
            w.push_back("transmon " + std::to_string(k + 1) + ": g = " + std::to_string(g_ge[k]) +
                        " GHz exceeds g_crit = Delta/2 = " + std::to_string(gcrit) + " GHz");
    }
    return w;
}

DeviceSpec DeviceSpec::from_json(const nlohmann::json& j) {
    DeviceSpec d;
    for (const auto& tj : j.at("transmons")) {
        TransmonSpec t;
        t.E_J_sigma = tj.at("E_J").get<double>();
        t.E_C = tj.at("E_C").get<double>();
        t.phi_i = tj.value("phi", 0.0);
        t.levels = tj.value("levels", 4);
        d.transmons.push_back(t);
        d.g_ge.push_back(tj.value("g_ge", 0.0));
        d.T1.push_back(tj.value("T1", 0.0));
    }
    d.omega_r = j.at("omega_r").get<double>();
    d.resonator_levels = j.contains("resonator_levels") ? j.at("resonator_levels").get<int>()
                                                        : j.value("levels", 5);
    d.kappa = j.value("kappa", 0.0);
    d.validate();
    return d;
}

nlohmann::json DeviceSpec::to_json() const {
    nlohmann::json j;
    j["transmons"] = nlohmann::json::array();
    for (std::size_t k = 0; k < transmons.size(); ++k) {
        nlohmann::json tj;
        tj["E_J"] = transmons[k].E_J_sigma;
        tj["E_C"] = transmons[k].E_C;
        tj["phi"] = transmons[k].phi_i;
        tj["levels"] = transmons[k].levels;
        tj["g_ge"] = g_ge[k];
        if (!T1.empty()) tj["T1"] = T1[k];
        j["transmons"].push_back(tj);
    }
    j["omega_r"] = omega_r;
    j["resonator_levels"] = resonator_levels;
    j["kappa"] = kappa;
    return j;
}

Operator duffing_hamiltonian(double E_C, double E_J, int basis_dim) {
    if (E_J <= 0.0) throw std::domain_error("duffing_hamiltonian requires E_J > 0");
    if (basis_dim < 2) throw std::invalid_argument("duffing_hamiltonian requires dim >= 2");
    Operator b = ladder(basis_dim);
    Matrix x = b.m + b.m.adjoint();
    Matrix x2 = x * x;
    Matrix x4 = x2 * x2;
    Matrix n = b.m.adjoint() * b.m;
    Matrix h = std::sqrt(8.0 * E_C * E_J) * n - cd(E_C / 12.0) * x4;
    return Operator(std::move(h), {basis_dim});
}

std::vector<double> transmon_energies(const TransmonSpec& spec, double E_J) {
    int nb = duffing_basis_dim(spec.E_C, E_J, spec.levels);
    Operator h = duffing_hamiltonian(spec.E_C, E_J, nb);
    Eigh e = hermitian_eigendecomposition(h.m);
    std::vector<double> out(spec.levels);
    for (int i = 0; i < spec.levels; ++i) out[i] = e.values[i] - e.values[0];
    return out;
}

double flux_to_EJ(const TransmonSpec& spec, double delta_phi, double omega_FC, double t) {
    double total = spec.phi_i + delta_phi * std::cos(kTwoPi * omega_FC * t);
    if (std::abs(total) >= 0.5)
        throw std::domain_error("flux excursion reaches |phi| >= Phi0/2 where E_J vanishes");
    return spec.ej_at(total);
}

Operator coupling_operator(const TransmonSpec& spec, double g_ge) {
    Operator a = ladder(spec.levels);
    return cd(g_ge) * a;
}

HarmonicDecomposition harmonic_decomposition(const TransmonSpec& spec, double delta_phi) {
    if (delta_phi < 0.0 || delta_phi > 0.15)
        throw std::domain_error("harmonic decomposition valid for 0 <= delta_phi <= 0.15");
    spec.validate();
    const double d = M_PI * delta_phi;          // radian modulation depth
    const double T = std::tan(M_PI * spec.phi_i);
    const double T2 = T * T;
    const double wp = std::sqrt(8.0 * spec.E_C * spec.E_J_sigma * std::cos(M_PI * spec.phi_i));
    const double d2 = d * d, d3 = d2 * d, d4 = d2 * d2;
    const double quartic = 4.0 + 20.0 * T2 + 15.0 * T2 * T2;

    HarmonicDecomposition h;
    h.omega_p_prime = wp;
    h.G = -(1.0 + T2 / 2.0) * wp * d2 / 8.0 - quartic * wp * d4 / 1024.0;
    h.eps[0] = (d + (1.0 + 1.5 * T2) * d3 / 16.0) * wp * T / 2.0;
    h.eps[1] = (1.0 + T2 / 2.0) * wp * d2 / 8.0 + quartic * wp * d4 / 768.0;
    h.eps[2] = (1.0 / 3.0 + T2 / 2.0) * wp * T * d3 / 32.0;
    h.eps[3] = quartic * wp * d4 / 3072.0;
    return h;
}

DeviceModel::DeviceModel(DeviceSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const int K = n_transmons();
    for (const auto& t : spec_.transmons) dims_.push_back(t.levels);
    dims_.push_back(spec_.resonator_levels);
    dim_ = total_dim(dims_);

    // spline caches of the level energies over total flux
    cache_phi_max_ = 0.47;
    const int grid_n = 1024;
    const double x0 = -0.04;
    const double dx = (cache_phi_max_ - x0) / (grid_n - 1);
    energy_cache_.resize(K);
    for (int k = 0; k < K; ++k) {
        const auto& t = spec_.transmons[k];
        std::vector<std::vector<double>> ys(t.levels, std::vector<double>(grid_n));
        for (int g = 0; g < grid_n; ++g) {
            double phi = std::abs(x0 + g * dx);
            double ej = t.E_J_sigma * std::cos(M_PI * std::min(phi, 0.499));
            auto en = transmon_energies(t, ej);
            for (int i = 0; i < t.levels; ++i) ys[i][g] = en[i];
        }
        for (int i = 0; i < t.levels; ++i)
            energy_cache_[k].emplace_back(x0, dx, std::move(ys[i]));
    }

    // embedded operators
    xq_full_.reserve(K);
    Matrix hcpl(dim_, dim_);
    Operator ares = ladder(spec_.resonator_levels);
    Matrix xr = ares.m + ares.m.adjoint();
    Operator xr_full = embed(Operator(xr, {spec_.resonator_levels}), K, dims_);
    for (int k = 0; k < K; ++k) {
        Operator c = coupling_operator(spec_.transmons[k], spec_.g_ge[k]);
        Matrix xq = ladder(spec_.transmons[k].levels).m;
        xq += xq.adjoint();
        Operator xq_emb = embed(Operator(xq, {spec_.transmons[k].levels}), k, dims_);
        xq_full_.push_back(xq_emb.m);
        Matrix cg = xq_emb.m;  // g * X_q (X_r) gives the full dipole coupling
        cg *= cd(kTwoPi * spec_.g_ge[k]);
        hcpl += cg * xr_full.m;
    }
    h_static_offdiag_ = std::move(hcpl);

    diag_static_.assign(dim_, 0.0);
    const int N = spec_.resonator_levels;
    for (std::size_t idx = 0; idx < dim_; ++idx)
        diag_static_[idx] = kTwoPi * spec_.omega_r * static_cast<double>(idx % N);

    h0_ = hamiltonian(std::vector<double>(K, 0.0), std::vector<double>(K, 0.0));
    dressed_ = hermitian_eigendecomposition(h0_, 1e-15, 80);

    // maximum-overlap labeling, bijective by construction or error
    label_to_eig_.assign(dim_, -1);
    for (std::size_t e = 0; e < dim_; ++e) {
        std::size_t best = 0;
        double bestp = 0.0;
        for (std::size_t b = 0; b < dim_; ++b) {
            double p = std::norm(dressed_.vectors(b, e));
            if (p > bestp) {
                bestp = p;
                best = b;
            }
        }
        if (bestp < 0.5)
            throw std::runtime_error("dressed-state labeling ambiguous: max overlap " +
                                     std::to_string(bestp) + " below 0.5");
        if (label_to_eig_[best] >= 0)
            throw std::runtime_error("dressed-state labeling collision for bare index " +
                                     std::to_string(best));
        label_to_eig_[best] = static_cast<int>(e);
        // fix the gauge so the dominant bare amplitude is real positive
        cd amp = dressed_.vectors(best, e);
        cd ph = amp / std::abs(amp);
        for (std::size_t i = 0; i < dim_; ++i) dressed_.vectors(i, e) /= ph;
    }
}

std::vector<double> DeviceModel::energies_at(int k, double dphi) const {
    const auto& t = spec_.transmons[k];
    double phi = std::abs(t.phi_i + dphi);
    if (phi >= 0.47)
        throw std::domain_error("flux excursion outside cached domain |phi| < 0.47");
    std::vector<double> out(t.levels);
    for (int i = 0; i < t.levels; ++i) out[i] = kTwoPi * energy_cache_[k][i](phi);
    return out;
}

Matrix DeviceModel::hamiltonian(const std::vector<double>& dphi,
                                const std::vector<double>& dipole_ang) const {
    Matrix h(dim_, dim_);
    hamiltonian_into(dphi, dipole_ang, h);
    return h;
}

void DeviceModel::hamiltonian_into(const std::vector<double>& dphi,
                                   const std::vector<double>& dipole_ang, Matrix& out) const {
    const int K = n_transmons();
    out = h_static_offdiag_;
    const int N = spec_.resonator_levels;
    std::vector<std::vector<double>> en(K);
    for (int k = 0; k < K; ++k) en[k] = energies_at(k, dphi[k]);
    for (std::size_t idx = 0; idx < dim_; ++idx) {
        double e = diag_static_[idx];
        std::size_t rest = idx / N;
        for (int k = K - 1; k >= 0; --k) {
            e += en[k][rest % spec_.transmons[k].levels];
            rest /= spec_.transmons[k].levels;
        }
        out(idx, idx) += e;
    }
    for (int k = 0; k < K; ++k)
        if (dipole_ang[k] != 0.0)
            kernels::axpy(dim_ * dim_, cd(dipole_ang[k]), xq_full_[k].data(), out.data());
}

std::size_t DeviceModel::bare_index(const std::vector<int>& levels) const {
    if (levels.size() != dims_.size()) throw std::invalid_argument("bare_index needs one label per subsystem");
    std::size_t idx = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) {
        if (levels[s] < 0 || levels[s] >= dims_[s]) throw std::invalid_argument("bare level out of range");
        idx = idx * dims_[s] + levels[s];
    }
    return idx;
}

int DeviceModel::dressed_index(const std::vector<int>& bare_levels) const {
    return label_to_eig_[bare_index(bare_levels)];
}

std::vector<cd> DeviceModel::dressed_state(const std::vector<int>& bare_levels) const {
    int e = dressed_index(bare_levels);
    std::vector<cd> v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) v[i] = dressed_.vectors(i, e);
    return v;
}

double DeviceModel::dressed_energy(const std::vector<int>& bare_levels) const {
    return dressed_.values[dressed_index(bare_levels)];
}

}  // namespace fluxband
