#include "fluxband/dispersive.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fluxband {

namespace {

void check_nonzero(double x, double scale, const char* what) {
    if (std::abs(x) < 1e-12 * std::max(scale, 1.0))
        throw std::domain_error(std::string("degenerate configuration: ") + what + " vanishes");
}

// embedded two-level ops on dims {2, 2, N}
struct TlsOps {
    std::vector<int> dims;
    Matrix tz[2], tp[2], tm[2], a, ad, n_diag;

    explicit TlsOps(int n_levels) {
        dims = {2, 2, n_levels};
        Matrix sz(2, 2);
        sz(0, 0) = -1.0;
        sz(1, 1) = 1.0;
        Matrix sm = ladder(2).m;  // |0><1|
        for (int k = 0; k < 2; ++k) {
            tz[k] = embed(Operator(sz, {2}), k, dims).m;
            tm[k] = embed(Operator(sm, {2}), k, dims).m;
            tp[k] = tm[k].adjoint();
        }
        a = embed(ladder(n_levels), 2, dims).m;
        ad = a.adjoint();
        n_diag = ad * a;
    }

    // diagonal-in-photon-number scalar operator f(a^dagger a)
    Matrix photon_diag(const std::vector<double>& f) const {
        const int N = dims[2];
        Matrix d(4 * N, 4 * N);
        for (int q = 0; q < 4; ++q)
            for (int n = 0; n < N; ++n) d(q * N + n, q * N + n) = f[n];
        return d;
    }
};

std::vector<double> photon_values(int N, const std::function<double(int)>& f) {
    std::vector<double> v(N);
    for (int n = 0; n < N; ++n) v[n] = f(n);
    return v;
}

}  // namespace

TlsDispersiveParams tls_params(double omega_a1, double omega_a2, double omega_r, double g1,
                               double g2) {
    TlsDispersiveParams p;
    p.omega_a = {omega_a1, omega_a2};
    p.g = {g1, g2};
    p.omega_r = omega_r;
    for (int k = 0; k < 2; ++k) {
        p.Delta[k] = p.omega_a[k] - omega_r;
        p.Sigma[k] = p.omega_a[k] + omega_r;
        check_nonzero(p.Delta[k], omega_r, k == 0 ? "Delta(1)" : "Delta(2)");
        check_nonzero(p.Sigma[k], omega_r, k == 0 ? "Sigma(1)" : "Sigma(2)");
        p.lambda[k] = p.g[k] / p.Delta[k];
        p.Lambda[k] = p.g[k] / p.Sigma[k];
        p.chi[k] = p.g[k] * p.lambda[k];
        p.mu[k] = p.g[k] * p.Lambda[k];
        p.xi[k] = (p.chi[k] + p.mu[k]) / (4.0 * omega_r);
        p.S[k] = p.chi[k] + p.mu[k];
        p.omega_tilde[k] = p.omega_a[k] + p.chi[k] + p.mu[k];
    }
    p.J = 0.5 * g1 * g2 *
          (1.0 / p.Delta[0] - 1.0 / p.Sigma[0] + 1.0 / p.Delta[1] - 1.0 / p.Sigma[1]);
    p.Delta_Q = p.omega_tilde[0] - p.omega_tilde[1];
    p.Sigma_Q = p.omega_tilde[0] + p.omega_tilde[1];
    check_nonzero(p.Delta_Q, omega_r, "Delta_Q");
    p.Delta_S = p.S[0] - p.S[1];
    p.Sigma_S = p.S[0] + p.S[1];
    p.S_J_plus = p.J * p.J * (1.0 / p.Sigma_Q + 1.0 / p.Delta_Q);
    p.S_J_minus = p.J * p.J * (1.0 / p.Sigma_Q - 1.0 / p.Delta_Q);
    return p;
}

Matrix block_hamiltonian(int n, const TlsDispersiveParams& p) {
    if (n < 0) throw std::invalid_argument("photon number must be >= 0");
    const double dq = p.delta_q_n(n), sq = p.sigma_q_n(n);
    Matrix h(4, 4);
    h(0, 0) = sq / 2.0;
    h(1, 1) = dq / 2.0;
    h(2, 2) = -dq / 2.0;
    h(3, 3) = -sq / 2.0;
    h(0, 3) = h(3, 0) = p.J;
    h(1, 2) = h(2, 1) = p.J;
    h *= cd(kTwoPi);
    return h;
}

namespace {
double mixing_angle(double half_det, double j) {
    const double root = std::sqrt(j * j + half_det * half_det);
    if (root == 0.0) throw std::domain_error("degenerate configuration: mixing angle 0/0");
    if (j == 0.0) return half_det > 0.0 ? 0.0 : -M_PI / 2.0;
    return std::atan((half_det - root) / j);
}
}  // namespace

MixingAngles mixing_angles(int n, const TlsDispersiveParams& p) {
    MixingAngles m;
    m.alpha = mixing_angle(p.delta_q_n(n) / 2.0, p.J);
    m.beta = mixing_angle(p.sigma_q_n(n) / 2.0, p.J);
    return m;
}

Matrix logical_states(int n, const TlsDispersiveParams& p) {
    MixingAngles m = mixing_angles(n, p);
    const double ca = std::cos(m.alpha), sa = std::sin(m.alpha);
    const double cb = std::cos(m.beta), sb = std::sin(m.beta);
    // rows {ee, eg, ge, gg}, columns {00, 10, 01, 11}
    Matrix v(4, 4);
    v(0, 0) = sb;
    v(3, 0) = cb;
    v(1, 1) = ca;
    v(2, 1) = -sa;
    v(1, 2) = sa;
    v(2, 2) = ca;
    v(0, 3) = cb;
    v(3, 3) = -sb;
    return v;
}

Operator h_diag(const TlsDispersiveParams& p, int n_max, bool exact) {
    const int N = n_max + 1;
    std::vector<int> dims{2, 2, N};
    Matrix h(4 * N, 4 * N);
    for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2)
            for (int n = 0; n < N; ++n) {
                const double s1 = t1 ? 1.0 : -1.0;
                const double s2 = t2 ? 1.0 : -1.0;
                double e = p.omega_r * n;
                if (exact) {
                    const double sq = std::sqrt(p.J * p.J + 0.25 * p.sigma_q_n(n) * p.sigma_q_n(n));
                    const double sd = std::sqrt(p.J * p.J + 0.25 * p.delta_q_n(n) * p.delta_q_n(n));
                    e += (sq + sd) * s1 / 2.0 + (sq - sd) * s2 / 2.0;
                } else {
                    e += (p.omega_tilde[0] + 2.0 * n * p.S[0] + p.S_J_plus) * s1 / 2.0;
                    e += (p.omega_tilde[1] + 2.0 * n * p.S[1] + p.S_J_minus) * s2 / 2.0;
                }
                const std::size_t idx = (t1 * 2 + t2) * N + n;
                h(idx, idx) = kTwoPi * e;
            }
    return Operator(std::move(h), dims);
}

FcTermDecomposition fc_decomposition(const TlsDispersiveParams& p, int n_levels, double f1,
                                     double f2, bool exact) {
    const int N = n_levels;
    TlsOps ops(N);
    const double l1 = p.lambda[0], L1 = p.Lambda[0];
    const double l2 = p.lambda[1], L2 = p.Lambda[1];

    FcTermDecomposition out;
    out.s_n_1 = photon_values(N, [&](int n) { return 1.0 - (l1 * l1 + L1 * L1) * (n + 0.5); });
    out.s_n_2 = photon_values(N, [&](int n) { return 1.0 - (l2 * l2 + L2 * L2) * (n + 0.5); });
    out.lambda_j_n =
        photon_values(N, [&](int n) { return p.J / (p.Delta_Q + 2.0 * n * p.Delta_S); });
    out.x0 = l1 * l2 - L1 * L2;
    out.x1_printed = 2.0 * l1 * L2;
    out.x1_symmetrized = l1 * L2 + L1 * l2;

    Matrix s1d = ops.photon_diag(out.s_n_1);
    Matrix s2d = ops.photon_diag(out.s_n_2);
    Matrix lJ = ops.photon_diag(out.lambda_j_n);

    auto with_hc = [](const Matrix& x) { return x + x.adjoint(); };

    if (!exact) {
        Matrix lJ2 = lJ * lJ;
        Matrix one = Matrix::identity(4 * N);
        out.h_z1 = Operator(0.5 * ((one - lJ2) * s1d * cd(f1) + lJ2 * s2d * cd(f2)) * ops.tz[0],
                            ops.dims);
        out.h_z2 = Operator(0.5 * (lJ2 * s1d * cd(f1) + (one - lJ2) * s2d * cd(f2)) * ops.tz[1],
                            ops.dims);
        Matrix x1m = cd(l1) * (ops.ad * ops.tm[0]) + cd(L1) * (ops.ad * ops.tp[0]) +
                     lJ * ops.tz[0] * (cd(l1) * (ops.ad * ops.tm[1]) - cd(L1) * (ops.ad * ops.tp[1]));
        out.h_sb1 = Operator(cd(-f1) * with_hc(x1m), ops.dims);
        Matrix x2m = cd(l2) * (ops.ad * ops.tm[1]) + cd(L2) * (ops.ad * ops.tp[1]) -
                     lJ * (cd(l2) * (ops.ad * ops.tm[0]) + cd(L2) * (ops.ad * ops.tp[0])) * ops.tz[1];
        out.h_sb2 = Operator(cd(-f2) * with_hc(x2m), ops.dims);
        Matrix osc = ops.a * ops.a + ops.ad * ops.ad;
        out.h_po = Operator(cd(-l1 * L1 * f1) * (ops.tz[0] * osc) + cd(-l2 * L2 * f2) * (ops.tz[1] * osc),
                            ops.dims);
        Matrix flip = ops.tm[0] * ops.tp[1] + ops.tp[0] * ops.tm[1];
        Matrix rise = ops.tm[0] * ops.tm[1] + ops.tp[0] * ops.tp[1];
        Matrix qq = (cd(-(f1 + f2) / 2.0 * out.x0) * Matrix::identity(4 * N) - cd(f1 - f2) * lJ) * flip;
        qq += cd(-(f1 + f2) / 2.0 * (l1 * L2 - L1 * l2)) * rise;
        out.h_qq = Operator(std::move(qq), ops.dims);
        out.h_qq_phi = Operator(Matrix(4 * N, 4 * N), ops.dims);
    } else {
        std::vector<double> can(N), san(N), cbn(N), sbn(N);
        for (int n = 0; n < N; ++n) {
            MixingAngles m = mixing_angles(n, p);
            can[n] = std::cos(m.alpha);
            san[n] = std::sin(m.alpha);
            cbn[n] = std::cos(m.beta);
            sbn[n] = std::sin(m.beta);
        }
        auto pv = [&](const std::function<double(int)>& f) { return ops.photon_diag(photon_values(N, f)); };
        Matrix ca = pv([&](int n) { return can[n]; }), sa = pv([&](int n) { return san[n]; });
        Matrix cb = pv([&](int n) { return cbn[n]; }), sb = pv([&](int n) { return sbn[n]; });
        Matrix c2a = pv([&](int n) { return can[n] * can[n] - san[n] * san[n]; });
        Matrix c2b = pv([&](int n) { return cbn[n] * cbn[n] - sbn[n] * sbn[n]; });

        out.h_z1 = Operator(0.25 * (s1d * cd(f1) * (c2a + c2b) - s2d * cd(f2) * (c2a - c2b)) * ops.tz[0],
                            ops.dims);
        out.h_z2 = Operator(0.25 * (cd(-f1) * s1d * (c2a - c2b) + cd(f2) * s2d * (c2a + c2b)) * ops.tz[1],
                            ops.dims);

        Matrix cacb = ca * cb, sasb = sa * sb, casb = ca * sb, sacb = sa * cb;
        Matrix x1m = (cd(l1) * cacb - cd(L1) * sasb) * (ops.ad * ops.tm[0]) +
                     (cd(L1) * cacb - cd(l1) * sasb) * (ops.ad * ops.tp[0]) -
                     (cd(l1) * casb + cd(L1) * sacb) * (ops.ad * ops.tz[0] * ops.tp[1]) -
                     (cd(l1) * sacb + cd(L1) * casb) * (ops.ad * ops.tz[0] * ops.tm[1]);
        out.h_sb1 = Operator(cd(-f1) * with_hc(x1m), ops.dims);
        Matrix x2m = (cd(l2) * cacb + cd(L2) * sasb) * (ops.ad * ops.tm[1]) +
                     (cd(L2) * cacb + cd(l2) * sasb) * (ops.ad * ops.tp[1]) +
                     (cd(L2) * sacb - cd(l2) * casb) * (ops.ad * ops.tp[0] * ops.tz[1]) +
                     (cd(l2) * sacb - cd(L2) * casb) * (ops.ad * ops.tm[0] * ops.tz[1]);
        out.h_sb2 = Operator(cd(-f2) * with_hc(x2m), ops.dims);

        Matrix osc = ops.a * ops.a + ops.ad * ops.ad;
        Matrix flip = ops.tm[0] * ops.tp[1] + ops.tp[0] * ops.tm[1];
        Matrix rise = ops.tm[0] * ops.tm[1] + ops.tp[0] * ops.tp[1];
        Matrix po = (cd(l1 * L1 * f1) * (c2a + c2b) - cd(l2 * L2 * f2) * (c2a - c2b)) * (cd(0.5) * ops.tz[0]);
        po += (cd(-l1 * L1 * f1) * (c2a - c2b) + cd(l2 * L2 * f2) * (c2a + c2b)) * (cd(0.5) * ops.tz[1]);
        po += cd(2.0) * (sa * ca) * (cd(l1 * L1 * f1) - cd(l2 * L2 * f2)) * flip;
        po += cd(2.0) * (sb * cb) * (cd(l1 * L1 * f1) + cd(l2 * L2 * f2)) * rise;
        out.h_po = Operator(cd(-1.0) * (osc * po), ops.dims);

        Matrix qq = (cd(-(f1 + f2) / 2.0 * out.x0) * c2a + (cd(f1) * s1d - cd(f2) * s2d) * (sa * ca)) * flip;
        qq += (cd(-(f1 + f2) / 2.0 * out.x1_symmetrized) * c2b + (cd(f1) * s1d + cd(f2) * s2d) * (sb * cb)) * rise;
        out.h_qq = Operator(std::move(qq), ops.dims);

        Matrix proj1e = ops.tp[0] * ops.tm[0], proj1g = ops.tm[0] * ops.tp[0];
        Matrix proj2e = ops.tp[1] * ops.tm[1], proj2g = ops.tm[1] * ops.tp[1];
        Matrix cb2 = cb * cb, sb2 = sb * sb, ca2 = ca * ca, sa2 = sa * sa;
        Matrix qqp = (ca * sa) * cd(out.x0) *
                     ((cb2 * proj1e + sb2 * proj1g) * ops.tz[1] - ops.tz[0] * (cb2 * proj2e + sb2 * proj2g));
        qqp -= (cb * sb) * cd(out.x1_symmetrized) *
               ((sa2 * proj1e + ca2 * proj1g) * ops.tz[1] - ops.tz[0] * (ca2 * proj2e + sa2 * proj2g));
        out.h_qq_phi = Operator(cd(-(f1 + f2)) * qqp, ops.dims);
    }

    const cd ang(kTwoPi);
    out.h_z1.m *= ang;
    out.h_z2.m *= ang;
    out.h_sb1.m *= ang;
    out.h_sb2.m *= ang;
    out.h_po.m *= ang;
    out.h_qq.m *= ang;
    out.h_qq_phi.m *= ang;
    return out;
}

Operator FcTermDecomposition::sum() const {
    Operator s = h_z1;
    s.m += h_z2.m;
    s.m += h_sb1.m;
    s.m += h_sb2.m;
    s.m += h_po.m;
    s.m += h_qq.m;
    s.m += h_qq_phi.m;
    return s;
}

Operator cross_resonance_term(const TlsDispersiveParams& p, int n_levels, double drive_amplitude) {
    TlsOps ops(n_levels);
    std::vector<double> coeff(n_levels);
    for (int n = 0; n < n_levels; ++n) {
        MixingAngles m = mixing_angles(n, p);
        coeff[n] = std::cos(m.alpha) * std::sin(m.beta) + std::sin(m.alpha) * std::cos(m.beta);
    }
    Matrix tx2 = ops.tp[1] + ops.tm[1];
    Matrix res = ops.photon_diag(coeff) * ops.tz[0] * tx2;
    res *= cd(-kTwoPi * drive_amplitude);
    return Operator(std::move(res), ops.dims);
}

Operator tls_dispersive_generator(const TlsDispersiveParams& p, int n_levels) {
    TlsOps ops(n_levels);
    Matrix g(4 * n_levels, 4 * n_levels);
    for (int k = 0; k < 2; ++k) {
        Matrix x = cd(p.lambda[k]) * (ops.ad * ops.tm[k]) + cd(p.Lambda[k]) * (ops.a * ops.tm[k]) +
                   cd(p.xi[k]) * (ops.tz[k] * ops.a * ops.a);
        g += x - x.adjoint();
    }
    return Operator(std::move(g), ops.dims);
}

Operator tls_j_unitary(const TlsDispersiveParams& p, int n_levels) {
    const int N = n_levels;
    Matrix u(4 * N, 4 * N);
    // pair index tau1*2+tau2: {00,01,10,11} = {0,1,2,3}
    const int row_of[4] = {3, 2, 1, 0};  // rows of logical_states: {ee, eg, ge, gg} -> pair idx
    const int col_of[4] = {0, 2, 1, 3};  // columns {00, 10, 01, 11} -> pair idx
    for (int n = 0; n < N; ++n) {
        Matrix v = logical_states(n, p);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                u(row_of[r] * N + n, col_of[c] * N + n) = v(r, c);
    }
    return Operator(std::move(u), {2, 2, N});
}

// ---------------------------------------------------------------------------

MlsDispersiveModel mls_model(const DeviceSpec& device) {
    device.validate();
    MlsDispersiveModel model;
    model.omega_r = device.omega_r;
    const double wr = device.omega_r;

    for (std::size_t k = 0; k < device.transmons.size(); ++k) {
        const auto& t = device.transmons[k];
        MlsTransmonCoefficients c;
        c.omega = transmon_energies(t, t.ej_at(t.phi_i));
        const int M = t.levels;
        for (int i = 0; i + 1 < M; ++i) {
            c.g.push_back(device.g_ge[k] * std::sqrt(i + 1.0));
            double d = c.omega[i + 1] - c.omega[i] - wr;
            double s = c.omega[i + 1] - c.omega[i] + wr;
            check_nonzero(d, wr, ("Delta_" + std::to_string(i) + " of transmon " + std::to_string(k + 1)).c_str());
            check_nonzero(s, wr, ("Sigma_" + std::to_string(i) + " of transmon " + std::to_string(k + 1)).c_str());
            c.Delta.push_back(d);
            c.Sigma.push_back(s);
            c.lambda.push_back(c.g[i] / d);
            c.Lambda.push_back(c.g[i] / s);
            c.chi.push_back(c.g[i] * c.lambda[i]);
            c.mu.push_back(c.g[i] * c.Lambda[i]);
        }
        auto at = [](const std::vector<double>& v, int i) {
            return (i >= 0 && i < static_cast<int>(v.size())) ? v[i] : 0.0;
        };
        for (int i = 0; i < M; ++i) {
            c.L.push_back(at(c.chi, i - 1) - at(c.mu, i));
            c.S.push_back(at(c.chi, i - 1) + at(c.mu, i - 1) - at(c.chi, i) - at(c.mu, i));
            c.omega_tilde.push_back(c.omega[i] + c.L.back());
            c.xi.push_back(c.S.back() / (4.0 * wr));
        }
        for (int i = 0; i + 2 < M; ++i) {
            c.eta.push_back(c.g[i] * c.lambda[i + 1] - c.g[i + 1] * c.lambda[i]);
            c.eta_p.push_back(c.g[i] * c.Lambda[i + 1] - c.g[i + 1] * c.Lambda[i]);
            double gap = c.omega[i] - c.omega[i + 2];
            check_nonzero(gap, wr, ("omega_i - omega_{i+2} of transmon " + std::to_string(k + 1)).c_str());
            c.xi_p.push_back((c.eta[i] + c.eta_p[i]) / (2.0 * gap));
            c.xi_pp.push_back((c.g[i] * c.lambda[i + 1] - c.g[i + 1] * c.Lambda[i]) / (2.0 * gap));
            double dr = c.omega[i + 2] - c.omega[i] - 2.0 * wr;
            double sr = c.omega[i + 2] - c.omega[i] + 2.0 * wr;
            check_nonzero(dr, wr, ("two-photon detuning of transmon " + std::to_string(k + 1)).c_str());
            c.zeta.push_back(c.eta[i] / (2.0 * dr));
            c.zeta_p.push_back(c.eta_p[i] / (2.0 * sr));
        }
        model.transmon.push_back(std::move(c));
    }

    if (model.transmon.size() >= 2) {
        const auto& t1 = model.transmon[0];
        const auto& t2 = model.transmon[1];
        const std::size_t m1 = t1.lambda.size(), m2 = t2.lambda.size();
        model.J.assign(m1, std::vector<double>(m2, 0.0));
        model.J_p = model.J;
        model.lambda_J = model.J;
        model.Lambda_J = model.J;
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j) {
                model.J[i][j] = 0.5 * (t1.g[i] * (t2.lambda[j] - t2.Lambda[j]) +
                                       t2.g[j] * (t1.lambda[i] - t1.Lambda[i]));
                model.J_p[i][j] = model.J[i][j];
                double dq = (t1.omega_tilde[i + 1] - t1.omega_tilde[i]) -
                            (t2.omega_tilde[j + 1] - t2.omega_tilde[j]);
                double sq = (t1.omega_tilde[i + 1] - t1.omega_tilde[i]) +
                            (t2.omega_tilde[j + 1] - t2.omega_tilde[j]);
                check_nonzero(dq, model.omega_r,
                              ("inter-MLS detuning (" + std::to_string(i) + "," + std::to_string(j) + ")").c_str());
                model.lambda_J[i][j] = model.J[i][j] / dq;
                model.Lambda_J[i][j] = model.J_p[i][j] / sq;
            }
    }
    return model;
}

double MlsDispersiveModel::red_detuning(int k, int j, int n) const {
    const auto& t = transmon.at(k);
    return (t.omega_tilde[j + 1] - t.omega_tilde[j]) - omega_r + n * (t.S[j + 1] - t.S[j]) - t.S[j];
}

std::vector<SidebandCoefficient> mls_fc_sidebands(const MlsDispersiveModel& model,
                                                  const std::vector<std::vector<double>>& f) {
    std::vector<SidebandCoefficient> out;
    for (std::size_t k = 0; k < model.transmon.size(); ++k) {
        const auto& t = model.transmon[k];
        for (std::size_t i = 0; i + 1 < t.omega.size(); ++i) {
            double df = f.at(k).at(i + 1) - f.at(k).at(i);
            out.push_back({static_cast<int>(k), static_cast<int>(i), df * t.lambda[i], df * t.Lambda[i]});
        }
    }
    return out;
}

Operator mls_dispersive_generator(const MlsDispersiveModel& model, const std::vector<int>& dims) {
    const int K = static_cast<int>(model.transmon.size());
    const int N = dims.back();
    Matrix g(total_dim(dims), total_dim(dims));
    Operator ares = ladder(N);
    Matrix a = embed(ares, K, dims).m;
    Matrix ad = a.adjoint();
    Matrix a2 = a * a, ad2 = ad * ad, nop = ad * a;
    for (int k = 0; k < K; ++k) {
        const auto& t = model.transmon[k];
        const int M = dims[k];
        auto pi = [&](int i, int j) { return embed(projector(i, j, M), k, dims).m; };
        Matrix x(g.rows(), g.cols());
        for (int i = 0; i + 1 < M; ++i)
            x += cd(t.lambda[i]) * (pi(i, i + 1) * ad) + cd(t.Lambda[i]) * (pi(i, i + 1) * a);
        for (int i = 0; i < M; ++i) x += cd(t.xi[i]) * (a2 * pi(i, i));
        for (int i = 0; i + 2 < M; ++i) {
            x += (cd(t.xi_p[i]) * nop + cd(t.xi_pp[i]) * Matrix::identity(g.rows())) * pi(i, i + 2);
            x += cd(t.zeta[i]) * (pi(i, i + 2) * ad2) + cd(t.zeta_p[i]) * (pi(i, i + 2) * a2);
        }
        g += x - x.adjoint();
    }
    return Operator(std::move(g), dims);
}

Operator mls_j_generator(const MlsDispersiveModel& model, const std::vector<int>& dims) {
    if (model.transmon.size() < 2) throw std::invalid_argument("J generator needs two transmons");
    Matrix g(total_dim(dims), total_dim(dims));
    const int M1 = dims[0], M2 = dims[1];
    for (int i = 0; i + 1 < M1; ++i)
        for (int j = 0; j + 1 < M2; ++j) {
            Matrix x = cd(model.lambda_J[i][j]) *
                       (embed(projector(i, i + 1, M1), 0, dims).m * embed(projector(j + 1, j, M2), 1, dims).m);
            x += cd(model.Lambda_J[i][j]) *
                 (embed(projector(i, i + 1, M1), 0, dims).m * embed(projector(j, j + 1, M2), 1, dims).m);
            g += x - x.adjoint();
        }
    return Operator(std::move(g), dims);
}

double bch_residual(const Operator& h, const Operator& generator, int order) {
    if (h.dims != generator.dims) throw std::invalid_argument("bch_residual dims mismatch");
    const Matrix& g = generator.m;
    Matrix anti = g + g.adjoint();
    if (anti.frobenius_norm() > 1e-10 * std::max(1.0, g.frobenius_norm()))
        throw std::invalid_argument("generator must be anti-Hermitian");

    Matrix transformed;
    if (order <= 0) {
        // exact: G = iK with K Hermitian, e^G = e^{iK}
        Matrix k = g;
        k *= cd(0.0, -1.0);
        Matrix u = expi_hermitian(k, 1.0);
        transformed = u.adjoint() * h.m * u;
    } else {
        transformed = h.m;
        Matrix c = h.m;
        double fact = 1.0;
        for (int j = 1; j <= order; ++j) {
            c = c * g - g * c;
            fact /= j;
            Matrix term = c;
            term *= cd(fact);
            transformed += term;
        }
    }
    const int N = h.dims.back();
    double sq = 0.0;
    for (std::size_t r = 0; r < transformed.rows(); ++r)
        for (std::size_t c2 = 0; c2 < transformed.cols(); ++c2)
            if (r % N != c2 % N) sq += std::norm(transformed(r, c2));
    return std::sqrt(sq);
}

}  // namespace fluxband
