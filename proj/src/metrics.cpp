#include "fluxband/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxband {

namespace {

// U_ent pattern: input j -> output p_of[j] with phase slot slot_of[j]
// (slot 0 is the fixed global reference)
constexpr int p_of[4] = {0, 1, 3, 2};
constexpr int slot_of[4] = {0, 1, 3, 2};

struct PhaseObjective {
    std::array<std::array<cd, 4>, 4> c{};  // F = sum c[s][s'] e^{i(phi_s - phi_s')}

    static PhaseObjective from_blocks(const std::array<std::array<Matrix, 4>, 4>& e) {
        PhaseObjective o;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                o.c[slot_of[j]][slot_of[i]] += e[i][j](p_of[i], p_of[j]) / 16.0;
        // symmetrize (the objective is the real part)
        for (int s = 0; s < 4; ++s)
            for (int t = s; t < 4; ++t) {
                cd v = 0.5 * (o.c[s][t] + std::conj(o.c[t][s]));
                o.c[s][t] = v;
                o.c[t][s] = std::conj(v);
            }
        return o;
    }

    double eval(const std::array<double, 4>& phi) const {
        cd z[4];
        for (int s = 0; s < 4; ++s) z[s] = std::exp(cd(0.0, phi[s]));
        cd f = 0.0;
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) f += c[s][t] * z[s] * std::conj(z[t]);
        return f.real();
    }

    PhaseFit solve() const {
        const int G = 64;
        std::array<double, 4> best{0, 0, 0, 0};
        double bestf = -1.0;
        std::array<double, 4> phi{0, 0, 0, 0};
        for (int i1 = 0; i1 < G; ++i1) {
            phi[1] = kTwoPi * i1 / G;
            for (int i2 = 0; i2 < G; ++i2) {
                phi[2] = kTwoPi * i2 / G;
                for (int i3 = 0; i3 < G; ++i3) {
                    phi[3] = kTwoPi * i3 / G;
                    double f = eval(phi);
                    if (f > bestf) {
                        bestf = f;
                        best = phi;
                    }
                }
            }
        }
        // coordinate ascent with the exact per-phase maximizer
        phi = best;
        for (int sweep = 0; sweep < 200; ++sweep) {
            double before = eval(phi);
            for (int s = 1; s < 4; ++s) {
                cd w = 0.0;
                for (int t = 0; t < 4; ++t) {
                    if (t == s) continue;
                    w += c[s][t] * std::conj(std::exp(cd(0.0, phi[t])));
                }
                if (std::abs(w) > 0.0) phi[s] = -std::arg(w);
            }
            if (eval(phi) - before < 1e-15) break;
        }
        PhaseFit fit;
        for (int s = 1; s < 4; ++s) {
            double v = std::fmod(phi[s], kTwoPi);
            if (v < 0) v += kTwoPi;
            fit.phi[s - 1] = v;
        }
        fit.fidelity = eval(phi);
        return fit;
    }
};

}  // namespace

GateFidelity gate_fidelity(const Matrix& u, const Matrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
        throw std::invalid_argument("gate_fidelity needs square matrices of equal dimension");
    const double d = static_cast<double>(u.rows());
    cd tr = (u.adjoint() * v).trace();
    GateFidelity f;
    f.F = std::norm(tr) / (d * d);
    f.F_avg = (d * f.F + 1.0) / (d + 1.0);
    return f;
}

void ChoiMatrix::validate(double tol) const {
    if (m.hermiticity_error() > tol) throw std::runtime_error("Choi matrix not Hermitian");
    if (std::abs(m.trace() - cd(1.0)) > tol) throw std::runtime_error("Choi matrix trace != 1");
    Eigh e = hermitian_eigendecomposition(m);
    if (e.values.front() < -tol) throw std::runtime_error("Choi matrix not positive semidefinite");
}

ChoiMatrix choi_of_unitary(const Matrix& u) {
    const std::size_t d = u.rows();
    ChoiMatrix c;
    c.d = static_cast<int>(d);
    c.m = Matrix(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    c.m(i * d + a, j * d + b) = u(a, i) * std::conj(u(b, j)) / static_cast<double>(d);
    return c;
}

ChoiMatrix choi_of_channel(const std::function<Matrix(const Matrix&)>& channel, int d) {
    ChoiMatrix c;
    c.d = d;
    c.m = Matrix(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix eij(d, d);
            eij(i, j) = 1.0;
            Matrix out = channel(eij);
            if (i == j) {
                double tr = out.trace().real();
                if (tr > 1.0 + 1e-8 || tr < -1e-8)
                    throw std::invalid_argument("channel output trace outside [0, 1]");
            }
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) c.m(i * d + a, j * d + b) = out(a, b) / static_cast<double>(d);
        }
    return c;
}

double choi_overlap(const ChoiMatrix& a, const ChoiMatrix& b) {
    if (a.m.rows() != b.m.rows()) throw std::invalid_argument("Choi dimension mismatch");
    return (a.m * b.m).trace().real();
}

Matrix uent_matrix(double phi1, double phi2, double phi3) {
    Matrix u(4, 4);
    u(0, 0) = 1.0;
    u(1, 1) = std::exp(cd(0.0, phi1));
    u(3, 2) = std::exp(cd(0.0, phi3));
    u(2, 3) = std::exp(cd(0.0, phi2));
    return u;
}

Matrix cnot_matrix() { return uent_matrix(0.0, 0.0, 0.0); }

PhaseFit fit_phases(const Matrix& v) {
    if (v.rows() != 4 || v.cols() != 4) throw std::invalid_argument("fit_phases expects a 4x4 matrix");
    std::array<std::array<Matrix, 4>, 4> blocks;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Matrix e(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) e(a, b) = v(a, i) * std::conj(v(b, j));
            blocks[i][j] = std::move(e);
        }
    return PhaseObjective::from_blocks(blocks).solve();
}

PhaseFit fit_phases_choi(const std::array<std::array<Matrix, 4>, 4>& blocks) {
    return PhaseObjective::from_blocks(blocks).solve();
}

CnotAngles cnot_equivalence(const std::array<double, 3>& p) {
    CnotAngles a;
    a.theta1 = (p[1] - p[0] - p[2]) / 2.0;
    a.theta2 = (p[0] - p[1] - p[2]) / 2.0;
    a.theta3 = (p[2] - p[0] - p[1]) / 2.0;
    return a;
}

namespace {
Matrix z_rotation(int qubit, double theta) {
    Matrix z(4, 4);
    for (int j = 0; j < 4; ++j) {
        int bit = qubit == 0 ? (j == 1 || j == 3) : (j == 2 || j == 3);
        z(j, j) = std::exp(cd(0.0, bit ? theta / 2.0 : -theta / 2.0));
    }
    return z;
}
}  // namespace

Matrix cnot_assembled(const Matrix& uent, const CnotAngles& a) {
    return z_rotation(0, a.theta1) * uent * z_rotation(1, a.theta2) * z_rotation(0, a.theta3);
}

Matrix bell_populations(const Matrix& v, const std::array<double, 3>& phases) {
    const double s2 = 1.0 / std::sqrt(2.0);
    // separable inputs in the {00, 10, 01, 11} basis
    Matrix in(4, 4);
    in(0, 0) = s2; in(2, 0) = s2;    // phi+
    in(0, 1) = s2; in(2, 1) = -s2;   // phi-
    in(1, 2) = s2; in(3, 2) = s2;    // psi+
    in(1, 3) = s2; in(3, 3) = -s2;   // psi-
    Matrix u = uent_matrix(phases[0], phases[1], phases[2]);
    // Bell targets: columns {Phi+, Phi-, Psi+, Psi-} = U applied to the
    // partner inputs {phi-, phi+, psi-, psi+}
    Matrix partners(4, 4);
    for (int r = 0; r < 4; ++r) {
        int pc = (r % 2 == 0) ? r + 1 : r - 1;
        for (int a = 0; a < 4; ++a) partners(a, r) = in(a, pc);
    }
    Matrix targets = u * partners;
    Matrix fin = v * in;
    Matrix ov = targets.adjoint() * fin;
    Matrix pops(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) pops(r, c) = std::norm(ov(c, r));
    return pops;
}

std::array<double, 4> bell_diagonal(const Matrix& populations) {
    return {populations(0, 1).real(), populations(1, 0).real(), populations(2, 3).real(),
            populations(3, 2).real()};
}

namespace {

struct ComputationalFrame {
    Matrix basis;                 // dim x 4
    std::vector<double> energies; // angular
    std::vector<std::vector<int>> labels;
};

ComputationalFrame computational_frame(const DeviceModel& model) {
    ComputationalFrame f;
    f.labels = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
    f.basis = Matrix(model.dim(), 4);
    for (int j = 0; j < 4; ++j) {
        auto v = model.dressed_state(f.labels[j]);
        for (std::size_t i = 0; i < model.dim(); ++i) f.basis(i, j) = v[i];
        f.energies.push_back(model.dressed_energy(f.labels[j]));
    }
    return f;
}

}  // namespace

ExtractedGate extract_computational_gate(const DeviceModel& model, const PulseSchedule& schedule,
                                         const IntegratorConfig& cfg) {
    ComputationalFrame frame = computational_frame(model);
    ScheduleRun run = schedule_hamiltonian(model, schedule, cfg, 0.0, schedule.total_duration);
    Matrix states = frame.basis;
    propagate_state(run.hamiltonian, run.plan, states, cfg);
    return extract_gate(states, frame.basis, frame.energies, schedule.total_duration);
}

std::vector<CollapseOp> device_collapse_ops(const DeviceModel& model) {
    return device_collapse_ops(model, model.spec().kappa, model.spec().T1);
}

std::vector<CollapseOp> device_collapse_ops(const DeviceModel& model, double kappa_mhz,
                                            const std::vector<double>& t1_us) {
    std::vector<CollapseOp> ops;
    const auto& dims = model.dims();
    const int K = model.n_transmons();
    if (kappa_mhz > 0.0) {
        double rate = kTwoPi * kappa_mhz * 1e-3;  // angular rate in 1/ns
        Operator a = ladder(model.spec().resonator_levels);
        Matrix c = embed(a, K, dims).m;
        c *= cd(std::sqrt(rate));
        ops.emplace_back(std::move(c));
    }
    for (int k = 0; k < K; ++k) {
        if (t1_us.empty() || t1_us[k] <= 0.0) continue;
        double rate = 1e-3 / t1_us[k];  // 1/ns
        Matrix low(dims[k], dims[k]);
        for (int i = 0; i + 1 < dims[k]; ++i) low(i, i + 1) = std::sqrt(i + 1.0);
        Matrix c = embed(Operator(low, {dims[k]}), k, dims).m;
        c *= cd(std::sqrt(rate));
        ops.emplace_back(std::move(c));
    }
    return ops;
}

ChoiEvolutionResult average_fidelity_via_choi_evolution(const DeviceModel& model,
                                                        const PulseSchedule& schedule,
                                                        const std::vector<CollapseOp>& collapse,
                                                        const IntegratorConfig& cfg) {
    ChoiEvolutionResult out;
    ComputationalFrame frame = computational_frame(model);
    ScheduleRun run = schedule_hamiltonian(model, schedule, cfg, 0.0, schedule.total_duration);
    const double T = schedule.total_duration;
    const std::size_t dim = model.dim();

    if (collapse.empty()) {
        Matrix states = frame.basis;
        propagate_state(run.hamiltonian, run.plan, states, cfg);
        ExtractedGate g = extract_gate(states, frame.basis, frame.energies, T);
        out.fit = fit_phases(g.matrix);
        out.gate = g.matrix;
    } else {
        // evolve the upper-triangle Choi blocks |d_i><d_j|
        std::vector<std::pair<int, int>> pairs;
        std::vector<Matrix> rhos;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                pairs.emplace_back(i, j);
                Matrix r(dim, dim);
                for (std::size_t a = 0; a < dim; ++a)
                    for (std::size_t b = 0; b < dim; ++b)
                        r(a, b) = frame.basis(a, i) * std::conj(frame.basis(b, j));
                rhos.push_back(std::move(r));
            }
        propagate_density_multi(run.hamiltonian, run.plan, rhos, collapse, cfg);
        std::array<std::array<Matrix, 4>, 4> blocks;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            Matrix b4(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    cd acc = 0.0;
                    for (std::size_t r = 0; r < dim; ++r) {
                        cd row = 0.0;
                        for (std::size_t c = 0; c < dim; ++c) row += rhos[p](r, c) * frame.basis(c, b);
                        acc += std::conj(frame.basis(r, a)) * row;
                    }
                    cd ph = std::exp(cd(0.0, (frame.energies[a] - frame.energies[b]) * T));
                    b4(a, b) = ph * acc;
                }
            blocks[i][j] = b4;
            if (i != j) blocks[j][i] = b4.adjoint();
        }
        out.fit = fit_phases_choi(blocks);
    }
    out.F_process = out.fit.fidelity;
    out.F_avg = (4.0 * out.F_process + 1.0) / 5.0;
    return out;
}

std::vector<double> align_uent_phases(const std::array<double, 3>& b,
                                      const std::array<double, 3>& t) {
    // path-phase relations of the five-segment sequence:
    //   phi1 = b1 + a4,  phi2 = b2 - a1 + a2,  phi3 = b3 - a2 + a4
    double a4 = t[0] - b[0];
    double a2 = b[2] + a4 - t[2];
    double a1 = b[1] + a2 - t[1];
    auto wrap = [](double x) {
        x = std::fmod(x, kTwoPi);
        if (x < 0) x += kTwoPi;
        return x;
    };
    return {0.0, wrap(a1), wrap(a2), 0.0, wrap(a4)};
}

}  // namespace fluxband
