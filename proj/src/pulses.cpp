#include "fluxband/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxband {

double Envelope::value(double t) const {
    const double dt = t - mu;
    if (std::abs(dt) > tau) return 0.0;
    return A * std::exp(-dt * dt / (2.0 * sigma * sigma));
}

double Envelope::derivative(double t) const {
    const double dt = t - mu;
    if (std::abs(dt) > tau) return 0.0;
    return -A * dt / (sigma * sigma) * std::exp(-dt * dt / (2.0 * sigma * sigma));
}

double Envelope::integral() const {
    return A * std::sqrt(2.0 * M_PI) * sigma * std::erf(tau / (std::sqrt(2.0) * sigma));
}

double effective_amplitude_factor(double sigma, double tau) {
    if (sigma <= 0.0 || tau <= 0.0) throw std::domain_error("envelope needs sigma, tau > 0");
    const double a = std::sqrt(2.0) * sigma * erf_inv(0.5 * std::erf(tau / (std::sqrt(2.0) * sigma)));
    return std::exp(-a * a / (2.0 * sigma * sigma));
}

double effective_amplitude(const Envelope& env) {
    return env.A * effective_amplitude_factor(env.sigma, env.tau);
}

double PulseSegment::value(double t) const {
    const double env = envelope.value(t);
    const double w = kTwoPi * (carrier + carrier_offset);
    double v = env * std::cos(w * t + phase);
    if (drag && env != 0.0) {
        const double quad = drag_scale * envelope.derivative(t) / (kTwoPi * drag_delta);
        v -= quad * std::sin(w * t + phase);
    }
    return amp_factor * v;
}

void PulseSchedule::validate() const {
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (segments[i].t_start() > segments[i + 1].t_start() + 1e-12)
            throw std::invalid_argument("schedule segments must be time-ordered");
        if (segments[i].t_end() > segments[i + 1].t_start() + 1e-9)
            throw std::invalid_argument("schedule segments must not overlap");
    }
}

nlohmann::json PulseSchedule::to_json() const {
    nlohmann::json j;
    j["segments"] = nlohmann::json::array();
    for (const auto& s : segments) {
        nlohmann::json sj;
        sj["kind"] = s.kind == SegmentKind::flux_fc ? "flux" : "dipole";
        sj["target"] = s.target + 1;
        sj["A"] = s.envelope.A;
        sj["mu"] = s.envelope.mu;
        sj["sigma"] = s.envelope.sigma;
        sj["two_tau"] = 2.0 * s.envelope.tau;
        sj["carrier"] = s.carrier;
        sj["phase"] = s.phase;
        sj["drag"] = s.drag;
        if (s.carrier_offset != 0.0) sj["carrier_offset"] = s.carrier_offset;
        if (s.amp_factor != 1.0) sj["amp_factor"] = s.amp_factor;
        if (s.drag) {
            sj["drag_delta"] = s.drag_delta;
            sj["drag_scale"] = s.drag_scale;
        }
        j["segments"].push_back(sj);
    }
    j["total_duration"] = total_duration;
    return j;
}

PulseSchedule PulseSchedule::from_json(const nlohmann::json& j) {
    PulseSchedule sched;
    for (const auto& sj : j.at("segments")) {
        PulseSegment s;
        std::string kind = sj.at("kind").get<std::string>();
        if (kind == "flux")
            s.kind = SegmentKind::flux_fc;
        else if (kind == "dipole")
            s.kind = SegmentKind::dipole;
        else
            throw std::invalid_argument("unknown segment kind: " + kind);
        s.target = sj.at("target").get<int>() - 1;
        s.envelope.A = sj.at("A").get<double>();
        s.envelope.mu = sj.at("mu").get<double>();
        s.envelope.sigma = sj.at("sigma").get<double>();
        s.envelope.tau = 0.5 * sj.at("two_tau").get<double>();
        s.carrier = sj.at("carrier").get<double>();
        s.phase = sj.value("phase", 0.0);
        s.drag = sj.value("drag", false);
        s.carrier_offset = sj.value("carrier_offset", 0.0);
        s.amp_factor = sj.value("amp_factor", 1.0);
        s.drag_delta = sj.value("drag_delta", 1.0);
        s.drag_scale = sj.value("drag_scale", 1.0);
        sched.segments.push_back(s);
    }
    sched.total_duration = j.value("total_duration", sched.segments.empty() ? 0.0 : sched.segments.back().t_end());
    sched.validate();
    return sched;
}

PulseSegment fc_segment(const DeviceSpec& device, const MlsDispersiveModel& model, int target,
                        int j, int n, int m, SpectatorPolicy policy, const Envelope& env,
                        bool drag) {
    PulseSegment s;
    s.kind = SegmentKind::flux_fc;
    s.target = target;
    s.envelope = env;
    s.drag = drag;
    const auto& tr = device.transmons.at(target);
    HarmonicDecomposition hd = harmonic_decomposition(tr, effective_amplitude(env));
    double shift = 0.0;
    if (policy != SpectatorPolicy::none && model.transmon.size() >= 2)
        shift = spectator_shift(model, 1 - target, policy);
    s.carrier = resonance(model, hd, target, j, n, m, shift);
    if (drag) {
        int j_near = j > 0 ? j - 1 : j + 1;
        if (j_near + 1 >= static_cast<int>(model.transmon[target].omega.size()))
            throw std::invalid_argument("DRAG on the top transition has no leakage neighbour");
        s.drag_delta = model.red_detuning(target, j_near, n) - model.red_detuning(target, j, n);
    }
    return s;
}

PulseSegment dipole_segment(const MlsDispersiveModel& model, int target, int j,
                            const Envelope& env, bool drag) {
    PulseSegment s;
    s.kind = SegmentKind::dipole;
    s.target = target;
    s.envelope = env;
    s.drag = drag;
    const auto& wt = model.transmon.at(target).omega_tilde;
    if (j + 1 >= static_cast<int>(wt.size()))
        throw std::invalid_argument("dipole transition above the truncation");
    s.carrier = wt[j + 1] - wt[j];
    if (drag) {
        if (j + 2 >= static_cast<int>(wt.size()))
            throw std::invalid_argument("DRAG on the top transition has no leakage neighbour");
        s.drag_delta = (wt[j + 2] - wt[j + 1]) - (wt[j + 1] - wt[j]);
    }
    return s;
}

PulseSchedule build_uent_schedule(const DeviceSpec& device, const UentOptions& opts) {
    if (device.transmons.size() < 2) throw std::invalid_argument("U_ent needs two transmons");
    if (device.transmons[1].levels < 3)
        throw std::invalid_argument("U_ent exploits the second excited level of transmon 2");
    MlsDispersiveModel model = mls_model(device);

    PulseSchedule sched;
    sched.segments.push_back(fc_segment(device, model, 0, 0, 0, 1, SpectatorPolicy::midpoint,
                                        {0.07308, 16.0, 7.0, 14.0}, false));
    sched.segments.push_back(fc_segment(device, model, 1, 1, 0, 1, SpectatorPolicy::resonant_on_ground,
                                        {0.02520, 46.5, 6.25, 12.5}, opts.drag));
    sched.segments.push_back(dipole_segment(model, 1, 1, {51.1412, 65.96, 1.48, 2.96}, opts.drag));
    sched.segments.push_back(fc_segment(device, model, 1, 1, 0, 1, SpectatorPolicy::resonant_on_ground,
                                        {0.02520, 85.42, 6.25, 12.5}, opts.drag));
    sched.segments.push_back(fc_segment(device, model, 0, 0, 0, 1, SpectatorPolicy::midpoint,
                                        {0.07308, 115.92, 7.0, 14.0}, false));
    sched.total_duration = 129.92;

    if (!opts.segment_phases.empty()) {
        if (opts.segment_phases.size() != sched.segments.size())
            throw std::invalid_argument("segment_phases must have one entry per segment");
        for (std::size_t i = 0; i < sched.segments.size(); ++i)
            sched.segments[i].phase = opts.segment_phases[i];
    }
    if (opts.calibrate_dipole) {
        auto [off, amp] = calibrate_dipole_segment(device, sched.segments[2], 1);
        sched.segments[2].carrier_offset = off;
        sched.segments[2].amp_factor = amp;
    }
    sched.validate();
    return sched;
}

ScheduleRun schedule_hamiltonian(const DeviceModel& model, const PulseSchedule& schedule,
                                 const IntegratorConfig& cfg, double t0, double t1) {
    if (t1 < 0.0) t1 = schedule.total_duration;
    const int K = model.n_transmons();

    // interval boundaries at segment edges
    std::vector<double> cuts{t0, t1};
    for (const auto& s : schedule.segments) {
        if (s.t_start() > t0 && s.t_start() < t1) cuts.push_back(s.t_start());
        if (s.t_end() > t0 && s.t_end() < t1) cuts.push_back(s.t_end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               cuts.end());

    StepPlan plan;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double mid = 0.5 * (a + b);
        double dt = cfg.max_step;
        for (const auto& s : schedule.segments) {
            if (mid >= s.t_start() && mid <= s.t_end()) {
                double f = std::abs(s.carrier + s.carrier_offset);
                if (f > 1e-9) dt = std::min(dt, 1.0 / (cfg.samples_per_period * f));
            }
        }
        dt = std::min(dt, b - a);
        plan.intervals.push_back({a, b, dt});
    }

    PulseSchedule sched = schedule;
    HamiltonianFn fn = [&model, sched, K](double t, Matrix& h) {
        std::vector<double> dphi(K, 0.0), dip(K, 0.0);
        for (const auto& s : sched.segments) {
            if (t < s.t_start() || t > s.t_end()) continue;
            if (s.kind == SegmentKind::flux_fc)
                dphi[s.target] += s.value(t);
            else
                dip[s.target] += kDipoleAmpScale * kTwoPi * 1e-3 * s.value(t);
        }
        model.hamiltonian_into(dphi, dip, h);
    };
    return ScheduleRun{std::move(fn), std::move(plan)};
}

Matrix drive_hamiltonian(const PulseSegment& seg, double t, const DeviceModel& model) {
    const int K = model.n_transmons();
    std::vector<double> dphi(K, 0.0), dip(K, 0.0);
    if (t >= seg.t_start() && t <= seg.t_end()) {
        if (seg.kind == SegmentKind::flux_fc)
            dphi[seg.target] = seg.value(t);
        else
            dip[seg.target] = kDipoleAmpScale * kTwoPi * 1e-3 * seg.value(t);
    }
    Matrix h(model.dim(), model.dim());
    model.hamiltonian_into(dphi, dip, h);
    Matrix h0(model.dim(), model.dim());
    model.hamiltonian_into(std::vector<double>(K, 0.0), std::vector<double>(K, 0.0), h0);
    h -= h0;
    return h;
}

namespace {

double dipole_transfer(const DeviceModel& reduced, const PulseSegment& seg, int lower_level) {
    PulseSchedule sched;
    PulseSegment s = seg;
    s.target = 0;
    sched.segments.push_back(s);
    sched.total_duration = s.t_end();
    IntegratorConfig cfg;
    cfg.samples_per_period = 48;
    ScheduleRun run = schedule_hamiltonian(reduced, sched, cfg, s.t_start(), s.t_end());
    Matrix psi(reduced.dim(), 1);
    auto init = reduced.dressed_state({lower_level, 0});
    for (std::size_t i = 0; i < reduced.dim(); ++i) psi(i, 0) = init[i];
    propagate_state(run.hamiltonian, run.plan, psi, cfg);
    auto target = reduced.dressed_state({lower_level + 1, 0});
    cd ov = 0.0;
    for (std::size_t i = 0; i < reduced.dim(); ++i) ov += std::conj(target[i]) * psi(i, 0);
    return std::norm(ov);
}

template <typename F>
double golden_max(F&& f, double lo, double hi, int iters) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::pair<double, double> calibrate_dipole_segment(const DeviceSpec& device,
                                                   const PulseSegment& seg, int lower_level) {
    DeviceSpec reduced_spec;
    reduced_spec.transmons = {device.transmons.at(seg.target)};
    reduced_spec.g_ge = {device.g_ge.at(seg.target)};
    reduced_spec.T1 = {0.0};
    reduced_spec.omega_r = device.omega_r;
    reduced_spec.resonator_levels = device.resonator_levels;
    DeviceModel reduced(reduced_spec);

    PulseSegment work = seg;
    auto eval = [&](double off, double amp) {
        work.carrier_offset = off;
        work.amp_factor = amp;
        return dipole_transfer(reduced, work, lower_level);
    };
    double off = golden_max([&](double x) { return eval(x, 1.0); }, -0.045, 0.005, 14);
    double amp = golden_max([&](double x) { return eval(off, x); }, 0.90, 1.10, 14);
    off = golden_max([&](double x) { return eval(x, amp); }, off - 0.008, off + 0.008, 10);
    return {off, amp};
}

}  // namespace fluxband
