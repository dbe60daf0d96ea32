#pragma once

#include "fluxband/device.hpp"
#include "fluxband/dispersive.hpp"
#include "fluxband/evolve.hpp"
#include "fluxband/sideband.hpp"

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fluxband {

// truncated Gaussian; A is a flux amplitude (Phi0) for flux segments or a
// drive amplitude in MHz for dipole segments
struct Envelope {
    double A = 0.0;
    double mu = 0.0;     // ns
    double sigma = 1.0;  // ns
    double tau = 0.0;    // ns, half support

    double value(double t) const;
    double derivative(double t) const;
    double integral() const;  // over the truncated support
};

// Delta_phi': amplitude whose geometric shift splits the pulse area equally
double effective_amplitude(const Envelope& env);
double effective_amplitude_factor(double sigma, double tau);  // Delta_phi'/A

enum class SegmentKind { flux_fc, dipole };

struct PulseSegment {
    SegmentKind kind = SegmentKind::flux_fc;
    int target = 0;            // transmon index (0-based internally)
    double carrier = 0.0;      // GHz
    double carrier_offset = 0.0;  // GHz, calibration correction
    double phase = 0.0;        // rad
    Envelope envelope;
    bool drag = false;
    double drag_delta = 1.0;   // GHz, detuning scale of the DRAG quadrature
    double drag_scale = 1.0;
    double amp_factor = 1.0;   // calibration fine-scale on the amplitude

    double t_start() const { return envelope.mu - envelope.tau; }
    double t_end() const { return envelope.mu + envelope.tau; }
    // in-phase + DRAG quadrature value at t (flux units or MHz by kind)
    double value(double t) const;
};

struct PulseSchedule {
    std::vector<PulseSegment> segments;
    double total_duration = 0.0;

    void validate() const;  // time-ordered, non-overlapping supports

    nlohmann::json to_json() const;
    static PulseSchedule from_json(const nlohmann::json& j);
};

// flux sideband segment: carrier from the dispersive resonance with the
// geometric shift evaluated at the effective amplitude
PulseSegment fc_segment(const DeviceSpec& device, const MlsDispersiveModel& model, int target,
                        int j, int n, int m, SpectatorPolicy policy, const Envelope& env,
                        bool drag = false);

// direct dipole segment on the target transmon's j <-> j+1 transition;
// amplitude in MHz, carrier at the dressed splitting
PulseSegment dipole_segment(const MlsDispersiveModel& model, int target, int j,
                            const Envelope& env, bool drag = true);

struct UentOptions {
    bool drag = true;
    bool calibrate_dipole = true;          // tune carrier offset + amplitude factor
    std::vector<double> segment_phases;    // optional, one per segment
};

// The five-pulse entangling sequence R01(1) R12(2) sx12(2) R12(2) R01(1)
// with the published amplitudes and timings.
PulseSchedule build_uent_schedule(const DeviceSpec& device, const UentOptions& opts = {});

// Hamiltonian closure for a schedule plus a per-segment step plan
struct ScheduleRun {
    HamiltonianFn hamiltonian;
    StepPlan plan;
};

ScheduleRun schedule_hamiltonian(const DeviceModel& model, const PulseSchedule& schedule,
                                 const IntegratorConfig& cfg, double t0 = 0.0,
                                 double t1 = -1.0);

// additive drive term of one segment at time t (angular); flux segments
// contribute the instantaneous transmon-energy displacement
Matrix drive_hamiltonian(const PulseSegment& seg, double t, const DeviceModel& model);

// conversion for dipole amplitudes: drive(t) = kDipoleAmpScale * 2pi * A[GHz] *
// envelope * cos(...) on (b + b'). The factor 2 reflects reading the published
// amplitudes as the coefficient of b e^{i w t} + h.c.
inline constexpr double kDipoleAmpScale = 2.0;

// deterministic transfer calibration of the dipole segment on the reduced
// (target transmon + resonator) system; returns (carrier_offset GHz, amp_factor)
std::pair<double, double> calibrate_dipole_segment(const DeviceSpec& device,
                                                   const PulseSegment& seg, int lower_level);

}  // namespace fluxband
