// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end single-photon QND devices built from the fock, optics and
// detection layers, plus the Kerr-strength and phase-bound calculators.

#ifndef QNDSIM_PROTOCOLS_HPP
#define QNDSIM_PROTOCOLS_HPP

#include <string>

#include "qndsim/detection.hpp"
#include "qndsim/optics.hpp"

namespace qndsim {

/// Signal c0|0> + c1|1> + c2|2> (number kets) in the input mode.
struct NumberInput {
    Complex c0{};
    Complex c1{1.0, 0.0};
    Complex c2{};

    /// Throws DomainError unless |c0|^2 + |c1|^2 + |c2|^2 = 1 within 1e-12.
    NumberInput(Complex c0, Complex c1, Complex c2);
    /// Rescales to unit norm first.
    static NumberInput normalized(Complex c0, Complex c1, Complex c2);
    /// No vacuum component, |c2|^2 / |c1|^2 = gamma.
    static NumberInput from_gamma(double gamma);

    /// Two-photon fraction |c2|^2 / |c1|^2 (infinite when c1 = 0).
    double gamma() const;
};

/// |theta> = alpha |H> + beta |V>.
struct PolarizationAngle {
    Complex alpha{1.0, 0.0};
    Complex beta{};

    PolarizationAngle(Complex alpha, Complex beta);
    static PolarizationAngle horizontal();
    static PolarizationAngle diagonal();
    /// cos(polar/2) |H> + e^{i azimuth} sin(polar/2) |V>.
    static PolarizationAngle from_bloch(double polar, double azimuth);

    /// The orthogonal polarization -conj(beta) |H> + conj(alpha) |V>.
    PolarizationAngle orthogonal() const;
};

/// Parametric down-converter truncated at first order in epsilon:
/// (1 - eps^2)|0> + eps |pair>, renormalized.
struct PdcSource {
    double epsilon = 0.01;

    explicit PdcSource(double epsilon);
    static PdcSource from_pair_probability(double p_pdc);
    double pair_probability() const {
        return epsilon * epsilon;
    }
};

/// SI inputs of the single-photon Kerr phase.
struct KerrStrengthParams {
    double omega;    // rad/s
    double delta_t;  // s, transit time through the medium
    double chi3;     // m^2/V^2
    double volume;   // m^3
};

struct ProtocolOutcome {
    /// Probability of the heralding detector signature.
    double success_probability = 0.0;
    /// Heralded output, scaled to unit weight (empty when the signature never occurs).
    MixedState conditional_output = MixedState(std::vector<ModeId>{});
    /// Tr[rho |target><target|]; 0 when the signature never occurs.
    double fidelity = 0.0;
    FockState target = FockState(std::vector<ModeId>{});
};

/// Both readings of the Kerr Mach-Zehnder probe.
struct KerrQndOutcome {
    /// Click in D2 only: a photon is signalled; target |1>.
    ProtocolOutcome one_photon;
    /// Click in D1 only: no photon is signalled; target |0>.
    ProtocolOutcome no_photon;
};

// Networks, exposed for inspection and tests. Output channels reuse the input
// names.

/// Four-mode number QND interferometer over (a, b, c, d). The probe pair
/// (c, d) meets on a 50:50 splitter; each arm then meets a or b on a
/// splitter of transmission T (arrow flipped), whose outputs c', d' carry the
/// coincidence detectors.
ModeTransform number_qnd_network(double transmission);

/// Six-channel polarization-preserving interferometer over
/// (a.H, a.V, c, d, e, f). The probes enter c (V), d (H), e (V), f (H);
/// after the which-path rotation every photon reaching c'..f' shares one
/// polarization, so those outputs are single channels.
ModeTransform pol_qnd_network();

FockState number_input_state(const NumberInput &input, const ModeId &id, int n_max);
/// c0|0> + c1|theta> + c2|2 theta> on a polarized spatial mode.
FockState polarized_input_state(const NumberInput &input, const PolarizationAngle &theta, const std::string &spatial,
                                int n_max);

/// Polarization singlet pair (|H,V> - |V,H>)/sqrt2 from the source, over two
/// polarized spatial modes.
FockState pdc_state(const PdcSource &src, const std::string &spatial1, const std::string &spatial2,
                    int n_max = kDefaultNMax);
/// Unpolarized pair (1 - eps^2)|0,0> + eps|1,1>, renormalized.
FockState pdc_pair_state(const PdcSource &src, const ModeId &m1, const ModeId &m2, int n_max = kDefaultNMax);

/// Heralds on (a' -> 0, c' -> 1, d' -> 1); output mode b', target |1>.
ProtocolOutcome number_qnd(const NumberInput &input, double transmission, const DetectorModel &det);
/// Same device with both probes from one PDC pair instead of single-photon guns.
ProtocolOutcome number_qnd_pdc_probes(const NumberInput &input, double transmission, const DetectorModel &det,
                                      const PdcSource &src);

/// Heralds on one photon in each of c', d', e', f'; output a' (both
/// polarizations, undetected), target |theta>.
ProtocolOutcome pol_qnd(const NumberInput &input, const PolarizationAngle &theta, const DetectorModel &det);

/// Rounded rational approximation of the polarization device fidelity:
/// (1 + 0.93 g x) / (1 + (0.12 + 1.22 g) x + 0.93 g x^2), x = 1 - efficiency.
double pol_fidelity_approx(double gamma, double efficiency);

/// Polarization teleportation through a singlet pair: the input and one PDC
/// arm meet on a 50:50 splitter; exactly one photon in each output port
/// (polarization-blind, ideal counters) heralds the singlet. Target |theta>
/// on the other PDC arm.
ProtocolOutcome teleport_pol_qnd(const NumberInput &input, const PolarizationAngle &theta, const PdcSource &src);
/// Number-state version: a horizontally polarized input, target |1> (H).
ProtocolOutcome teleport_number_qnd(const NumberInput &input, const PdcSource &src);

/// Mach-Zehnder with a cross-Kerr cell between one arm and the signal.
KerrQndOutcome kerr_qnd(const NumberInput &input, double tau, const DetectorModel &det);

/// Single-photon Kerr phase hbar omega^2 dt chi3 / (4 eps0 V).
double kerr_tau(const KerrStrengthParams &p);

/// Heisenberg-limited phase resolution pi / (2N) with an N-photon noon state.
double noon_bound(int n);

}  // namespace qndsim

#endif
