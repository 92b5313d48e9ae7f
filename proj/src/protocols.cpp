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

#include "qndsim/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qndsim/error.hpp"

namespace qndsim {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kEpsilon0 = 8.8541878128e-12;  // F/m

ProtocolOutcome herald(const FockState &pre_detection, std::span<const DetectorSignature> signatures,
                       FockState target) {
    Conditioned c = condition_any(pre_detection, signatures);
    ProtocolOutcome out;
    out.success_probability = c.probability;
    out.target = std::move(target);
    if (c.probability > 0.0) {
        out.conditional_output = c.output.renormalized();
        out.fidelity = fidelity(out.conditional_output, out.target);
    } else {
        out.conditional_output = c.output;
    }
    return out;
}

ProtocolOutcome herald(const FockState &pre_detection, const DetectorSignature &signature, FockState target) {
    return herald(pre_detection, std::span<const DetectorSignature>(&signature, 1), std::move(target));
}

void check_transmission(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("probe transmission must lie strictly between 0 and 1, got " + std::to_string(t));
    }
}

ModeTransform polarization_encoder(const PolarizationAngle &theta, const std::string &spatial) {
    Eigen::MatrixXcd u(2, 2);
    PolarizationAngle perp = theta.orthogonal();
    u << theta.alpha, theta.beta, perp.alpha, perp.beta;
    return ModeTransform({channel(spatial + "~theta"), channel(spatial + "~perp")}, polarized(spatial), std::move(u));
}

FockState polarized_one_photon(const PolarizationAngle &theta, const std::string &spatial, int n_max) {
    return polarized_input_state(NumberInput({}, 1.0, {}), theta, spatial, n_max);
}

}  // namespace

NumberInput::NumberInput(Complex c0_, Complex c1_, Complex c2_) : c0(c0_), c1(c1_), c2(c2_) {
    double total = std::norm(c0) + std::norm(c1) + std::norm(c2);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw DomainError("input coefficients are not normalized (sum |c_k|^2 = " + std::to_string(total) + ")");
    }
}

NumberInput NumberInput::normalized(Complex c0, Complex c1, Complex c2) {
    double n = std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
    if (n == 0.0) {
        throw DomainError("input coefficients are all zero");
    }
    return NumberInput(c0 / n, c1 / n, c2 / n);
}

NumberInput NumberInput::from_gamma(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw DomainError("gamma must be a finite non-negative number");
    }
    double c1 = 1.0 / std::sqrt(1.0 + gamma);
    return NumberInput({}, c1, std::sqrt(gamma) * c1);
}

double NumberInput::gamma() const {
    double p1 = std::norm(c1);
    if (p1 == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::norm(c2) / p1;
}

PolarizationAngle::PolarizationAngle(Complex alpha_, Complex beta_) : alpha(alpha_), beta(beta_) {
    double total = std::norm(alpha) + std::norm(beta);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw DomainError("polarization is not normalized (|alpha|^2 + |beta|^2 = " + std::to_string(total) + ")");
    }
}

PolarizationAngle PolarizationAngle::horizontal() {
    return {1.0, 0.0};
}

PolarizationAngle PolarizationAngle::diagonal() {
    return {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
}

PolarizationAngle PolarizationAngle::from_bloch(double polar, double azimuth) {
    return {std::cos(polar / 2), std::polar(std::sin(polar / 2), azimuth)};
}

PolarizationAngle PolarizationAngle::orthogonal() const {
    return {-std::conj(beta), std::conj(alpha)};
}

PdcSource::PdcSource(double eps) : epsilon(eps) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("PDC epsilon must lie in (0, 1)");
    }
}

PdcSource PdcSource::from_pair_probability(double p_pdc) {
    if (!(p_pdc > 0.0 && p_pdc < 1.0)) {
        throw DomainError("pair probability must lie in (0, 1)");
    }
    return PdcSource(std::sqrt(p_pdc));
}

ModeTransform number_qnd_network(double transmission) {
    const ModeId a = channel("a"), b = channel("b"), c = channel("c"), d = channel("d");
    ModeTransform net = beam_splitter({0.5, false}, c, d);
    net = compose(net, beam_splitter({transmission, true}, a, c));
    net = compose(net, beam_splitter({transmission, true}, b, d));
    std::vector<ModeId> order{a, b, c, d};
    return net.reordered(order, order);
}

ModeTransform pol_qnd_network() {
    const double s3 = std::numbers::sqrt3;
    const double r3 = 1.0 / 3.0;
    const double r32 = 1.0 / (3.0 * std::numbers::sqrt2);
    const double r6 = 1.0 / std::sqrt(6.0);
    Eigen::MatrixXcd u(6, 6);
    // Columns: a'.H, a'.V, c', d', e', f'.
    u.row(0) << r3, 0, -s3 * r3, s3 * r3, -r3, r3;                  // a.H
    u.row(1) << 0, r3, -s3 * r3, -s3 * r3, -r3, -r3;                // a.V
    u.row(2) << 0, 2 * r32, s3 * r32, s3 * r32, -2 * r32, -2 * r32;  // c (V probe)
    u.row(3) << -2 * r32, 0, -s3 * r32, s3 * r32, 2 * r32, -2 * r32;  // d (H probe)
    u.row(4) << 0, 2 * r6, 0, 0, r6, r6;                            // e (V probe)
    u.row(5) << -2 * r6, 0, 0, 0, -r6, r6;                          // f (H probe)
    std::vector<ModeId> ids{channel_h("a"), channel_v("a"), channel("c"), channel("d"), channel("e"), channel("f")};
    return ModeTransform(ids, ids, std::move(u));
}

FockState number_input_state(const NumberInput &input, const ModeId &id, int n_max) {
    FockState::AmplitudeMap amps{{{0}, input.c0}, {{1}, input.c1}, {{2}, input.c2}};
    return FockState({id}, std::move(amps), n_max);
}

FockState polarized_input_state(const NumberInput &input, const PolarizationAngle &theta, const std::string &spatial,
                                int n_max) {
    ModeTransform encoder = polarization_encoder(theta, spatial);
    FockState single = number_input_state(input, encoder.inputs()[0], n_max);
    FockState with_perp = tensor(single, FockState::vacuum({encoder.inputs()[1]}, n_max));
    return apply(encoder, with_perp);
}

FockState pdc_state(const PdcSource &src, const std::string &spatial1, const std::string &spatial2, int n_max) {
    std::vector<ModeId> ids{channel_h(spatial1), channel_v(spatial1), channel_h(spatial2), channel_v(spatial2)};
    const double eps = src.epsilon;
    FockState::AmplitudeMap amps{
        {{0, 0, 0, 0}, 1.0 - eps * eps},
        {{1, 0, 0, 1}, eps / std::numbers::sqrt2},
        {{0, 1, 1, 0}, -eps / std::numbers::sqrt2},
    };
    return FockState(std::move(ids), std::move(amps), n_max).normalized();
}

FockState pdc_pair_state(const PdcSource &src, const ModeId &m1, const ModeId &m2, int n_max) {
    const double eps = src.epsilon;
    FockState::AmplitudeMap amps{{{0, 0}, 1.0 - eps * eps}, {{1, 1}, eps}};
    return FockState({m1, m2}, std::move(amps), n_max).normalized();
}

namespace {

ProtocolOutcome run_number_device(const FockState &signal, const FockState &probes, double transmission,
                                  const DetectorModel &det) {
    det.validate();
    check_transmission(transmission);
    FockState state = tensor(tensor(signal, FockState::vacuum({channel("b")}, signal.n_max())), probes);
    FockState out = apply(number_qnd_network(transmission), state);
    DetectorSignature sig;
    sig.add(channel("a"), 0, det).add(channel("c"), 1, det).add(channel("d"), 1, det);
    return herald(out, sig, FockState::basis({channel("b")}, {1}, out.n_max()));
}

}  // namespace

ProtocolOutcome number_qnd(const NumberInput &input, double transmission, const DetectorModel &det) {
    // Two signal plus two probe photons can pile into one channel.
    constexpr int n_max = 4;
    FockState signal = number_input_state(input, channel("a"), n_max);
    FockState probes = FockState::basis({channel("c"), channel("d")}, {1, 1}, n_max);
    return run_number_device(signal, probes, transmission, det);
}

ProtocolOutcome number_qnd_pdc_probes(const NumberInput &input, double transmission, const DetectorModel &det,
                                      const PdcSource &src) {
    constexpr int n_max = 4;
    FockState signal = number_input_state(input, channel("a"), n_max);
    FockState probes = pdc_pair_state(src, channel("c"), channel("d"), n_max);
    return run_number_device(signal, probes, transmission, det);
}

ProtocolOutcome pol_qnd(const NumberInput &input, const PolarizationAngle &theta, const DetectorModel &det) {
    det.validate();
    constexpr int n_max = 6;
    FockState signal = polarized_input_state(input, theta, "a", n_max);
    FockState probes =
        FockState::basis({channel("c"), channel("d"), channel("e"), channel("f")}, {1, 1, 1, 1}, n_max);
    FockState out = apply(pol_qnd_network(), tensor(signal, probes));
    DetectorSignature sig;
    for (const char *m : {"c", "d", "e", "f"}) {
        sig.add(channel(m), 1, det);
    }
    return herald(out, sig, polarized_one_photon(theta, "a", n_max));
}

double pol_fidelity_approx(double gamma, double efficiency) {
    const double x = 1.0 - efficiency;
    return (1.0 + 0.93 * gamma * x) / (1.0 + (0.12 + 1.22 * gamma) * x + 0.93 * gamma * x * x);
}

ProtocolOutcome teleport_pol_qnd(const NumberInput &input, const PolarizationAngle &theta, const PdcSource &src) {
    constexpr int n_max = 4;
    FockState signal = polarized_input_state(input, theta, "in", n_max);
    FockState pair = pdc_state(src, "p", "o", n_max);
    FockState state = tensor(signal, pair);

    ModeTransform bell = compose(beam_splitter({0.5, false}, channel_h("in"), channel_h("p")),
                                 beam_splitter({0.5, false}, channel_v("in"), channel_v("p")));
    FockState out = apply_local(bell, state);

    const DetectorModel ideal = DetectorModel::ideal();
    std::vector<DetectorSignature> signatures;
    for (const auto &d1 : polarization_blind_events("in", 1, ideal)) {
        for (const auto &d2 : polarization_blind_events("p", 1, ideal)) {
            DetectorSignature sig;
            sig.events = d1;
            sig.events.insert(sig.events.end(), d2.begin(), d2.end());
            signatures.push_back(std::move(sig));
        }
    }
    return herald(out, signatures, polarized_one_photon(theta, "o", n_max));
}

ProtocolOutcome teleport_number_qnd(const NumberInput &input, const PdcSource &src) {
    return teleport_pol_qnd(input, PolarizationAngle::horizontal(), src);
}

KerrQndOutcome kerr_qnd(const NumberInput &input, double tau, const DetectorModel &det) {
    det.validate();
    constexpr int n_max = kDefaultNMax;
    const ModeId arm1 = channel("p1"), arm2 = channel("p2"), signal = channel("b");
    FockState state = tensor(FockState::basis({arm1, arm2}, {1, 0}, n_max), number_input_state(input, signal, n_max));

    // With tau = 0 the probe always leaves through arm 1 (D1).
    state = apply_local(beam_splitter({0.5, false}, arm1, arm2), state);
    state = kerr_gate(KerrGateSpec{tau}, arm1, signal, state);
    state = apply_local(beam_splitter({0.5, true}, arm1, arm2), state);

    DetectorSignature d2_click;
    d2_click.add(arm1, 0, det).add(arm2, 1, det);
    DetectorSignature d1_click;
    d1_click.add(arm1, 1, det).add(arm2, 0, det);
    return KerrQndOutcome{
        herald(state, d2_click, FockState::basis({signal}, {1}, n_max)),
        herald(state, d1_click, FockState::basis({signal}, {0}, n_max)),
    };
}

double kerr_tau(const KerrStrengthParams &p) {
    if (!(p.omega > 0 && p.delta_t > 0 && p.chi3 > 0 && p.volume > 0)) {
        throw DomainError("Kerr parameters must all be positive");
    }
    return kHbar * p.omega * p.omega * p.delta_t * p.chi3 / (4.0 * kEpsilon0 * p.volume);
}

double noon_bound(int n) {
    if (n < 1) {
        throw DomainError("noon state photon number must be at least 1");
    }
    return std::numbers::pi / (2.0 * n);
}

}  // namespace qndsim
