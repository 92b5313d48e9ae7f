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

#include "qndsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qndsim/circuit.hpp"
#include "qndsim/error.hpp"
#include "qndsim/protocols.hpp"

namespace qndsim {

namespace {

constexpr int kDigits = 12;

/// Bad command-line values; mapped to exit code 2.
class UsageError : public Error {
   public:
    using Error::Error;
};

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(kDigits) << x;
    return s.str();
}

std::string fmt(Complex z) {
    std::ostringstream s;
    s << std::setprecision(kDigits) << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
    return s.str();
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double to_double(const std::string &text, const std::string &what) {
    try {
        Complex z = parse_complex(text);
        if (z.imag() != 0.0) {
            throw UsageError(what + " must be real");
        }
        return z.real();
    } catch (const DomainError &) {
        throw UsageError("invalid " + what + ": '" + text + "'");
    }
}

std::string channel_list(const std::vector<ModeId> &ids) {
    std::string s = "[";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        s += (k ? ", " : "") + ids[k].str();
    }
    return s + "]";
}

std::string ket_string(const FockState &state) {
    if (state.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[occ, amp] : state.amplitudes()) {
        if (!s.empty()) {
            s += " + ";
        }
        s += "(" + fmt(amp) + ")|";
        for (std::size_t k = 0; k < occ.size(); ++k) {
            s += (k ? "," : "") + std::to_string(occ[k]);
        }
        s += ">";
    }
    return s;
}

nlohmann::json ket_json(const FockState &state) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[occ, amp] : state.amplitudes()) {
        terms.push_back({{"occupation", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return terms;
}

void report(const std::string &label, const ProtocolOutcome &o, std::ostream &out) {
    out << label << "success_probability: " << fmt(o.success_probability) << "\n";
    out << label << "fidelity: " << fmt(o.fidelity) << "\n";
    out << label << "output_channels: " << channel_list(o.conditional_output.channels()) << "\n";
    out << label << "target: " << ket_string(o.target) << "\n";
    std::size_t k = 0;
    for (const auto &b : o.conditional_output.branches()) {
        out << label << "branch " << ++k << ": weight " << fmt(b.weight) << "  " << ket_string(b.state) << "\n";
    }
}

nlohmann::json report_json(const ProtocolOutcome &o) {
    nlohmann::json j;
    j["success_probability"] = o.success_probability;
    j["fidelity"] = o.fidelity;
    std::vector<std::string> names;
    for (const auto &id : o.conditional_output.channels()) {
        names.push_back(id.str());
    }
    j["output_channels"] = names;
    j["branches"] = nlohmann::json::array();
    for (const auto &b : o.conditional_output.branches()) {
        j["branches"].push_back({{"weight", b.weight}, {"state", ket_json(b.state)}});
    }
    return j;
}

struct RunOptions {
    std::string protocol;
    std::string input;
    std::optional<double> gamma;
    double transmission = 0.5;
    double eta2 = 1.0;
    bool on_off = false;
    double theta = std::numbers::pi / 4;
    double p_pdc = 1e-4;
    double tau = std::numbers::pi;
    bool json = false;
};

NumberInput number_input(const RunOptions &o) {
    if (o.gamma && !o.input.empty()) {
        throw UsageError("--input and --gamma are mutually exclusive");
    }
    if (o.gamma) {
        if (!(*o.gamma >= 0.0)) {
            throw UsageError("--gamma must be non-negative");
        }
        return NumberInput::from_gamma(*o.gamma);
    }
    if (o.input.empty()) {
        return NumberInput({}, 1.0, {});
    }
    auto parts = split(o.input, ',');
    if (parts.size() != 3) {
        throw UsageError("--input needs three amplitudes c0,c1,c2");
    }
    std::array<Complex, 3> c{};
    for (std::size_t k = 0; k < 3; ++k) {
        try {
            c[k] = parse_complex(parts[k]);
        } catch (const DomainError &) {
            throw UsageError("invalid amplitude '" + parts[k] + "'");
        }
    }
    try {
        return NumberInput::normalized(c[0], c[1], c[2]);
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    }
}

PolarizationAngle linear_polarization(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

void run_protocol(const RunOptions &o, std::ostream &out) {
    DetectorModel det{o.eta2, !o.on_off};
    if (!(o.eta2 >= 0.0 && o.eta2 <= 1.0)) {
        throw UsageError("--eta2 must lie in [0, 1]");
    }
    const NumberInput input = number_input(o);
    std::vector<std::pair<std::string, ProtocolOutcome>> outcomes;
    if (o.protocol == "number") {
        outcomes.emplace_back("", number_qnd(input, o.transmission, det));
    } else if (o.protocol == "number-pdc") {
        outcomes.emplace_back("", number_qnd_pdc_probes(input, o.transmission, det,
                                                        PdcSource::from_pair_probability(o.p_pdc)));
    } else if (o.protocol == "pol") {
        outcomes.emplace_back("", pol_qnd(input, linear_polarization(o.theta), det));
    } else if (o.protocol == "teleport-pol") {
        outcomes.emplace_back(
            "", teleport_pol_qnd(input, linear_polarization(o.theta), PdcSource::from_pair_probability(o.p_pdc)));
    } else if (o.protocol == "teleport-number") {
        outcomes.emplace_back("", teleport_number_qnd(input, PdcSource::from_pair_probability(o.p_pdc)));
    } else if (o.protocol == "kerr") {
        KerrQndOutcome k = kerr_qnd(input, o.tau, det);
        outcomes.emplace_back("D2.", k.one_photon);
        outcomes.emplace_back("D1.", k.no_photon);
    } else {
        throw UsageError("unknown protocol '" + o.protocol + "'");
    }

    if (o.json) {
        nlohmann::json j;
        j["protocol"] = o.protocol;
        for (const auto &[label, outcome] : outcomes) {
            if (label.empty()) {
                j.update(report_json(outcome));
            } else {
                j[label.substr(0, label.size() - 1)] = report_json(outcome);
            }
        }
        out << j.dump(2) << "\n";
        return;
    }
    out << "protocol: " << o.protocol << "\n";
    for (const auto &[label, outcome] : outcomes) {
        report(label, outcome, out);
    }
}

/// "1,0,1,0" or "1,0,1,0*0.5+0.5i".
std::pair<Occupation, Complex> parse_state_term(const std::string &text) {
    auto star = text.find('*');
    Complex amp = 1.0;
    if (star != std::string::npos) {
        try {
            amp = parse_complex(text.substr(star + 1));
        } catch (const DomainError &) {
            throw UsageError("invalid amplitude in --state '" + text + "'");
        }
    }
    Occupation occ;
    for (const auto &p : split(text.substr(0, star), ',')) {
        double n = to_double(p, "occupation");
        if (n < 0 || n != std::floor(n)) {
            throw UsageError("occupations must be non-negative integers: '" + text + "'");
        }
        occ.push_back(static_cast<int>(n));
    }
    return {occ, amp};
}

void run_circuit(const std::string &path, const std::vector<std::string> &terms, std::ostream &out) {
    ModeTransform t = load_circuit(path);
    out << "channels: " << channel_list(t.inputs()) << "\n";
    out << "matrix (rows: inputs, columns: outputs):\n";
    const auto &u = t.matrix();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            out << (c ? "  " : "  ") << fmt(u(r, c));
        }
        out << "\n";
    }
    out << "unitarity_defect: " << fmt(t.unitarity_defect()) << "\n";
    if (terms.empty()) {
        return;
    }
    FockState::AmplitudeMap amps;
    int n_max = 1;
    for (const auto &term : terms) {
        auto [occ, amp] = parse_state_term(term);
        if (occ.size() != t.size()) {
            throw UsageError("--state '" + term + "' has " + std::to_string(occ.size()) + " occupations, circuit has " +
                             std::to_string(t.size()) + " channels");
        }
        n_max = std::max(n_max, total_photons(occ));
        amps[occ] += amp;
    }
    FockState in(t.inputs(), std::move(amps), n_max);
    if (in.norm() == 0.0) {
        throw UsageError("--state amplitudes cancel to zero");
    }
    in = in.normalized();
    FockState result = apply(t, in);
    out << "input: " << ket_string(in) << "\n";
    out << "output: " << ket_string(result) << "\n";
    out << "output_norm: " << fmt(result.norm()) << "\n";
}

int emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        throw Error("cannot write " + path);
    }
    file << text;
    return 0;
}

}  // namespace

void SweepSpec::validate() const {
    if (!(eta2_start >= 0.0 && eta2_stop <= 1.0 && eta2_start < eta2_stop)) {
        throw DomainError("eta2 range must satisfy 0 <= start < stop <= 1");
    }
    if (eta2_steps < 2) {
        throw DomainError("eta2 range needs at least 2 steps");
    }
    if (gammas.empty()) {
        throw DomainError("gamma list is empty");
    }
    for (double g : gammas) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw DomainError("gamma values must be finite and non-negative");
        }
    }
    if (!(transmission > 0.0 && transmission < 1.0)) {
        throw DomainError("transmission must lie in (0, 1)");
    }
}

SweepSpec parse_eta2_range(const std::string &text, SweepSpec spec) {
    auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw DomainError("expected start:stop:steps, got '" + text + "'");
    }
    spec.eta2_start = to_double(parts[0], "eta2 start");
    spec.eta2_stop = to_double(parts[1], "eta2 stop");
    double steps = to_double(parts[2], "eta2 steps");
    if (steps != std::floor(steps) || steps > 1e7) {
        throw DomainError("eta2 steps must be an integer");
    }
    spec.eta2_steps = static_cast<int>(steps);
    return spec;
}

void write_sweep_csv(const SweepSpec &spec, std::ostream &out) {
    spec.validate();
    const bool pol = spec.protocol == SweepProtocol::Pol;
    const double theta = spec.theta.value_or(std::numbers::pi / 4);
    out << "protocol,eta2,gamma,theta,success_prob,fidelity_sim,fidelity_closed,abs_diff\n";
    std::vector<double> gammas = spec.gammas;
    std::stable_sort(gammas.begin(), gammas.end());
    for (double gamma : gammas) {
        NumberInput input = NumberInput::from_gamma(gamma);
        for (int k = 0; k < spec.eta2_steps; ++k) {
            double eta2 = k + 1 == spec.eta2_steps
                              ? spec.eta2_stop
                              : spec.eta2_start + (spec.eta2_stop - spec.eta2_start) * k / (spec.eta2_steps - 1);
            DetectorModel det{eta2, true};
            ProtocolOutcome o;
            double closed = 0.0;
            if (pol) {
                o = pol_qnd(input, {std::cos(theta), std::sin(theta)}, det);
                closed = pol_fidelity_approx(gamma, eta2);
            } else {
                o = number_qnd(input, spec.transmission, det);
                closed = closed_form_fidelity(gamma, eta2);
            }
            out << (pol ? "pol" : "number") << ',' << fmt(eta2) << ',' << fmt(gamma) << ','
                << (pol ? fmt(theta) : std::string()) << ',' << fmt(o.success_probability) << ',' << fmt(o.fidelity)
                << ',' << fmt(closed) << ',' << fmt(std::abs(o.fidelity - closed)) << '\n';
        }
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Linear-optics single-photon QND simulator", "qndsim"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "Write results to this file instead of stdout");

    auto *sweep = app.add_subcommand("sweep", "Fidelity and success probability over an eta^2 x gamma grid (CSV)");
    std::string sweep_protocol = "number";
    std::string eta2_range = "0.5:1.0:51";
    std::vector<double> gammas{0.0, 0.1, 1.0, 10.0};
    std::optional<double> sweep_theta;
    double sweep_t = 0.5;
    sweep->add_option("--protocol", sweep_protocol, "number or pol")->check(CLI::IsMember({"number", "pol"}));
    sweep->add_option("--eta2", eta2_range, "start:stop:steps");
    sweep->add_option("--gamma", gammas, "Comma-separated |c2|^2/|c1|^2 values")->delimiter(',');
    sweep->add_option("--theta", sweep_theta, "Linear polarization angle in radians (pol)");
    sweep->add_option("--T", sweep_t, "Probe splitter transmission (number)");
    sweep->add_option("--out", out_path, "Write results to this file instead of stdout");

    auto *run = app.add_subcommand("run", "Run one protocol and report the heralded output");
    RunOptions ro;
    KerrStrengthParams kp{};
    int noon_n = 1;
    run->add_option("protocol", ro.protocol,
                    "number | number-pdc | pol | teleport-pol | teleport-number | kerr | kerr-tau | noon-bound")
        ->required();
    run->add_option("--input", ro.input, "Signal amplitudes c0,c1,c2 (complex literals, rescaled to unit norm)");
    run->add_option("--gamma", ro.gamma, "Signal with c0 = 0 and |c2|^2/|c1|^2 = gamma");
    run->add_option("--T", ro.transmission, "Probe splitter transmission");
    run->add_option("--eta2", ro.eta2, "Detector efficiency eta^2");
    run->add_flag("--on-off", ro.on_off, "Use on/off detectors instead of photon counters");
    run->add_option("--theta", ro.theta, "Linear polarization angle in radians");
    run->add_option("--ppdc", ro.p_pdc, "Pair probability of the down-converter");
    run->add_option("--tau", ro.tau, "Kerr phase per photon pair");
    run->add_option("--omega", kp.omega, "Angular frequency (rad/s)");
    run->add_option("--dt", kp.delta_t, "Transit time (s)");
    run->add_option("--chi3", kp.chi3, "chi(3) (m^2/V^2)");
    run->add_option("--volume", kp.volume, "Mode volume (m^3)");
    run->add_option("--n", noon_n, "Noon state photon number");
    run->add_flag("--json", ro.json, "Machine-readable JSON report");
    run->add_option("--out", out_path, "Write results to this file instead of stdout");

    auto *circuit = app.add_subcommand("circuit", "Print a circuit's mode matrix and optionally evolve a state");
    std::string circuit_path;
    std::vector<std::string> state_terms;
    circuit->add_option("file", circuit_path, "Circuit description file")->required();
    circuit->add_option("--state", state_terms, "Input term occ1,occ2,...[*amplitude]; repeatable");
    circuit->add_option("--out", out_path, "Write results to this file instead of stdout");

    auto *tau = app.add_subcommand("kerr-tau", "Single-photon Kerr phase from material parameters");
    KerrStrengthParams tp{};
    tau->add_option("--omega", tp.omega, "Angular frequency (rad/s)")->required();
    tau->add_option("--dt", tp.delta_t, "Transit time (s)")->required();
    tau->add_option("--chi3", tp.chi3, "chi(3) (m^2/V^2)")->required();
    tau->add_option("--volume", tp.volume, "Mode volume (m^3)")->required();
    tau->add_option("--out", out_path, "Write results to this file instead of stdout");

    auto *noon = app.add_subcommand("noon-bound", "Phase resolution pi/(2N) of an N-photon noon state");
    int noon_cmd_n = 1;
    noon->add_option("--n", noon_cmd_n, "Photon number")->required();
    noon->add_option("--out", out_path, "Write results to this file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::ostringstream text;
        if (*sweep) {
            SweepSpec spec;
            try {
                spec = parse_eta2_range(eta2_range);
                spec.protocol = sweep_protocol == "pol" ? SweepProtocol::Pol : SweepProtocol::Number;
                spec.gammas = gammas;
                spec.theta = sweep_theta;
                spec.transmission = sweep_t;
                spec.validate();
            } catch (const DomainError &e) {
                throw UsageError(e.what());
            }
            write_sweep_csv(spec, text);
        } else if (*run) {
            if (ro.protocol == "kerr-tau") {
                text << fmt(kerr_tau(kp)) << "\n";
            } else if (ro.protocol == "noon-bound") {
                text << fmt(noon_bound(noon_n)) << "\n";
            } else {
                run_protocol(ro, text);
            }
        } else if (*circuit) {
            run_circuit(circuit_path, state_terms, text);
        } else if (*tau) {
            text << fmt(kerr_tau(tp)) << "\n";
        } else if (*noon) {
            text << fmt(noon_bound(noon_cmd_n)) << "\n";
        }
        return emit(text.str(), out_path, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qndsim
