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

#include "qndsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qndsim/error.hpp"

namespace qndsim {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double c = 1.0;
    for (int j = 1; j <= k; ++j) {
        c = c * (n - k + j) / j;
    }
    return c;
}

std::vector<ModeId> detected_channels(const DetectorSignature &sig) {
    std::vector<ModeId> ids;
    for (const auto &e : sig.events) {
        ids.push_back(e.channel);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

void DetectorModel::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw DomainError("detector efficiency must lie in [0, 1], got " + std::to_string(efficiency));
    }
}

PovmElement::PovmElement(int reading, std::vector<double> coefficients)
    : reading_(reading), coefficients_(std::move(coefficients)) {
    if (reading_ < 0) {
        throw DomainError("negative detector reading");
    }
    for (double d : coefficients_) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw DomainError("POVM coefficient outside [0, 1]");
        }
    }
}

double PovmElement::coefficient(int n) const {
    if (n < 0 || n >= static_cast<int>(coefficients_.size())) {
        return 0.0;
    }
    return coefficients_[static_cast<std::size_t>(n)];
}

PovmElement povm_element(int k, const DetectorModel &det, int n_max) {
    det.validate();
    if (k < 0 || k > n_max) {
        throw DomainError("reading " + std::to_string(k) + " outside 0.." + std::to_string(n_max));
    }
    const double eff = det.efficiency;
    const double loss = 1.0 - eff;
    std::vector<double> d(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (!det.resolves_photon_number) {
        if (k > 1) {
            throw DomainError("on/off detector has readings 0 and 1 only");
        }
        for (int n = 0; n <= n_max; ++n) {
            double none = std::pow(loss, n);
            d[static_cast<std::size_t>(n)] = k == 0 ? none : 1.0 - none;
        }
        return PovmElement(k, std::move(d));
    }
    for (int n = k; n <= n_max; ++n) {
        d[static_cast<std::size_t>(n)] = binomial(n, k) * std::pow(eff, k) * std::pow(loss, n - k);
    }
    return PovmElement(k, std::move(d));
}

Conditioned condition(const FockState &state, const DetectorSignature &signature) {
    std::vector<std::size_t> det_idx;
    std::vector<PovmElement> povms;
    std::set<ModeId> seen;
    for (const auto &e : signature.events) {
        if (!seen.insert(e.channel).second) {
            throw ModeError("channel " + e.channel.str() + " detected twice");
        }
        det_idx.push_back(state.index_of(e.channel));
        // Readings above the truncation can never occur.
        povms.push_back(e.reading > state.n_max() ? PovmElement(e.reading, {})
                                                  : povm_element(e.reading, e.detector, state.n_max()));
    }
    std::vector<std::size_t> kept_idx;
    std::vector<ModeId> kept;
    for (std::size_t k = 0; k < state.num_channels(); ++k) {
        if (std::find(det_idx.begin(), det_idx.end(), k) == det_idx.end()) {
            kept_idx.push_back(k);
            kept.push_back(state.channels()[k]);
        }
    }

    std::map<Occupation, std::pair<double, FockState::AmplitudeMap>> groups;
    for (const auto &[occ, amp] : state.amplitudes()) {
        double w = 1.0;
        Occupation pattern;
        for (std::size_t e = 0; e < det_idx.size(); ++e) {
            int n = occ[det_idx[e]];
            w *= povms[e].coefficient(n);
            pattern.push_back(n);
        }
        if (w == 0.0) {
            continue;
        }
        Occupation rest;
        for (auto k : kept_idx) {
            rest.push_back(occ[k]);
        }
        auto &group = groups[std::move(pattern)];
        group.first = w;
        group.second[std::move(rest)] += amp;
    }

    Conditioned result{0.0, MixedState(kept, state.n_max())};
    for (auto &[pattern, group] : groups) {
        FockState piece(kept, std::move(group.second), state.n_max());
        double weight = group.first * piece.norm_squared();
        result.output.add(weight, piece);
    }
    result.probability = result.output.total_weight();
    return result;
}

Conditioned condition_any(const FockState &state, std::span<const DetectorSignature> signatures) {
    if (signatures.empty()) {
        throw ModeError("condition_any needs at least one signature");
    }
    Conditioned total = condition(state, signatures.front());
    const auto reference = detected_channels(signatures.front());
    for (const auto &sig : signatures.subspan(1)) {
        if (detected_channels(sig) != reference) {
            throw ModeError("condition_any: signatures detect different channels");
        }
        total.output.append(condition(state, sig).output);
    }
    total.probability = total.output.total_weight();
    return total;
}

std::vector<std::vector<DetectionEvent>> polarization_blind_events(const std::string &spatial, int reading,
                                                                   const DetectorModel &det) {
    std::vector<std::vector<DetectionEvent>> splits;
    if (!det.resolves_photon_number) {
        if (reading == 0) {
            splits.push_back({{channel_h(spatial), 0, det}, {channel_v(spatial), 0, det}});
        } else if (reading == 1) {
            for (auto [h, v] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
                splits.push_back({{channel_h(spatial), h, det}, {channel_v(spatial), v, det}});
            }
        } else {
            throw DomainError("on/off detector has readings 0 and 1 only");
        }
        return splits;
    }
    for (int h = 0; h <= reading; ++h) {
        splits.push_back({{channel_h(spatial), h, det}, {channel_v(spatial), reading - h, det}});
    }
    return splits;
}

double fidelity(const MixedState &rho, const FockState &target) {
    double total = rho.total_weight();
    if (!(total > 0.0)) {
        throw DomainError("fidelity of a zero-weight ensemble");
    }
    FockState t = target.reordered(rho.channels());
    double overlap = 0.0;
    for (const auto &b : rho.branches()) {
        overlap += b.weight * std::norm(inner_product(t, b.state));
    }
    return overlap / total;
}

double closed_form_fidelity(double gamma, double efficiency) {
    const double x = 1.0 - efficiency;
    return (2.0 + 5.0 * x * gamma) / (2.0 + x * (2.0 + 5.0 * gamma + 12.0 * gamma * x));
}

}  // namespace qndsim
