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

// Photodetection as Fock-diagonal POVMs and post-selection on detector
// signatures.
//
// Loss is modelled as a beam splitter of amplitude transmission eta in
// front of an ideal counter. `efficiency` is the detection probability of a
// single photon, i.e. eta^2, and the POVM element for reading k is
//     E_k = sum_{n >= k} C(n, k) eta^{2k} (1 - eta^2)^{n-k} |n><n|.
// Dark counts are not modelled.

#ifndef QNDSIM_DETECTION_HPP
#define QNDSIM_DETECTION_HPP

#include <span>
#include <vector>

#include "qndsim/fock.hpp"

namespace qndsim {

struct DetectorModel {
    /// Single-photon detection probability eta^2, in [0, 1].
    double efficiency = 1.0;
    /// false: on/off detector whose readings are 0 (no click) and 1 (click).
    bool resolves_photon_number = true;

    static DetectorModel ideal() {
        return {};
    }
    void validate() const;
};

class PovmElement {
   public:
    PovmElement(int reading, std::vector<double> coefficients);

    int reading() const {
        return reading_;
    }
    /// <n|E|n>; zero beyond the stored range.
    double coefficient(int n) const;
    int n_max() const {
        return static_cast<int>(coefficients_.size()) - 1;
    }
    const std::vector<double> &coefficients() const {
        return coefficients_;
    }

   private:
    int reading_;
    std::vector<double> coefficients_;  // index n = 0 .. n_max
};

/// Throws DomainError when `k > n_max`, or k > 1 for an on/off detector.
PovmElement povm_element(int k, const DetectorModel &det, int n_max);

struct DetectionEvent {
    ModeId channel;
    int reading;
    DetectorModel detector;
};

/// Readings on a subset of channels; every other channel is kept.
struct DetectorSignature {
    std::vector<DetectionEvent> events;

    DetectorSignature &add(ModeId id, int reading, DetectorModel det = DetectorModel::ideal()) {
        events.push_back({std::move(id), reading, det});
        return *this;
    }
};

struct Conditioned {
    /// Tr[E_n |Psi><Psi|].
    double probability;
    /// Unnormalized conditional ensemble on the kept channels; its weights
    /// sum to `probability`.
    MixedState output;
};

Conditioned condition(const FockState &state, const DetectorSignature &signature);
/// Sum over mutually exclusive signatures sharing the same detected channels.
Conditioned condition_any(const FockState &state, std::span<const DetectorSignature> signatures);

/// Every way to split `reading` photons between the H and V channels of a
/// polarized spatial mode, for a detector blind to polarization.
std::vector<std::vector<DetectionEvent>> polarization_blind_events(const std::string &spatial, int reading,
                                                                   const DetectorModel &det);

/// Tr[rho |target><target|] for `rho` scaled to unit weight.
/// Throws DomainError for a zero-weight ensemble.
double fidelity(const MixedState &rho, const FockState &target);

/// Closed-form output fidelity of the single-photon number QND device,
///     F = (2 + 5 g x) / (2 + x (2 + 5 g + 12 g x)),   x = 1 - efficiency,
/// with g = |c2|^2 / |c1|^2 and efficiency = eta^2.
double closed_form_fidelity(double gamma, double efficiency);

}  // namespace qndsim

#endif
