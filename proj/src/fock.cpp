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

#include "qndsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qndsim/error.hpp"

namespace qndsim {

namespace {

void validate_channels(const std::vector<ModeId> &channels) {
    std::set<ModeId> seen;
    std::map<std::string, int> pol_mask;  // bit0 None, bit1 H, bit2 V
    for (const auto &id : channels) {
        if (id.spatial.empty()) {
            throw ModeError("empty mode label");
        }
        if (!seen.insert(id).second) {
            throw ModeError("duplicate channel " + id.str());
        }
        pol_mask[id.spatial] |= 1 << static_cast<int>(id.pol);
    }
    for (const auto &[spatial, mask] : pol_mask) {
        if (mask != 1 && mask != 6) {
            throw ModeError("mode '" + spatial + "' must expose either one unpolarized channel or the (H, V) pair");
        }
    }
}

void check_occupation(const Occupation &occ, std::size_t size, int n_max) {
    if (occ.size() != size) {
        throw ModeError("occupation vector length " + std::to_string(occ.size()) + " does not match " +
                        std::to_string(size) + " channels");
    }
    for (int n : occ) {
        if (n < 0) {
            throw DomainError("negative photon count");
        }
        if (n > n_max) {
            throw TruncationError("photon count " + std::to_string(n) + " exceeds n_max = " + std::to_string(n_max));
        }
    }
}

void require_same_channels(const FockState &a, const FockState &b, const char *what) {
    if (a.channels() != b.channels()) {
        throw ModeError(std::string(what) + ": channel lists differ");
    }
}

}  // namespace

std::string ModeId::str() const {
    switch (pol) {
        case Polarization::H:
            return spatial + ".H";
        case Polarization::V:
            return spatial + ".V";
        default:
            return spatial;
    }
}

std::vector<ModeId> polarized(const std::string &spatial) {
    return {channel_h(spatial), channel_v(spatial)};
}

int total_photons(const Occupation &occupation) {
    return std::accumulate(occupation.begin(), occupation.end(), 0);
}

FockState::FockState(std::vector<ModeId> channels, int n_max) : channels_(std::move(channels)), n_max_(n_max) {
    if (n_max_ < 0) {
        throw DomainError("n_max must be non-negative");
    }
    validate_channels(channels_);
}

FockState::FockState(std::vector<ModeId> channels, AmplitudeMap amplitudes, int n_max)
    : FockState(std::move(channels), n_max) {
    for (auto &[occ, amp] : amplitudes) {
        if (std::abs(amp) < kPruneTolerance) {
            continue;
        }
        check_occupation(occ, channels_.size(), n_max_);
        amplitudes_.emplace(occ, amp);
    }
}

FockState FockState::vacuum(std::vector<ModeId> channels, int n_max) {
    Occupation zeros(channels.size(), 0);
    return basis(std::move(channels), std::move(zeros), n_max);
}

FockState FockState::basis(std::vector<ModeId> channels, Occupation occupation, int n_max) {
    AmplitudeMap amps;
    amps.emplace(std::move(occupation), Complex{1.0, 0.0});
    return FockState(std::move(channels), std::move(amps), n_max);
}

Complex FockState::amplitude(const Occupation &occupation) const {
    auto it = amplitudes_.find(occupation);
    return it == amplitudes_.end() ? Complex{} : it->second;
}

std::size_t FockState::index_of(const ModeId &id) const {
    auto it = std::find(channels_.begin(), channels_.end(), id);
    if (it == channels_.end()) {
        throw ModeError("unknown channel " + id.str());
    }
    return static_cast<std::size_t>(it - channels_.begin());
}

bool FockState::has_channel(const ModeId &id) const {
    return std::find(channels_.begin(), channels_.end(), id) != channels_.end();
}

double FockState::norm_squared() const {
    double total = 0.0;
    for (const auto &[occ, amp] : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

double FockState::norm() const {
    return std::sqrt(norm_squared());
}

bool FockState::is_normalized(double tolerance) const {
    return std::abs(norm_squared() - 1.0) < tolerance;
}

FockState FockState::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw DomainError("cannot normalize the zero vector");
    }
    return scaled(1.0 / n);
}

FockState FockState::scaled(Complex factor) const {
    AmplitudeMap amps;
    for (const auto &[occ, amp] : amplitudes_) {
        amps.emplace(occ, amp * factor);
    }
    return FockState(channels_, std::move(amps), n_max_);
}

FockState FockState::reordered(std::span<const ModeId> order) const {
    if (order.size() != channels_.size()) {
        throw ModeError("reorder: channel count mismatch");
    }
    std::vector<std::size_t> source;
    source.reserve(order.size());
    for (const auto &id : order) {
        source.push_back(index_of(id));
    }
    AmplitudeMap amps;
    for (const auto &[occ, amp] : amplitudes_) {
        Occupation permuted(occ.size());
        for (std::size_t k = 0; k < source.size(); ++k) {
            permuted[k] = occ[source[k]];
        }
        amps.emplace(std::move(permuted), amp);
    }
    return FockState(std::vector<ModeId>(order.begin(), order.end()), std::move(amps), n_max_);
}

FockState FockState::with_n_max(int n_max) const {
    return FockState(channels_, amplitudes_, n_max);
}

FockState FockState::operator+(const FockState &other) const {
    require_same_channels(*this, other, "sum");
    AmplitudeMap amps = amplitudes_;
    for (const auto &[occ, amp] : other.amplitudes_) {
        amps[occ] += amp;
    }
    return FockState(channels_, std::move(amps), std::max(n_max_, other.n_max_));
}

FockState operator*(Complex factor, const FockState &state) {
    return state.scaled(factor);
}

MixedState::MixedState(std::vector<ModeId> channels, int n_max) : channels_(std::move(channels)), n_max_(n_max) {
    validate_channels(channels_);
}

MixedState MixedState::from_pure(const FockState &state) {
    MixedState rho(state.channels(), state.n_max());
    rho.add(state.norm_squared(), state);
    return rho;
}

void MixedState::add(double weight, const FockState &state) {
    if (state.channels() != channels_) {
        throw ModeError("mixed state branch has different channels");
    }
    if (weight < 0.0) {
        throw DomainError("negative branch weight");
    }
    if (weight == 0.0 || state.empty()) {
        return;
    }
    branches_.push_back(Branch{weight, state.normalized()});
}

void MixedState::append(const MixedState &other) {
    for (const auto &b : other.branches_) {
        add(b.weight, b.state);
    }
}

double MixedState::total_weight() const {
    double total = 0.0;
    for (const auto &b : branches_) {
        total += b.weight;
    }
    return total;
}

MixedState MixedState::renormalized() const {
    double total = total_weight();
    if (total <= 0.0) {
        throw DomainError("cannot renormalize a zero-weight ensemble");
    }
    MixedState out(channels_, n_max_);
    for (const auto &b : branches_) {
        out.branches_.push_back(Branch{b.weight / total, b.state});
    }
    return out;
}

double MixedState::photon_number_weight(const ModeId &id, int n) const {
    auto it = std::find(channels_.begin(), channels_.end(), id);
    if (it == channels_.end()) {
        throw ModeError("unknown channel " + id.str());
    }
    auto k = static_cast<std::size_t>(it - channels_.begin());
    double total = 0.0;
    for (const auto &b : branches_) {
        for (const auto &[occ, amp] : b.state.amplitudes()) {
            if (occ[k] == n) {
                total += b.weight * std::norm(amp);
            }
        }
    }
    return total;
}

FockState tensor(const FockState &a, const FockState &b) {
    if (a.n_max() != b.n_max()) {
        throw ModeError("tensor: n_max differs (" + std::to_string(a.n_max()) + " vs " + std::to_string(b.n_max()) +
                        ")");
    }
    std::vector<ModeId> channels = a.channels();
    channels.insert(channels.end(), b.channels().begin(), b.channels().end());
    // Validation in the constructor rejects overlapping ids.
    FockState::AmplitudeMap amps;
    for (const auto &[occ_a, amp_a] : a.amplitudes()) {
        for (const auto &[occ_b, amp_b] : b.amplitudes()) {
            Occupation occ = occ_a;
            occ.insert(occ.end(), occ_b.begin(), occ_b.end());
            amps.emplace(std::move(occ), amp_a * amp_b);
        }
    }
    return FockState(std::move(channels), std::move(amps), a.n_max());
}

FockState apply_creation(const FockState &state, const ModeId &id, int power) {
    if (power < 0) {
        throw DomainError("negative ladder power");
    }
    std::size_t k = state.index_of(id);
    FockState::AmplitudeMap amps;
    for (const auto &[occ, amp] : state.amplitudes()) {
        Occupation next = occ;
        double factor = 1.0;
        for (int p = 0; p < power; ++p) {
            ++next[k];
            factor *= std::sqrt(static_cast<double>(next[k]));
        }
        if (next[k] > state.n_max()) {
            throw TruncationError("creation on " + id.str() + " exceeds n_max = " + std::to_string(state.n_max()));
        }
        amps.emplace(std::move(next), amp * factor);
    }
    return FockState(state.channels(), std::move(amps), state.n_max());
}

FockState apply_annihilation(const FockState &state, const ModeId &id, int power) {
    if (power < 0) {
        throw DomainError("negative ladder power");
    }
    std::size_t k = state.index_of(id);
    FockState::AmplitudeMap amps;
    for (const auto &[occ, amp] : state.amplitudes()) {
        if (occ[k] < power) {
            continue;
        }
        Occupation next = occ;
        double factor = 1.0;
        for (int p = 0; p < power; ++p) {
            factor *= std::sqrt(static_cast<double>(next[k]));
            --next[k];
        }
        amps.emplace(std::move(next), amp * factor);
    }
    return FockState(state.channels(), std::move(amps), state.n_max());
}

Complex inner_product(const FockState &a, const FockState &b) {
    require_same_channels(a, b, "inner_product");
    const auto &small = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
    const auto &large = &small == &a ? b : a;
    Complex total{};
    for (const auto &[occ, amp] : small.amplitudes()) {
        Complex other = large.amplitude(occ);
        total += &small == &a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return total;
}

MixedState partial_trace_keep(const MixedState &rho, std::span<const ModeId> keep) {
    if (keep.empty()) {
        throw ModeError("partial_trace_keep: keep list is empty");
    }
    const auto &channels = rho.channels();
    std::vector<std::size_t> kept_idx;
    for (const auto &id : keep) {
        auto it = std::find(channels.begin(), channels.end(), id);
        if (it == channels.end()) {
            throw ModeError("partial_trace_keep: unknown channel " + id.str());
        }
        kept_idx.push_back(static_cast<std::size_t>(it - channels.begin()));
    }
    std::vector<std::size_t> traced_idx;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        if (std::find(kept_idx.begin(), kept_idx.end(), k) == kept_idx.end()) {
            traced_idx.push_back(k);
        }
    }

    std::vector<ModeId> kept_channels(keep.begin(), keep.end());
    MixedState out(kept_channels, rho.n_max());
    for (const auto &branch : rho.branches()) {
        std::map<Occupation, FockState::AmplitudeMap> groups;
        for (const auto &[occ, amp] : branch.state.amplitudes()) {
            Occupation traced, kept;
            for (auto k : traced_idx) {
                traced.push_back(occ[k]);
            }
            for (auto k : kept_idx) {
                kept.push_back(occ[k]);
            }
            groups[std::move(traced)][std::move(kept)] += amp;
        }
        for (auto &[pattern, amps] : groups) {
            FockState piece(kept_channels, std::move(amps), rho.n_max());
            out.add(branch.weight * piece.norm_squared(), piece);
        }
    }
    return out;
}

MixedState partial_trace_keep(const FockState &psi, std::span<const ModeId> keep) {
    return partial_trace_keep(MixedState::from_pure(psi), keep);
}

}  // namespace qndsim
