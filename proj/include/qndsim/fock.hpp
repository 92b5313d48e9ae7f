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

// Pure and mixed multimode bosonic states in a truncated Fock basis.
//
// A state is a sparse map from occupation vectors to complex amplitudes.
// Every amplitude refers to a normalized number ket, so |2> carries the
// 1/sqrt(2) relative to (a^dag)^2 |0>. Polarized spatial modes are stored as
// a pair of channels (H, V); unpolarized modes as a single channel.

#ifndef QNDSIM_FOCK_HPP
#define QNDSIM_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qndsim {

using Complex = std::complex<double>;

enum class Polarization : std::uint8_t { None, H, V };

/// One optical channel: a spatial label plus an optional polarization.
struct ModeId {
    std::string spatial;
    Polarization pol = Polarization::None;

    auto operator<=>(const ModeId &) const = default;

    /// "a", "a.H", "a.V".
    std::string str() const;
};

inline ModeId channel(std::string spatial) {
    return ModeId{std::move(spatial), Polarization::None};
}
inline ModeId channel_h(std::string spatial) {
    return ModeId{std::move(spatial), Polarization::H};
}
inline ModeId channel_v(std::string spatial) {
    return ModeId{std::move(spatial), Polarization::V};
}

/// The (H, V) channel pair of a polarized spatial mode.
std::vector<ModeId> polarized(const std::string &spatial);

/// Photon counts, one per channel, in the owning state's channel order.
using Occupation = std::vector<int>;

inline constexpr int kDefaultNMax = 4;

/// Amplitudes with magnitude below this are dropped from the support.
inline constexpr double kPruneTolerance = 1e-14;

class FockState {
   public:
    using AmplitudeMap = std::map<Occupation, Complex>;

    /// The zero vector over `channels`.
    explicit FockState(std::vector<ModeId> channels, int n_max = kDefaultNMax);
    FockState(std::vector<ModeId> channels, AmplitudeMap amplitudes, int n_max = kDefaultNMax);

    static FockState vacuum(std::vector<ModeId> channels, int n_max = kDefaultNMax);
    static FockState basis(std::vector<ModeId> channels, Occupation occupation, int n_max = kDefaultNMax);

    const std::vector<ModeId> &channels() const {
        return channels_;
    }
    const AmplitudeMap &amplitudes() const {
        return amplitudes_;
    }
    int n_max() const {
        return n_max_;
    }
    std::size_t num_channels() const {
        return channels_.size();
    }
    bool empty() const {
        return amplitudes_.empty();
    }

    Complex amplitude(const Occupation &occupation) const;
    std::size_t index_of(const ModeId &id) const;
    bool has_channel(const ModeId &id) const;

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tolerance = 1e-12) const;

    /// Throws DomainError for the zero vector.
    FockState normalized() const;
    FockState scaled(Complex factor) const;
    /// Same vector with channels permuted into `order`.
    FockState reordered(std::span<const ModeId> order) const;
    FockState with_n_max(int n_max) const;

    FockState operator+(const FockState &other) const;

   private:
    std::vector<ModeId> channels_;
    AmplitudeMap amplitudes_;
    int n_max_;
};

FockState operator*(Complex factor, const FockState &state);

/// Unnormalized ensemble sum_i w_i |psi_i><psi_i| of normalized pure branches.
class MixedState {
   public:
    struct Branch {
        double weight;
        FockState state;
    };

    explicit MixedState(std::vector<ModeId> channels, int n_max = kDefaultNMax);
    /// Pure state with weight ||psi||^2.
    static MixedState from_pure(const FockState &state);

    /// Zero-norm states are ignored; others are normalized and weighted.
    void add(double weight, const FockState &state);
    void append(const MixedState &other);

    const std::vector<Branch> &branches() const {
        return branches_;
    }
    const std::vector<ModeId> &channels() const {
        return channels_;
    }
    int n_max() const {
        return n_max_;
    }
    double total_weight() const;
    MixedState renormalized() const;
    /// Sum of branch weights whose state has exactly `n` photons in `id`.
    double photon_number_weight(const ModeId &id, int n) const;

   private:
    std::vector<ModeId> channels_;
    int n_max_;
    std::vector<Branch> branches_;
};

int total_photons(const Occupation &occupation);

FockState tensor(const FockState &a, const FockState &b);
FockState apply_creation(const FockState &state, const ModeId &id, int power = 1);
FockState apply_annihilation(const FockState &state, const ModeId &id, int power = 1);
/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const FockState &a, const FockState &b);

/// Traces out every channel not listed in `keep`; branches split per
/// discarded occupation pattern.
MixedState partial_trace_keep(const MixedState &rho, std::span<const ModeId> keep);
MixedState partial_trace_keep(const FockState &psi, std::span<const ModeId> keep);

}  // namespace qndsim

#endif
