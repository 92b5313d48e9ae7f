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

// Passive linear optics as unitary substitutions on creation operators.
//
// A ModeTransform with matrix U maps input channel i to
//     a_i^dag -> sum_j U(i, j) b_j^dag
// where b_j are the output channels. Rows are indexed by inputs, columns by
// outputs, so running t1 and then t2 has matrix U1 * U2.

#ifndef QNDSIM_OPTICS_HPP
#define QNDSIM_OPTICS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qndsim/fock.hpp"

namespace qndsim {

inline constexpr double kUnitarityTolerance = 1e-12;

class ModeTransform {
   public:
    /// Throws DomainError unless ||U^dag U - I||_F < kUnitarityTolerance.
    ModeTransform(std::vector<ModeId> inputs, std::vector<ModeId> outputs, Eigen::MatrixXcd matrix);

    static ModeTransform identity(std::vector<ModeId> channels);

    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    const std::vector<ModeId> &inputs() const {
        return inputs_;
    }
    const std::vector<ModeId> &outputs() const {
        return outputs_;
    }
    std::size_t size() const {
        return inputs_.size();
    }

    /// Coefficient of output `out` in the image of input `in`.
    Complex coefficient(const ModeId &in, const ModeId &out) const;
    double unitarity_defect() const;
    /// The inverse network: outputs become inputs.
    ModeTransform inverse() const;
    /// Same map with rows and columns permuted into the given channel orders.
    ModeTransform reordered(std::span<const ModeId> inputs, std::span<const ModeId> outputs) const;

   private:
    std::vector<ModeId> inputs_;
    std::vector<ModeId> outputs_;
    Eigen::MatrixXcd matrix_;
};

/// Beam splitter with intensity transmission T = cos^2(mu).
///
/// Unflipped (arrow on the first port):
///     in1^dag -> sqrt(T) in1'^dag + sqrt(1-T) in2'^dag
///     in2^dag -> sqrt(T) in2'^dag - sqrt(1-T) in1'^dag
/// At T = 1/2 this is a -> (p + q)/sqrt2, b -> (q - p)/sqrt2 with p, q the
/// continuations of the two ports. `flipped` moves the minus sign to the
/// reflection off the other side.
struct BeamSplitterSpec {
    double transmission = 0.5;
    bool flipped = false;

    static BeamSplitterSpec from_angle(double mu, bool flipped = false);
};

struct KerrGateSpec {
    /// Phase per photon pair, tau = kappa t / hbar.
    double tau = 0.0;
};

ModeTransform beam_splitter(const BeamSplitterSpec &spec, const ModeId &in1, const ModeId &in2);
ModeTransform phase_shifter(double phi, const ModeId &id);
/// H -> cos H + sin V, V -> cos V - sin H on a polarized spatial mode.
ModeTransform polarization_rotator(double angle, const std::string &spatial);
/// H transmitted, V exchanged between the two spatial modes.
ModeTransform polarizing_beam_splitter(const std::string &spatial1, const std::string &spatial2);

/// Runs `first` then `second`. Channels that only one of them touches pass
/// through the other unchanged.
ModeTransform compose(const ModeTransform &first, const ModeTransform &second);

/// Substitutes every creation operator by its image and re-collects kets.
/// State channels must be the transform's inputs (any order); the result is
/// over the transform's outputs.
FockState apply(const ModeTransform &t, const FockState &state);
/// Like apply, for a transform acting on a subset of the state's channels
/// with outputs named like its inputs. Other channels pass unchanged and
/// the channel order of `state` is kept.
FockState apply_local(const ModeTransform &t, const FockState &state);

/// Cross-Kerr interaction: |n_a, n_b> -> exp(-i tau n_a n_b) |n_a, n_b>.
FockState kerr_gate(const KerrGateSpec &spec, const ModeId &a, const ModeId &b, const FockState &state);

}  // namespace qndsim

#endif
