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

#include "qndsim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qndsim/error.hpp"

namespace qndsim {

namespace {

void require_unique(const std::vector<ModeId> &ids, const char *what) {
    std::set<ModeId> seen;
    for (const auto &id : ids) {
        if (!seen.insert(id).second) {
            throw ModeError(std::string(what) + ": duplicate channel " + id.str());
        }
    }
}

std::size_t position(const std::vector<ModeId> &ids, const ModeId &id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    return it == ids.end() ? ids.size() : static_cast<std::size_t>(it - ids.begin());
}

bool contains(const std::vector<ModeId> &ids, const ModeId &id) {
    return position(ids, id) != ids.size();
}

/// Pads `t` with identity on `extra` channels (same name in and out).
ModeTransform pad(const ModeTransform &t, const std::vector<ModeId> &extra) {
    if (extra.empty()) {
        return t;
    }
    auto inputs = t.inputs();
    auto outputs = t.outputs();
    inputs.insert(inputs.end(), extra.begin(), extra.end());
    outputs.insert(outputs.end(), extra.begin(), extra.end());
    auto n = static_cast<Eigen::Index>(t.size());
    auto m = static_cast<Eigen::Index>(extra.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n + m, n + m);
    u.topLeftCorner(n, n) = t.matrix();
    u.bottomRightCorner(m, m).setIdentity();
    return ModeTransform(std::move(inputs), std::move(outputs), std::move(u));
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

}  // namespace

ModeTransform::ModeTransform(std::vector<ModeId> inputs, std::vector<ModeId> outputs, Eigen::MatrixXcd matrix)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)) {
    require_unique(inputs_, "transform inputs");
    require_unique(outputs_, "transform outputs");
    if (inputs_.size() != outputs_.size()) {
        throw ModeError("transform must have as many outputs as inputs");
    }
    auto n = static_cast<Eigen::Index>(inputs_.size());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw ModeError("transform matrix is " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " but has " + std::to_string(n) + " channels");
    }
    double defect = unitarity_defect();
    if (!(defect < kUnitarityTolerance)) {
        throw DomainError("transform is not unitary (||U^dag U - I||_F = " + std::to_string(defect) + ")");
    }
}

ModeTransform ModeTransform::identity(std::vector<ModeId> channels) {
    auto n = static_cast<Eigen::Index>(channels.size());
    auto outputs = channels;
    return ModeTransform(std::move(channels), std::move(outputs), Eigen::MatrixXcd::Identity(n, n));
}

Complex ModeTransform::coefficient(const ModeId &in, const ModeId &out) const {
    auto i = position(inputs_, in);
    auto j = position(outputs_, out);
    if (i == inputs_.size() || j == outputs_.size()) {
        throw ModeError("transform has no entry " + in.str() + " -> " + out.str());
    }
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

double ModeTransform::unitarity_defect() const {
    auto n = matrix_.rows();
    return (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).norm();
}

ModeTransform ModeTransform::inverse() const {
    return ModeTransform(outputs_, inputs_, matrix_.adjoint());
}

ModeTransform ModeTransform::reordered(std::span<const ModeId> inputs, std::span<const ModeId> outputs) const {
    if (inputs.size() != size() || outputs.size() != size()) {
        throw ModeError("reorder: channel count mismatch");
    }
    auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd u(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        auto i = position(inputs_, inputs[static_cast<std::size_t>(r)]);
        if (i == inputs_.size()) {
            throw ModeError("reorder: unknown input " + inputs[static_cast<std::size_t>(r)].str());
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            auto j = position(outputs_, outputs[static_cast<std::size_t>(c)]);
            if (j == outputs_.size()) {
                throw ModeError("reorder: unknown output " + outputs[static_cast<std::size_t>(c)].str());
            }
            u(r, c) = matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return ModeTransform({inputs.begin(), inputs.end()}, {outputs.begin(), outputs.end()}, std::move(u));
}

BeamSplitterSpec BeamSplitterSpec::from_angle(double mu, bool flipped) {
    double c = std::cos(mu);
    return BeamSplitterSpec{c * c, flipped};
}

ModeTransform beam_splitter(const BeamSplitterSpec &spec, const ModeId &in1, const ModeId &in2) {
    if (!(spec.transmission >= 0.0 && spec.transmission <= 1.0)) {
        throw DomainError("transmission out of range: T = " + std::to_string(spec.transmission));
    }
    if (in1 == in2) {
        throw ModeError("beam splitter needs two distinct channels");
    }
    double t = std::sqrt(spec.transmission);
    double r = std::sqrt(1.0 - spec.transmission);
    double sign = spec.flipped ? -1.0 : 1.0;
    Eigen::MatrixXcd u(2, 2);
    u << t, sign * r, -sign * r, t;
    return ModeTransform({in1, in2}, {in1, in2}, std::move(u));
}

ModeTransform phase_shifter(double phi, const ModeId &id) {
    Eigen::MatrixXcd u(1, 1);
    u(0, 0) = std::polar(1.0, phi);
    return ModeTransform({id}, {id}, std::move(u));
}

ModeTransform polarization_rotator(double angle, const std::string &spatial) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    Eigen::MatrixXcd u(2, 2);
    u << c, s, -s, c;
    auto pair = polarized(spatial);
    return ModeTransform(pair, pair, std::move(u));
}

ModeTransform polarizing_beam_splitter(const std::string &spatial1, const std::string &spatial2) {
    if (spatial1 == spatial2) {
        throw ModeError("polarizing beam splitter needs two distinct modes");
    }
    std::vector<ModeId> ids{channel_h(spatial1), channel_v(spatial1), channel_h(spatial2), channel_v(spatial2)};
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    u(0, 0) = 1.0;  // 1H -> 1H
    u(1, 3) = 1.0;  // 1V -> 2V
    u(2, 2) = 1.0;  // 2H -> 2H
    u(3, 1) = 1.0;  // 2V -> 1V
    return ModeTransform(ids, ids, std::move(u));
}

ModeTransform compose(const ModeTransform &first, const ModeTransform &second) {
    std::vector<ModeId> extra_first;  // consumed by `second` but untouched by `first`
    for (const auto &id : second.inputs()) {
        if (!contains(first.outputs(), id)) {
            if (contains(first.inputs(), id)) {
                throw ModeError("compose: channel " + id.str() + " is consumed by the first transform");
            }
            extra_first.push_back(id);
        }
    }
    std::vector<ModeId> extra_second;  // produced by `first`, untouched by `second`
    for (const auto &id : first.outputs()) {
        if (!contains(second.inputs(), id)) {
            if (contains(second.outputs(), id)) {
                throw ModeError("compose: channel " + id.str() + " is produced by both transforms");
            }
            extra_second.push_back(id);
        }
    }
    ModeTransform a = pad(first, extra_first);
    ModeTransform b = pad(second, extra_second);
    // Align b's rows with a's column order.
    ModeTransform b_aligned = b.reordered(a.outputs(), b.outputs());
    return ModeTransform(a.inputs(), b.outputs(), a.matrix() * b_aligned.matrix());
}

FockState apply(const ModeTransform &t, const FockState &state) {
    if (state.num_channels() != t.size()) {
        throw ModeError("apply: state has " + std::to_string(state.num_channels()) + " channels, transform has " +
                        std::to_string(t.size()));
    }
    FockState aligned = state.reordered(t.inputs());
    const auto &u = t.matrix();
    const auto n = static_cast<Eigen::Index>(t.size());

    std::map<Occupation, Complex> result;
    for (const auto &[occ, amp] : aligned.amplitudes()) {
        // prod_i (a_i^dag)^{n_i} / sqrt(n_i!) as a polynomial in output operators.
        double denom = 1.0;
        for (int k : occ) {
            denom *= factorial(k);
        }
        std::map<Occupation, Complex> poly{{Occupation(occ.size(), 0), amp / std::sqrt(denom)}};
        for (Eigen::Index i = 0; i < n; ++i) {
            for (int rep = 0; rep < occ[static_cast<std::size_t>(i)]; ++rep) {
                std::map<Occupation, Complex> next;
                for (const auto &[mono, coef] : poly) {
                    for (Eigen::Index j = 0; j < n; ++j) {
                        Complex entry = u(i, j);
                        if (entry == Complex{}) {
                            continue;
                        }
                        Occupation m = mono;
                        ++m[static_cast<std::size_t>(j)];
                        next[std::move(m)] += coef * entry;
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto &[mono, coef] : poly) {
            double norm = 1.0;
            for (int k : mono) {
                norm *= factorial(k);
            }
            result[mono] += coef * std::sqrt(norm);
        }
    }
    return FockState(t.outputs(), std::move(result), state.n_max());
}

FockState apply_local(const ModeTransform &t, const FockState &state) {
    ModeTransform full = compose(ModeTransform::identity(state.channels()), t);
    return apply(full, state).reordered(state.channels());
}

FockState kerr_gate(const KerrGateSpec &spec, const ModeId &a, const ModeId &b, const FockState &state) {
    std::size_t ia = state.index_of(a);
    std::size_t ib = state.index_of(b);
    if (ia == ib) {
        throw ModeError("Kerr gate needs two distinct channels");
    }
    FockState::AmplitudeMap amps;
    for (const auto &[occ, amp] : state.amplitudes()) {
        double phase = -spec.tau * occ[ia] * occ[ib];
        amps.emplace(occ, amp * std::polar(1.0, phase));
    }
    return FockState(state.channels(), std::move(amps), state.n_max());
}

}  // namespace qndsim
