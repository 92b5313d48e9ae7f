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

// Reference computations for tests. Nothing here calls into the qndsim
// library: amplitudes come from matrix permanents, detector losses from an
// explicit beam splitter onto a traced-out loss mode.

#ifndef QNDSIM_TESTS_ORACLE_HPP
#define QNDSIM_TESTS_ORACLE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Occ = std::vector<int>;
using Ket = std::map<Occ, Complex>;

/// Ryser's formula.
Complex permanent(const Eigen::MatrixXcd &m);

/// <out| U |in> where U maps a_i^dag -> sum_j U(i, j) b_j^dag.
Complex transition_amplitude(const Eigen::MatrixXcd &u, const Occ &in, const Occ &out);

/// All occupation vectors over `modes` channels with exactly `photons` total.
std::vector<Occ> compositions(int modes, int photons);

Ket evolve(const Eigen::MatrixXcd &u, const Ket &in);

double norm_squared(const Ket &k);

/// Haar-ish random unitary (QR of a complex Gaussian matrix).
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

/// P(k clicks | n photons) for a counter behind a loss splitter of power
/// transmission `efficiency`.
double loss_povm(int n, int k, double efficiency);
/// Same for an on/off detector (k in {0, 1}).
double loss_povm_on_off(int n, int k, double efficiency);

struct Detection {
    std::size_t channel;
    int reading;
    double efficiency = 1.0;
    bool on_off = false;
};

struct Heralded {
    double probability = 0.0;
    double fidelity = 0.0;
};

/// Detects `detections` on the state after `u`, keeps `keep` (in that
/// order) and compares with `target` (occupations over `keep`).
Heralded herald(const Eigen::MatrixXcd &u, const Ket &in, const std::vector<Detection> &detections,
                const std::vector<std::size_t> &keep, const Ket &target);
/// Sum over several mutually exclusive detection patterns.
Heralded herald_any(const Eigen::MatrixXcd &u, const Ket &in, const std::vector<std::vector<Detection>> &patterns,
                    const std::vector<std::size_t> &keep, const Ket &target);

/// Dense truncated creation operator, basis |0>..|n_max>.
Eigen::MatrixXd creation_matrix(int n_max);

}  // namespace oracle

#endif
