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

// Command-line front end. The `qndsim` tool is a thin wrapper around
// run_cli so that tests can drive it in-process.
//
//   qndsim sweep --protocol number|pol --gamma 0,0.1,1,10 --eta2 0.5:1.0:51
//   qndsim run <protocol> [--input c0,c1,c2 | --gamma g] [--T t] [--eta2 e] ...
//   qndsim circuit <file> [--state occ[*amp]]...
//   qndsim kerr-tau --omega w --dt t --chi3 x --volume v
//   qndsim noon-bound --n N
//
// Exit codes: 0 success, 1 runtime error, 2 usage or parse error.

#ifndef QNDSIM_CLI_HPP
#define QNDSIM_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qndsim {

enum class SweepProtocol { Number, Pol };

struct SweepSpec {
    SweepProtocol protocol = SweepProtocol::Number;
    double eta2_start = 0.5;
    double eta2_stop = 1.0;
    int eta2_steps = 51;
    std::vector<double> gammas{0.0, 0.1, 1.0, 10.0};
    /// Linear polarization angle in radians (pol only): cos|H> + sin|V>.
    std::optional<double> theta;
    /// Probe splitter transmission (number only).
    double transmission = 0.5;

    /// Throws DomainError unless 0 <= start < stop <= 1 and steps >= 2.
    void validate() const;
};

/// Header plus one row per (gamma, eta2), gamma-major, eta2 ascending:
/// protocol,eta2,gamma,theta,success_prob,fidelity_sim,fidelity_closed,abs_diff
void write_sweep_csv(const SweepSpec &spec, std::ostream &out);

/// "start:stop:steps".
SweepSpec parse_eta2_range(const std::string &text, SweepSpec spec = {});

/// `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qndsim

#endif
