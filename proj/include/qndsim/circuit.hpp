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

// Line-oriented circuit descriptions.
//
//   mode <name> [pol]                 declare a mode (pol: H and V channels)
//   bs <m1> <m2> T=<float> [flip]     beam splitter
//   ps <m> phi=<float>                phase shifter
//   rot <m> angle=<float>             polarization rotator (polarized mode)
//   pbs <m1> <m2>                     polarizing beam splitter
//   matrix <k> <k*k complex entries>  raw unitary on the first k channels
//
// '#' starts a comment. Angles are radians, complex literals are written
// "re+imi" ("0.5", "-2i", "1e-3-0.25i"). A mode reference is either a
// declared name or a single channel "name.H" / "name.V". bs and ps on a
// polarized mode act identically on both polarizations. Elements run in
// file order; the result is over every declared channel in declaration
// order (polarized modes contribute name.H then name.V).

#ifndef QNDSIM_CIRCUIT_HPP
#define QNDSIM_CIRCUIT_HPP

#include <filesystem>
#include <string_view>

#include "qndsim/optics.hpp"

namespace qndsim {

/// Throws ParseError (with the offending line) on any syntax, mode or
/// unitarity problem.
ModeTransform parse_circuit(std::string_view text);
ModeTransform load_circuit(const std::filesystem::path &path);

/// "re+imi" literal; throws DomainError when malformed.
Complex parse_complex(std::string_view text);

}  // namespace qndsim

#endif
