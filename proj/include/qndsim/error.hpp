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

#ifndef QNDSIM_ERROR_HPP
#define QNDSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qndsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A photon count would exceed the configured Fock truncation.
class TruncationError : public Error {
   public:
    using Error::Error;
};

/// Unknown, duplicated or mismatched mode channels.
class ModeError : public Error {
   public:
    using Error::Error;
};

/// Parameters outside their physical domain (T > 1, efficiency < 0, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Circuit description syntax or semantic error; carries a 1-based line number.
class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

}  // namespace qndsim

#endif
