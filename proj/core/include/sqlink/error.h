// Copyright 2026 The sqlink Authors
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

#ifndef SQLINK_ERROR_H
#define SQLINK_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqlink {

enum class ErrorKind {
    InvalidParameter,
    /// The measured quadrature is noisier than vacuum; no pure effective state matches it.
    AntiSqueezedQuadrature,
    NonPhysicalState,
    EmptyPostselection,
    /// Fidelity requested for a zero-width window (0/0).
    IndeterminateFidelity,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class LinkError : public std::invalid_argument {
   public:
    LinkError(ErrorKind kind, const std::string &what) : std::invalid_argument(what), kind_(kind) {}
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace sqlink

#endif
