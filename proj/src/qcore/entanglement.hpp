// Copyright 2026 The blgi Authors
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

#ifndef BLGI_QCORE_ENTANGLEMENT_HPP
#define BLGI_QCORE_ENTANGLEMENT_HPP

#include <vector>

#include "qcore/state.hpp"

namespace blgi::qcore {

/// Reduced density operator on the qubits in `keep` (kept in ascending order).
/// Keeping every qubit returns the state unchanged.
QuantumState partial_trace(const QuantumState& state, std::vector<int> keep);

/// Wootters concurrence of a two-qubit state, in [0, 1].
double concurrence(const QuantumState& state);

}  // namespace blgi::qcore

#endif  // BLGI_QCORE_ENTANGLEMENT_HPP
