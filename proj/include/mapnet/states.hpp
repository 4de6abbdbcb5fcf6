// Copyright 2026 The mapnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// State families with known entanglement behaviour.

#pragma once

#include <cstddef>
#include <cstdint>

#include "mapnet/tensor.hpp"

namespace mapnet {

/// |ψ><ψ| for a normalized copy of psi.
DensityMatrix pure_state(const CVector& psi, Dims dims);

DensityMatrix maximally_mixed(const Dims& dims);

/// 0: Φ+, 1: Φ-, 2: Ψ+, 3: Ψ- (the singlet).
DensityMatrix bell_state(std::size_t index);

/// p |ψ-><ψ-| + (1 - p) I/4 on two qubits, p in [0, 1]. PPT iff p <= 1/3.
DensityMatrix werner_state(double p);

/// F |Φ+><Φ+| + (1 - F)(I - |Φ+><Φ+|)/(d² - 1) on C^d ⊗ C^d, F in [0, 1], d >= 2.
DensityMatrix isotropic_state(double fidelity, std::size_t d);

/// G G† / Tr(G G†) with G square and i.i.d. standard complex normal entries
/// (Hilbert-Schmidt measure), drawn from mt19937_64 seeded with `seed`.
DensityMatrix random_state(const Dims& dims, std::uint64_t seed);

/// Random Hermitian matrix with i.i.d. complex normal entries, symmetrized.
CMatrix random_hermitian(std::size_t n, std::uint64_t seed);

}  // namespace mapnet
