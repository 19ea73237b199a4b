// Copyright 2026 The dseu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Symmetric-subspace tools: the collective measurement on T identical copies
 * of a pure state and the factored classical snapshots built from it.
 */

#pragma once

#include <cstddef>
#include <cstdint>

#include "dseu/qcore.hpp"

namespace dseu {

/// Dimension of the symmetric subspace of (C^d)^{⊗T}, C(d+T-1, T).
/// Throws Overflow if the value does not fit in 64 bits.
std::uint64_t kappa(std::size_t dim, std::size_t copies);

struct SymmetricPovmOutcome {
    PureState phi;
    std::size_t copies;
    /// |⟨phi|input⟩|^2, kept for diagnostics.
    double overlap_sq;
};

/**
 * @brief Samples the outcome of the symmetric collective measurement applied
 * to input^{⊗copies}.
 *
 * Outcome density relative to the Haar measure on pure states is
 * kappa * |⟨phi|input⟩|^{2T}. Equivalently the overlap p = |⟨phi|input⟩|^2 is
 * Beta(T+1, d-1), the phase of ⟨input|phi⟩ is uniform, and the component
 * orthogonal to the input is Haar in the complement. The failure element
 * I - Π_sym has zero weight on product inputs and is never returned.
 */
SymmetricPovmOutcome sample_symmetric_povm(const PureState &input,
                                           std::size_t copies, SeedStream &rng);

/**
 * @brief Classical snapshot of a unitary channel, stored as its factors.
 *
 * Represents
 *   X = [d(d+1)(d+s) (phi phi†) ⊗ (psi psi†)^T - (d+1+s) I ⊗ I] / s
 * where psi is the prepared input and phi the measurement outcome.
 */
struct FactoredSnapshot {
    PureState phi;
    PureState psi;
    std::size_t copies;
    std::size_t dim;

    /// Coefficient d(d+1)(d+s) of the rank-one term.
    [[nodiscard]] double rank_one_coefficient() const;
    /// Coefficient d+1+s of the identity term.
    [[nodiscard]] double identity_coefficient() const;
};

FactoredSnapshot build_snapshot(const PureState &phi, const PureState &psi,
                                std::size_t copies);

/// tr[X† Y] in O(d) from the factor overlaps.
double snapshot_inner(const FactoredSnapshot &x, const FactoredSnapshot &y);

/// Dense d^2 x d^2 form of a snapshot. Only intended for small d (d <= 64).
CMatrix densify(const FactoredSnapshot &x);

/// (1/T!) Σ_π P_π on (C^d)^{⊗T}; requires d^T <= 64.
CMatrix symmetric_projector(std::size_t dim, std::size_t copies);

/// Permutation operator on T tensor factors of C^d:
/// P |i_0 ... i_{T-1}⟩ = |i_{perm[0]} ... i_{perm[T-1]}⟩.
CMatrix permutation_operator(std::size_t dim, const std::vector<std::size_t> &perm);

/// SWAP on C^d ⊗ C^d.
CMatrix swap_operator(std::size_t dim);

/// (U ⊗ I)|Φ⟩⟨Φ|(U ⊗ I)† with unnormalized |Φ⟩ = Σ_i |ii⟩; requires d^2 <= 4096.
CMatrix choi_of_unitary(const UnitaryMatrix &u);

} // namespace dseu
