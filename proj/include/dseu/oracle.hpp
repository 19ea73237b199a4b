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
 * Closed-form ground truth for the similarity tr²[U†V]/d² and for the
 * expectations of every per-round estimator, plus Monte Carlo cross-checks of
 * the Haar moments those closed forms rest on.
 */

#pragma once

#include <cstddef>
#include <string>

#include "dseu/qcore.hpp"

namespace dseu {

/// Exact value against a Monte Carlo estimate of the same quantity.
struct MomentReport {
    std::string quantity;
    double exact = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    /// (empirical - exact) / std_error. Deviations below 1e-12 count as
    /// exact agreement (z = 0), so invariant operators do not score rounding.
    double z_score = 0.0;
};

MomentReport make_moment_report(std::string quantity, double exact,
                                double empirical, double std_error);

/// |tr[U†V]|^2 / d^2.
double exact_similarity(const UnitaryMatrix &u, const UnitaryMatrix &v);

/// E_psi |⟨psi|U†V|psi⟩|^2 = (|tr U†V|^2 + d) / (d(d+1)).
double expected_f_psi(const UnitaryMatrix &u, const UnitaryMatrix &v);

/// E g̃ = (1 + E f_psi) / (d+1) for the shared-SPAM collision estimator.
double expected_g(const UnitaryMatrix &u, const UnitaryMatrix &v);

/// E f̃ = (d+2T)/(d+T)^2 + T^2 (|tr U†V|^2 + d) / (d(d+1)(d+T)^2).
double expected_f_coherent(const UnitaryMatrix &u, const UnitaryMatrix &v,
                           std::size_t copies);

/// E γ̃, which equals the similarity itself.
double expected_gamma(const UnitaryMatrix &u, const UnitaryMatrix &v);

/// Haar twirl E_U U^{⊗k} A U^{†⊗k} in closed form for k = 1, 2.
CMatrix haar_twirl_exact(int k, const CMatrix &a);

/**
 * @brief Monte Carlo twirl of A over `samples` Haar unitaries, compared
 * entrywise with haar_twirl_exact.
 *
 * Returns the entry (real or imaginary part) with the largest |z|. A must be
 * d x d for k = 1 or d^2 x d^2 for k = 2, with d <= 8.
 */
MomentReport haar_twirl_check(int k, const CMatrix &a, std::size_t samples,
                              SeedStream &rng);

/// Monte Carlo over Haar psi of |⟨psi|U†V|psi⟩|^2 against expected_f_psi.
MomentReport f_psi_check(const UnitaryMatrix &u, const UnitaryMatrix &v,
                         std::size_t samples, SeedStream &rng);

} // namespace dseu
