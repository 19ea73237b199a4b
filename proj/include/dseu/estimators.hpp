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
 * Closed-form per-round estimators and their aggregation into reports.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dseu/records.hpp"
#include "dseu/symmetric.hpp"

namespace dseu {

/// g̃ = (1/m^2) Σ_ij 1[a_i = b_j], computed from an outcome histogram.
double collision_overlap(std::span<const std::size_t> a,
                         std::span<const std::size_t> b);

/// ω̃ = (d+1)^2/d g - (d+2)/d.
double omega(double g, std::size_t dim);

/// χ̃ = (d+1)(d+T)^2/(T^2 d) f - [(d+1)(d+2T) + T^2]/(T^2 d); f must lie in [0, 1].
double chi(double f, std::size_t copies, std::size_t dim);

/// Pairwise sums of M_ij = tr[X_i† Y_j] needed by the shadow estimator.
struct CrossSums {
    double total = 0.0;
    std::vector<double> row; ///< Σ_j M_ij
    std::vector<double> col; ///< Σ_i M_ij
    std::vector<double> diag; ///< M_ii
};

CrossSums cross_sums(std::span<const FactoredSnapshot> xs,
                     std::span<const FactoredSnapshot> ys);

/// γ̃ = (1/(T^2 d^2)) Σ_ij tr[X_i† Y_j].
double gamma(std::span<const FactoredSnapshot> xs,
             std::span<const FactoredSnapshot> ys);

struct PointEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// γ̃ with a delete-one-round jackknife standard error (needs T >= 2).
PointEstimate gamma_with_jackknife(std::span<const FactoredSnapshot> xs,
                                   std::span<const FactoredSnapshot> ys);

/// Sample mean and std_error = sd/√n of the per-round estimates.
/// Shadow records are combined through γ̃ and the jackknife instead.
/// Requires at least two records with one protocol tag; the result does
/// not depend on record order.
EstimateReport aggregate(std::span<const RoundRecord> records);

} // namespace dseu
