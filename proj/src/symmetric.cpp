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

#include "dseu/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "dseu/errors.hpp"

namespace dseu {

std::uint64_t kappa(std::size_t dim, std::size_t copies) {
    if (dim < 2) {
        throw InvalidDimension("kappa: dimension must be at least 2");
    }
    if (copies < 1) {
        throw InvalidArgument("kappa: copies must be at least 1");
    }
    // C(d-1+i, i) = C(d-2+i, i-1) * (d-1+i) / i, exact at every step.
    unsigned __int128 value = 1;
    for (std::size_t i = 1; i <= copies; ++i) {
        value = value * (dim - 1 + i) / i;
        if (value > std::numeric_limits<std::uint64_t>::max()) {
            throw Overflow("kappa(" + std::to_string(dim) + ", " +
                           std::to_string(copies) + ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(value);
}

SymmetricPovmOutcome sample_symmetric_povm(const PureState &input,
                                           std::size_t copies, SeedStream &rng) {
    if (copies < 1) {
        throw InvalidArgument("symmetric measurement needs at least one copy");
    }
    const double norm = input.amplitudes().norm();
    if (std::abs(norm - 1.0) > kTolerance) {
        throw InvalidState("symmetric measurement input is not normalized");
    }
    const std::size_t d = input.dim();

    std::gamma_distribution<double> ga(static_cast<double>(copies) + 1.0, 1.0);
    std::gamma_distribution<double> gb(static_cast<double>(d) - 1.0, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    const double p = x / (x + y);

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const Complex phase = std::polar(1.0, angle(rng));

    // Haar direction in the orthogonal complement of the input.
    CVector g = complex_gaussian(d, rng);
    g -= input.amplitudes().dot(g) * input.amplitudes();
    g.normalize();

    const CVector phi = phase * std::sqrt(p) * input.amplitudes() +
                        std::sqrt(1.0 - p) * g;
    auto state = PureState::normalized(phi);
    const double overlap_sq = std::norm(inner(state, input));
    return {std::move(state), copies, overlap_sq};
}

double FactoredSnapshot::rank_one_coefficient() const {
    const double d = static_cast<double>(dim);
    return d * (d + 1.0) * (d + static_cast<double>(copies));
}

double FactoredSnapshot::identity_coefficient() const {
    return static_cast<double>(dim) + 1.0 + static_cast<double>(copies);
}

FactoredSnapshot build_snapshot(const PureState &phi, const PureState &psi,
                                std::size_t copies) {
    if (phi.dim() != psi.dim()) {
        throw DimensionMismatch("snapshot factors have different dimensions");
    }
    if (copies < 1) {
        throw InvalidArgument("snapshot needs at least one copy");
    }
    return {phi, psi, copies, phi.dim()};
}

double snapshot_inner(const FactoredSnapshot &x, const FactoredSnapshot &y) {
    if (x.dim != y.dim || x.copies != y.copies) {
        throw DimensionMismatch("snapshot_inner: snapshots differ in dim or copies");
    }
    const double a = x.rank_one_coefficient();
    const double b = x.identity_coefficient();
    const double d = static_cast<double>(x.dim);
    const double s = static_cast<double>(x.copies);
    const double overlap = std::norm(inner(x.phi, y.phi)) *
                           std::norm(inner(x.psi, y.psi));
    return (a * a * overlap - 2.0 * a * b + b * b * d * d) / (s * s);
}

CMatrix densify(const FactoredSnapshot &x) {
    if (x.dim > 64) {
        throw SizeLimit("densify: dimension above 64");
    }
    const auto &phi = x.phi.amplitudes();
    const auto &psi = x.psi.amplitudes();
    const CMatrix rho_out = phi * phi.adjoint();
    const CMatrix rho_in_t = (psi * psi.adjoint()).transpose();
    const auto n = static_cast<Eigen::Index>(x.dim * x.dim);
    const CMatrix dense = x.rank_one_coefficient() * kron(rho_out, rho_in_t) -
                          x.identity_coefficient() * CMatrix::Identity(n, n);
    return dense / static_cast<double>(x.copies);
}

CMatrix permutation_operator(std::size_t dim, const std::vector<std::size_t> &perm) {
    const std::size_t t = perm.size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < t; ++k) {
        total *= dim;
    }
    const auto n = static_cast<Eigen::Index>(total);
    CMatrix p = CMatrix::Zero(n, n);
    std::vector<std::size_t> digits(t), permuted(t);
    for (std::size_t idx = 0; idx < total; ++idx) {
        // digits[0] is the most significant tensor factor.
        std::size_t rem = idx;
        for (std::size_t k = t; k-- > 0;) {
            digits[k] = rem % dim;
            rem /= dim;
        }
        for (std::size_t k = 0; k < t; ++k) {
            permuted[k] = digits[perm[k]];
        }
        std::size_t out = 0;
        for (std::size_t k = 0; k < t; ++k) {
            out = out * dim + permuted[k];
        }
        p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return p;
}

CMatrix swap_operator(std::size_t dim) {
    return permutation_operator(dim, {1, 0});
}

CMatrix symmetric_projector(std::size_t dim, std::size_t copies) {
    if (dim < 2) {
        throw InvalidDimension("symmetric_projector: dimension must be at least 2");
    }
    if (copies < 1) {
        throw InvalidArgument("symmetric_projector: copies must be at least 1");
    }
    std::size_t total = 1;
    for (std::size_t k = 0; k < copies; ++k) {
        total *= dim;
        if (total > 64) {
            throw SizeLimit("symmetric_projector: d^T above 64");
        }
    }
    const auto n = static_cast<Eigen::Index>(total);
    CMatrix sum = CMatrix::Zero(n, n);
    std::vector<std::size_t> perm(copies);
    std::iota(perm.begin(), perm.end(), 0);
    double count = 0.0;
    do {
        sum += permutation_operator(dim, perm);
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / count;
}

CMatrix choi_of_unitary(const UnitaryMatrix &u) {
    const std::size_t d = u.dim();
    if (d * d > 4096) {
        throw SizeLimit("choi_of_unitary: d^2 above 4096");
    }
    const auto n = static_cast<Eigen::Index>(d);
    // (U ⊗ I)|Φ⟩ has amplitude U_ij at index i*d + j.
    CVector v(n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            v(i * n + j) = u.matrix()(i, j);
        }
    }
    return v * v.adjoint();
}

} // namespace dseu
