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
 * Dense complex state-vector primitives: pure states, unitaries, Haar
 * sampling and computational-basis measurement.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dseu/seed_stream.hpp"

namespace dseu {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for normalization and unitarity checks.
inline constexpr double kTolerance = 1e-10;

/**
 * @brief Normalized vector of amplitudes in dimension d >= 2.
 */
class PureState {
  public:
    /// Validates the norm; throws InvalidState when |‖v‖ - 1| > tol.
    static PureState from_amplitudes(CVector amplitudes,
                                     double tol = kTolerance);
    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(const CVector &v);
    /// Computational basis vector |index⟩.
    static PureState basis(std::size_t dim, std::size_t index);

    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }

    bool operator==(const PureState &other) const {
        return amps_ == other.amps_;
    }

  private:
    explicit PureState(CVector amps) : amps_(std::move(amps)) {}
    CVector amps_;
};

/**
 * @brief d x d matrix with U†U = I to within the construction tolerance.
 */
class UnitaryMatrix;
UnitaryMatrix haar_unitary(std::size_t dim, SeedStream &rng);

class UnitaryMatrix {
  public:
    static UnitaryMatrix from_matrix(CMatrix m, double tol = kTolerance);
    static UnitaryMatrix identity(std::size_t dim);

    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] UnitaryMatrix adjoint() const {
        return UnitaryMatrix(m_.adjoint());
    }
    [[nodiscard]] UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;

    bool operator==(const UnitaryMatrix &other) const { return m_ == other.m_; }

  private:
    friend UnitaryMatrix haar_unitary(std::size_t dim, SeedStream &rng);
    explicit UnitaryMatrix(CMatrix m) : m_(std::move(m)) {}
    CMatrix m_;
};

/// max_ij |(M†M - I)_ij|.
double unitarity_defect(const CMatrix &m);

/// Vector of iid standard complex normals, E|z|^2 = 1.
CVector complex_gaussian(std::size_t dim, SeedStream &rng);

/**
 * @brief Haar-random unitary via QR of a complex Ginibre matrix.
 *
 * Each column of Q is multiplied by R_jj/|R_jj| so that the resulting map is
 * equivariant under left multiplication, which makes the output exactly Haar.
 */
UnitaryMatrix haar_unitary(std::size_t dim, SeedStream &rng);

/// Haar-random pure state: normalized complex Gaussian vector.
PureState haar_state(std::size_t dim, SeedStream &rng);

PureState apply(const UnitaryMatrix &u, const PureState &psi);

/// ⟨phi|psi⟩, antilinear in the first argument.
Complex inner(const PureState &phi, const PureState &psi);

/// Outcome probabilities |⟨a|Q psi⟩|^2 over the computational basis.
std::vector<double> born_probabilities(const PureState &psi,
                                       const UnitaryMatrix &basis);

/**
 * @brief Measures `shots` independent copies of Q|psi⟩ in the computational
 * basis and returns the outcome indices.
 */
std::vector<std::size_t> born_sample(const PureState &psi,
                                     const UnitaryMatrix &basis,
                                     std::size_t shots, SeedStream &rng);

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix &a, const CMatrix &b);

} // namespace dseu
