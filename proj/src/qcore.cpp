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

#include "dseu/qcore.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dseu/errors.hpp"

namespace dseu {
namespace {

void require_dim(std::size_t dim) {
    if (dim < 2) {
        throw InvalidDimension("dimension must be at least 2, got " +
                               std::to_string(dim));
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " +
                                std::to_string(a) + " and " +
                                std::to_string(b) + " differ");
    }
}

} // namespace

PureState PureState::from_amplitudes(CVector amplitudes, double tol) {
    require_dim(static_cast<std::size_t>(amplitudes.size()));
    const double norm = amplitudes.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
        throw InvalidState("state norm " + std::to_string(norm) +
                           " differs from 1");
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::normalized(const CVector &v) {
    require_dim(static_cast<std::size_t>(v.size()));
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidState("cannot normalize a zero or non-finite vector");
    }
    return PureState(v / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    require_dim(dim);
    if (index >= dim) {
        throw InvalidArgument("basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

double unitarity_defect(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    const CMatrix defect = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::from_matrix(CMatrix m, double tol) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("unitary must be square");
    }
    require_dim(static_cast<std::size_t>(m.rows()));
    const double defect = unitarity_defect(m);
    if (!(defect <= tol)) {
        throw NotUnitary("matrix is not unitary: max |U†U - I| = " +
                         std::to_string(defect));
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    require_dim(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    return UnitaryMatrix(CMatrix::Identity(n, n));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    require_same_dim(dim(), rhs.dim(), "unitary product");
    return UnitaryMatrix(m_ * rhs.m_);
}

CVector complex_gaussian(std::size_t dim, SeedStream &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

UnitaryMatrix haar_unitary(std::size_t dim, SeedStream &rng) {
    require_dim(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0.0) {
            q.col(j) *= rjj / mag;
        }
    }
    return UnitaryMatrix(std::move(q));
}

PureState haar_state(std::size_t dim, SeedStream &rng) {
    require_dim(dim);
    return PureState::normalized(complex_gaussian(dim, rng));
}

PureState apply(const UnitaryMatrix &u, const PureState &psi) {
    require_same_dim(u.dim(), psi.dim(), "apply");
    return PureState::normalized(u.matrix() * psi.amplitudes());
}

Complex inner(const PureState &phi, const PureState &psi) {
    require_same_dim(phi.dim(), psi.dim(), "inner");
    return phi.amplitudes().dot(psi.amplitudes());
}

std::vector<double> born_probabilities(const PureState &psi,
                                       const UnitaryMatrix &basis) {
    require_same_dim(psi.dim(), basis.dim(), "born_probabilities");
    const CVector rotated = basis.matrix() * psi.amplitudes();
    std::vector<double> probs(psi.dim());
    for (std::size_t a = 0; a < probs.size(); ++a) {
        probs[a] = std::norm(rotated(static_cast<Eigen::Index>(a)));
    }
    return probs;
}

std::vector<std::size_t> born_sample(const PureState &psi,
                                     const UnitaryMatrix &basis,
                                     std::size_t shots, SeedStream &rng) {
    if (shots == 0) {
        throw InvalidArgument("born_sample needs at least one shot");
    }
    const auto probs = born_probabilities(psi, basis);
    std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
    std::vector<std::size_t> out(shots);
    for (auto &a : out) {
        a = outcome(rng);
    }
    return out;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace dseu
