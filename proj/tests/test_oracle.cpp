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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dseu/errors.hpp"
#include "dseu/estimators.hpp"
#include "dseu/oracle.hpp"
#include "dseu/symmetric.hpp"
#include "stats.hpp"

using namespace dseu;

namespace {

UnitaryMatrix pauli_z() {
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return UnitaryMatrix::from_matrix(z);
}

} // namespace

TEST_CASE("exact_similarity") {
    const auto i2 = UnitaryMatrix::identity(2);
    CHECK(exact_similarity(i2, i2) == 1.0);
    CHECK(exact_similarity(i2, pauli_z()) == 0.0);

    SeedStream rng(300);
    for (std::size_t d : {2, 3, 5, 8}) {
        for (int k = 0; k < 20; ++k) {
            const auto u = haar_unitary(d, rng);
            const auto v = haar_unitary(d, rng);
            const double s = exact_similarity(u, v);
            CHECK(s >= 0.0);
            CHECK(s <= 1.0 + 1e-12);
            CHECK(std::abs(exact_similarity(u, u) - 1.0) <= 1e-12);
            CHECK(std::abs(s - exact_similarity(v, u)) <= 1e-12);
            const double theta = 2.0 * std::numbers::pi * (k + 0.5) / 20.0;
            const auto phased = UnitaryMatrix::from_matrix(std::polar(1.0, theta) * u.matrix());
            CHECK(std::abs(exact_similarity(u, phased) - 1.0) <= 1e-12);
            if (d <= 3) {
                const CMatrix ju = choi_of_unitary(u);
                const CMatrix jv = choi_of_unitary(v);
                const double dd = static_cast<double>(d);
                CHECK(std::abs((ju.adjoint() * jv).trace().real() / (dd * dd) - s) <= 1e-10);
            }
        }
    }
}

TEST_CASE("expected_f_psi") {
    const auto i2 = UnitaryMatrix::identity(2);
    CHECK(expected_f_psi(i2, i2) == doctest::Approx(1.0));
    CHECK(expected_f_psi(i2, pauli_z()) == doctest::Approx(1.0 / 3.0));

    SeedStream rng(301);
    for (std::size_t d : {2, 3, 4}) {
        for (int k = 0; k < 10; ++k) {
            const auto u = haar_unitary(d, rng);
            const auto v = haar_unitary(d, rng);
            CHECK(std::abs(expected_f_psi(u, v) -
                           dseu::testing::dense_expected_f_psi(u.matrix(), v.matrix())) <= 1e-12);
        }
    }
    for (std::size_t d : {2, 4}) {
        const auto u = haar_unitary(d, rng);
        const auto v = haar_unitary(d, rng);
        const auto rep = f_psi_check(u, v, 100000, rng);
        INFO("d=" << d << " z=" << rep.z_score);
        CHECK(std::abs(rep.z_score) <= 5.0);
        CHECK(rep.exact == doctest::Approx(expected_f_psi(u, v)));
    }
    {
        // Direct average written out here, independent of f_psi_check.
        const auto v = pauli_z();
        dseu::testing::Moments m;
        for (int s = 0; s < 100000; ++s) {
            const auto psi = haar_state(2, rng);
            m.add(std::norm(inner(apply(i2, psi), apply(v, psi))));
        }
        CHECK(std::abs(m.z(1.0 / 3.0)) <= 5.0);
    }
}

TEST_CASE("expected_g and expected_f_coherent") {
    const auto i2 = UnitaryMatrix::identity(2);
    CHECK(expected_g(i2, i2) == doctest::Approx(2.0 / 3.0));
    CHECK(expected_g(i2, pauli_z()) == doctest::Approx(4.0 / 9.0));
    CHECK(expected_f_coherent(i2, i2, 2) == doctest::Approx(5.0 / 8.0));
    CHECK(chi(expected_f_coherent(i2, pauli_z(), 2), 2, 2) == doctest::Approx(0.0).epsilon(1e-14));

    SeedStream rng(302);
    const auto u = haar_unitary(4, rng);
    const auto v = haar_unitary(4, rng);
    const double fpsi = expected_f_psi(u, v);
    double previous = std::abs(expected_f_coherent(u, v, 1) - fpsi);
    for (std::size_t t : {4, 16, 64, 256, 4096}) {
        const double gap = std::abs(expected_f_coherent(u, v, t) - fpsi);
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 1e-2);
    CHECK_THROWS_AS(expected_f_coherent(u, v, 0), InvalidArgument);
    CHECK_THROWS_AS(expected_g(u, UnitaryMatrix::identity(2)), DimensionMismatch);
}

TEST_CASE("expected_f_coherent matches a Monte Carlo run of the collective measurement") {
    SeedStream rng(303);
    const auto u = haar_unitary(3, rng);
    const auto v = haar_unitary(3, rng);
    for (std::size_t t : {1, 3}) {
        dseu::testing::Moments m;
        for (int s = 0; s < 100000; ++s) {
            const auto psi = haar_state(3, rng);
            const auto a = sample_symmetric_povm(apply(u, psi), t, rng);
            const auto b = sample_symmetric_povm(apply(v, psi), t, rng);
            m.add(std::norm(inner(a.phi, b.phi)));
        }
        INFO("T=" << t);
        CHECK(std::abs(m.z(expected_f_coherent(u, v, t))) <= 5.0);
    }
}

TEST_CASE("expected_gamma") {
    const auto i2 = UnitaryMatrix::identity(2);
    CHECK(expected_gamma(i2, i2) == doctest::Approx(1.0));
    CHECK(expected_gamma(i2, pauli_z()) == doctest::Approx(0.0));
}

TEST_CASE("identity chain") {
    for (std::size_t d : {2, 3, 4, 8}) {
        SeedStream rng(304, {d});
        for (int k = 0; k < 50; ++k) {
            const auto u = haar_unitary(d, rng);
            const auto v = haar_unitary(d, rng);
            const double s = exact_similarity(u, v);
            CHECK(std::abs(omega(expected_g(u, v), d) - s) <= 1e-12);
            CHECK(std::abs(expected_gamma(u, v) - s) <= 1e-12);
            for (std::size_t t : {1, 2, 4, 8}) {
                CHECK(std::abs(chi(expected_f_coherent(u, v, t), t, d) - s) <= 1e-12);
            }
        }
    }
}

TEST_CASE("haar_twirl_exact") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    CHECK((haar_twirl_exact(1, a) - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);

    const CMatrix f = dseu::testing::dense_swap(2);
    const CMatrix id4 = CMatrix::Identity(4, 4);
    CHECK((haar_twirl_exact(2, f) - f).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((haar_twirl_exact(2, id4) - id4).cwiseAbs().maxCoeff() <= 1e-14);

    // |00><00| lies in the symmetric subspace: its twirl is Π_sym / κ₂.
    CMatrix p00 = CMatrix::Zero(4, 4);
    p00(0, 0) = 1.0;
    CHECK((haar_twirl_exact(2, p00) - symmetric_projector(2, 2) / 3.0).cwiseAbs().maxCoeff() <=
          1e-14);

    CHECK_THROWS_AS(haar_twirl_exact(3, a), InvalidArgument);
    CHECK_THROWS(haar_twirl_exact(2, CMatrix::Identity(3, 3)));
}

TEST_CASE("haar_twirl_check") {
    SeedStream rng(305);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    const auto k1 = haar_twirl_check(1, a, 100000, rng);
    CHECK(std::abs(k1.z_score) <= 5.0);

    CMatrix p01 = CMatrix::Zero(4, 4);
    p01(1, 1) = 1.0;
    const auto k2 = haar_twirl_check(2, p01, 100000, rng);
    INFO(k2.quantity << " z=" << k2.z_score);
    CHECK(std::abs(k2.z_score) <= 5.0);

    const auto fixed = haar_twirl_check(2, dseu::testing::dense_swap(2), 1000, rng);
    CHECK(fixed.z_score == 0.0);
}

TEST_CASE("make_moment_report") {
    const auto r = make_moment_report("q", 1.0, 1.2, 0.1);
    CHECK(r.z_score == doctest::Approx(2.0));
    CHECK(make_moment_report("q", 1.0, 1.0, 0.0).z_score == 0.0);
    CHECK(std::isinf(make_moment_report("q", 1.0, 2.0, 0.0).z_score));
}
