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
#include <type_traits>

#include "dseu/errors.hpp"
#include "dseu/estimators.hpp"
#include "dseu/oracle.hpp"
#include "dseu/protocols.hpp"
#include "stats.hpp"

using namespace dseu;
using dseu::testing::Moments;

namespace {

template <typename T, typename = void>
struct exposes_secret : std::false_type {};
template <typename T>
struct exposes_secret<T, std::void_t<decltype(std::declval<const T &>().secret())>>
    : std::true_type {};
template <typename T, typename = void>
struct exposes_unitary : std::false_type {};
template <typename T>
struct exposes_unitary<T, std::void_t<decltype(std::declval<const T &>().unitary())>>
    : std::true_type {};
template <typename T, typename = void>
struct exposes_matrix : std::false_type {};
template <typename T>
struct exposes_matrix<T, std::void_t<decltype(std::declval<const T &>().matrix())>>
    : std::true_type {};
template <typename T, typename = void>
struct exposes_apply : std::false_type {};
template <typename T>
struct exposes_apply<
    T, std::void_t<decltype(std::declval<const T &>().apply(std::declval<const PureState &>()))>>
    : std::true_type {};

static_assert(!exposes_secret<Device>::value);
static_assert(!exposes_unitary<Device>::value);
static_assert(!exposes_matrix<Device>::value);
static_assert(!exposes_apply<Device>::value);
static_assert(!std::is_convertible_v<Device, UnitaryMatrix>);

UnitaryMatrix pauli_z() {
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return UnitaryMatrix::from_matrix(z);
}

Moments per_round_moments(const std::vector<RoundRecord> &records) {
    Moments m;
    for (const auto &r : records) {
        m.add(r.per_round_estimate);
    }
    return m;
}

constexpr std::size_t kParam = 2;

} // namespace

TEST_CASE("shared randomness is literal equality of realized settings") {
    const SeedStream root(400);
    for (std::size_t idx : {0, 1, 17}) {
        const auto round = round_stream(root, Protocol::incoherent, idx);
        const auto a = realize_spam(round, SharedRandomness::spam_shared, DeviceLabel::A, 4);
        const auto b = realize_spam(round, SharedRandomness::spam_shared, DeviceLabel::B, 4);
        CHECK(a.input == b.input);
        CHECK(a.basis == b.basis);

        const auto pa = realize_spam(round, SharedRandomness::prep_shared, DeviceLabel::A, 4);
        const auto pb = realize_spam(round, SharedRandomness::prep_shared, DeviceLabel::B, 4);
        CHECK(pa.input == pb.input);
        CHECK_FALSE(pa.basis == pb.basis);

        const auto na = realize_spam(round, SharedRandomness::none, DeviceLabel::A, 4);
        const auto nb = realize_spam(round, SharedRandomness::none, DeviceLabel::B, 4);
        CHECK_FALSE(na.input == nb.input);
        CHECK_FALSE(na.basis == nb.basis);

        // Local streams never coincide with the shared ones.
        CHECK_FALSE(na.input == a.input);
    }
    const auto r0 = round_stream(root, Protocol::incoherent, 0);
    const auto r1 = round_stream(root, Protocol::incoherent, 1);
    CHECK_FALSE(realize_input(r0, SharedRandomness::spam_shared, DeviceLabel::A, 4) ==
                realize_input(r1, SharedRandomness::spam_shared, DeviceLabel::A, 4));
    auto noise_a = noise_stream(r0, DeviceLabel::A);
    auto noise_b = noise_stream(r0, DeviceLabel::B);
    CHECK(noise_a() != noise_b());
}

TEST_CASE("round functions reject invalid sharing levels and mismatched devices") {
    const Device a(DeviceLabel::A, UnitaryMatrix::identity(2));
    const Device b(DeviceLabel::B, UnitaryMatrix::identity(2));
    const Device big(DeviceLabel::B, UnitaryMatrix::identity(4));
    const auto round = round_stream(SeedStream(401), Protocol::incoherent, 0);
    CHECK_THROWS_AS(run_incoherent_round(a, b, 2, round, SharedRandomness::prep_shared),
                    InvalidArgument);
    CHECK_THROWS_AS(run_incoherent_round(a, b, 2, round, SharedRandomness::none),
                    InvalidArgument);
    CHECK_THROWS_AS(run_coherent_round(a, b, 2, round, SharedRandomness::none), InvalidArgument);
    CHECK_THROWS_AS(run_shadow_round(a, b, 2, round, SharedRandomness::spam_shared),
                    InvalidArgument);
    CHECK_THROWS_AS(run_incoherent_round(a, b, 0, round), InvalidArgument);
    CHECK_THROWS_AS(run_coherent_round(a, b, 0, round), InvalidArgument);
    CHECK_THROWS_AS(run_shadow_round(a, b, 0, round), InvalidArgument);
    CHECK_THROWS_AS(run_incoherent_round(a, big, 2, round), DimensionMismatch);
    CHECK_THROWS_AS(run_coherent_round(a, big, 2, round), DimensionMismatch);
    CHECK_THROWS_AS(run_shadow_round(a, big, 2, round), DimensionMismatch);
    CHECK_NOTHROW(run_coherent_round(a, b, 2, round, SharedRandomness::spam_shared));
    CHECK(default_sharing(Protocol::incoherent) == SharedRandomness::spam_shared);
    CHECK(default_sharing(Protocol::coherent) == SharedRandomness::prep_shared);
    CHECK(default_sharing(Protocol::shadow) == SharedRandomness::none);
    CHECK(to_string(SharedRandomness::none) == "none");
}

TEST_CASE("incoherent rounds") {
    const Device a(DeviceLabel::A, UnitaryMatrix::identity(2));
    const Device b(DeviceLabel::B, UnitaryMatrix::identity(2));
    const Device z(DeviceLabel::B, pauli_z());
    const SeedStream root(402);

    // m = 1 with equal outcomes: g = 1 and ω = (d+1)²/d − (d+2)/d.
    std::size_t equal_seen = 0;
    for (std::size_t t = 0; t < 50; ++t) {
        const auto rec = run_incoherent_round(a, b, 1, round_stream(root, Protocol::incoherent, t));
        const auto &o = std::get<IncoherentOutcome>(rec.raw);
        CHECK(o.a.size() == 1);
        CHECK(o.b.size() == 1);
        CHECK(rec.round_index == t);
        CHECK(rec.queries_per_device() == 1);
        if (o.a == o.b) {
            ++equal_seen;
            CHECK(o.collision == 1.0);
            CHECK(rec.per_round_estimate == doctest::Approx(9.0 / 2.0 - 2.0));
        }
    }
    CHECK(equal_seen > 0);

    Moments same_g, same_w, z_w;
    for (std::size_t t = 0; t < 40000; ++t) {
        const auto round = round_stream(root, Protocol::incoherent, 1000 + t);
        const auto rec = run_incoherent_round(a, b, 1, round);
        same_g.add(std::get<IncoherentOutcome>(rec.raw).collision);
        same_w.add(rec.per_round_estimate);
        z_w.add(run_incoherent_round(a, z, 1, round).per_round_estimate);
    }
    CHECK(std::abs(same_g.z(2.0 / 3.0)) <= 5.0);
    CHECK(std::abs(same_w.z(1.0)) <= 5.0);
    CHECK(std::abs(z_w.z(0.0)) <= 5.0);
}

TEST_CASE("coherent rounds") {
    const Device a(DeviceLabel::A, UnitaryMatrix::identity(2));
    const Device b(DeviceLabel::B, UnitaryMatrix::identity(2));
    const Device z(DeviceLabel::B, pauli_z());
    const SeedStream root(403);
    Moments f, c, cz;
    for (std::size_t t = 0; t < 40000; ++t) {
        const auto round = round_stream(root, Protocol::coherent, t);
        const auto rec = run_coherent_round(a, b, 2, round);
        const auto &o = std::get<CoherentOutcome>(rec.raw);
        CHECK(o.overlap_ab >= 0.0);
        CHECK(o.overlap_ab <= 1.0);
        CHECK(rec.queries_per_device() == 2);
        f.add(o.overlap_ab);
        c.add(rec.per_round_estimate);
        cz.add(run_coherent_round(a, z, 2, round).per_round_estimate);
    }
    CHECK(std::abs(f.z(5.0 / 8.0)) <= 5.0);
    CHECK(std::abs(c.z(1.0)) <= 5.0);
    CHECK(std::abs(cz.z(0.0)) <= 5.0);
}

TEST_CASE("shadow rounds") {
    const Device a(DeviceLabel::A, UnitaryMatrix::identity(2));
    const Device b(DeviceLabel::B, UnitaryMatrix::identity(2));
    const SeedStream root(404);
    Moments m;
    for (std::size_t t = 0; t < 40000; ++t) {
        const auto rec = run_shadow_round(a, b, 2, round_stream(root, Protocol::shadow, t));
        const auto &o = std::get<ShadowOutcome>(rec.raw);
        CHECK(densify(o.x).trace().real() == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(std::isfinite(rec.per_round_estimate));
        m.add(rec.per_round_estimate);
    }
    CHECK(std::abs(m.z(1.0)) <= 5.0);
}

TEST_CASE("mean snapshot from the device path equals the Choi operator") {
    SeedStream urng(405);
    const auto u = haar_unitary(2, urng);
    const Device a(DeviceLabel::A, u);
    const Device b(DeviceLabel::B, u);
    const CMatrix choi = choi_of_unitary(u);
    const SeedStream root(406);
    std::vector<Moments> re(16), im(16);
    for (std::size_t t = 0; t < 100000; ++t) {
        const auto rec = run_shadow_round(a, b, 1, round_stream(root, Protocol::shadow, t));
        const CMatrix x = densify(std::get<ShadowOutcome>(rec.raw).x);
        for (int i = 0; i < 16; ++i) {
            re[i].add(x(i / 4, i % 4).real());
            im[i].add(x(i / 4, i % 4).imag());
        }
    }
    for (int i = 0; i < 16; ++i) {
        CHECK(std::abs(re[i].z(choi(i / 4, i % 4).real())) <= 5.0);
        if (i / 4 != i % 4) {
            CHECK(std::abs(im[i].z(choi(i / 4, i % 4).imag())) <= 5.0);
        }
    }
}

TEST_CASE("per-round estimates stay in range") {
    SeedStream urng(407);
    for (std::size_t d : {2, 4, 8}) {
        const Device a(DeviceLabel::A, haar_unitary(d, urng));
        const Device b(DeviceLabel::B, haar_unitary(d, urng));
        const SeedStream root(408, {d});
        const double dd = static_cast<double>(d);
        for (std::size_t shots : {1, 3}) {
            for (const auto &r : run_rounds(Protocol::incoherent, a, b, shots, 500, root)) {
                CHECK(r.per_round_estimate >= -(dd + 2.0) / dd - 1e-12);
                CHECK(r.per_round_estimate <= (dd * dd + dd - 1.0) / dd + 1e-12);
                CHECK(std::get<IncoherentOutcome>(r.raw).a.size() == shots);
            }
        }
        for (const auto &r : run_rounds(Protocol::coherent, a, b, 3, 500, root)) {
            const double f = std::get<CoherentOutcome>(r.raw).overlap_ab;
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
        for (const auto &r : run_rounds(Protocol::shadow, a, b, 3, 500, root)) {
            CHECK(std::isfinite(r.per_round_estimate));
        }
    }
}

TEST_CASE("unbiasedness on random unitary pairs") {
    for (std::size_t d : {2, 4}) {
        SeedStream urng(409, {d});
        for (int k = 0; k < 10; ++k) {
            const auto u = haar_unitary(d, urng);
            const auto v = haar_unitary(d, urng);
            const double target = exact_similarity(u, v);
            const Device a(DeviceLabel::A, u);
            const Device b(DeviceLabel::B, v);
            const SeedStream root(410, {d, static_cast<std::uint64_t>(k)});
            for (Protocol p : {Protocol::incoherent, Protocol::coherent, Protocol::shadow}) {
                const auto m = per_round_moments(run_rounds(p, a, b, kParam, 20000, root));
                INFO("d=" << d << " pair=" << k << " protocol=" << to_string(p)
                          << " mean=" << m.mean() << " target=" << target);
                CHECK(std::abs(m.z(target)) <= 5.0);
            }
        }
    }
}

TEST_CASE("swapping the devices leaves the estimate distribution unchanged") {
    SeedStream urng(411);
    const auto u = haar_unitary(4, urng);
    const auto v = haar_unitary(4, urng);
    const Device a(DeviceLabel::A, u);
    const Device b(DeviceLabel::B, v);
    const Device a_swapped(DeviceLabel::A, v);
    const Device b_swapped(DeviceLabel::B, u);
    for (Protocol p : {Protocol::incoherent, Protocol::coherent, Protocol::shadow}) {
        const auto fwd = per_round_moments(run_rounds(p, a, b, 2, 20000, SeedStream(412)));
        const auto rev =
            per_round_moments(run_rounds(p, a_swapped, b_swapped, 2, 20000, SeedStream(413)));
        INFO("protocol=" << to_string(p));
        CHECK(std::abs(dseu::testing::two_sample_z(fwd, rev)) <= 5.0);
    }
}

TEST_CASE("run_rounds is independent of the worker count") {
    SeedStream urng(414);
    const Device a(DeviceLabel::A, haar_unitary(4, urng));
    const Device b(DeviceLabel::B, haar_unitary(4, urng));
    const SeedStream root(415);
    for (Protocol p : {Protocol::incoherent, Protocol::coherent, Protocol::shadow}) {
        const auto serial = run_rounds(p, a, b, 3, 257, root, 1);
        for (std::size_t threads : {2, 3, 8, 300}) {
            const auto parallel = run_rounds(p, a, b, 3, 257, root, threads);
            REQUIRE(parallel.size() == serial.size());
            bool identical = true;
            for (std::size_t i = 0; i < serial.size(); ++i) {
                identical = identical && parallel[i].round_index == i &&
                            to_json(parallel[i]).dump() == to_json(serial[i]).dump();
            }
            CHECK(identical);
        }
        const auto r1 = run_experiment(p, a, b, 3, 257, root, 1);
        const auto r4 = run_experiment(p, a, b, 3, 257, root, 4);
        CHECK(to_json(r1).dump() == to_json(r4).dump());
        CHECK(r1.rounds == 257);
        CHECK(r1.queries_per_device == 257 * 3);
    }
}

TEST_CASE("distinguishing trials") {
    std::size_t correct = 0;
    std::size_t same_cases = 0;
    Moments independent_similarity;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto out = run_distinguishing_trial(16, Protocol::incoherent, 64, 4, 0.5,
                                                  SeedStream(416, {t}));
        if (out.same_unitary) {
            ++same_cases;
            CHECK(out.exact_similarity == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            independent_similarity.add(out.exact_similarity);
        }
        CHECK(out.declared_same == (out.estimate >= 0.5));
        correct += out.correct() ? 1 : 0;
    }
    CHECK(same_cases > 60);
    CHECK(same_cases < 140);
    CHECK(static_cast<double>(correct) / 200.0 >= 0.9);
    CHECK(independent_similarity.mean() < 0.05);

    const auto replay_a = run_distinguishing_trial(4, Protocol::shadow, 8, 2, 0.5, SeedStream(417));
    const auto replay_b = run_distinguishing_trial(4, Protocol::shadow, 8, 2, 0.5, SeedStream(417), 3);
    CHECK(replay_a.estimate == replay_b.estimate);
    CHECK(replay_a.same_unitary == replay_b.same_unitary);

    CHECK_THROWS_AS(run_distinguishing_trial(4, Protocol::incoherent, 1, 2, 0.5, SeedStream(1)),
                    InvalidArgument);
    CHECK_THROWS_AS(run_distinguishing_trial(4, Protocol::incoherent, 8, 2, 1.0, SeedStream(1)),
                    InvalidArgument);
}

TEST_CASE("independent Haar pairs have similarity near 1/d^2") {
    SeedStream rng(418);
    Moments m;
    for (int k = 0; k < 1000; ++k) {
        m.add(exact_similarity(haar_unitary(16, rng), haar_unitary(16, rng)));
    }
    CHECK(std::abs(m.z(1.0 / 256.0)) <= 5.0);
}
