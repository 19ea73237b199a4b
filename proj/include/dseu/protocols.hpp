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
 * Two-device simulation of the similarity-estimation protocols.
 *
 * Each device holds a secret unitary and exposes only prepare-apply-measure
 * calls. The protocol layer decides which random settings the devices share
 * by choosing seed derivation paths; the devices exchange nothing but
 * classical outcomes.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dseu/estimators.hpp"
#include "dseu/qcore.hpp"
#include "dseu/records.hpp"
#include "dseu/symmetric.hpp"

namespace dseu {

enum class DeviceLabel { A, B };

/// Which SPAM settings the two devices draw from a common stream.
enum class SharedRandomness {
    spam_shared, ///< input state and measurement basis
    prep_shared, ///< input state only
    none,
};

std::string_view to_string(SharedRandomness level);

/// Default sharing level each protocol is defined with.
SharedRandomness default_sharing(Protocol protocol);

/**
 * @brief A simulated quantum device with a private unitary channel.
 *
 * There is no accessor for the installed unitary; callers can only send in a
 * state, have the channel applied, and receive measurement outcomes.
 */
class Device {
  public:
    Device(DeviceLabel label, UnitaryMatrix secret);

    [[nodiscard]] DeviceLabel label() const noexcept { return label_; }
    [[nodiscard]] std::size_t dim() const noexcept { return secret_.dim(); }

    /// Prepares `input`, applies the channel and measures `shots` copies in the
    /// basis {Q†|a⟩⟨a|Q}.
    std::vector<std::size_t> measure_in_basis(const PureState &input,
                                              const UnitaryMatrix &basis,
                                              std::size_t shots,
                                              SeedStream &noise) const;

    /// Prepares input^{⊗copies}, applies the channel to every copy and
    /// performs the symmetric collective measurement.
    SymmetricPovmOutcome measure_collective(const PureState &input,
                                            std::size_t copies,
                                            SeedStream &noise) const;

  private:
    DeviceLabel label_;
    UnitaryMatrix secret_;
};

/// Seed path components. A round stream has path (protocol tag, round index);
/// roles are appended below it.
namespace seed_tags {
inline constexpr std::uint64_t incoherent = 1;
inline constexpr std::uint64_t coherent = 2;
inline constexpr std::uint64_t shadow = 3;
inline constexpr std::uint64_t unitaries = 10;
inline constexpr std::uint64_t distinguish = 11;

inline constexpr std::uint64_t shared_prep = 100;
inline constexpr std::uint64_t shared_meas = 101;
inline constexpr std::uint64_t dev_a_local = 102;
inline constexpr std::uint64_t dev_b_local = 103;
inline constexpr std::uint64_t dev_a_meas_noise = 104;
inline constexpr std::uint64_t dev_b_meas_noise = 105;
} // namespace seed_tags

std::uint64_t protocol_tag(Protocol protocol);

/// Stream for one round: root.derive({protocol tag, round index}).
SeedStream round_stream(const SeedStream &root, Protocol protocol,
                        std::size_t round_index);

/// Input state and measurement basis one device uses in a round.
struct SpamSetting {
    PureState input;
    UnitaryMatrix basis;
};

/**
 * @brief Realizes the SPAM setting a device sees in a round.
 *
 * Under spam_shared both devices draw input and basis from the shared-prep and
 * shared-meas streams; under prep_shared only the input is shared; under none
 * each device uses its own local stream.
 */
SpamSetting realize_spam(const SeedStream &round, SharedRandomness level,
                         DeviceLabel label, std::size_t dim);

/// Input-state half of realize_spam.
PureState realize_input(const SeedStream &round, SharedRandomness level,
                        DeviceLabel label, std::size_t dim);

/// Measurement-basis half of realize_spam.
UnitaryMatrix realize_basis(const SeedStream &round, SharedRandomness level,
                            DeviceLabel label, std::size_t dim);

/// Measurement-noise stream of a device in a round (never shared).
SeedStream noise_stream(const SeedStream &round, DeviceLabel label);

RoundRecord run_incoherent_round(const Device &dev_a, const Device &dev_b,
                                 std::size_t shots, const SeedStream &round,
                                 SharedRandomness level = SharedRandomness::spam_shared);

RoundRecord run_coherent_round(const Device &dev_a, const Device &dev_b,
                               std::size_t copies, const SeedStream &round,
                               SharedRandomness level = SharedRandomness::prep_shared);

RoundRecord run_shadow_round(const Device &dev_a, const Device &dev_b,
                             std::size_t copies, const SeedStream &round,
                             SharedRandomness level = SharedRandomness::none);

/// Dispatches to the protocol's round function with its default sharing level.
RoundRecord run_round(Protocol protocol, const Device &dev_a, const Device &dev_b,
                      std::size_t shots_or_copies, const SeedStream &round);

/**
 * @brief Runs rounds [0, rounds) and returns them ordered by round index.
 *
 * Rounds are spread over `threads` workers; results do not depend on the
 * worker count because every round is seeded by its own path.
 */
std::vector<RoundRecord> run_rounds(Protocol protocol, const Device &dev_a,
                                    const Device &dev_b,
                                    std::size_t shots_or_copies,
                                    std::size_t rounds, const SeedStream &root,
                                    std::size_t threads = 1);

/// run_rounds followed by aggregate.
EstimateReport run_experiment(Protocol protocol, const Device &dev_a,
                              const Device &dev_b, std::size_t shots_or_copies,
                              std::size_t rounds, const SeedStream &root,
                              std::size_t threads = 1);

struct DistinguishingOutcome {
    bool same_unitary = false;    ///< the coin: case 1 when true
    bool declared_same = false;
    double estimate = 0.0;
    double exact_similarity = 0.0;
    [[nodiscard]] bool correct() const { return same_unitary == declared_same; }
};

/**
 * @brief One trial of the same-versus-independent Haar unitary test.
 *
 * A fair coin picks between installing one Haar unitary on both devices and
 * installing two independent ones. The chosen protocol runs `budget` rounds
 * and the devices are declared "same" when the aggregated estimate is at
 * least `threshold`.
 */
DistinguishingOutcome run_distinguishing_trial(std::size_t dim, Protocol protocol,
                                               std::size_t budget,
                                               std::size_t shots_or_copies,
                                               double threshold,
                                               const SeedStream &trial,
                                               std::size_t threads = 1);

} // namespace dseu
