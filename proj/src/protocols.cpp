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

#include "dseu/protocols.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <thread>

#include "dseu/errors.hpp"

namespace dseu {
namespace {

std::uint64_t local_tag(DeviceLabel label) {
    return label == DeviceLabel::A ? seed_tags::dev_a_local : seed_tags::dev_b_local;
}

void require_same_dim(const Device &a, const Device &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("devices act on different dimensions: " +
                                std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
}

std::size_t round_index_of(const SeedStream &round) {
    return round.path().empty() ? 0 : static_cast<std::size_t>(round.path().back());
}

RoundRecord make_record(Protocol protocol, const SeedStream &round) {
    RoundRecord rec;
    rec.round_index = round_index_of(round);
    rec.protocol = protocol;
    rec.root_seed = round.root_seed();
    rec.setting_seed_path = round.path();
    return rec;
}

} // namespace

std::string_view to_string(SharedRandomness level) {
    switch (level) {
    case SharedRandomness::spam_shared:
        return "spam_shared";
    case SharedRandomness::prep_shared:
        return "prep_shared";
    case SharedRandomness::none:
        return "none";
    }
    return "unknown";
}

SharedRandomness default_sharing(Protocol protocol) {
    switch (protocol) {
    case Protocol::incoherent:
        return SharedRandomness::spam_shared;
    case Protocol::coherent:
        return SharedRandomness::prep_shared;
    case Protocol::shadow:
        return SharedRandomness::none;
    }
    return SharedRandomness::none;
}

Device::Device(DeviceLabel label, UnitaryMatrix secret)
    : label_(label), secret_(std::move(secret)) {}

std::vector<std::size_t> Device::measure_in_basis(const PureState &input,
                                                  const UnitaryMatrix &basis,
                                                  std::size_t shots,
                                                  SeedStream &noise) const {
    return born_sample(apply(secret_, input), basis, shots, noise);
}

SymmetricPovmOutcome Device::measure_collective(const PureState &input,
                                                std::size_t copies,
                                                SeedStream &noise) const {
    // U^{⊗T} |psi⟩^{⊗T} = (U|psi⟩)^{⊗T}, so the output stays a product power.
    return sample_symmetric_povm(apply(secret_, input), copies, noise);
}

std::uint64_t protocol_tag(Protocol protocol) {
    switch (protocol) {
    case Protocol::incoherent:
        return seed_tags::incoherent;
    case Protocol::coherent:
        return seed_tags::coherent;
    case Protocol::shadow:
        return seed_tags::shadow;
    }
    return 0;
}

SeedStream round_stream(const SeedStream &root, Protocol protocol,
                        std::size_t round_index) {
    return root.derive({protocol_tag(protocol), static_cast<std::uint64_t>(round_index)});
}

PureState realize_input(const SeedStream &round, SharedRandomness level,
                        DeviceLabel label, std::size_t dim) {
    SeedStream s = level == SharedRandomness::none
                       ? round.derive({local_tag(label), 0})
                       : round.derive(seed_tags::shared_prep);
    return haar_state(dim, s);
}

UnitaryMatrix realize_basis(const SeedStream &round, SharedRandomness level,
                            DeviceLabel label, std::size_t dim) {
    SeedStream s = level == SharedRandomness::spam_shared
                       ? round.derive(seed_tags::shared_meas)
                       : round.derive({local_tag(label), 1});
    return haar_unitary(dim, s);
}

SpamSetting realize_spam(const SeedStream &round, SharedRandomness level,
                         DeviceLabel label, std::size_t dim) {
    return {realize_input(round, level, label, dim),
            realize_basis(round, level, label, dim)};
}

SeedStream noise_stream(const SeedStream &round, DeviceLabel label) {
    return round.derive(label == DeviceLabel::A ? seed_tags::dev_a_meas_noise
                                                : seed_tags::dev_b_meas_noise);
}

RoundRecord run_incoherent_round(const Device &dev_a, const Device &dev_b,
                                 std::size_t shots, const SeedStream &round,
                                 SharedRandomness level) {
    require_same_dim(dev_a, dev_b);
    if (level != SharedRandomness::spam_shared) {
        throw InvalidArgument("incoherent protocol requires shared SPAM settings");
    }
    if (shots < 1) {
        throw InvalidArgument("incoherent protocol needs at least one shot");
    }
    const std::size_t d = dev_a.dim();
    const auto a_setting = realize_spam(round, level, DeviceLabel::A, d);
    const auto b_setting = realize_spam(round, level, DeviceLabel::B, d);

    auto a_noise = noise_stream(round, DeviceLabel::A);
    auto b_noise = noise_stream(round, DeviceLabel::B);
    IncoherentOutcome out;
    out.a = dev_a.measure_in_basis(a_setting.input, a_setting.basis, shots, a_noise);
    out.b = dev_b.measure_in_basis(b_setting.input, b_setting.basis, shots, b_noise);
    out.collision = collision_overlap(out.a, out.b);

    auto rec = make_record(Protocol::incoherent, round);
    rec.per_round_estimate = omega(out.collision, d);
    rec.raw = std::move(out);
    return rec;
}

RoundRecord run_coherent_round(const Device &dev_a, const Device &dev_b,
                               std::size_t copies, const SeedStream &round,
                               SharedRandomness level) {
    require_same_dim(dev_a, dev_b);
    if (level == SharedRandomness::none) {
        throw InvalidArgument("coherent protocol requires a shared input state");
    }
    if (copies < 1) {
        throw InvalidArgument("coherent protocol needs at least one copy");
    }
    const std::size_t d = dev_a.dim();
    const auto a_input = realize_input(round, level, DeviceLabel::A, d);
    const auto b_input = realize_input(round, level, DeviceLabel::B, d);

    auto a_noise = noise_stream(round, DeviceLabel::A);
    auto b_noise = noise_stream(round, DeviceLabel::B);
    const auto a = dev_a.measure_collective(a_input, copies, a_noise);
    const auto b = dev_b.measure_collective(b_input, copies, b_noise);

    CoherentOutcome out;
    out.copies = copies;
    out.overlap_ab = std::min(1.0, std::norm(inner(a.phi, b.phi)));
    out.overlap_a = a.overlap_sq;
    out.overlap_b = b.overlap_sq;

    auto rec = make_record(Protocol::coherent, round);
    rec.per_round_estimate = chi(out.overlap_ab, copies, d);
    rec.raw = out;
    return rec;
}

RoundRecord run_shadow_round(const Device &dev_a, const Device &dev_b,
                             std::size_t copies, const SeedStream &round,
                             SharedRandomness level) {
    require_same_dim(dev_a, dev_b);
    if (level != SharedRandomness::none) {
        throw InvalidArgument("shadow protocol runs without shared randomness");
    }
    if (copies < 1) {
        throw InvalidArgument("shadow protocol needs at least one copy");
    }
    const std::size_t d = dev_a.dim();
    const auto a_input = realize_input(round, level, DeviceLabel::A, d);
    const auto b_input = realize_input(round, level, DeviceLabel::B, d);

    auto a_noise = noise_stream(round, DeviceLabel::A);
    auto b_noise = noise_stream(round, DeviceLabel::B);
    const auto a = dev_a.measure_collective(a_input, copies, a_noise);
    const auto b = dev_b.measure_collective(b_input, copies, b_noise);

    ShadowOutcome out{build_snapshot(a.phi, a_input, copies),
                      build_snapshot(b.phi, b_input, copies)};
    auto rec = make_record(Protocol::shadow, round);
    const double dd = static_cast<double>(d) * static_cast<double>(d);
    rec.per_round_estimate = snapshot_inner(out.x, out.y) / dd;
    rec.raw = std::move(out);
    return rec;
}

RoundRecord run_round(Protocol protocol, const Device &dev_a, const Device &dev_b,
                      std::size_t shots_or_copies, const SeedStream &round) {
    switch (protocol) {
    case Protocol::incoherent:
        return run_incoherent_round(dev_a, dev_b, shots_or_copies, round);
    case Protocol::coherent:
        return run_coherent_round(dev_a, dev_b, shots_or_copies, round);
    case Protocol::shadow:
        return run_shadow_round(dev_a, dev_b, shots_or_copies, round);
    }
    throw InvalidArgument("unknown protocol");
}

std::vector<RoundRecord> run_rounds(Protocol protocol, const Device &dev_a,
                                    const Device &dev_b,
                                    std::size_t shots_or_copies,
                                    std::size_t rounds, const SeedStream &root,
                                    std::size_t threads) {
    std::vector<RoundRecord> records(rounds);
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rounds, 1));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            records[t] = run_round(protocol, dev_a, dev_b, shots_or_copies,
                                   round_stream(root, protocol, t));
        }
    };
    if (threads == 1) {
        work(0, rounds);
        return records;
    }
    // Contiguous blocks; every slot is written by exactly one worker.
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (rounds + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            const std::size_t begin = std::min(rounds, w * chunk);
            const std::size_t end = std::min(rounds, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return records;
}

EstimateReport run_experiment(Protocol protocol, const Device &dev_a,
                              const Device &dev_b, std::size_t shots_or_copies,
                              std::size_t rounds, const SeedStream &root,
                              std::size_t threads) {
    const auto records =
        run_rounds(protocol, dev_a, dev_b, shots_or_copies, rounds, root, threads);
    return aggregate(records);
}

DistinguishingOutcome run_distinguishing_trial(std::size_t dim, Protocol protocol,
                                               std::size_t budget,
                                               std::size_t shots_or_copies,
                                               double threshold,
                                               const SeedStream &trial,
                                               std::size_t threads) {
    if (budget < 2) {
        throw InvalidArgument("distinguishing trial needs a budget of at least 2 rounds");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidArgument("distinguishing threshold must lie in (0, 1)");
    }
    DistinguishingOutcome out;
    auto coin_stream = trial.derive(0);
    out.same_unitary = std::bernoulli_distribution(0.5)(coin_stream);

    auto u_stream = trial.derive({seed_tags::unitaries, 0});
    auto v_stream = trial.derive({seed_tags::unitaries, 1});
    const auto u = haar_unitary(dim, u_stream);
    const auto v = out.same_unitary ? u : haar_unitary(dim, v_stream);
    out.exact_similarity = std::norm((u.matrix().adjoint() * v.matrix()).trace()) /
                           (static_cast<double>(dim) * static_cast<double>(dim));

    const Device dev_a(DeviceLabel::A, u);
    const Device dev_b(DeviceLabel::B, v);
    const auto report = run_experiment(protocol, dev_a, dev_b, shots_or_copies,
                                       budget, trial.derive(seed_tags::distinguish),
                                       threads);
    out.estimate = report.mean;
    out.declared_same = report.mean >= threshold;
    return out;
}

} // namespace dseu
