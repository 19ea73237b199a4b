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

#include "dseu/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dseu/errors.hpp"

namespace dseu {

double collision_overlap(std::span<const std::size_t> a,
                         std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) {
        throw InvalidArgument("collision_overlap: empty outcome list");
    }
    const std::size_t top = std::max(*std::max_element(a.begin(), a.end()),
                                     *std::max_element(b.begin(), b.end()));
    std::vector<std::size_t> hist(top + 1, 0);
    for (auto x : a) {
        ++hist[x];
    }
    std::size_t matches = 0;
    for (auto y : b) {
        matches += hist[y];
    }
    return static_cast<double>(matches) /
           (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double omega(double g, std::size_t dim) {
    if (dim < 2) {
        throw InvalidDimension("omega: dimension must be at least 2");
    }
    const double d = static_cast<double>(dim);
    return (d + 1.0) * (d + 1.0) / d * g - (d + 2.0) / d;
}

double chi(double f, std::size_t copies, std::size_t dim) {
    if (dim < 2) {
        throw InvalidDimension("chi: dimension must be at least 2");
    }
    if (copies < 1) {
        throw InvalidArgument("chi: copies must be at least 1");
    }
    // Allow rounding noise from squared overlaps of unit vectors.
    if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) {
        throw InvalidArgument("chi: overlap " + std::to_string(f) +
                              " outside [0, 1]");
    }
    const double d = static_cast<double>(dim);
    const double t = static_cast<double>(copies);
    const double slope = (d + 1.0) * (d + t) * (d + t) / (t * t * d);
    const double offset = ((d + 1.0) * (d + 2.0 * t) + t * t) / (t * t * d);
    return slope * f - offset;
}

CrossSums cross_sums(std::span<const FactoredSnapshot> xs,
                     std::span<const FactoredSnapshot> ys) {
    if (xs.empty() || ys.empty()) {
        throw InvalidArgument("cross_sums: empty snapshot list");
    }
    const std::size_t dim = xs.front().dim;
    const std::size_t copies = xs.front().copies;
    auto uniform = [&](const FactoredSnapshot &s) {
        return s.dim == dim && s.copies == copies;
    };
    if (!std::all_of(xs.begin(), xs.end(), uniform) ||
        !std::all_of(ys.begin(), ys.end(), uniform)) {
        throw DimensionMismatch("cross_sums: snapshots differ in dim or copies");
    }

    const double a = xs.front().rank_one_coefficient();
    const double b = xs.front().identity_coefficient();
    const double d = static_cast<double>(dim);
    const double s = static_cast<double>(copies);
    const double constant = (b * b * d * d - 2.0 * a * b) / (s * s);
    const double scale = a * a / (s * s);

    CrossSums sums;
    sums.row.assign(xs.size(), 0.0);
    sums.col.assign(ys.size(), 0.0);
    sums.diag.assign(std::min(xs.size(), ys.size()), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto &xphi = xs[i].phi.amplitudes();
        const auto &xpsi = xs[i].psi.amplitudes();
        double row = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double overlap = std::norm(xphi.dot(ys[j].phi.amplitudes())) *
                                   std::norm(xpsi.dot(ys[j].psi.amplitudes()));
            const double m = scale * overlap + constant;
            row += m;
            sums.col[j] += m;
            if (i == j) {
                sums.diag[i] = m;
            }
        }
        sums.row[i] = row;
        sums.total += row;
    }
    return sums;
}

double gamma(std::span<const FactoredSnapshot> xs,
             std::span<const FactoredSnapshot> ys) {
    const auto sums = cross_sums(xs, ys);
    const double d = static_cast<double>(xs.front().dim);
    return sums.total / (static_cast<double>(xs.size()) *
                         static_cast<double>(ys.size()) * d * d);
}

PointEstimate gamma_with_jackknife(std::span<const FactoredSnapshot> xs,
                                   std::span<const FactoredSnapshot> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw InvalidArgument("jackknife needs two equal lists of at least two snapshots");
    }
    const auto sums = cross_sums(xs, ys);
    const double n = static_cast<double>(xs.size());
    const double d = static_cast<double>(xs.front().dim);
    const double full = sums.total / (n * n * d * d);

    std::vector<double> loo(xs.size());
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const double kept = sums.total - sums.row[t] - sums.col[t] + sums.diag[t];
        loo[t] = kept / ((n - 1.0) * (n - 1.0) * d * d);
    }
    const double loo_mean = std::accumulate(loo.begin(), loo.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : loo) {
        ss += (v - loo_mean) * (v - loo_mean);
    }
    return {full, std::sqrt((n - 1.0) / n * ss)};
}

EstimateReport aggregate(std::span<const RoundRecord> records) {
    if (records.size() < 2) {
        throw InvalidArgument("aggregate needs at least two rounds");
    }
    const Protocol protocol = records.front().protocol;
    for (const auto &r : records) {
        if (r.protocol != protocol) {
            throw InvalidArgument("aggregate: mixed protocol tags");
        }
    }

    // Canonical order so the floating-point reduction is order independent.
    std::vector<const RoundRecord *> sorted;
    sorted.reserve(records.size());
    for (const auto &r : records) {
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto *l, const auto *r) {
        if (l->round_index != r->round_index) {
            return l->round_index < r->round_index;
        }
        return l->per_round_estimate < r->per_round_estimate;
    });

    EstimateReport report;
    report.protocol = protocol;
    report.rounds = records.size();
    report.seed = records.front().root_seed;
    for (const auto *r : sorted) {
        report.queries_per_device += r->queries_per_device();
    }
    const double n = static_cast<double>(records.size());

    if (protocol == Protocol::shadow) {
        std::vector<FactoredSnapshot> xs;
        std::vector<FactoredSnapshot> ys;
        xs.reserve(sorted.size());
        ys.reserve(sorted.size());
        for (const auto *r : sorted) {
            const auto &o = std::get<ShadowOutcome>(r->raw);
            xs.push_back(o.x);
            ys.push_back(o.y);
        }
        const auto est = gamma_with_jackknife(xs, ys);
        report.mean = est.mean;
        report.std_error = est.std_error;
        report.per_round_variance = n * est.std_error * est.std_error;
        return report;
    }

    double sum = 0.0;
    for (const auto *r : sorted) {
        sum += r->per_round_estimate;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto *r : sorted) {
        const double dev = r->per_round_estimate - mean;
        ss += dev * dev;
    }
    const double variance = ss / (n - 1.0);
    report.mean = mean;
    report.per_round_variance = variance;
    report.std_error = std::sqrt(variance / n);
    return report;
}

} // namespace dseu
