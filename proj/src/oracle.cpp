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

#include "dseu/oracle.hpp"

#include <cmath>
#include <limits>

#include "dseu/errors.hpp"
#include "dseu/symmetric.hpp"

namespace dseu {
namespace {

double trace_sq(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatch("oracle: unitaries act on different dimensions");
    }
    return std::norm((u.matrix().adjoint() * v.matrix()).trace());
}

std::size_t isqrt_exact(std::size_t n) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

struct RunningStat {
    double sum = 0.0;
    double sum_sq = 0.0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
    }
    [[nodiscard]] double mean(double n) const { return sum / n; }
    [[nodiscard]] double std_error(double n) const {
        const double m = sum / n;
        const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
        return std::sqrt(var / n);
    }
};

} // namespace

MomentReport make_moment_report(std::string quantity, double exact,
                                double empirical, double std_error) {
    MomentReport r{std::move(quantity), exact, empirical, std_error, 0.0};
    const double dev = empirical - exact;
    if (std::abs(dev) <= 1e-12) {
        return r;
    }
    if (std_error > 0.0) {
        r.z_score = dev / std_error;
    } else {
        r.z_score = std::copysign(std::numeric_limits<double>::infinity(), dev);
    }
    return r;
}

double exact_similarity(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    const double d = static_cast<double>(u.dim());
    return trace_sq(u, v) / (d * d);
}

double expected_f_psi(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    const double d = static_cast<double>(u.dim());
    return (trace_sq(u, v) + d) / (d * (d + 1.0));
}

double expected_g(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    const double d = static_cast<double>(u.dim());
    return (1.0 + expected_f_psi(u, v)) / (d + 1.0);
}

double expected_f_coherent(const UnitaryMatrix &u, const UnitaryMatrix &v,
                           std::size_t copies) {
    if (copies < 1) {
        throw InvalidArgument("expected_f_coherent: copies must be at least 1");
    }
    const double d = static_cast<double>(u.dim());
    const double t = static_cast<double>(copies);
    const double dt2 = (d + t) * (d + t);
    return (d + 2.0 * t) / dt2 +
           t * t * (trace_sq(u, v) + d) / (d * (d + 1.0) * dt2);
}

double expected_gamma(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    return exact_similarity(u, v);
}

CMatrix haar_twirl_exact(int k, const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("haar_twirl_exact: operator must be square");
    }
    if (k == 1) {
        const auto n = a.rows();
        return a.trace() / static_cast<double>(n) * CMatrix::Identity(n, n);
    }
    if (k == 2) {
        const std::size_t dim = isqrt_exact(static_cast<std::size_t>(a.rows()));
        if (dim < 2) {
            throw InvalidDimension("haar_twirl_exact: k=2 operator must be d^2 x d^2");
        }
        const double d = static_cast<double>(dim);
        const CMatrix swap = swap_operator(dim);
        const Complex tr_a = a.trace();
        const Complex tr_fa = (swap * a).trace();
        const double denom = d * (d * d - 1.0);
        const auto n = a.rows();
        return (d * tr_a - tr_fa) / denom * CMatrix::Identity(n, n) +
               (d * tr_fa - tr_a) / denom * swap;
    }
    throw InvalidArgument("haar_twirl_exact: only k = 1 and k = 2 have closed forms");
}

MomentReport haar_twirl_check(int k, const CMatrix &a, std::size_t samples,
                              SeedStream &rng) {
    if (samples < 2) {
        throw InvalidArgument("haar_twirl_check: need at least two samples");
    }
    const CMatrix exact = haar_twirl_exact(k, a);
    const std::size_t dim = k == 1 ? static_cast<std::size_t>(a.rows())
                                   : isqrt_exact(static_cast<std::size_t>(a.rows()));
    if (dim > 8) {
        throw SizeLimit("haar_twirl_check: dimension above 8");
    }
    const auto n = a.rows();
    std::vector<RunningStat> re(static_cast<std::size_t>(n * n));
    std::vector<RunningStat> im(re.size());
    for (std::size_t s = 0; s < samples; ++s) {
        const auto u = haar_unitary(dim, rng);
        const CMatrix uk = k == 1 ? u.matrix() : kron(u.matrix(), u.matrix());
        const CMatrix twirled = uk * a * uk.adjoint();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto idx = static_cast<std::size_t>(i * n + j);
                re[idx].add(twirled(i, j).real());
                im[idx].add(twirled(i, j).imag());
            }
        }
    }
    const double count = static_cast<double>(samples);
    MomentReport worst = make_moment_report("none", 0.0, 0.0, 0.0);
    bool first = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto idx = static_cast<std::size_t>(i * n + j);
            const std::string where = "twirl_k" + std::to_string(k) + "[" +
                                      std::to_string(i) + "," + std::to_string(j) + "]";
            for (int part = 0; part < 2; ++part) {
                const auto &stat = part == 0 ? re[idx] : im[idx];
                const double ex = part == 0 ? exact(i, j).real() : exact(i, j).imag();
                auto rep = make_moment_report(where + (part == 0 ? ".re" : ".im"), ex,
                                              stat.mean(count), stat.std_error(count));
                if (first || std::abs(rep.z_score) > std::abs(worst.z_score)) {
                    worst = std::move(rep);
                    first = false;
                }
            }
        }
    }
    return worst;
}

MomentReport f_psi_check(const UnitaryMatrix &u, const UnitaryMatrix &v,
                         std::size_t samples, SeedStream &rng) {
    if (samples < 2) {
        throw InvalidArgument("f_psi_check: need at least two samples");
    }
    const double exact = expected_f_psi(u, v);
    RunningStat stat;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto psi = haar_state(u.dim(), rng);
        stat.add(std::norm(inner(apply(u, psi), apply(v, psi))));
    }
    const double n = static_cast<double>(samples);
    return make_moment_report("f_psi", exact, stat.mean(n), stat.std_error(n));
}

} // namespace dseu
