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

#include "dseu/app/unitary_io.hpp"

#include <fstream>

#include "dseu/app/config.hpp"
#include "dseu/errors.hpp"

namespace dseu::app {

void write_unitary(const std::string &path, const UnitaryMatrix &u) {
    const auto n = static_cast<Eigen::Index>(u.dim());
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < n; ++j) {
            re_row.push_back(u.matrix()(i, j).real());
            im_row.push_back(u.matrix()(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    const nlohmann::json doc = {{"dim", u.dim()}, {"re", re}, {"im", im}};
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write unitary file '" + path + "'");
    }
    // nlohmann emits the shortest decimal that round-trips each double.
    out << doc.dump(2) << '\n';
}

UnitaryMatrix read_unitary(const std::string &path, double tol) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open unitary file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("unitary file '" + path + "' is not valid JSON: " + e.what());
    }
    try {
        const auto dim = doc.at("dim").get<std::size_t>();
        const auto &re = doc.at("re");
        const auto &im = doc.at("im");
        if (dim < 2 || re.size() != dim || im.size() != dim) {
            throw ConfigError("unitary file '" + path + "': re/im must be dim x dim with dim >= 2");
        }
        const auto n = static_cast<Eigen::Index>(dim);
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto &re_row = re.at(static_cast<std::size_t>(i));
            const auto &im_row = im.at(static_cast<std::size_t>(i));
            if (re_row.size() != dim || im_row.size() != dim) {
                throw ConfigError("unitary file '" + path + "': ragged row " +
                                  std::to_string(i));
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                m(i, j) = Complex(re_row.at(static_cast<std::size_t>(j)).get<double>(),
                                  im_row.at(static_cast<std::size_t>(j)).get<double>());
            }
        }
        return UnitaryMatrix::from_matrix(std::move(m), tol);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("unitary file '" + path + "': " + e.what());
    }
}

} // namespace dseu::app
