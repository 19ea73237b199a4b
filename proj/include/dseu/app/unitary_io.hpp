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

#pragma once

#include <string>

#include "dseu/qcore.hpp"

namespace dseu::app {

/// JSON unitary file: {"dim": d, "re": [[...]], "im": [[...]]}, row major.
void write_unitary(const std::string &path, const UnitaryMatrix &u);

/// Reads a unitary file. Throws ConfigError on malformed content and
/// NotUnitary when U†U deviates from I by more than `tol`.
UnitaryMatrix read_unitary(const std::string &path, double tol = 1e-8);

} // namespace dseu::app
