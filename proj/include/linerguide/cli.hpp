// Copyright 2026 The Linerguide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef LINERGUIDE_CLI_HPP_
#define LINERGUIDE_CLI_HPP_

#include <ostream>

namespace linerguide {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitDetection = 3,
  kExitUnwritable = 4,
  kExitBind = 5,
};

// Default config directory when --config is absent.
inline constexpr const char* kConfigDirEnv = "LINERGUIDE_CONFIG_DIR";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linerguide

#endif  // LINERGUIDE_CLI_HPP_
