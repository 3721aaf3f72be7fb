// Copyright 2026 The patchpeps Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace patchpeps {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Entry point of the pepsx tool. `args` includes the program name.
/// Returns the process exit code: 0 success, 1 input error, 2 budget
/// exceeded, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patchpeps
