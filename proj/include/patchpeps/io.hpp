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

#include <json.hpp>
#include <string>

#include "patchpeps/observable.hpp"
#include "patchpeps/peps.hpp"

namespace patchpeps {

using Json = nlohmann::ordered_json;

/// Serialises with every floating-point number at 17 significant digits.
/// Arrays holding only scalars or scalar pairs stay on one line.
std::string dump_json(const Json& doc);

/// Number, or the strings "inf", "-inf", "nan" for non-finite values.
Json json_number(double x);
Json json_complex(Complex z);

Json peps_to_json(const PepsState& peps);
PepsState peps_from_json(const Json& doc);
Json observable_to_json(const Observable& obs);
Observable observable_from_json(const Json& doc);

std::string write_peps(const PepsState& peps);
PepsState read_peps(const std::string& text);
std::string write_observable(const Observable& obs);
Observable read_observable(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace patchpeps
