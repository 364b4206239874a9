// Copyright 2026 The quac-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quac/engine/engine.hpp"

namespace quac::engine {

// One command per line: `<ns> <KIND> <bank_group> <bank> <operands...> [force]`.
//   ACT <bg> <bank> <row>          PRE <bg> <bank>
//   WRITE_ROW <bg> <bank> <row> <fill>
//   READ_BLOCK <bg> <bank> <block> COPY_ROW <bg> <bank> <src> <dst>
// Blank lines and text after '#' are ignored.
std::vector<Command> parse_trace(std::istream& in);
std::vector<Command> load_trace(const std::filesystem::path& path);
std::string format_command(const Command& c);

nlohmann::json to_json(const TraceResult& r);

}  // namespace quac::engine
