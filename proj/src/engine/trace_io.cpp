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

#include "quac/engine/trace_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "quac/common/error.hpp"

namespace quac::engine {

namespace {

CommandKind parse_kind(const std::string& s, std::size_t line) {
  if (s == "ACT") return CommandKind::kAct;
  if (s == "PRE") return CommandKind::kPre;
  if (s == "WRITE_ROW") return CommandKind::kWriteRow;
  if (s == "READ_BLOCK") return CommandKind::kReadBlock;
  if (s == "COPY_ROW") return CommandKind::kCopyRow;
  throw ArgumentError("trace line " + std::to_string(line) + ": unknown command '" + s + "'");
}

std::size_t operand_count(CommandKind k) {
  switch (k) {
    case CommandKind::kAct: return 1;
    case CommandKind::kPre: return 0;
    case CommandKind::kWriteRow: return 2;
    case CommandKind::kReadBlock: return 1;
    case CommandKind::kCopyRow: return 2;
  }
  return 0;
}

}  // namespace

std::vector<Command> parse_trace(std::istream& in) {
  std::vector<Command> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw ArgumentError("trace line " + std::to_string(line_no) + ": " + what);
    };
    if (tok.size() < 4) fail("expected '<ns> <KIND> <bank_group> <bank> ...'");
    Command c;
    try {
      std::size_t pos = 0;
      c.issue_time = std::stod(tok[0], &pos);
      if (pos != tok[0].size()) fail("bad time '" + tok[0] + "'");
    } catch (const std::logic_error&) {
      fail("bad time '" + tok[0] + "'");
    }
    c.kind = parse_kind(tok[1], line_no);
    const std::size_t need = 4 + operand_count(c.kind);
    const bool force = tok.size() == need + 1 && tok.back() == "force";
    if (tok.size() != need && !force) fail("wrong operand count for " + tok[1]);
    std::vector<std::uint32_t> v;
    for (std::size_t i = 2; i < need; ++i) {
      try {
        std::size_t pos = 0;
        const unsigned long x = std::stoul(tok[i], &pos);
        if (pos != tok[i].size()) fail("bad operand '" + tok[i] + "'");
        v.push_back(static_cast<std::uint32_t>(x));
      } catch (const std::logic_error&) {
        fail("bad operand '" + tok[i] + "'");
      }
    }
    c.bank_group = v[0];
    c.bank = v[1];
    c.force = force;
    switch (c.kind) {
      case CommandKind::kAct: c.row = v[2]; break;
      case CommandKind::kPre: break;
      case CommandKind::kWriteRow:
        c.row = v[2];
        if (v[3] > 1) fail("fill must be 0 or 1");
        c.fill = static_cast<std::uint8_t>(v[3]);
        break;
      case CommandKind::kReadBlock: c.block = v[2]; break;
      case CommandKind::kCopyRow:
        c.row = v[2];
        c.dst_row = v[3];
        break;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Command> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read trace " + path.string());
  return parse_trace(in);
}

std::string format_command(const Command& c) {
  std::ostringstream os;
  os << std::setprecision(17) << c.issue_time << ' ' << to_string(c.kind) << ' ' << c.bank_group << ' '
     << c.bank;
  switch (c.kind) {
    case CommandKind::kAct: os << ' ' << c.row; break;
    case CommandKind::kPre: break;
    case CommandKind::kWriteRow: os << ' ' << c.row << ' ' << int(c.fill); break;
    case CommandKind::kReadBlock: os << ' ' << c.block; break;
    case CommandKind::kCopyRow: os << ' ' << c.row << ' ' << c.dst_row; break;
  }
  if (c.force) os << " force";
  return os.str();
}

nlohmann::json to_json(const TraceResult& r) {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& o : r.outcomes) outcomes.push_back({{"index", o.index}, {"active_rows", o.active_rows}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [k, cells] : r.final_charges) {
    std::size_t ones = 0;
    double sum = 0.0;
    for (float c : cells) {
      ones += c >= 0.5f;
      sum += c;
    }
    rows.push_back({{"bank_group", std::get<0>(k)},
                    {"bank", std::get<1>(k)},
                    {"row", std::get<2>(k)},
                    {"ones", ones},
                    {"mean_charge", cells.empty() ? 0.0 : sum / cells.size()}});
  }
  return {{"payload_blocks", r.payloads.size()},
          {"bus_busy_ns", r.bus_busy_ns},
          {"outcomes", outcomes},
          {"final_rows", rows}};
}

}  // namespace quac::engine
