// Copyright 2026 The Authors.
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

#include "fairselect/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <system_error>

#include "fairselect/errors.h"
#include "fairselect/rng.h"
#include "fairselect/sampling.h"

namespace fairselect {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool NeedsQuotes(const std::string& cell) {
  return cell.find_first_of(",\"\r\n") != std::string::npos ||
         (!cell.empty() && (cell.front() == ' ' || cell.back() == ' '));
}

void AppendCell(std::string& out, const std::string& cell) {
  if (!NeedsQuotes(cell)) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

// Column index by name, or a ParseError listing what is missing.
int RequireColumn(const CsvTable& table, const std::string& name,
                  const std::string& what) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw ParseError(what + ": missing required column '" + name +
                     "' (header row 1)");
  }
  return static_cast<int>(it - table.header.begin());
}

// Data rows start on line 2 (the header is line 1).
std::string RowTag(std::size_t row) {
  return "row " + std::to_string(row + 2);
}

double ParseDouble(const std::string& text, const std::string& context) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && end[-1] == ' ') --end;
  if (begin < end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end ||
      !std::isfinite(value)) {
    throw ParseError(context + ": expected a finite number, got '" + text +
                     "'");
  }
  return value;
}

int ParsePositiveInt(const std::string& text, const std::string& context) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && end[-1] == ' ') --end;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end || value <= 0) {
    throw ParseError(context + ": expected a positive integer, got '" + text +
                     "'");
  }
  return value;
}

}  // namespace

CsvTable ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<int> record_lines;
  std::vector<std::string> record;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;  // Distinguishes a trailing empty cell.
  int line = 1;
  int record_line = 1;
  std::size_t i = 0;
  if (text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;

  auto end_record = [&] {
    record.push_back(std::move(cell));
    cell.clear();
    // Skip blank lines.
    if (!(record.size() == 1 && record[0].empty())) {
      records.push_back(std::move(record));
      record_lines.push_back(record_line);
    }
    record.clear();
    cell_started = false;
  };

  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!cell.empty()) {
          throw ParseError("line " + std::to_string(line) +
                           ": stray quote inside unquoted field");
        }
        quoted = true;
        cell_started = true;
        break;
      case ',':
        record.push_back(std::move(cell));
        cell.clear();
        cell_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        cell += c;
        cell_started = true;
    }
  }
  if (quoted) {
    throw ParseError("line " + std::to_string(record_line) +
                     ": unterminated quoted field");
  }
  if (cell_started || !cell.empty() || !record.empty()) end_record();

  if (records.empty()) throw ParseError("empty CSV: a header row is required");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw ParseError("line " + std::to_string(record_lines[r]) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(records[r].size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable ReadCsv(const std::string& path) {
  try {
    return ParseCsv(ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteCsv(const std::string& path, const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      AppendCell(out, row[c]);
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot write '" + path + "'");
  file << out;
  if (!file) throw std::ios_base::failure("write failed for '" + path + "'");
}

std::string FormatExact(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

CandidateTable LoadCandidates(const std::string& path,
                              const std::string& group_column) {
  const CsvTable csv = ReadCsv(path);
  const int id_col = RequireColumn(csv, "candidate_id", path);
  const int score_col = RequireColumn(csv, "score", path);
  const int group_col = RequireColumn(csv, group_column, path);

  std::vector<CandidateRecord> records;
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<std::string> names;
  std::map<std::string, int> group_ids;
  std::map<std::string, std::size_t> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    const std::string context = path + ": " + RowTag(r);
    CandidateRecord rec;
    rec.candidate_id = row[id_col];
    if (rec.candidate_id.empty()) {
      throw ParseError(context + ": empty candidate_id");
    }
    if (const auto [it, fresh] = seen.emplace(rec.candidate_id, r); !fresh) {
      throw ParseError(context + ": duplicate candidate_id '" +
                       rec.candidate_id + "' (first seen at " +
                       RowTag(it->second) + ")");
    }
    rec.score = ParseDouble(row[score_col], context + ", column score");
    rec.group_label = row[group_col];
    const auto [git, added] =
        group_ids.emplace(rec.group_label, static_cast<int>(names.size()));
    if (added) names.push_back(rec.group_label);
    labels.push_back(git->second);
    scores.push_back(rec.score);
    records.push_back(std::move(rec));
  }
  if (names.size() < 2) {
    throw ParseError(path + ": column '" + group_column +
                     "' must contain at least two groups");
  }
  const int g = static_cast<int>(names.size());
  return CandidateTable{std::move(records), std::move(scores),
                        GroupLabels(std::move(labels), g), std::move(names)};
}

std::vector<ProgramRecord> LoadPrograms(const std::string& path) {
  const CsvTable csv = ReadCsv(path);
  const int id_col = RequireColumn(csv, "program_id", path);
  const int cap_col = RequireColumn(csv, "capacity", path);
  const int open_col = RequireColumn(csv, "opening_rank", path);
  const int close_col = RequireColumn(csv, "closing_rank", path);
  std::vector<ProgramRecord> programs;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    const std::string context = path + ": " + RowTag(r);
    ProgramRecord rec;
    rec.program_id = row[id_col];
    if (rec.program_id.empty()) throw ParseError(context + ": empty program_id");
    if (!seen.insert(rec.program_id).second) {
      throw ParseError(context + ": duplicate program_id '" + rec.program_id +
                       "'");
    }
    rec.capacity = ParsePositiveInt(row[cap_col], context + ", column capacity");
    rec.opening_rank =
        ParsePositiveInt(row[open_col], context + ", column opening_rank");
    rec.closing_rank =
        ParsePositiveInt(row[close_col], context + ", column closing_rank");
    if (rec.opening_rank > rec.closing_rank) {
      throw ParseError(context + ": opening_rank exceeds closing_rank");
    }
    programs.push_back(std::move(rec));
  }
  return programs;
}

void WriteCandidates(const std::string& path,
                     const std::vector<CandidateRecord>& records,
                     const std::string& group_column) {
  CsvTable table{{"candidate_id", "score", group_column}, {}};
  for (const auto& rec : records) {
    table.rows.push_back(
        {rec.candidate_id, FormatExact(rec.score), rec.group_label});
  }
  WriteCsv(path, table);
}

void WritePrograms(const std::string& path,
                   const std::vector<ProgramRecord>& programs) {
  CsvTable table{{"program_id", "capacity", "opening_rank", "closing_rank"},
                 {}};
  for (const auto& rec : programs) {
    table.rows.push_back({rec.program_id, std::to_string(rec.capacity),
                          std::to_string(rec.opening_rank),
                          std::to_string(rec.closing_rank)});
  }
  WriteCsv(path, table);
}

CentralRanking BuildCentralRanking(const std::vector<ProgramRecord>& programs,
                                   double cutoff) {
  if (programs.empty()) {
    throw InputError("central ranking: the program list is empty");
  }
  std::vector<const ProgramRecord*> order;
  for (const auto& p : programs) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->closing_rank != b->closing_rank) {
      return a->closing_rank < b->closing_rank;
    }
    return a->program_id < b->program_id;
  });
  CentralRanking out;
  for (const auto* p : order) {
    if (p->closing_rank > cutoff) break;
    if (!out.closing_ranks.empty() &&
        out.closing_ranks.back() == p->closing_rank) {
      out.tie_breaks.emplace_back(out.program_ids.back(), p->program_id);
    }
    out.program_ids.push_back(p->program_id);
    out.capacities.push_back(p->capacity);
    out.closing_ranks.push_back(p->closing_rank);
  }
  if (out.program_ids.empty()) {
    throw InputError("central ranking: no program has closing rank <= " +
                     FormatExact(cutoff) + " (smallest is " +
                     std::to_string(order.front()->closing_rank) + ")");
  }
  return out;
}

CandidatePool BuildCandidatePool(const CandidateTable& table, int rank_limit) {
  const auto& recs = table.records;
  std::vector<int> rows(recs.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::sort(rows.begin(), rows.end(), [&recs](int a, int b) {
    if (recs[a].score != recs[b].score) return recs[a].score > recs[b].score;
    return recs[a].candidate_id < recs[b].candidate_id;
  });
  if (rank_limit > 0 && rank_limit < static_cast<int>(rows.size())) {
    rows.resize(rank_limit);
  }
  std::vector<double> scores;
  std::vector<int> labels;
  for (int r : rows) {
    scores.push_back(recs[r].score);
    labels.push_back(table.groups.group_of(r));
  }
  return CandidatePool{std::move(rows), std::move(scores),
                       GroupLabels(std::move(labels),
                                   table.groups.num_groups())};
}

CsvTable GenerateExamFixture(const FixtureOptions& options) {
  if (options.num_candidates < 1) {
    throw InputError("fixture: num_candidates must be >= 1");
  }
  Rng rng = KeyedStream(options.seed, 0, 0);
  const UtilityDistribution ability = TruncGaussian{};
  CsvTable table{{"candidate_id", "score", "gender", "birth_category"}, {}};
  const int width = static_cast<int>(
      std::to_string(options.num_candidates).size());
  for (int i = 0; i < options.num_candidates; ++i) {
    const double u = SampleUtility(ability, rng);
    const bool female = UniformUnit(rng) < options.female_fraction;
    const bool reserved = UniformUnit(rng) < options.reserved_fraction;
    double score = 100.0 * u;
    if (female) score *= options.gender_beta;
    if (reserved) score *= options.category_beta;
    score = std::round(score * 100.0) / 100.0;
    std::string id = std::to_string(i + 1);
    id.insert(0, width - id.size(), '0');
    table.rows.push_back({"C" + id, FormatExact(score),
                          female ? "F" : "M", reserved ? "OBC/SC/ST" : "GE"});
  }
  return table;
}

}  // namespace fairselect
