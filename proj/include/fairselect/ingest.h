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

#ifndef FAIRSELECT_INGEST_H_
#define FAIRSELECT_INGEST_H_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fairselect/core.h"

namespace fairselect {

// A header row plus string cells; every row has header.size() cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader/writer: quoted fields may contain commas, quotes ("") and
// newlines. A UTF-8 byte-order mark is skipped. Throws ParseError with a
// 1-based line number on malformed input or ragged rows.
CsvTable ReadCsv(const std::string& path);
CsvTable ParseCsv(const std::string& text);
void WriteCsv(const std::string& path, const CsvTable& table);

// Shortest decimal form that parses back to the same double.
std::string FormatExact(double value);

struct CandidateRecord {
  std::string candidate_id;
  double score = 0.0;
  std::string group_label;

  friend bool operator==(const CandidateRecord&,
                         const CandidateRecord&) = default;
};

struct ProgramRecord {
  std::string program_id;
  int capacity = 0;
  int opening_rank = 0;
  int closing_rank = 0;

  friend bool operator==(const ProgramRecord&, const ProgramRecord&) = default;
};

struct CandidateTable {
  std::vector<CandidateRecord> records;  // File order.
  std::vector<double> scores;            // File order.
  GroupLabels groups;                    // Ids assigned by first appearance.
  std::vector<std::string> group_names;  // group_names[id] is the raw label.
};

// Requires columns candidate_id, score and `group_column`; other columns are
// ignored. Throws ParseError naming the row for a missing column, a
// non-numeric or non-finite score, or a duplicate id, and if fewer than two
// groups are present.
CandidateTable LoadCandidates(const std::string& path,
                              const std::string& group_column);

// Requires columns program_id, capacity, opening_rank, closing_rank.
std::vector<ProgramRecord> LoadPrograms(const std::string& path);

void WriteCandidates(const std::string& path,
                     const std::vector<CandidateRecord>& records,
                     const std::string& group_column);
void WritePrograms(const std::string& path,
                   const std::vector<ProgramRecord>& programs);

struct CentralRanking {
  std::vector<std::string> program_ids;  // Institution j is program_ids[j].
  std::vector<int> capacities;
  std::vector<int> closing_ranks;
  // Adjacent retained programs that shared a closing rank and were ordered
  // by program_id.
  std::vector<std::pair<std::string, std::string>> tie_breaks;
};

// Orders programs by closing rank (ties by program_id) and keeps those with
// closing_rank <= cutoff. Throws InputError on an empty list or if nothing
// survives the cutoff.
CentralRanking BuildCentralRanking(
    const std::vector<ProgramRecord>& programs,
    double cutoff = std::numeric_limits<double>::infinity());

// Candidates in rank order: score descending, ties by candidate_id.
struct CandidatePool {
  std::vector<int> rows;  // Index into CandidateTable::records.
  std::vector<double> scores;
  GroupLabels groups;
};

// Keeps the best `rank_limit` candidates (all of them if rank_limit <= 0).
CandidatePool BuildCandidatePool(const CandidateTable& table,
                                 int rank_limit = 0);

// Synthetic candidate file with the same schema as the real exam data:
// columns candidate_id, score, gender, birth_category. Latent ability is
// half-normal; the observed score is 100 * ability, scaled by the gender
// factor for female candidates and by the category factor for candidates
// outside the general category. Scores are rounded to 0.01.
struct FixtureOptions {
  int num_candidates = 5000;
  double female_fraction = 0.3;
  double reserved_fraction = 0.4;
  double gender_beta = 0.69;
  double category_beta = 0.52;
  std::uint64_t seed = 2009;
};

CsvTable GenerateExamFixture(const FixtureOptions& options);

}  // namespace fairselect

#endif  // FAIRSELECT_INGEST_H_
