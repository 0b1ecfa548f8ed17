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

// Writes the synthetic exam-score fixture used by tests and examples.
//
//   make_jee_fixture <out.csv> [num_candidates] [seed]

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "fairselect/ingest.h"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 4) {
    std::cerr << "usage: make_jee_fixture <out.csv> [num_candidates] [seed]\n";
    return 1;
  }
  fairselect::FixtureOptions options;
  try {
    if (argc > 2) options.num_candidates = std::stoi(argv[2]);
    if (argc > 3) options.seed = std::stoull(argv[3]);
    fairselect::WriteCsv(argv[1], fairselect::GenerateExamFixture(options));
  } catch (const std::exception& e) {
    std::cerr << "make_jee_fixture: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
