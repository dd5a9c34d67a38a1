// Copyright 2026 The qsense authors.
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

#include <iosfwd>
#include <string>
#include <vector>

#include "qsense/errors.hpp"

namespace qsense {

struct Column {
    std::string name;
    std::string unit;  // empty for dimensionless columns
};

/// Numeric result table; the in-memory form every experiment emits.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

enum class TableFormat { Csv, Aligned };

/// CSV: header "name [unit]" cells, 12 significant digits, newline-terminated
/// rows. Aligned: fixed-width human-readable rendering of the same data.
void emit_table(const Table& table, std::ostream& os, TableFormat format);

/// Writes to a file path, or to stdout when path is "-". Throws IoError.
void emit_table_file(const Table& table, const std::string& path, TableFormat format);

/// Parses CSV produced by emit_table (used by the round-trip tests).
Table parse_csv(std::istream& is);

}  // namespace qsense
