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

#include "qsense/table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qsense {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw Error("row width does not match column count");
    rows.push_back(std::move(row));
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string header_cell(const Column& c) {
    return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]";
}

void emit_csv(const Table& t, std::ostream& os) {
    for (size_t j = 0; j < t.columns.size(); ++j)
        os << (j ? "," : "") << header_cell(t.columns[j]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_value(row[j]);
        os << "\n";
    }
}

void emit_aligned(const Table& t, std::ostream& os) {
    const size_t ncol = t.columns.size();
    std::vector<std::vector<std::string>> cells;
    cells.reserve(t.rows.size() + 1);
    std::vector<std::string> head(ncol);
    for (size_t j = 0; j < ncol; ++j) head[j] = header_cell(t.columns[j]);
    cells.push_back(head);
    for (const auto& row : t.rows) {
        std::vector<std::string> line(ncol);
        for (size_t j = 0; j < ncol; ++j) line[j] = format_value(row[j]);
        cells.push_back(line);
    }
    std::vector<size_t> width(ncol, 0);
    for (const auto& line : cells)
        for (size_t j = 0; j < ncol; ++j) width[j] = std::max(width[j], line[j].size());
    for (const auto& line : cells) {
        for (size_t j = 0; j < ncol; ++j) {
            if (j) os << "  ";
            os << std::string(width[j] - line[j].size(), ' ') << line[j];
        }
        os << "\n";
    }
}

}  // namespace

void emit_table(const Table& table, std::ostream& os, TableFormat format) {
    if (table.columns.empty() || table.rows.empty()) throw Error("refusing to emit empty table");
    if (format == TableFormat::Csv)
        emit_csv(table, os);
    else
        emit_aligned(table, os);
    if (!os) throw IoError("stream write failed");
}

void emit_table_file(const Table& table, const std::string& path, TableFormat format) {
    if (path == "-") {
        emit_table(table, std::cout, format);
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    emit_table(table, f, format);
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

Table parse_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty CSV input");
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
        Column c;
        const auto open = cell.find(" [");
        if (open != std::string::npos && cell.back() == ']') {
            c.name = cell.substr(0, open);
            c.unit = cell.substr(open + 2, cell.size() - open - 3);
        } else {
            c.name = cell;
        }
        t.columns.push_back(c);
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace qsense
