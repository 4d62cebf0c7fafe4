// Copyright 2026 The photonic-qrc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/csv.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qrc {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (const auto& c : columns) cell(c);
    end_row();
}

void CsvWriter::separator() {
    if (!first_) out_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::cell(double v) {
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
    separator();
    if (v.find_first_of(",\"\n") == std::string_view::npos) {
        out_ << v;
        return *this;
    }
    out_ << '"';
    for (char c : v) {
        if (c == '"') out_ << '"';
        out_ << c;
    }
    out_ << '"';
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

} // namespace qrc
