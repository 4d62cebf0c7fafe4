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

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qrc {

/// Comma-separated output with a fixed column order. Doubles use 17
/// significant digits so values round-trip; non-finite values print as
/// nan, inf or -inf.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns);

    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(unsigned long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(long v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(unsigned long v) { return cell(static_cast<unsigned long long>(v)); }
    CsvWriter& cell(std::string_view v);
    CsvWriter& cell(const char* v) { return cell(std::string_view(v)); }
    CsvWriter& cell(const std::string& v) { return cell(std::string_view(v)); }
    void end_row();

    template <class... T>
    void row(const T&... values) {
        (cell(values), ...);
        end_row();
    }

  private:
    void separator();

    std::ostream& out_;
    bool first_ = true;
};

/// The 17-significant-digit form used in every CSV file.
std::string format_double(double v);

} // namespace qrc
