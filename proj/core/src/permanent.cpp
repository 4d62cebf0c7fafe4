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

#include <bit>
#include <cstdint>

#include <fmt/format.h>

#include "qrc/errors.hpp"
#include "qrc/fock.hpp"

namespace qrc {

Complex permanent(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError(fmt::format("permanent needs a square matrix, got {}x{}", a.rows(), a.cols()));
    const Eigen::Index n = a.rows();
    if (n == 0) return {1.0, 0.0};
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
    if (n > 30) throw DimensionError(fmt::format("permanent of a {}x{} matrix is out of range", n, n));

    // Ryser: per(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij,
    // visiting subsets in Gray-code order so each step adds or removes one column.
    std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex{});
    Complex total{};
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flipped = next ^ gray;
        const int col = std::countr_zero(flipped);
        const double sign = (next & flipped) ? 1.0 : -1.0;
        for (Eigen::Index i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += sign * a(i, col);
        gray = next;

        Complex prod{1.0, 0.0};
        for (const auto& r : row_sums) prod *= r;
        const bool odd = (std::popcount(gray) & 1) != 0;
        total += odd ? -prod : prod;
    }
    return (n % 2 == 0) ? total : -total;
}

} // namespace qrc
