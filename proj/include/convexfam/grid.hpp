// Copyright 2026 The convexfam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Rectangular row/column grids: the ground objects of the line order.

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/poset.hpp"

namespace convexfam {

/// 0-based (row, column) position.
struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

template <class T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    v_.assign(static_cast<std::size_t>(rows) * cols, fill);
  }
  Grid(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> r;
    for (auto row : rows) r.emplace_back(row);
    *this = from_rows(r);
  }

  static Grid from_rows(const std::vector<std::vector<T>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Grid g(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw std::invalid_argument("ragged grid: row " + std::to_string(i + 1) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(c));
      for (int j = 0; j < c; ++j) g(i, j) = rows[i][j];
    }
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Mask row_mask() const { return full_mask(rows_); }
  Mask col_mask() const { return full_mask(cols_); }

  T& operator()(int r, int c) { return v_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return v_[static_cast<std::size_t>(r) * cols_ + c]; }

  /// Submatrix on the given rows and columns, in index order.
  Grid sub(Mask rmask, Mask cmask) const {
    if (!is_subset(rmask, row_mask()) || !is_subset(cmask, col_mask()))
      throw std::invalid_argument("submatrix lines outside the grid");
    if (rmask == 0 || cmask == 0) return Grid();
    Grid g(popcount(rmask), popcount(cmask));
    int i = 0;
    for_each_bit(rmask, [&](int r) {
      int j = 0;
      for_each_bit(cmask, [&](int c) { g(i, j++) = (*this)(r, c); });
      ++i;
    });
    return g;
  }

  Grid transposed() const {
    Grid g(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) g(j, i) = (*this)(i, j);
    return g;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j));
    return out;
  }

  bool operator==(const Grid&) const = default;

 private:
  static void check_shape(int r, int c) {
    if (r < 0 || c < 0 || r > kMaxGroundIds || c > kMaxGroundIds)
      throw std::invalid_argument("grid dimensions must be in 0..64");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> v_;
};

template <class T>
struct ground_traits<Grid<T>> {
  static constexpr const char* name = "matrix";
  static bool allows(Order o) { return o == Order::line; }
  static PosetShape shape(const Grid<T>& g, Order) {
    return PosetShape::line_order(g.rows(), g.cols());
  }
};

}  // namespace convexfam
