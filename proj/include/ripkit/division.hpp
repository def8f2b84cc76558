#pragma once

// Constructive allocation of a nonincreasing sequence's tail across r rows.
//
// Given a_1 >= ... >= a_m >= 0 with m >= 2r and
//     sum_{w<=r} a_w + slack >= sum_{w>r} a_w,
// divide() produces nonnegative s_ij (1 <= i <= r, 2r < j <= m) with
//     sum_i s_ij = a_j                                  for every j > 2r,
//     (sum_{w<=r} a_w + slack) / r >= a_{r+i} + sum_j s_ij  for every i.

#include <cstddef>
#include <span>
#include <vector>

#include "ripkit/numerics.hpp"

namespace ripkit {

struct DivisionTableau {
  std::size_t r = 0;
  std::size_t m = 0;
  Vector a;
  double slack = 0.0;
  // r x (m - 2r); column c holds the split of a_{2r + 1 + c}.
  DenseMatrix s;

  double share(std::size_t row, std::size_t tail_index) const { return s(row, tail_index); }
  // Largest violation of the column-sum equations (extended precision sums).
  double column_sum_error() const;
  // Largest amount by which a row exceeds its cap (<= 0 when satisfied).
  double row_cap_excess() const;
  // Both constraint families hold within `tolerance`.
  bool satisfies_constraints(double tolerance = 1e-12) const;
};

// Greedy capacity fill: tail entries a_{2r+1}, ..., a_m are poured into rows
// in increasing index order, each row up to its remaining capacity.
// Throws InvalidInput on malformed input and InfeasibleDivision when the
// head does not dominate the tail.
DivisionTableau divide(std::span<const double> a, std::size_t r, double slack = 0.0);

// As above, but rows are filled in the order given by `row_order` (a
// permutation of 0..r-1).
DivisionTableau divide(std::span<const double> a, std::size_t r, double slack,
                       std::span<const std::size_t> row_order);

// Power-tail inequality: for alpha >= 1,
//     sum_{j>r} a_j^alpha <= r * ((sum_{i<=r} a_i^alpha / r)^{1/alpha} + slack/r)^alpha.
bool tail_power_check(std::span<const double> a, std::size_t r, double slack, double alpha);

}  // namespace ripkit
