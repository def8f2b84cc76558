#include "ripkit/division.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ripkit/errors.hpp"

namespace ripkit {

namespace {

constexpr double kFeasibilityTol = 1e-12;

void validate_sequence(std::span<const double> a, std::size_t r, double slack,
                       std::size_t min_length) {
  if (r == 0) throw InvalidInput("division: r must be positive");
  if (a.size() < min_length)
    throw InvalidInput("division: sequence length " + std::to_string(a.size()) +
                       " is below the required " + std::to_string(min_length));
  require_finite(a, "division");
  if (!std::isfinite(slack) || slack < 0.0) throw InvalidInput("division: slack must be >= 0");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0.0) throw InvalidInput("division: entries must be nonnegative");
    if (i > 0 && a[i] > a[i - 1]) throw InvalidInput("division: sequence must be nonincreasing");
  }
  long double head = slack;
  long double tail = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) (i < r ? head : tail) += a[i];
  if (head + kFeasibilityTol < tail)
    throw InfeasibleDivision("division: head sum plus slack is below the tail sum");
}

long double row_budget(const DivisionTableau& t) {
  long double head = 0.0L;
  for (std::size_t w = 0; w < t.r; ++w) head += t.a[w];
  return (head + t.slack) / static_cast<long double>(t.r);
}

}  // namespace

double DivisionTableau::column_sum_error() const {
  double worst = 0.0;
  for (std::size_t c = 0; c + 2 * r < m; ++c) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < r; ++i) sum += s(i, c);
    worst = std::max(worst, static_cast<double>(std::fabs(sum - a[2 * r + c])));
  }
  return worst;
}

double DivisionTableau::row_cap_excess() const {
  const long double budget = row_budget(*this);
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < r; ++i) {
    long double load = a[r + i];
    for (std::size_t c = 0; c + 2 * r < m; ++c) load += s(i, c);
    worst = std::max(worst, static_cast<double>(load - budget));
  }
  return worst;
}

bool DivisionTableau::satisfies_constraints(double tolerance) const {
  for (double v : s.entries())
    if (v < 0.0) return false;
  return column_sum_error() <= tolerance && row_cap_excess() <= tolerance;
}

DivisionTableau divide(std::span<const double> a, std::size_t r, double slack) {
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  return divide(a, r, slack, order);
}

DivisionTableau divide(std::span<const double> a, std::size_t r, double slack,
                       std::span<const std::size_t> row_order) {
  validate_sequence(a, r, slack, 2 * r);
  if (row_order.size() != r) throw InvalidInput("divide: row order must list every row");
  {
    std::vector<bool> seen(r, false);
    for (std::size_t i : row_order) {
      if (i >= r || seen[i]) throw InvalidInput("divide: row order is not a permutation");
      seen[i] = true;
    }
  }

  const std::size_t m = a.size();
  DivisionTableau t{r, m, Vector(a.begin(), a.end()), slack, DenseMatrix(r, m - 2 * r)};
  const long double budget = row_budget(t);
  // cap_i >= 0 because a_{r+i} <= a_r <= head average.
  std::vector<long double> cap(r);
  for (std::size_t i = 0; i < r; ++i) cap[i] = std::max(0.0L, budget - a[r + i]);

  for (std::size_t c = 0; c + 2 * r < m; ++c) {
    long double remaining = a[2 * r + c];
    for (std::size_t i : row_order) {
      if (remaining <= 0.0L) break;
      const long double take = std::min(remaining, cap[i]);
      if (take <= 0.0L) continue;
      t.s(i, c) = static_cast<double>(take);
      cap[i] -= take;
      remaining -= take;
    }
    if (remaining > 0.0L) {
      // Only rounding can leave mass behind (the precondition guarantees
      // enough total capacity); give it to the roomiest row.
      const auto roomiest = std::max_element(cap.begin(), cap.end()) - cap.begin();
      t.s(roomiest, c) += static_cast<double>(remaining);
      cap[roomiest] -= remaining;
    }
  }
  return t;
}

bool tail_power_check(std::span<const double> a, std::size_t r, double slack, double alpha) {
  if (!std::isfinite(alpha) || alpha < 1.0) throw InvalidInput("tail_power_check: alpha must be >= 1");
  validate_sequence(a, r, slack, r);
  long double head_power = 0.0L;
  long double tail_power = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double v = std::pow(static_cast<long double>(a[i]), static_cast<long double>(alpha));
    (i < r ? head_power : tail_power) += v;
  }
  const long double rr = static_cast<long double>(r);
  const long double mean_root = std::pow(head_power / rr, 1.0L / alpha);
  const long double rhs = rr * std::pow(mean_root + slack / rr, static_cast<long double>(alpha));
  return tail_power <= rhs + 1e-12L;
}

}  // namespace ripkit
