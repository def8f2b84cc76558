#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ripkit/division.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/harness/rng.hpp"

using namespace ripkit;

namespace {

// Independent checker: recomputes both constraint families from scratch.
bool constraints_hold(const DivisionTableau& t, std::span<const double> a, std::size_t r,
                      double slack, double tol = 1e-12) {
  const std::size_t m = a.size();
  long double head = slack;
  for (std::size_t w = 0; w < r; ++w) head += a[w];
  const long double cap = head / static_cast<long double>(r);
  for (std::size_t j = 2 * r; j < m; ++j) {
    long double col = 0.0L;
    for (std::size_t i = 0; i < r; ++i) {
      if (t.s(i, j - 2 * r) < 0.0) return false;
      col += t.s(i, j - 2 * r);
    }
    if (std::fabs(static_cast<double>(col - a[j])) > tol) return false;
  }
  for (std::size_t i = 0; i < r; ++i) {
    long double load = a[r + i];
    for (std::size_t j = 2 * r; j < m; ++j) load += t.s(i, j - 2 * r);
    if (load > cap + tol) return false;
  }
  return true;
}

// Random feasible instance: nonincreasing, head (plus slack) dominates tail.
struct Instance {
  std::vector<double> a;
  std::size_t r;
  double slack;
};

Instance random_instance(Rng& rng) {
  Instance in;
  in.r = 1 + rng.below(5);
  const std::size_t m = 2 * in.r + rng.below(12);
  in.a.resize(m);
  for (double& e : in.a) e = rng.uniform() < 0.1 ? 0.0 : std::pow(rng.uniform(), 1.0 + 3.0 * rng.uniform());
  std::sort(in.a.begin(), in.a.end(), std::greater<>());
  double head = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < m; ++i) (i < in.r ? head : tail) += in.a[i];
  in.slack = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
  if (head + in.slack < tail) {
    // Shrink the tail (keeping monotonicity) until the precondition holds.
    const double scale = (head + in.slack) / tail * rng.uniform();
    for (std::size_t i = in.r; i < m; ++i) in.a[i] = std::min(in.a[i] * scale, in.a[in.r - 1]);
  }
  return in;
}

}  // namespace

TEST_CASE("divide examples") {
  const DivisionTableau t0 = divide(std::vector<double>{3, 2}, 1);
  CHECK(t0.s.cols() == 0);
  CHECK(t0.satisfies_constraints());

  const std::vector<double> a1{5, 3, 2};
  const DivisionTableau t1 = divide(a1, 1);
  CHECK(t1.s(0, 0) == 2.0);
  CHECK(constraints_hold(t1, a1, 1, 0.0));  // 5 >= 3 + 2

  // Rows are filled in index order: row 1 has capacity 4 - 3 = 1 and takes
  // the whole of a_5.
  const std::vector<double> a2{4, 4, 3, 2, 1};
  const DivisionTableau t2 = divide(a2, 2);
  CHECK(constraints_hold(t2, a2, 2, 0.0));
  CHECK(t2.s(0, 0) == 1.0);
  CHECK(t2.s(1, 0) == 0.0);
  // Reversed order puts it in row 2 instead; both satisfy the constraints.
  const std::vector<std::size_t> rev{1, 0};
  const DivisionTableau t3 = divide(a2, 2, 0.0, rev);
  CHECK(t3.s(0, 0) == 0.0);
  CHECK(t3.s(1, 0) == 1.0);
  CHECK(constraints_hold(t3, a2, 2, 0.0));
}

TEST_CASE("divide rejects bad input") {
  CHECK_THROWS_AS(divide(std::vector<double>{1, 2, 3}, 1), InvalidInput);        // increasing
  CHECK_THROWS_AS(divide(std::vector<double>{3}, 1), InvalidInput);              // m < 2r
  CHECK_THROWS_AS(divide(std::vector<double>{3, 2}, 0), InvalidInput);           // r = 0
  CHECK_THROWS_AS(divide(std::vector<double>{1, -1}, 1), InvalidInput);          // negative
  CHECK_THROWS_AS(divide(std::vector<double>{1, 1, 1}, 1), InfeasibleDivision);  // 1 < 2
  CHECK_NOTHROW(divide(std::vector<double>{1, 1, 1}, 1, 1.0));                   // slack fixes it
  CHECK_THROWS_AS(divide(std::vector<double>{2, 1}, 1, -1.0), InvalidInput);
}

TEST_CASE("divide accepts boundary inputs") {
  const std::vector<double> a{2, 1, 1, 1};  // 2 < 3
  CHECK_THROWS_AS(divide(a, 1), InfeasibleDivision);
  const std::vector<double> b{3, 1, 1, 1};  // 3 == 3
  const DivisionTableau t = divide(b, 1);
  CHECK(constraints_hold(t, b, 1, 0.0));
}

TEST_CASE("10^4 random feasible tableaux satisfy both constraint families") {
  Rng rng(31);
  int ok = 0;
  for (int t = 0; t < 10000; ++t) {
    const Instance in = random_instance(rng);
    const DivisionTableau tab = divide(in.a, in.r, in.slack);
    const bool holds = constraints_hold(tab, in.a, in.r, in.slack);
    CHECK(holds);
    CHECK(tab.satisfies_constraints());
    ok += holds;
    if (in.slack == 0.0)
      for (double alpha : {1.0, 2.0, 3.0}) CHECK(tail_power_check(in.a, in.r, 0.0, alpha));
  }
  CHECK(ok == 10000);
}

TEST_CASE("fill order changes the tableau but not feasibility") {
  Rng rng(32);
  for (int t = 0; t < 500; ++t) {
    const Instance in = random_instance(rng);
    std::vector<std::size_t> order(in.r);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = in.r; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const DivisionTableau a = divide(in.a, in.r, in.slack);
    const DivisionTableau b = divide(in.a, in.r, in.slack, order);
    CHECK(constraints_hold(a, in.a, in.r, in.slack) == constraints_hold(b, in.a, in.r, in.slack));
  }
  CHECK_THROWS_AS(divide(std::vector<double>{3, 2}, 1, 0.0, std::vector<std::size_t>{1}), InvalidInput);
}

TEST_CASE("tail_power_check arithmetic") {
  const std::vector<double> a{5, 3, 2};
  CHECK(tail_power_check(a, 1, 0.0, 2.0));  // 9 + 4 = 13 <= 25
  CHECK(tail_power_check(a, 1, 0.0, 1.0));  // 5 <= 5
  CHECK(tail_power_check(std::vector<double>{1, 1}, 1, 0.0, 3.0));  // 1 <= 1
  CHECK_THROWS_AS(tail_power_check(a, 1, 0.0, 0.5), InvalidInput);
}

TEST_CASE("tail_power_check with slack follows the closed form") {
  // a = (2, 2, 1, 1, 1), r = 2, slack 1, alpha 2: tail 1+1+1 = 3,
  // rhs = 2 * (sqrt((4+4)/2) + 1/2)^2 = 2 * 2.5^2 = 12.5.
  CHECK(tail_power_check(std::vector<double>{2, 2, 1, 1, 1}, 2, 1.0, 2.0));
  // Tight counterexample to the inequality without its hypothesis: a large
  // tail is rejected before the power test.
  CHECK_THROWS_AS(tail_power_check(std::vector<double>{1, 1, 1, 1}, 1, 0.0, 2.0), InfeasibleDivision);
}
