#include "ripkit/rip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ripkit/errors.hpp"
#include "ripkit/harness/rng.hpp"
#include "ripkit/parallel.hpp"

namespace ripkit {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    // out * num / i is exact at every step; guard the multiplication.
    if (out > std::numeric_limits<std::size_t>::max() / num)
      return std::numeric_limits<std::size_t>::max();
    out = out * num / i;
  }
  return out;
}

std::vector<Support> enumerate_supports(std::size_t p, std::size_t k) {
  std::vector<Support> out;
  if (k > p) return out;
  Support s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == p - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::pair<double, double> support_extremes(const DenseMatrix& a, const Support& support) {
  const DenseMatrix sub = a.select_columns(support);
  return sym_eig_extremes(gram(sub));
}

namespace {

RipEstimate reduce_supports(const DenseMatrix& a, const std::vector<Support>& supports,
                            std::size_t k, bool exact) {
  std::vector<std::pair<double, double>> ext(supports.size());
  parallel_for(supports.size(),
               [&](std::size_t i) { ext[i] = support_extremes(a, supports[i]); });
  RipEstimate est;
  est.order = k;
  est.exact = exact;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < supports.size(); ++i) {
    if (ext[i].first < ext[lo].first) lo = i;
    if (ext[i].second > ext[hi].second) hi = i;
  }
  est.low_ratio = ext[lo].first;
  est.high_ratio = ext[hi].second;
  est.witness_low = supports[lo];
  est.witness_high = supports[hi];
  est.value = std::max({0.0, est.high_ratio - 1.0, 1.0 - est.low_ratio});
  return est;
}

void check_order(const DenseMatrix& a, std::size_t k) {
  require_finite(a, "ric");
  if (k == 0 || k > a.cols())
    throw InvalidInput("ric: order must lie in [1, p], got " + std::to_string(k));
}

}  // namespace

RipEstimate ric_exact_signal(const DenseMatrix& a, std::size_t k, std::size_t budget) {
  check_order(a, k);
  const std::size_t count = binomial(a.cols(), k);
  if (count > budget)
    throw BudgetExceeded("ric_exact_signal: " + std::to_string(count) +
                         " supports exceed the budget of " + std::to_string(budget));
  return reduce_supports(a, enumerate_supports(a.cols(), k), k, true);
}

RipEstimate ric_lower_signal_random(const DenseMatrix& a, std::size_t k, std::size_t samples,
                                    std::uint64_t seed) {
  check_order(a, k);
  if (samples == 0) throw InvalidInput("ric_lower_signal_random: samples must be positive");
  Rng rng(seed);
  std::vector<Support> supports(samples);
  std::vector<std::size_t> pool(a.cols());
  for (auto& s : supports) {
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    s.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(s.begin(), s.end());
  }
  return reduce_supports(a, supports, k, false);
}

double rip_ratio(const LinearMap& map, const DenseMatrix& x) {
  const double f = x.frobenius_norm();
  if (f == 0.0) throw InvalidInput("rip_ratio: zero matrix");
  const double img = norm2(map.apply(x));
  return (img * img) / (f * f);
}

namespace {

DenseMatrix retract(const DenseMatrix& x, std::size_t r) {
  SvdFactors f = svd(x);
  for (std::size_t i = r; i < f.singular.size(); ++i) f.singular[i] = 0.0;
  DenseMatrix out = f.reconstruct();
  const double nrm = out.frobenius_norm();
  if (nrm > 0.0) out *= 1.0 / nrm;
  return out;
}

struct Extremes {
  DenseMatrix low, high;
  double low_ratio = std::numeric_limits<double>::infinity();
  double high_ratio = -std::numeric_limits<double>::infinity();

  void offer(const DenseMatrix& x, double ratio) {
    if (ratio < low_ratio) {
      low_ratio = ratio;
      low = x;
    }
    if (ratio > high_ratio) {
      high_ratio = ratio;
      high = x;
    }
  }
  void merge(const Extremes& o) {
    if (o.low_ratio < low_ratio) {
      low_ratio = o.low_ratio;
      low = o.low;
    }
    if (o.high_ratio > high_ratio) {
      high_ratio = o.high_ratio;
      high = o.high;
    }
  }
};

// Walks from `start` in direction sign * gradient for `iters` steps,
// offering every feasible iterate.
void walk(const LinearMap& map, std::size_t r, DenseMatrix x, double sign, double step,
          std::size_t iters, Extremes& best) {
  for (std::size_t t = 0; t < iters; ++t) {
    DenseMatrix grad = map.adjoint(map.apply(x));
    grad *= 2.0 * sign * step;
    x += grad;
    x = retract(x, r);
    if (x.frobenius_norm() == 0.0) return;
    best.offer(x, rip_ratio(map, x));
  }
}

// Continues a walk from the best witness until 100 consecutive steps gain
// less than 1e-15, capped at 50 times the per-start budget.
void polish(const LinearMap& map, std::size_t r, DenseMatrix x, double sign, double step,
            std::size_t iters, Extremes& best) {
  const std::size_t cap = 50 * std::max<std::size_t>(iters, 1);
  double last = rip_ratio(map, x);
  for (std::size_t done = 0; done < cap; done += 100) {
    walk(map, r, x, sign, step, 100, best);
    x = sign > 0 ? best.high : best.low;
    const double now = sign > 0 ? best.high_ratio : best.low_ratio;
    if (std::fabs(now - last) < 1e-15) return;
    last = now;
  }
}

}  // namespace

RipEstimate ric_lower_matrix(const LinearMap& map, std::size_t r, const MatrixRipOptions& options) {
  require_finite(map.rep(), "ric_lower_matrix");
  const std::size_t m = map.m(), n = map.n();
  if (r == 0 || r > std::min(m, n))
    throw InvalidInput("ric_lower_matrix: rank must lie in [1, min(m, n)]");
  for (const auto& s : options.seeds)
    if (s.rows() != m || s.cols() != n)
      throw InvalidInput("ric_lower_matrix: seed has the wrong shape");

  const double norm = spectral_norm(map.rep());
  const double step = norm > 0.0 ? 0.1 / (norm * norm) : 0.1;

  const std::size_t starts = options.seeds.size() + options.restarts;
  std::vector<Extremes> found(starts);
  parallel_for(starts, [&](std::size_t i) {
    DenseMatrix x;
    if (i < options.seeds.size()) {
      x = retract(options.seeds[i], r);
    } else {
      Rng rng(Rng::mix_seed(options.seed, i));
      x = DenseMatrix(m, n);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < n; ++b) x(a, b) = rng.normal();
      x = retract(x, r);
    }
    if (x.frobenius_norm() == 0.0) return;
    found[i].offer(x, rip_ratio(map, x));
    walk(map, r, x, +1.0, step, options.iterations, found[i]);
    walk(map, r, x, -1.0, step, options.iterations, found[i]);
  });

  Extremes best;
  for (const auto& f : found) best.merge(f);
  if (!std::isfinite(best.low_ratio)) throw InvalidInput("ric_lower_matrix: no usable start");
  polish(map, r, best.high, +1.0, step, options.iterations, best);
  polish(map, r, best.low, -1.0, step, options.iterations, best);

  RipEstimate est;
  est.order = r;
  est.exact = false;
  est.low_ratio = best.low_ratio;
  est.high_ratio = best.high_ratio;
  est.witness_low = best.low;
  est.witness_high = best.high;
  est.value = std::max({0.0, best.high_ratio - 1.0, 1.0 - best.low_ratio});
  return est;
}

ScalingReport scaling_lemma_report(const DenseMatrix& a, std::size_t k, std::size_t s,
                                   std::size_t budget) {
  if (k < 2 || s < 2) throw InvalidInput("scaling_lemma_report: k and s must be >= 2");
  ScalingReport rep;
  rep.delta_k = ric_exact_signal(a, k, budget).value;
  rep.delta_sk = ric_exact_signal(a, s * k, budget).value;
  rep.bound = static_cast<double>(2 * s - 1) * rep.delta_k;
  rep.holds = rep.delta_sk <= rep.bound + 1e-9;
  return rep;
}

}  // namespace ripkit
