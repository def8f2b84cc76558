#include "ripkit/harness/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ripkit/errors.hpp"

namespace ripkit {

Amplitude parse_amplitude(std::string_view name) {
  if (name == "unit") return Amplitude::unit;
  if (name == "gaussian") return Amplitude::gaussian;
  throw InvalidInput("unknown amplitude '" + std::string(name) + "'");
}

namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw InvalidInput(std::string(what) + " must be positive");
}

}  // namespace

DenseMatrix gaussian_matrix(std::size_t n, std::size_t p, Rng& rng) {
  require_positive(n, "gaussian_matrix: n");
  require_positive(p, "gaussian_matrix: p");
  DenseMatrix a(n, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) a(i, j) = scale * rng.normal();
  return a;
}

DenseMatrix normalize_columns(DenseMatrix a) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double nrm = norm2(a.column(j));
    if (nrm == 0.0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= nrm;
  }
  return a;
}

DenseMatrix incoherent_frame(std::size_t n, std::size_t p, double coherence, Rng& rng,
                             std::size_t iterations) {
  if (!(coherence > 0.0 && coherence < 1.0))
    throw InvalidInput("incoherent_frame: coherence must lie in (0, 1)");
  DenseMatrix a = normalize_columns(gaussian_matrix(n, p, rng));
  if (n >= p) return a;
  for (std::size_t it = 0; it < iterations; ++it) {
    DenseMatrix g = gram(a);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        g(i, j) = i == j ? 1.0 : std::clamp(g(i, j), -coherence, coherence);
    // Nearest PSD matrix of rank <= n, factored as A^T A.
    const SymEigen e = sym_eig(g);
    DenseMatrix next(n, p);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t col = p - 1 - t;  // values are ascending
      const double lam = std::max(0.0, e.values[col]);
      const double s = std::sqrt(lam);
      for (std::size_t j = 0; j < p; ++j) next(t, j) = s * e.vectors(j, col);
    }
    a = normalize_columns(std::move(next));
  }
  return a;
}

Vector sparse_signal(std::size_t p, std::size_t k, Amplitude amplitude, Rng& rng) {
  require_positive(p, "sparse_signal: p");
  if (k > p) throw InvalidInput("sparse_signal: k exceeds p");
  std::vector<std::size_t> pool(p);
  for (std::size_t i = 0; i < p; ++i) pool[i] = i;
  Vector out(p, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.below(p - i)]);
    double v;
    if (amplitude == Amplitude::unit) {
      v = rng.uniform() < 0.5 ? -1.0 : 1.0;
    } else {
      do v = rng.normal();
      while (v == 0.0);
    }
    out[pool[i]] = v;
  }
  return out;
}

LinearMap gaussian_map(std::size_t q, std::size_t m, std::size_t n, Rng& rng) {
  require_positive(q, "gaussian_map: q");
  require_positive(m, "gaussian_map: m");
  require_positive(n, "gaussian_map: n");
  DenseMatrix rep(q, m * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < m * n; ++j) rep(i, j) = scale * rng.normal();
  return LinearMap(std::move(rep), m, n);
}

DenseMatrix low_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
  require_positive(m, "low_rank: m");
  require_positive(n, "low_rank: n");
  if (r > std::min(m, n)) throw InvalidInput("low_rank: r exceeds min(m, n)");
  DenseMatrix left(m, r), right(r, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) left(i, j) = rng.normal();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) right(i, j) = rng.normal();
  return left * right;
}

Vector gaussian_noise(std::size_t dim, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidInput("gaussian_noise: sigma must be >= 0");
  Vector out(dim);
  for (double& e : out) e = sigma * rng.normal();
  return out;
}

Vector sphere_point(std::size_t dim, double radius, Rng& rng) {
  require_positive(dim, "sphere_point: dim");
  Vector v = gaussian_noise(dim, 1.0, rng);
  const double nrm = norm2(v);
  return scaled(v, radius / nrm);
}

DenseMatrix random_orthogonal(std::size_t d, Rng& rng) {
  require_positive(d, "random_orthogonal: d");
  DenseMatrix q(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q(i, j) = rng.normal();
  // Modified Gram-Schmidt, applied twice for orthogonality to rounding.
  for (std::size_t pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < d; ++j) {
      Vector c = q.column(j);
      for (std::size_t t = 0; t < j; ++t) {
        const Vector prev = q.column(t);
        axpy(-dot(prev, c), prev, c);
      }
      q.set_column(j, scaled(c, 1.0 / norm2(c)));
    }
  }
  return q;
}

}  // namespace ripkit
