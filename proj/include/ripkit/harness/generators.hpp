#pragma once

// Random instance generators. All draws come from the caller's Rng, so an
// instance is a deterministic function of the seed.

#include <cstddef>
#include <string_view>

#include "ripkit/harness/rng.hpp"
#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

enum class Amplitude { unit, gaussian };
Amplitude parse_amplitude(std::string_view name);

// n x p with i.i.d. N(0, 1/n) entries (unit columns in expectation).
DenseMatrix gaussian_matrix(std::size_t n, std::size_t p, Rng& rng);

// Scales every nonzero column to unit l2 norm.
DenseMatrix normalize_columns(DenseMatrix a);

// Gaussian start followed by alternating projections between the Gram
// matrices with off-diagonals clipped to +-coherence and the rank-n PSD
// cone; columns are unit-norm on return. Plain Gaussian matrices at desk
// scale almost never have delta_2 < 1/3 (the column norms alone fluctuate by
// about sqrt(2/n)), so the sufficiency experiments draw from this ensemble
// and then compute delta exactly.
DenseMatrix incoherent_frame(std::size_t n, std::size_t p, double coherence, Rng& rng,
                             std::size_t iterations = 60);

// Exactly k nonzeros on a uniformly random support; magnitudes 1 with random
// signs (unit) or N(0, 1) (gaussian).
Vector sparse_signal(std::size_t p, std::size_t k, Amplitude amplitude, Rng& rng);

// q x (m n) representation with i.i.d. N(0, 1/q) entries.
LinearMap gaussian_map(std::size_t q, std::size_t m, std::size_t n, Rng& rng);

// Product of m x r and r x n standard Gaussian factors.
DenseMatrix low_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng);

// i.i.d. N(0, sigma^2).
Vector gaussian_noise(std::size_t dim, double sigma, Rng& rng);

// Uniform direction scaled to l2 norm `radius`.
Vector sphere_point(std::size_t dim, double radius, Rng& rng);

// Haar-distributed d x d orthogonal matrix (Gram-Schmidt of a Gaussian
// matrix; QR with a positive R diagonal).
DenseMatrix random_orthogonal(std::size_t d, Rng& rng);

}  // namespace ripkit
