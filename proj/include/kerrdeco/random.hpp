#pragma once

// Seeded random corpus for property checks. Density matrices are
// Hilbert-Schmidt distributed: G G^dag / tr(G G^dag) with G complex Gaussian.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "kerrdeco/linalg.hpp"
#include "kerrdeco/states.hpp"

namespace kerrdeco {

inline constexpr std::uint64_t kDefaultSeed = 42;

// KERRDECO_SEED, falling back to 42 when unset or unparsable.
inline std::uint64_t corpus_seed() {
  if (const char* env = std::getenv("KERRDECO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed = corpus_seed()) : rng_(seed) {}

  complex gaussian() { return {normal_(rng_), normal_(rng_)}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  ComplexMatrix ginibre(std::size_t dim) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian();
    return g;
  }

  DensityMatrix2Q density() {
    const ComplexMatrix g = ginibre(4);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix2Q(0.5 * (rho + rho.adjoint()));
  }

  PureState2Q pure() { return PureState2Q::normalized(gaussian(), gaussian(), gaussian(), gaussian()); }

  // Normalized single-qubit amplitudes (a, b).
  std::pair<complex, complex> qubit() {
    const complex a = gaussian(), b = gaussian();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
  }

  // Haar-ish unitary from Gram-Schmidt on a Ginibre matrix.
  ComplexMatrix unitary(std::size_t dim) {
    ComplexMatrix u = ginibre(dim);
    for (std::size_t col = 0; col < dim; ++col) {
      for (std::size_t prev = 0; prev < col; ++prev) {
        complex dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(u(r, prev)) * u(r, col);
        for (std::size_t r = 0; r < dim; ++r) u(r, col) -= dot * u(r, prev);
      }
      double n = 0.0;
      for (std::size_t r = 0; r < dim; ++r) n += std::norm(u(r, col));
      n = std::sqrt(n);
      for (std::size_t r = 0; r < dim; ++r) u(r, col) /= n;
    }
    return u;
  }

  ComplexMatrix hermitian(std::size_t dim) {
    const ComplexMatrix g = ginibre(dim);
    return 0.5 * (g + g.adjoint());
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace kerrdeco
