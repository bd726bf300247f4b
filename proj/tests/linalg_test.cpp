#include <gtest/gtest.h>

#include <numeric>

#include "kerrdeco/linalg.hpp"
#include "kerrdeco/random.hpp"
#include "kerrdeco/states.hpp"
#include "support/oracles.hpp"

namespace kerrdeco {
namespace {

using testing::oracle::expect_matrix_near;

TEST(Multiply, IdentityAndZero) {
  StateSampler sampler(7);
  const ComplexMatrix m = sampler.ginibre(4);
  expect_matrix_near(multiply(ComplexMatrix::identity(4), m), m, 0.0);
  expect_matrix_near(multiply(m, ComplexMatrix(4)), ComplexMatrix(4), 0.0);
}

TEST(Multiply, PauliProductIsInvolution) {
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  expect_matrix_near(yy * yy, ComplexMatrix::identity(4), 1e-15);
}

TEST(Multiply, DimensionMismatchThrows) {
  EXPECT_THROW(multiply(ComplexMatrix(2), ComplexMatrix(4)), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(2, std::vector<complex>(3)), std::invalid_argument);
}

TEST(Kron, ExamplesByHand) {
  expect_matrix_near(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4), 0.0);
  // sigma_y (x) sigma_y: anti-diagonal (-1, 1, 1, -1) read from the top-right.
  const ComplexMatrix expected{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
  expect_matrix_near(kron(pauli_y(), pauli_y()), expected, 0.0);

  const ComplexMatrix p0{{1, 0}, {0, 0}}, p1{{0, 0}, {0, 1}};
  ComplexMatrix single(4);
  single(1, 1) = 1.0;
  expect_matrix_near(kron(p0, p1), single, 0.0);
}

TEST(Kron, AssociativeAndBilinear) {
  StateSampler sampler(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = sampler.ginibre(2), b = sampler.ginibre(2), c = sampler.ginibre(3);
    expect_matrix_near(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12);
    const complex s = sampler.gaussian();
    const ComplexMatrix b2 = sampler.ginibre(2);
    expect_matrix_near(kron(a, b + s * b2), kron(a, b) + s * kron(a, b2), 1e-12);
    expect_matrix_near(kron(a + s * b2, b), kron(a, b) + s * kron(b2, b), 1e-12);
    expect_matrix_near(kron(a, b), testing::oracle::kron_by_blocks(a, b), 0.0);
  }
}

TEST(PartialTranspose, Examples) {
  const ComplexMatrix mixed = ComplexMatrix::identity(4) * 0.25;
  expect_matrix_near(partial_transpose_first(mixed), mixed, 0.0);

  const ComplexMatrix bell = to_density(bell_psi(Sign::plus)).matrix();
  ComplexMatrix expected(4);
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  expected(0, 3) = 0.5;
  expected(3, 0) = 0.5;
  expect_matrix_near(partial_transpose_first(bell), expected, 1e-15);

  EXPECT_THROW(partial_transpose_first(ComplexMatrix(3)), std::invalid_argument);
}

TEST(PartialTranspose, InvolutionTraceAndHermiticity) {
  StateSampler sampler(3);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix h = sampler.hermitian(4);
    const ComplexMatrix pt = partial_transpose_first(h);
    expect_matrix_near(partial_transpose_first(pt), h, 0.0);
    EXPECT_NEAR(std::abs(pt.trace() - h.trace()), 0.0, 1e-14);
    EXPECT_TRUE(is_hermitian(pt, 1e-14));
    expect_matrix_near(pt, testing::oracle::partial_transpose_by_definition(h), 0.0);
  }
}

TEST(HermitianEigenvalues, Examples) {
  const std::vector<double> diag{1, 2, 3, 4};
  const auto ev = hermitian_eigenvalues(ComplexMatrix::diagonal(diag));
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(ev[i], diag[i]);

  const auto pt = hermitian_eigenvalues(partial_transpose_first(to_density(bell_psi(Sign::plus)).matrix()));
  const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(pt[i], expected[i], 1e-14);

  for (double v : hermitian_eigenvalues(ComplexMatrix::identity(4) * 0.25)) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST(HermitianEigenvalues, TraceAndSquaredTraceInvariants) {
  StateSampler sampler(5);
  for (std::size_t dim : {2u, 4u, 9u, 16u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const ComplexMatrix h = sampler.hermitian(dim);
      const auto ev = hermitian_eigenvalues(h);
      EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
      const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
      const double sum_sq = std::inner_product(ev.begin(), ev.end(), ev.begin(), 0.0);
      EXPECT_NEAR(sum, h.trace().real(), 1e-10);
      EXPECT_NEAR(sum_sq, (h * h).trace().real(), 1e-10);
    }
  }
}

TEST(HermitianEigensystem, VectorsDiagonalize) {
  StateSampler sampler(6);
  const ComplexMatrix h = sampler.hermitian(5);
  const auto es = hermitian_eigensystem(h);
  const ComplexMatrix d = es.vectors.adjoint() * h * es.vectors;
  expect_matrix_near(d, ComplexMatrix::diagonal(es.values), 1e-12);
  expect_matrix_near(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(5), 1e-12);
}

TEST(GeneralEigenvalues, MatchesHermitianSolverOnSimilarMatrices) {
  StateSampler sampler(8);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = sampler.hermitian(4);
    const ComplexMatrix u = sampler.unitary(4);
    const ComplexMatrix similar = u * h * u.adjoint();
    auto ev = eigenvalues(similar);
    std::vector<double> re;
    for (auto v : ev) {
      EXPECT_NEAR(v.imag(), 0.0, 1e-12);
      re.push_back(v.real());
    }
    std::sort(re.begin(), re.end());
    const auto expected = hermitian_eigenvalues(h);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(re[i], expected[i], 1e-12);
  }
}

TEST(GeneralEigenvalues, NonNormalTriangular) {
  const ComplexMatrix m{{1, 5, 2}, {0, complex(0, 2), 7}, {0, 0, -3}};
  auto ev = eigenvalues(m);
  std::sort(ev.begin(), ev.end(), [](complex a, complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(std::abs(ev[0] - complex(-3, 0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(ev[1] - complex(0, 2)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(ev[2] - complex(1, 0)), 0.0, 1e-13);
}

TEST(NonnegSpectrum, Examples) {
  const auto bell = to_density(bell_psi(Sign::plus)).matrix();
  const auto s1 = nonneg_spectrum_of_product(testing::oracle::spin_flip_product(bell));
  const std::vector<double> e1{0, 0, 0, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s1[i], e1[i], 1e-12);

  const ComplexMatrix mixed = ComplexMatrix::identity(4) * 0.25;
  for (double v : nonneg_spectrum_of_product(testing::oracle::spin_flip_product(mixed)))
    EXPECT_NEAR(v, 1.0 / 16.0, 1e-15);

  ComplexMatrix zero_zero(4);
  zero_zero(0, 0) = 1.0;
  for (double v : nonneg_spectrum_of_product(testing::oracle::spin_flip_product(zero_zero))) EXPECT_EQ(v, 0.0);
}

TEST(NonnegSpectrum, DegenerateWernerSpectrumIsAccepted) {
  // Triple eigenvalue ((1-p)/4)^2: a characteristic-polynomial solver loses
  // ~1e-6 here; the product must still pass the 1e-9 noise gate.
  for (double p : {0.0, 0.01, 0.3, 0.8}) {
    const auto rho = werner(WernerKind::psi, Sign::minus, p).matrix();
    const auto s = nonneg_spectrum_of_product(testing::oracle::spin_flip_product(rho));
    const double small = (1.0 - p) * (1.0 - p) / 16.0, big = (1.0 + 3.0 * p) * (1.0 + 3.0 * p) / 16.0;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(s[i], small, 1e-13);
    EXPECT_NEAR(s[3], big, 1e-13);
  }
}

TEST(NonnegSpectrum, RejectsUnphysicalInput) {
  const ComplexMatrix negative = ComplexMatrix::diagonal(std::vector<double>{-0.1, 0.2, 0.3, 0.6});
  EXPECT_THROW(nonneg_spectrum_of_product(negative), std::domain_error);
  ComplexMatrix rotation(4);
  rotation(0, 1) = -1.0;
  rotation(1, 0) = 1.0;  // eigenvalues +-i
  EXPECT_THROW(nonneg_spectrum_of_product(rotation), std::domain_error);
}

TEST(NonnegSpectrum, AgreesWithSymmetrizedFormulation) {
  StateSampler sampler(corpus_seed());
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = sampler.density().matrix();
    const auto spectrum = nonneg_spectrum_of_product(testing::oracle::spin_flip_product(rho));
    const auto expected = testing::oracle::symmetrized_spin_flip_spectrum(rho);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(spectrum[i], expected[i], 1e-8);
  }
}

TEST(PartialTranspose, AtMostOneNegativeEigenvalue) {
  StateSampler sampler(corpus_seed());
  for (int trial = 0; trial < 500; ++trial) {
    const auto ev = hermitian_eigenvalues(partial_transpose_first(sampler.density().matrix()));
    EXPECT_GE(ev[1], -1e-12);
  }
}

TEST(TraceDistance, Examples) {
  StateSampler sampler(9);
  const DensityMatrix2Q rho = sampler.density();
  EXPECT_NEAR(trace_distance(rho.matrix(), rho.matrix()), 0.0, 1e-15);

  ComplexMatrix p00(4), p11(4);
  p00(0, 0) = 1.0;
  p11(3, 3) = 1.0;
  EXPECT_NEAR(trace_distance(p00, p11), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(ComplexMatrix::identity(4) * 0.25, p00), 0.75, 1e-15);

  const DensityMatrix2Q other = sampler.density();
  EXPECT_NEAR(trace_distance(rho.matrix(), other.matrix()), trace_distance(other.matrix(), rho.matrix()), 1e-14);
  EXPECT_THROW(trace_distance(ComplexMatrix(2), ComplexMatrix(4)), std::invalid_argument);
}

}  // namespace
}  // namespace kerrdeco
