#include <gtest/gtest.h>

#include "kerrdeco/measures.hpp"
#include "kerrdeco/random.hpp"
#include "support/oracles.hpp"

namespace kerrdeco {
namespace {

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(to_density(bell_psi(Sign::minus))), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(maximally_mixed()), 0.0, 1e-15);
  EXPECT_NEAR(concurrence(werner(WernerKind::psi, Sign::minus, 0.8)), 0.7, 1e-12);
}

TEST(Negativity, Examples) {
  EXPECT_NEAR(negativity(to_density(bell_phi(Sign::plus))), 1.0, 1e-12);
  EXPECT_NEAR(negativity(to_density(separable(1, 0, 1, 0))), 0.0, 0.0);
  EXPECT_NEAR(negativity(werner(WernerKind::phi, Sign::plus, 0.8)), 0.7, 1e-12);
}

TEST(Eof, Examples) {
  EXPECT_DOUBLE_EQ(eof(1.0), 1.0);
  EXPECT_DOUBLE_EQ(eof(0.0), 0.0);
  // H((1 + sqrt(3)/2)/2), evaluated independently in double precision
  EXPECT_NEAR(eof(0.5), 0.354578902665270, 1e-14);
  EXPECT_NEAR(eof(0.5), testing::oracle::binary_entropy(0.5 * (1.0 + std::sqrt(0.75))), 1e-14);
  EXPECT_THROW(eof(1.1), std::invalid_argument);
  EXPECT_THROW(eof(-0.01), std::invalid_argument);
}

TEST(Eof, MonotoneOnGrid) {
  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = eof(k / 1000.0);
    EXPECT_GT(v, prev) << "c=" << k / 1000.0;
    prev = v;
  }
}

TEST(LogNegativity, Examples) {
  EXPECT_DOUBLE_EQ(log_negativity(1.0), 1.0);
  EXPECT_DOUBLE_EQ(log_negativity(0.0), 0.0);
  EXPECT_NEAR(log_negativity(0.5), 0.584962500721156, 1e-15);
  EXPECT_THROW(log_negativity(1.5), std::invalid_argument);
}

TEST(PureConcurrence, Examples) {
  EXPECT_NEAR(pure_concurrence(bell_psi(Sign::plus)), 1.0, 1e-15);
  EXPECT_NEAR(pure_concurrence(separable(0.6, 0.8, complex(0, 1), 0)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(pure_concurrence(bell_like()), 1.0);
}

TEST(Report, Examples) {
  const auto mes = report(to_density(bell_phi(Sign::minus)));
  EXPECT_NEAR(mes.concurrence, 1.0, 1e-12);
  EXPECT_NEAR(mes.negativity, 1.0, 1e-12);
  EXPECT_NEAR(mes.eof, 1.0, 1e-9);
  EXPECT_NEAR(mes.log_negativity, 1.0, 1e-12);

  const auto mixed = report(maximally_mixed());
  EXPECT_EQ(mixed.concurrence, 0.0);
  EXPECT_EQ(mixed.negativity, 0.0);
  EXPECT_EQ(mixed.eof, 0.0);
  EXPECT_EQ(mixed.log_negativity, 0.0);

  const auto w = report(werner(WernerKind::like, Sign::plus, 0.8));
  EXPECT_NEAR(w.concurrence, 0.7, 1e-12);
  EXPECT_NEAR(w.negativity, 0.7, 1e-12);
  EXPECT_NEAR(w.eof, 0.591857407170677, 1e-11);
  EXPECT_NEAR(w.log_negativity, 0.765534746362977, 1e-12);
}

TEST(Measures, PureStatesAgreeWithDeterminantFormula) {
  StateSampler sampler(corpus_seed());
  for (int trial = 0; trial < 1000; ++trial) {
    const auto psi = sampler.pure();
    const auto rho = to_density(psi);
    const double expected = pure_concurrence(psi);
    EXPECT_NEAR(concurrence(rho), expected, 1e-9);
    EXPECT_NEAR(negativity(rho), expected, 1e-9);
  }
}

TEST(Measures, NegativityNeverExceedsConcurrence) {
  StateSampler sampler(corpus_seed());
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = sampler.density();
    const auto r = report(rho);
    EXPECT_LE(r.negativity, r.concurrence + 1e-9);
    for (double v : {r.concurrence, r.negativity, r.eof, r.log_negativity}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Measures, ConcurrenceMatchesHermitianRoute) {
  StateSampler sampler(corpus_seed() + 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rho = sampler.density();
    EXPECT_NEAR(concurrence(rho), testing::oracle::concurrence_symmetrized(rho.matrix()), 1e-8);
  }
}

TEST(Measures, LocalUnitaryInvariance) {
  StateSampler sampler(corpus_seed() + 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = sampler.density();
    const ComplexMatrix u = kron(sampler.unitary(2), sampler.unitary(2));
    const DensityMatrix2Q rotated(u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(concurrence(rotated), concurrence(rho), 1e-9);
    EXPECT_NEAR(negativity(rotated), negativity(rho), 1e-9);
  }
}

TEST(Measures, NegativityIndependentOfTransposedQubit) {
  StateSampler sampler(corpus_seed() + 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = sampler.density();
    double neg_second = 0.0;
    for (double mu : hermitian_eigenvalues(partial_transpose_second(rho.matrix())))
      if (mu < 0.0) neg_second -= mu;
    EXPECT_NEAR(negativity(rho), 2.0 * neg_second, 1e-12);
  }
}

}  // namespace
}  // namespace kerrdeco
