#include <gtest/gtest.h>

#include "kerrdeco/evolution.hpp"
#include "kerrdeco/random.hpp"
#include "support/oracles.hpp"

namespace kerrdeco {
namespace {

using testing::oracle::expect_matrix_near;

std::vector<InitialState> all_families(StateSampler& sampler) {
  const double r = 1.0 / std::sqrt(2.0);
  return {
      init::BellPsi{Sign::plus},     init::BellPhi{Sign::minus},      init::BellLike{},
      init::PlusPlus{},              init::Separable{{r, complex(0, r), 0.6, 0.8}},
      init::WernerPsi{Sign::minus, 0.8}, init::WernerPhi{Sign::plus, 0.6}, init::WernerLike{0.5},
      init::CustomPure{sampler.pure()},  init::CustomMixed{sampler.density()},
  };
}

TEST(RjFactor, Examples) {
  const CavityParams params{1.5, 2.5, 3.0, -1.0, 7.0, 0.0, 0.0};
  const double t = 0.37;
  // diagonal, no transfer: exp(-gamma_j m_j t)
  for (int m1 = 0; m1 <= 1; ++m1)
    for (int m2 = 0; m2 <= 1; ++m2) {
      EXPECT_NEAR(std::abs(rj_factor(1, m1, m1, m2, m2, 0, params, t) - std::exp(-1.5 * m1 * t)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(rj_factor(2, m1, m1, m2, m2, 0, params, t) - std::exp(-2.5 * m2 * t)), 0.0, 1e-15);
    }
  EXPECT_EQ(rj_factor(1, 1, 0, 0, 1, 0, params, 0.0), complex(1.0));
  EXPECT_EQ(rj_factor(2, 0, 0, 0, 0, 1, params, 0.0), complex(0.0));

  const CavityParams lossless{0.0, 0.0, 3.0, -1.0, 7.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(rj_factor(1, 1, 0, 0, 1, 0, lossless, t)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rj_factor(2, 1, 0, 0, 1, 0, lossless, t)), 1.0, 1e-15);
}

TEST(RjFactor, DegenerateTransferUsesSeries) {
  // gamma = 0 with equal indices: x = 0 exactly, transfer factor is gamma t = 0
  const CavityParams lossless{0.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0};
  EXPECT_EQ(rj_factor(1, 0, 0, 0, 0, 1, lossless, 0.5), complex(0.0));
  // tiny rate: series and closed form agree
  const CavityParams slow{1e-10, 1e-10, 0.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(rj_factor(1, 0, 0, 0, 0, 1, slow, 1.0) - complex(1e-10)), 0.0, 1e-20);
}

TEST(RjFactor, RejectsBadIndices) {
  const auto p = CavityParams::symmetric(1.0, 1.0);
  EXPECT_THROW(rj_factor(3, 0, 0, 0, 0, 0, p, 0.1), std::invalid_argument);
  EXPECT_THROW(rj_factor(1, 2, 0, 0, 0, 0, p, 0.1), std::invalid_argument);
  EXPECT_THROW(rj_factor(1, 0, 0, 0, 0, 0, p, -0.1), std::invalid_argument);
}

TEST(Propagate, IdentityAtTimeZero) {
  StateSampler sampler(12);
  const auto rho = sampler.density();
  EXPECT_EQ(propagate(rho, CavityParams{1, 2, 3, 4, 5, 0, 0}, 0.0).matrix(), rho.matrix());
}

TEST(Propagate, BellPsiMatchesClosedFormMatrix) {
  const CavityParams params{4.0, 4.0, 3.0, -2.0, 20.0, 0.0, 0.0};
  const DensityMatrix2Q rho0 = to_density(bell_psi(Sign::plus));
  for (double t : {0.05, 0.3, 0.9}) {
    const double g = std::exp(-4.0 * t);
    ComplexMatrix expected(4);
    expected(0, 0) = 1.0 - g;
    expected(1, 1) = expected(2, 2) = g / 2.0;
    expected(1, 2) = g / 2.0 * std::exp(complex(0.0, 5.0 * t));
    expected(2, 1) = std::conj(expected(1, 2));
    expect_matrix_near(propagate(rho0, params, t).matrix(), expected, 1e-12);
  }
}

TEST(Propagate, BellLikeMatchesClosedFormMatrix) {
  for (double gamma : {0.0, 1.0, 4.0})
    for (double t : {0.05, 0.3, 0.9}) {
      const auto params = CavityParams::symmetric(gamma, 20.0);
      expect_matrix_near(propagate(to_density(bell_like()), params, t).matrix(),
                         closed_form_rho(init::BellLike{}, params, t).matrix(), 1e-12);
    }
}

TEST(Propagate, RefusesThermalReservoir) {
  CavityParams params = CavityParams::symmetric(1.0, 1.0);
  params.nbar2 = 0.1;
  EXPECT_THROW(propagate(maximally_mixed(), params, 0.1), std::invalid_argument);
}

TEST(Propagate, TraceHermiticityPositivity) {
  StateSampler sampler(corpus_seed());
  for (int trial = 0; trial < 50; ++trial) {
    const CavityParams params{sampler.uniform(0.1, 10), sampler.uniform(0.1, 10), sampler.uniform(-20, 20),
                              sampler.uniform(-20, 20), sampler.uniform(-20, 20), 0.0, 0.0};
    const auto rho0 = sampler.density();
    const double t = sampler.uniform(0.0, 10.0 / std::max(params.gamma1, params.gamma2));
    const ComplexMatrix m = propagate(rho0, params, t).matrix();
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(m, 1e-12));
    EXPECT_GE(hermitian_eigenvalues(m)[0], -1e-10);
  }
}

TEST(Propagate, Semigroup) {
  StateSampler sampler(corpus_seed() + 1);
  for (int trial = 0; trial < 30; ++trial) {
    const CavityParams params{sampler.uniform(0, 5), sampler.uniform(0, 5), sampler.uniform(-20, 20),
                              sampler.uniform(-20, 20), sampler.uniform(-20, 20), 0.0, 0.0};
    const auto rho0 = sampler.density();
    const double t1 = sampler.uniform(0, 0.5), t2 = sampler.uniform(0, 0.5);
    expect_matrix_near(propagate(propagate(rho0, params, t1), params, t2).matrix(),
                       propagate(rho0, params, t1 + t2).matrix(), 1e-10);
  }
}

TEST(Propagate, LosslessEvolutionIsUnitary) {
  StateSampler sampler(corpus_seed() + 2);
  for (int trial = 0; trial < 30; ++trial) {
    const CavityParams params{0, 0, sampler.uniform(-20, 20), sampler.uniform(-20, 20), sampler.uniform(-20, 20),
                              0, 0};
    const auto rho = propagate(to_density(sampler.pure()), params, sampler.uniform(0, 3));
    EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
  }
}

TEST(Propagate, EmptiesCavityAtLongTimes) {
  ComplexMatrix vacuum(4);
  vacuum(0, 0) = 1.0;
  const std::vector<InitialState> families{init::BellPsi{Sign::plus}, init::BellPhi{Sign::minus},
                                           init::WernerPsi{Sign::plus, 0.8}, init::WernerPhi{Sign::minus, 0.8}};
  for (double gamma : {1.0, 4.0, 10.0})
    for (const auto& s : families) {
      const auto rho = propagate(initial_density(s), CavityParams::symmetric(gamma, 20.0, 3.0), 30.0 / gamma);
      EXPECT_LE(trace_distance(rho.matrix(), vacuum), 1e-10) << family_name(s);
    }
}

TEST(Propagate, VacuumCoherencesDecayAtHalfRate) {
  // <00|rho|01> carries exp(-gamma t / 2), so generic states need gamma t = 60
  StateSampler sampler(corpus_seed() + 3);
  ComplexMatrix vacuum(4);
  vacuum(0, 0) = 1.0;
  for (double gamma : {1.0, 4.0, 10.0}) {
    const auto rho0 = sampler.density();
    const auto params = CavityParams::symmetric(gamma, 20.0, 3.0);
    EXPECT_LE(trace_distance(propagate(rho0, params, 60.0 / gamma).matrix(), vacuum), 1e-10);
    const auto plain = CavityParams::symmetric(gamma, 20.0);
    const complex c = propagate(to_density(bell_like()), plain, 30.0 / gamma)(0, 1);
    EXPECT_GT(std::abs(c), 1e-8);
    EXPECT_NEAR(std::abs(c - closed_form_rho(init::BellLike{}, plain, 30.0 / gamma)(0, 1)), 0.0, 1e-15);
  }
}

TEST(Propagate, AgreesWithMasterEquationForAllFamilies) {
  StateSampler sampler(corpus_seed() + 4);
  for (int draw = 0; draw < 3; ++draw) {
    const CavityParams params{sampler.uniform(0.5, 10), sampler.uniform(0.5, 10), sampler.uniform(-10, 10),
                              sampler.uniform(-10, 10), sampler.uniform(-20, 20), 0.0, 0.0};
    for (const auto& family : all_families(sampler)) {
      const auto traj_a = trajectory(family, params, 0.5, 6, Engine::analytic);
      const auto traj_o = trajectory(family, params, 0.5, 6, Engine::oracle);
      for (std::size_t k = 0; k < traj_a.times.size(); ++k)
        EXPECT_LE(trace_distance(traj_a.states[k].matrix(), traj_o.states[k].matrix()), 1e-8)
            << family_name(family) << " t=" << traj_a.times[k];
    }
  }
}

TEST(Propagate, FlippedKerrPhaseDisagreesWithMasterEquation) {
  const auto params = CavityParams::symmetric(4.0, 20.0);
  const auto rho0 = to_density(bell_phi(Sign::plus));
  const ComplexMatrix oracle = qubit_block(integrate_master(embed_qubits(rho0.matrix(), 2), params, 0.05, 2), 2);
  PropagatorOptions flipped;
  flipped.kerr_phase_sign = -1.0;
  EXPECT_GT(trace_distance(propagate(rho0, params, 0.05, flipped).matrix(), oracle), 1e-3);
  EXPECT_LT(trace_distance(propagate(rho0, params, 0.05).matrix(), oracle), 1e-8);
}

TEST(IntegrateMaster, IdentityWithoutGenerator) {
  StateSampler sampler(13);
  const ComplexMatrix rho = embed_qubits(sampler.density().matrix(), 3);
  expect_matrix_near(integrate_master(rho, CavityParams{}, 0.7, 3), rho, 0.0);
}

TEST(IntegrateMaster, BellPsiAtShortTimes) {
  const auto params = CavityParams::symmetric(4.0, 20.0);
  const auto rho0 = to_density(bell_psi(Sign::plus));
  for (double t : {0.01, 0.05, 0.1}) {
    const ComplexMatrix oracle = qubit_block(integrate_master(embed_qubits(rho0.matrix(), 2), params, t, 2), 2);
    EXPECT_LE(trace_distance(oracle, propagate(rho0, params, t).matrix()), 1e-8);
  }
}

TEST(IntegrateMaster, SingleModeAmplitudeDamping) {
  ComplexMatrix excited(4);
  excited(2, 2) = 1.0;  // |1><1| (x) |0><0|
  const CavityParams params{2.5, 1.0, 0, 0, 0, 0, 0};
  for (double t : {0.1, 0.4, 1.0}) {
    const ComplexMatrix rho = integrate_master(excited, params, t, 2);
    EXPECT_NEAR(rho(2, 2).real(), std::exp(-2.5 * t), 1e-9);
    EXPECT_NEAR(rho(0, 0).real(), 1.0 - std::exp(-2.5 * t), 1e-9);
  }
}

TEST(IntegrateMaster, TracePreservedWithThermalReservoir) {
  const CavityParams params{2.0, 3.0, 1.0, 1.0, 5.0, 0.2, 0.1};
  const ComplexMatrix rho = integrate_master(embed_qubits(to_density(bell_phi(Sign::plus)).matrix(), 4),
                                             params, 0.5, 4);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
  EXPECT_TRUE(is_hermitian(rho, 1e-10));
}

TEST(IntegrateMaster, HalvedStepAgrees) {
  const auto params = CavityParams::symmetric(4.0, 20.0, 2.0);
  const ComplexMatrix rho0 = embed_qubits(to_density(bell_like()).matrix(), 2);
  const double step = default_oracle_step(params, 2);
  EXPECT_LE(trace_distance(integrate_master(rho0, params, 0.3, 2, step),
                           integrate_master(rho0, params, 0.3, 2, step / 2.0)),
            1e-9);
}

TEST(IntegrateMaster, StabilityGuardAndValidation) {
  const auto params = CavityParams::symmetric(4.0, 20.0);
  EXPECT_THROW(LindbladIntegrator(params, 2, 0.01), std::invalid_argument);
  EXPECT_NO_THROW(LindbladIntegrator(params, 2));
  EXPECT_THROW(LindbladIntegrator(params, 1), std::invalid_argument);
  EXPECT_THROW(integrate_master(ComplexMatrix(4), params, 0.1, 3), std::invalid_argument);
  CavityParams negative = params;
  negative.gamma1 = -1.0;
  EXPECT_THROW(LindbladIntegrator(negative, 2), std::invalid_argument);
}

TEST(ClosedForm, MatchesPropagatorWhereDefined) {
  StateSampler sampler(corpus_seed() + 5);
  const std::vector<InitialState> self_coupled{init::BellPsi{Sign::plus}, init::BellPhi{Sign::minus},
                                               init::WernerPsi{Sign::plus, 0.7},
                                               init::WernerPhi{Sign::minus, 0.9}};
  const std::vector<InitialState> cross_only{init::BellLike{}, init::PlusPlus{}, init::WernerLike{0.6}};
  for (int draw = 0; draw < 10; ++draw) {
    const double gamma = sampler.uniform(0, 10), chi12 = sampler.uniform(-30, 30);
    const double t = sampler.uniform(0, 1);
    const CavityParams with_self{gamma, gamma, sampler.uniform(-10, 10), sampler.uniform(-10, 10), chi12, 0, 0};
    for (const auto& s : self_coupled)
      expect_matrix_near(closed_form_rho(s, with_self, t).matrix(),
                         propagate(initial_density(s), with_self, t).matrix(), 1e-10);
    const auto plain = CavityParams::symmetric(gamma, chi12);
    for (const auto& s : cross_only)
      expect_matrix_near(closed_form_rho(s, plain, t).matrix(), propagate(initial_density(s), plain, t).matrix(),
                         1e-10);
  }
}

TEST(ClosedForm, ReducesToInitialStateAtTimeZero) {
  const CavityParams params = CavityParams::symmetric(4.0, 20.0);
  for (const InitialState& s : std::vector<InitialState>{init::BellPsi{Sign::minus}, init::BellPhi{Sign::plus},
                                                         init::BellLike{}, init::PlusPlus{},
                                                         init::WernerPsi{Sign::plus, 0.3},
                                                         init::WernerPhi{Sign::plus, 0.3}, init::WernerLike{0.3}})
    expect_matrix_near(closed_form_rho(s, params, 0.0).matrix(), initial_density(s).matrix(), 1e-15);
}

TEST(ClosedForm, WernerPhiClosedFormMatrix) {
  const double gamma = 4.0, chi12 = 20.0, p = 0.8, t = 0.2;
  const double g = std::exp(-gamma * t), x = (1.0 + p) * g * g / 2.0;
  ComplexMatrix expected(4);
  expected(0, 0) = 1.0 - g + x / 2.0;
  expected(1, 1) = expected(2, 2) = (g - x) / 2.0;
  expected(3, 3) = x / 2.0;
  expected(0, 3) = p * g / 2.0 * std::exp(complex(0.0, 2.0 * chi12 * t));
  expected(3, 0) = std::conj(expected(0, 3));
  expect_matrix_near(closed_form_rho(init::WernerPhi{Sign::plus, p}, CavityParams::symmetric(gamma, chi12), t).matrix(),
                     expected, 1e-15);
}

TEST(ClosedForm, RejectsUnsupportedCombinations) {
  const auto params = CavityParams::symmetric(1.0, 2.0);
  EXPECT_THROW(closed_form_rho(init::Separable{{1, 0, 1, 0}}, params, 0.1), std::invalid_argument);
  EXPECT_THROW(closed_form_rho(init::BellLike{}, CavityParams::symmetric(1.0, 2.0, 0.5), 0.1), std::invalid_argument);
  CavityParams unequal = params;
  unequal.gamma2 = 2.0;
  EXPECT_THROW(closed_form_rho(init::BellPsi{Sign::plus}, unequal, 0.1), std::invalid_argument);
}

TEST(Trajectory, GridStructure) {
  const auto params = CavityParams::symmetric(4.0, 20.0);
  const auto traj = trajectory(init::BellPhi{Sign::plus}, params, 0.8, 3, Engine::analytic);
  ASSERT_EQ(traj.times.size(), 3u);
  EXPECT_EQ(traj.times[0], 0.0);
  EXPECT_EQ(traj.times[1], 0.4);
  EXPECT_EQ(traj.times[2], 0.8);
  EXPECT_EQ(traj.states[0].matrix(), to_density(bell_phi(Sign::plus)).matrix());
  expect_matrix_near(traj.states[2].matrix(), propagate(traj.states[0], params, 0.8).matrix(), 1e-15);
  EXPECT_EQ(traj.initial, "bell_phi");
  EXPECT_THROW(uniform_grid(1.0, 1), std::invalid_argument);
  EXPECT_THROW(uniform_grid(0.0, 5), std::invalid_argument);
}

TEST(Trajectory, ClosedFormVersusAnalytic) {
  const auto params = CavityParams::symmetric(4.0, 20.0);
  const auto a = trajectory(init::WernerLike{0.8}, params, 1.0, 41, Engine::analytic);
  const auto c = trajectory(init::WernerLike{0.8}, params, 1.0, 41, Engine::closed_form);
  for (std::size_t k = 0; k < a.times.size(); ++k)
    EXPECT_LT(trace_distance(a.states[k].matrix(), c.states[k].matrix()), 1e-10);
}

TEST(Trajectory, ThermalOracleNeedsLargerFockSpace) {
  CavityParams params = CavityParams::symmetric(1.0, 2.0);
  params.nbar1 = 0.05;
  EXPECT_THROW(trajectory(init::BellLike{}, params, 0.2, 3, Engine::oracle), std::invalid_argument);
  const auto traj = trajectory(init::BellLike{}, params, 0.2, 3, Engine::oracle, {4, 0.0});
  for (const auto& s : traj.states) EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace kerrdeco
