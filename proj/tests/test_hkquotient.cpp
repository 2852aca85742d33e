#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hyperholo/hkquotient.hpp"
#include "hyperholo/sampling.hpp"

using namespace hyperholo;

namespace {

const FDScheme kFine{1e-4, 4, false};

Vec level(double c) { return Vec::Constant(1, c); }

LevelSetPoint eh_point(const EguchiHansonFixture& eh, double c, Rng& rng) {
  for (;;) {
    try {
      return solve_level(eh.action, level(c), random_point(rng, 8, 1.0));
    } catch (const NonFreePointError&) {
    }
  }
}

// |z|^2 and |w|^2 summed over both coordinates
double z2(const Vec& m) { return m.head(4).squaredNorm(); }
double w2(const Vec& m) { return m.tail(4).squaredNorm(); }

}  // namespace

TEST(LinearAction, TorusAndUnitaryValidate) {
  FlatModel model(2);
  auto t = LinearAction::torus(model, {{1, 1}, {1, -1}});
  EXPECT_TRUE(t.abelian());
  auto u = LinearAction::unitary(model);
  EXPECT_EQ(u.rank(), 4);
  EXPECT_FALSE(u.abelian());
  // a non-triholomorphic rotation is rejected
  EXPECT_THROW(LinearAction(model, {CircleActionSpec({1, 1}, {1, 1}).generator()}), ModelError);
  EXPECT_THROW(LinearAction(model, {Mat::Identity(8, 8)}), ModelError);
  EXPECT_THROW(LinearAction::torus(model, {{1, 1}, {2, 2}}), ModelError);
}

TEST(LinearAction, StructureConstantsReproduceBrackets) {
  auto u = LinearAction::unitary(FlatModel(2));
  for (int a = 0; a < u.rank(); ++a)
    for (int b = 0; b < u.rank(); ++b) {
      Mat rhs = Mat::Zero(8, 8);
      for (int c = 0; c < u.rank(); ++c) rhs += u.structure_constant(a, b, c) * u.gen(c);
      EXPECT_LT((u.gen(a) * u.gen(b) - u.gen(b) * u.gen(a) - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(HKMoment, EguchiHansonClosedForm) {
  EguchiHansonFixture eh;
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Vec m = random_point(rng, 8, 1.0);
    const CVec z = eh.model.z_of(m), w = eh.model.w_of(m);
    const cplx zw = z(0) * w(0) + z(1) * w(1);
    Mat nu = hk_moment(eh.action, m);
    EXPECT_NEAR(nu(0, 0), 0.5 * (w2(m) - z2(m)), 1e-13);
    // omega_2 + i omega_3 pairs z with w; its moment is a fixed multiple of z.w
    EXPECT_NEAR(std::hypot(nu(1, 0), nu(2, 0)), std::abs(zw), 1e-13);
  }
}

TEST(HKMoment, JacobianMatchesFiniteDifferences) {
  auto u = LinearAction::unitary(FlatModel(2));
  Rng rng(2);
  Vec m = random_point(rng, 8, 1.0);
  const Mat D = hk_jacobian(u, m);
  for (int j = 0; j < 8; ++j) {
    Vec e = Vec::Zero(8);
    e(j) = 1e-6;
    const Vec fd = (detail::flatten_moment(hk_moment(u, m + e)) - detail::flatten_moment(hk_moment(u, m - e))) / 2e-6;
    EXPECT_LT((fd - D.col(j)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(HKMoment, EquivarianceUnderConjugation) {
  // nu(g m)(a) = nu(m)(Ad_{g^-1} A_a), with Ad computed by direct conjugation
  auto u = LinearAction::unitary(FlatModel(2));
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    Vec m = random_point(rng, 8, 1.0), x = random_point(rng, u.rank(), 1.0);
    const Mat g = u.exp(x), gi = g.inverse();
    const Mat nu_gm = hk_moment(u, g * m);
    std::vector<Mat> conj;
    for (int a = 0; a < u.rank(); ++a) conj.push_back(gi * u.gen(a) * g);
    const auto w = u.model().kahler_triple();
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < u.rank(); ++a) {
        const double expect = 0.5 * (conj[static_cast<std::size_t>(a)] * m).dot(w[static_cast<std::size_t>(i)].matrix() * m);
        EXPECT_NEAR(nu_gm(i, a), expect, 1e-12);
      }
  }
}

TEST(HKMoment, CoadjointInvariantLevels) {
  auto u = LinearAction::unitary(FlatModel(2));
  // the central generator is the first diagonal one plus the last diagonal one
  Vec centre = Vec::Zero(4);
  centre(0) = 1.0;
  centre(3) = 1.0;
  EXPECT_LT(coadjoint_residual(u, centre), 1e-12);
  Vec off = Vec::Zero(4);
  off(1) = 1.0;
  EXPECT_GT(coadjoint_residual(u, off), 0.1);
  EXPECT_THROW(solve_level(u, off, Vec::Ones(8)), ModelError);
}

TEST(LevelSet, NewtonConvergesAndStays) {
  EguchiHansonFixture eh;
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    auto p = eh_point(eh, 1.0, rng);
    EXPECT_LT(p.residual, 1e-12);
    EXPECT_LE(p.iterations, 30);
    const Mat nu = hk_moment(eh.action, p.m);
    EXPECT_NEAR(nu(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(nu(1, 0), 0.0, 1e-12);
    EXPECT_NEAR(nu(2, 0), 0.0, 1e-12);
    // re-solving from the solution takes no steps
    EXPECT_EQ(solve_level(eh.action, level(1.0), p.m).iterations, 0);
  }
}

TEST(LevelSet, NonFreePointRejected) {
  EguchiHansonFixture eh;
  EXPECT_THROW(solve_level(eh.action, level(0.0), Vec::Zero(8)), NonFreePointError);
  EXPECT_THROW(solve_level(eh.action, level(1.0), Vec::Zero(8)), NonFreePointError);
}

TEST(Quotient, FrameAndKahlerTriple) {
  EguchiHansonFixture eh;
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto q = quotient_sample(eh.action, eh_point(eh, 1.0, rng));
    ASSERT_EQ(q.dim(), 4);
    EXPECT_LT((q.frame.transpose() * q.frame - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((hk_jacobian(eh.action, q.m) * q.frame).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((eh.action.orbit(q.m).transpose() * q.frame).cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 0; i < 3; ++i) {
      EXPECT_LT(ComplexStructure::defect(q.S[static_cast<std::size_t>(i)]), 1e-12);
      // omega_i(X, Y) = g(S_i X, Y)
      EXPECT_LT((q.omega[static_cast<std::size_t>(i)].matrix() + q.S[static_cast<std::size_t>(i)]).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_LT((q.S[0] * q.S[1] - q.S[2]).cwiseAbs().maxCoeff(), 1e-12);
    // omega_i ^ omega_j = 2 delta_ij vol
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(wedge(q.omega[static_cast<std::size_t>(i)], q.omega[static_cast<std::size_t>(j)])[0], i == j ? 2.0 : 0.0, 1e-12);
  }
}

TEST(Quotient, SliceStaysOnLevelAndFormsAreClosed) {
  EguchiHansonFixture eh;
  Rng rng(6);
  auto p = eh_point(eh, 1.0, rng);
  LocalSection sec(eh.action, p);
  const Vec t = random_point(rng, 4, 0.05);
  const Mat nu = hk_moment(eh.action, sec.point(t));
  EXPECT_NEAR(nu(0, 0), 1.0, 1e-13);
  // exact tangents against differences of the slice
  const Mat T = sec.tangents(t);
  for (int j = 0; j < 4; ++j) {
    Vec e = Vec::Zero(4);
    e(j) = 1e-6;
    EXPECT_LT(((sec.point(t + e) - sec.point(t - e)) / 2e-6 - T.col(j)).cwiseAbs().maxCoeff(), 1e-8);
  }
  for (int i = 0; i < 3; ++i) EXPECT_LT(ext_deriv(quotient_omega_field(sec, i), t, kFine).max_abs(), 1e-7);
  // descended structures square to -1 and match the forms through the quotient metric
  const Metric g(quotient_metric(sec, t));
  for (int i = 0; i < 3; ++i) {
    const Mat S = quotient_structure(sec, t, i);
    EXPECT_LT(ComplexStructure::defect(S), 1e-10);
    EXPECT_LT((quotient_omega(sec, t, i).matrix() + g.matrix() * S).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(DescendedCircle, RotatorPreservesLevelAndMomentDescends) {
  EguchiHansonFixture eh;
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    auto p = eh_point(eh, 1.0, rng);
    auto q = quotient_sample(eh.action, p);
    auto d = descended_circle_data(eh.action, eh.rotator, q);
    EXPECT_LT(d.level_drift, 1e-12);
    EXPECT_NEAR(d.mu_bar, -0.5 * (z2(p.m) + w2(p.m)), 1e-13);
    // d mu_bar = i_{X_bar} omega_bar_1 in slice coordinates (at t = 0 the slice frame is the quotient frame)
    LocalSection sec(eh.action, p);
    const Vec t0 = Vec::Zero(4);
    const Form dmu = ext_deriv(quotient_moment_field(sec, eh.rotator), t0, kFine);
    const Form ix = interior(d.x_bar_frame, q.omega[0]);
    EXPECT_LT((dmu - ix).max_abs(), 1e-8);
  }
  // a circle that does not commute with the gauge action is rejected
  EXPECT_THROW(check_rotator(LinearAction::unitary(FlatModel(2)), CircleActionSpec({1, 0}, {0, 1})), ModelError);
}

TEST(DescendedCircle, CanonicalCharacterFromOrbitPairing) {
  // chi_a = -(1/n) <B m, A_a m> on the level set; for this rotator it equals c
  EguchiHansonFixture eh;
  Rng rng(8);
  for (double c : {0.5, 1.0, 2.0}) {
    auto p = eh_point(eh, c, rng);
    const double chi = -(eh.rotator.generator() * p.m).dot(eh.action.gen(0) * p.m) / eh.rotator.degree();
    EXPECT_NEAR(chi, canonical_character(level(c)).chi(0), 1e-12);
  }
  EXPECT_TRUE(canonical_character(level(2.0)).integral);
  EXPECT_FALSE(canonical_character(level(0.5)).integral);
}

TEST(DescendedCircle, CanonicalBundleCurvatureMatches) {
  EguchiHansonFixture eh;
  Rng rng(9);
  for (double c : {1.0, 2.0}) {
    for (int t = 0; t < 5; ++t) {
      auto p = eh_point(eh, c, rng);
      LocalSection sec(eh.action, p);
      const Vec t0 = Vec::Zero(4);
      const Form F = quotient_rotator_curvature(sec, eh.rotator, t0, kFine);
      const Form Fchi = canonical_bundle_curvature(sec, canonical_character(level(c)).chi, t0, kFine);
      EXPECT_LT((F - Fchi).max_abs(), 1e-5) << "c=" << c;
      // the curvature is of type (1,1) for the descended I only
      const Metric g(quotient_metric(sec, t0));
      EXPECT_LT(type11_residual(F, ComplexStructure(quotient_structure(sec, t0, 0), 1e-8), g), 1e-5);
    }
  }
}

TEST(DescendedCircle, LiteralDegreeCoefficientDisagrees) {
  EguchiHansonFixture eh;
  Rng rng(10);
  auto p = eh_point(eh, 1.0, rng);
  LocalSection sec(eh.action, p);
  const Vec t0 = Vec::Zero(4);
  const Form F = quotient_rotator_curvature(sec, eh.rotator, t0, kFine, CurvatureCoefficient::literal_degree);
  const Form Fchi = canonical_bundle_curvature(sec, level(1.0), t0, kFine);
  EXPECT_GT((F - Fchi).max_abs(), 1e-2);
}

TEST(GHCoordinates, EffectiveOrder) {
  EguchiHansonFixture eh;
  EXPECT_EQ(ineffective_order(eh.action, eh.residual.generator()), 2);
  auto flat = LinearAction::torus(FlatModel(2), {{1, 0}});
  EXPECT_EQ(ineffective_order(flat, CircleActionSpec({0, 1}, {0, -1}).generator()), 1);
}

TEST(GHCoordinates, EguchiHansonCentresScaleLinearly) {
  EguchiHansonFixture eh;
  const Mat C = eh.residual.generator();
  const int d = ineffective_order(eh.action, C);
  std::vector<double> separation;
  for (double c : {0.5, 1.0, 2.0}) {
    Rng rng(11);
    std::vector<GHPoint> pts;
    while (pts.size() < 40) {
      auto q = quotient_sample(eh.action, eh_point(eh, c, rng));
      try {
        pts.push_back(gh_coordinates(eh.action, C, d, q));
      } catch (const NonFreePointError&) {
      }
    }
    auto fit = fit_gh_centers(pts, 2);
    EXPECT_LT(fit.residual, 1e-5) << "c=" << c;
    ASSERT_EQ(fit.centers.size(), 2u);
    separation.push_back((fit.centers[1] - fit.centers[0]).norm());
    EXPECT_NEAR(separation.back(), c / 2.0, 1e-5);
  }
  EXPECT_NEAR(separation[2] / separation[1], 2.0, 1e-5);
  EXPECT_NEAR(separation[0] / separation[1], 0.5, 1e-5);
}

TEST(GHCoordinates, FlatFactorIsSingleUnitCentre) {
  // H^2 by the circle on the first factor leaves flat H; the unscaled circle would give V = 1/(2r)
  auto act = LinearAction::torus(FlatModel(2), {{1, 0}});
  const Mat C = CircleActionSpec({0, 1}, {0, -1}).generator();
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    auto q = quotient_sample(act, solve_level(act, level(1.0), random_point(rng, 8, 1.0)));
    auto g = gh_coordinates(act, C, 1, q);
    EXPECT_NEAR(g.V, 1.0 / g.x.norm(), 1e-10 * g.V);
  }
}
