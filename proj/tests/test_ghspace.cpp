#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hyperholo/ghspace.hpp"
#include "hyperholo/sampling.hpp"

using namespace hyperholo;

namespace {

const FDScheme kDefault{1e-3, 4, false};
const FDScheme kFine{1e-4, 4, false};

// random point in a box, kept away from centres and Dirac strings
Vec sample3(Rng& rng, const GHConfig& cfg) {
  for (;;) {
    Vec x(3);
    x << random_uniform(rng, cfg.centers.front() - 1.5, cfg.centers.back() + 1.5), random_uniform(rng, -1.5, 1.5),
        random_uniform(rng, -1.5, 1.5);
    if (gh_clearance(cfg)(x) > 0.2) return x;
  }
}

Vec sample4(Rng& rng, const GHConfig& cfg) {
  Vec p(4);
  p.head(3) = sample3(rng, cfg);
  p(3) = random_uniform(rng, 0.0, 2 * std::numbers::pi);
  return p;
}

Form star3(const Form& w) { return hodge_star(Metric::euclidean(3), 1, w); }

}  // namespace

TEST(GHConfig, Validation) {
  EXPECT_THROW((GHConfig{{}, 0.0}.validate()), ModelError);
  EXPECT_THROW((GHConfig{{0.0, 0.0}, 0.0}.validate()), ModelError);
  EXPECT_THROW((GHConfig{{1.0, 0.0}, 0.0}.validate()), ModelError);
  EXPECT_NO_THROW((GHConfig{{0.0, 1.0, 3.0}, 0.0}.validate()));
  EXPECT_TRUE((GHConfig{{0.0, 1.0, 3.0}, 0.0}.integral_spacing()));
  EXPECT_FALSE((GHConfig{{0.0, 1.5}, 0.0}.integral_spacing()));
}

TEST(GHPotential, SingleCentreAndDomain) {
  GHConfig cfg{{0.0}, 0.0};
  Vec x(3);
  x << 0.0, 0.0, 1.0;
  EXPECT_EQ(gh_potential(cfg, x), 1.0);
  EXPECT_THROW(gh_potential(cfg, Vec::Zero(3)), DomainError);
  // on the string of the "down" gauge
  Vec s(3);
  s << -1.0, 1e-4, 0.0;
  EXPECT_THROW(gh_alpha(cfg, s), DomainError);
  EXPECT_NO_THROW(gh_alpha(cfg.with_gauge(StringGauge::up), s));
}

TEST(GHPotential, HarmonicAndAlphaRelation) {
  for (GHConfig cfg : {GHConfig{{0.0, 1.0}, 0.0}, GHConfig{{0.0, 1.0, 3.0}, 0.0}}) {
    Rng rng(31);
    double lap = 0, rel = 0;
    for (int t = 0; t < 100; ++t) {
      Vec x = sample3(rng, cfg);
      lap = std::max(lap, std::abs(laplacian(gh_potential_field(cfg), x, kDefault)));
      const Form dalpha = ext_deriv(gh_alpha_field(cfg), x, kDefault);
      rel = std::max(rel, (dalpha - star3(ext_deriv(gh_potential_field(cfg), x, kDefault))).max_abs());
    }
    EXPECT_LT(lap, 1e-6);
    EXPECT_LT(rel, 1e-6);
  }
}

TEST(GHPotential, SphericalOracleForFlatCase) {
  // V = 1/(2r): alpha differs from (1/2) cos(theta) d(phi) by an exact form, with
  // the polar axis along x1 and phi the angle in the (x2, x3)-plane
  GHConfig cfg{{0.0}, 0.0, 0.5};
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Vec x = sample3(rng, cfg);
    const double r = x.norm(), c2 = x(1) * x(1) + x(2) * x(2);
    Vec dcos = (Vec::Unit(3, 0) / r - x(0) * x / (r * r * r));
    Vec dphi(3);
    dphi << 0.0, -x(2) / c2, x(1) / c2;
    const Form oracle = 0.5 * wedge(Form::covector(dcos), Form::covector(dphi));
    const Form starDV = star3(Form::covector(gh_potential_gradient(cfg, x)));
    EXPECT_LT((starDV - oracle).max_abs(), 1e-12);
    EXPECT_LT((ext_deriv(gh_alpha_field(cfg), x, kDefault) - oracle).max_abs(), 1e-7);
  }
}

TEST(GHMetric, TripleClosedAlgebraAndSelfDual) {
  GHConfig cfg{{0.0, 1.0, 3.0}, 0.0};
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Vec p = sample4(rng, cfg);
    const Metric g = gh_metric(cfg, p);
    const auto w = gh_kahler_triple(cfg, p);
    const double vol = std::sqrt(g.det());
    for (int i = 0; i < 3; ++i) {
      EXPECT_LT(ext_deriv(gh_kahler_field(cfg, i), p, kDefault).max_abs(), 1e-6);
      EXPECT_LT((hodge_star(g, 1, w[i]) - w[i]).max_abs(), 1e-10 * std::max(1.0, w[i].max_abs()));
      for (int j = 0; j < 3; ++j) {
        const double top = wedge(w[i], w[j]).component({0, 1, 2, 3});
        EXPECT_NEAR(top, i == j ? 2.0 * vol : 0.0, 1e-10 * vol);
      }
    }
    // omega_i(X, Y) = g(S_i X, Y) with S_i^2 = -1 and S_1 S_2 = S_3
    std::array<Mat, 3> S;
    for (int i = 0; i < 3; ++i) S[i] = structure_from_form(g.matrix(), w[i]);
    for (int i = 0; i < 3; ++i) EXPECT_LT(ComplexStructure::defect(S[i]), 1e-10);
    EXPECT_LT((S[0] * S[1] - S[2]).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(GHMetric, FlatCaseHasNoCurvature) {
  GHConfig flat{{0.0}, 0.0, 0.5};
  GHConfig two{{0.0, 1.0}, 0.0};
  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    Vec p = sample4(rng, flat);
    EXPECT_LT(gh_riemann_norm(flat, p, kDefault), 1e-4);
  }
  Vec q(4);
  q << 0.5, 0.4, 0.3, 0.0;
  EXPECT_GT(gh_riemann_norm(two, q, kDefault), 1e-1);
}

TEST(RotationLift, DifferentialAgainstReferenceForm) {
  GHConfig cfg{{0.0, 1.0, 3.0}, 0.7};
  Rng rng(8);
  double plus = 0, minus = 0;
  for (int t = 0; t < 100; ++t) {
    Vec x = sample3(rng, cfg);
    const Form df = ext_deriv(rotation_lift_field(cfg), x, kDefault);
    const Form disp = lift_df_reference(cfg, x);
    plus = std::max(plus, (df + disp).max_abs());
    minus = std::max(minus, (df - disp).max_abs());
  }
  EXPECT_LT(plus, 1e-6);   // df = -(reference form)
  EXPECT_GT(minus, 1e-2);  // the reference form with its own sign does not
}

TEST(RotationLift, LiftInvariance) {
  // df = -i_X *dV for the rotation X = x2 d/dx3 - x3 d/dx2 about the x1-axis
  GHConfig cfg{{-1.0, 0.5}, 0.0};
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    Vec x = sample3(rng, cfg);
    Vec X(3);
    X << 0.0, -x(2), x(1);
    const Form rhs = -1.0 * interior(X, star3(Form::covector(gh_potential_gradient(cfg, x))));
    EXPECT_LT((ext_deriv(rotation_lift_field(cfg), x, kDefault) - rhs).max_abs(), 1e-7);
  }
}

TEST(RotationLift, AxisValues) {
  GHConfig cfg{{0.0, 1.0, 3.0}, 0.25};
  Vec x = Vec::Zero(3);
  x(0) = 7.0;
  EXPECT_EQ(rotation_lift_f(cfg, x), 3.0 + 0.25);
  x(0) = 0.5;
  EXPECT_EQ(rotation_lift_f(cfg, x), 1.0 - 2.0 + 0.25);
}

TEST(RotationLift, ExactlyConstantOnSegments) {
  for (GHConfig cfg : {GHConfig{{0.0, 1.0}, 0.0}, GHConfig{{0.0, 1.0, 3.0}, 0.0}, GHConfig{{-2.0, 0.0, 1.0, 4.0}, 0.0},
                       GHConfig{{0.0, 0.3, 0.9, 1.0, 2.5, 3.0}, 0.0}}) {
    const auto segs = axis_segment_values(cfg);
    const int k1 = cfg.count();
    ASSERT_EQ(static_cast<int>(segs.size()), k1 + 1);
    for (std::size_t s = 0; s < segs.size(); ++s) {
      // term count oracle: s centres to the left give +1, the rest -1
      const double expect = double(s) - double(k1 - static_cast<int>(s));
      for (double v : segs[s]) EXPECT_EQ(v, expect);
    }
    if (k1 % 2 == 0) {
      for (double v : segs[static_cast<std::size_t>(k1 / 2)]) EXPECT_EQ(v, 0.0);
    } else {
      // odd number of centres: no segment has f = 0
      for (auto& seg : segs) EXPECT_NE(seg.front(), 0.0);
    }
  }
}

TEST(Monopole, HarmonicAndBianchi) {
  for (GHConfig cfg : {GHConfig{{0.0, 1.0}, 0.0}, GHConfig{{0.0, 1.0, 3.0}, 0.3}}) {
    Rng rng(12);
    for (auto form : {MonopoleForm::lift, MonopoleForm::dirac}) {
      double lap = 0, rel = 0;
      for (int t = 0; t < 100; ++t) {
        Vec x = sample3(rng, cfg);
        lap = std::max(lap, std::abs(laplacian(monopole_phi_field(cfg, form), x, kDefault)));
        const Form dA = ext_deriv(monopole_A_field(cfg, form), x, kDefault);
        rel = std::max(rel, (dA - star3(ext_deriv(monopole_phi_field(cfg, form), x, kDefault))).max_abs());
      }
      EXPECT_LT(lap, 1e-6);
      EXPECT_LT(rel, 1e-6);
    }
  }
}

TEST(Monopole, TwoPresentationsDifferByGaugeShift) {
  GHConfig cfg{{0.0, 2.0, 3.0}, 0.4};
  Rng rng(13);
  const double s = monopole_gauge_shift(cfg);
  for (int t = 0; t < 100; ++t) {
    Vec x = sample3(rng, cfg);
    const double lift = -x(0) * gh_potential(cfg, x) + rotation_lift_f(cfg, x);
    EXPECT_NEAR(monopole_phi(cfg, x, MonopoleForm::lift), lift, 1e-12);
    EXPECT_NEAR(monopole_phi(cfg, x, MonopoleForm::dirac), lift + s * gh_potential(cfg, x), 1e-11);
    EXPECT_LT((monopole_A(cfg, x, MonopoleForm::dirac) - monopole_A(cfg, x, MonopoleForm::lift) - s * gh_alpha(cfg, x))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-11);
  }
  // integer spacing gives integer Dirac charges
  for (double q : monopole_charges(cfg, MonopoleForm::dirac)) EXPECT_EQ(q, std::round(q));
}

TEST(Ahat, AntiSelfDual) {
  for (GHConfig cfg : {GHConfig{{0.0, 1.0}, 0.0}, GHConfig{{0.0, 1.0, 3.0}, 0.5}}) {
    Rng rng(14);
    double worst = 0, iy = 0;
    for (int t = 0; t < 100; ++t) {
      Vec p = sample4(rng, cfg);
      worst = std::max(worst, asd_residual(cfg, p, kFine));
      iy = std::max(iy, interior_Y_residual(cfg, p, kFine));
    }
    EXPECT_LT(worst, 1e-5);
    EXPECT_LT(iy, 1e-5);
  }
}

TEST(Ahat, NotSelfDual) {
  // the self-dual part of dA-hat is what vanishes; the curvature itself does not
  GHConfig cfg{{0.0, 1.0}, 0.0};
  Vec p(4);
  p << 0.3, 0.8, -0.4, 1.0;
  const Form F = curvature_Ahat(cfg, p, kFine);
  const Metric g = gh_metric(cfg, p);
  EXPECT_GT(norm(g, F), 1e-2);
  EXPECT_GT(norm(g, hodge_star(g, 1, F) - F), 1e-2);
}

TEST(Ahat, GaugeShiftLeavesCurvatureUnchanged) {
  GHConfig cfg{{0.0, 1.0, 3.0}, 0.2};
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    Vec p = sample4(rng, cfg);
    const Form F0 = curvature_Ahat(cfg, p, kDefault, {MonopoleForm::dirac, 0.0});
    const Form F1 = curvature_Ahat(cfg, p, kDefault, {MonopoleForm::dirac, 1.7});
    const Form F2 = curvature_Ahat(cfg, p, kDefault, {MonopoleForm::lift, monopole_gauge_shift(cfg)});
    EXPECT_LT((F0 - F1).max_abs(), 1e-8);
    EXPECT_LT((F0 - F2).max_abs(), 1e-8);
  }
}

TEST(Ahat, StringGaugesAgree) {
  GHConfig cfg{{0.0, 1.0}, 0.0};
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    Vec p = sample4(rng, cfg);
    // the charts are related by theta_down = theta_up + 2 strength N phi, phi the angle about the
    // x1-axis, which keeps d theta + alpha fixed; compare after pulling back through that map
    const double c2 = p(1) * p(1) + p(2) * p(2);
    const double k = 2.0 * cfg.strength * cfg.count();
    Mat Jac = Mat::Identity(4, 4);
    Jac(3, 1) = -k * p(2) / c2;
    Jac(3, 2) = k * p(1) / c2;
    const Form Fd = curvature_Ahat(cfg.with_gauge(StringGauge::down), p, kDefault);
    const Form Fu = curvature_Ahat(cfg.with_gauge(StringGauge::up), p, kDefault);
    EXPECT_LT((pullback(Jac, Fd) - Fu).max_abs(), 1e-7);
    const Vec eu = gh_fibre_form(cfg.with_gauge(StringGauge::up), p);
    const Vec ed = gh_fibre_form(cfg.with_gauge(StringGauge::down), p);
    EXPECT_LT((pullback(Jac, Form::covector(ed)) - Form::covector(eu)).max_abs(), 1e-12);
  }
}

TEST(Periods, SegmentSpheres) {
  const double tau = 2.0 * std::numbers::pi;
  EXPECT_NEAR(sphere_period(GHConfig{{0.0, 1.0}, 0.0}, 0), tau, 1e-6 * tau);
  GHConfig three{{0.0, 2.0, 3.0}, 0.0};
  EXPECT_NEAR(sphere_period(three, 0), 2 * tau, 2e-6 * tau);
  EXPECT_NEAR(sphere_period(three, 1), tau, 1e-6 * tau);
  GHConfig tight{{0.0, 1e-5}, 0.0};
  EXPECT_LT(std::abs(sphere_period(tight, 0, 2, 6, 1e-7)), 1e-4);
  EXPECT_THROW(sphere_period(three, 2), ModelError);
}

TEST(AxisProfile, JumpsAndFlatProfile) {
  GHConfig cfg{{0.0, 1.0}, 0.0};
  auto prof = axis_profile(cfg, -2.0, 3.0, 501);
  for (std::size_t i = 1; i < prof.size(); ++i) {
    const double jump = prof[i].f - prof[i - 1].f;
    EXPECT_TRUE(jump == 0.0 || jump == 2.0) << prof[i].x1;
  }
  GHConfig flat{{0.0}, 0.0, 0.5};
  for (auto& s : axis_profile(flat, 0.5, 4.0, 20)) EXPECT_NEAR(s.V, 0.5 / std::abs(s.x1), 1e-15);
}
