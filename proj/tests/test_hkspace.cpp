#include <gtest/gtest.h>

#include <complex>

#include "hyperholo/hkspace.hpp"
#include "hyperholo/sampling.hpp"

using namespace hyperholo;

namespace {

const FDScheme kDefault{1e-3, 4, false};

Form flat_F(int n) {
  // (i/2) sum (dz^dzbar - dw^dwbar) = sum dx^dy - du^dv
  FlatModel m(n);
  Form F(4 * n, 2);
  for (int i = 0; i < n; ++i) {
    F.set_component({m.zre(i), m.zim(i)}, 1.0);
    F.set_component({m.wre(i), m.wim(i)}, -1.0);
  }
  return F;
}

// omega_2 + i omega_3 evaluated on real vectors via sum dz ^ dw
std::complex<double> dz_wedge_dw(const FlatModel& m, const Vec& X, const Vec& Y) {
  CVec zx = m.z_of(X), wx = m.w_of(X), zy = m.z_of(Y), wy = m.w_of(Y);
  std::complex<double> acc = 0;
  for (int i = 0; i < m.n(); ++i) acc += zx(i) * wy(i) - wx(i) * zy(i);
  return acc;
}

}  // namespace

TEST(FlatModel, QuaternionRelations) {
  for (int n : {1, 2, 3}) {
    FlatModel m(n);
    const Mat Id = Mat::Identity(4 * n, 4 * n);
    EXPECT_EQ((m.I() * m.I() + Id).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.J() * m.J() + Id).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.K() * m.K() + Id).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.J() * m.K() - m.I()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((m.K() * m.I() - m.J()).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_THROW(FlatModel(0), ModelError);
}

TEST(FlatModel, TripleMatchesComplexFormulas) {
  FlatModel m(2);
  auto w = m.kahler_triple();
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    Vec X = random_point(rng, 8), Y = random_point(rng, 8);
    // omega_1 = (i/2) sum dz^dzbar + dw^dwbar = Im(<X, Y>) summed over all coordinates
    CVec zx = m.z_of(X), wx = m.w_of(X), zy = m.z_of(Y), wy = m.w_of(Y);
    double im = 0;
    for (int i = 0; i < 2; ++i) im += (std::conj(zx(i)) * zy(i) + std::conj(wx(i)) * wy(i)).imag();
    EXPECT_NEAR(w[0](X, Y), im, 1e-13);
    auto c = dz_wedge_dw(m, X, Y);
    EXPECT_NEAR(w[1](X, Y), c.real(), 1e-13);
    EXPECT_NEAR(w[2](X, Y), c.imag(), 1e-13);
    // omega_i(X, Y) = g(S_i X, Y)
    auto S = m.structures();
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[i](X, Y), (S[i] * X).dot(Y), 1e-13);
  }
  // (z, w) = (1, 0) against (0, 1)
  FlatModel m1(1);
  Vec ez = Vec::Unit(4, 0), ew = Vec::Unit(4, 2);
  auto w1 = m1.kahler_triple();
  EXPECT_EQ(w1[1](ez, ew), 1.0);
  EXPECT_EQ(w1[2](ez, ew), 0.0);
}

TEST(CircleAction, VectorFieldExamples) {
  FlatModel m(1);
  Vec p = m.pack(CVec::Ones(1), CVec::Ones(1));
  Vec X = action_vector_field(CircleActionSpec({0}, {1}), p);
  EXPECT_EQ(m.z_of(X)(0), std::complex<double>(0, 0));
  EXPECT_EQ(m.w_of(X)(0), std::complex<double>(0, 1));
  Vec Y = action_vector_field(CircleActionSpec({1}, {1}), p);
  EXPECT_EQ(m.z_of(Y)(0), std::complex<double>(0, 1));
  EXPECT_EQ(m.w_of(Y)(0), std::complex<double>(0, 1));
  EXPECT_EQ(action_vector_field(CircleActionSpec({0}, {0}), p).norm(), 0.0);
}

TEST(CircleAction, DegreeValidation) {
  EXPECT_EQ(CircleActionSpec({1, 0}, {1, 2}).degree(), 2);
  EXPECT_THROW(CircleActionSpec({1, 0}, {1, 1}), ModelError);
  EXPECT_THROW(CircleActionSpec({}, {}), ModelError);
  EXPECT_THROW(curvature_coefficient(CircleActionSpec({1}, {-1})), ModelError);
}

TEST(MomentMap, Formulas) {
  FlatModel m(2);
  Rng rng(5);
  Vec p = random_point(rng, 8);
  const double z2 = m.z_of(p).squaredNorm(), w2 = m.w_of(p).squaredNorm();
  EXPECT_NEAR(moment_map(CircleActionSpec::uniform(2, 0, 1), p), -0.5 * w2, 1e-14);
  EXPECT_NEAR(moment_map(CircleActionSpec::uniform(2, 1, 1), p), -0.5 * (z2 + w2), 1e-14);
  EXPECT_EQ(moment_map(CircleActionSpec::uniform(2, 0, 0), p), 0.0);
  EXPECT_EQ(moment_map(CircleActionSpec::uniform(2, 1, 1), Vec::Zero(8)), 0.0);
}

TEST(MomentMap, DefiningEquationAtRandomPoints) {
  FlatModel m(2);
  Rng rng(99);
  for (auto spec : {CircleActionSpec::uniform(2, 0, 1), CircleActionSpec::uniform(2, 1, 1), CircleActionSpec({2, 1}, {0, 1})}) {
    double worst = 0;
    for (int t = 0; t < 100; ++t) worst = std::max(worst, moment_residual(m, spec, random_point(rng, 8), kDefault));
    EXPECT_LT(worst, 1e-9);
  }
}

TEST(Curvature, FlatExamples) {
  FlatModel m(2);
  Rng rng(7);
  Vec p = random_point(rng, 8);
  Form F01 = hyperholo_curvature(m, CircleActionSpec::uniform(2, 0, 1), p, kDefault);
  EXPECT_LT((F01 - flat_F(2)).max_abs(), 1e-8);
  Form F11 = hyperholo_curvature(m, CircleActionSpec::uniform(2, 1, 1), p, kDefault);
  EXPECT_LT(F11.max_abs(), 1e-9);
  Form Ft = hyperholo_curvature(m, CircleActionSpec::uniform(2, 0, 0), p, kDefault);
  EXPECT_EQ((Ft - m.kahler_triple()[0]).max_abs(), 0.0);
}

TEST(Curvature, LiteralDegreeCoefficientContradictsTrivialBundle) {
  // omega_1 + n dd^c mu with n = 2 and the full rotation is -3 omega_1, not 0
  FlatModel m(1);
  Vec p = Vec::Constant(4, 0.3);
  Form F = hyperholo_curvature(m, CircleActionSpec({1}, {1}), p, kDefault, CurvatureCoefficient::literal_degree);
  EXPECT_LT((F + 3.0 * m.kahler_triple()[0]).max_abs(), 1e-8);
}

TEST(Curvature, GeneralWeightsClosedForm) {
  // F = ((l - k)/n)(dx^dy - du^dv) for uniform weights
  FlatModel m(1);
  Vec p = Vec::Constant(4, -0.2);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 0}, {0, 2}, {3, 1}, {-1, 2}, {0, 1}}) {
    Form F = hyperholo_curvature(m, CircleActionSpec({k}, {l}), p, kDefault);
    EXPECT_LT((F - (double(l - k) / (k + l)) * flat_F(1)).max_abs(), 1e-8) << k << "," << l;
  }
}

TEST(Curvature, TypeOneOneAtRandomPoints) {
  FlatModel m(2);
  Rng rng(2024);
  std::vector<CircleActionSpec> specs{CircleActionSpec::uniform(2, 0, 1), CircleActionSpec::uniform(2, 1, 1),
                                      CircleActionSpec({2, 1}, {0, 1}), CircleActionSpec({3, -1}, {-1, 3})};
  for (const auto& spec : specs) {
    double worst = 0, closed = 0;
    for (int t = 0; t < 100; ++t) {
      Vec p = random_point(rng, 8);
      Form F = hyperholo_curvature(m, spec, p, kDefault);
      for (const auto& S : m.structures()) worst = std::max(worst, type11_residual(F, ComplexStructure(S)));
      if (t < 5) {
        FormField Ff{[&](const Vec& q) { return hyperholo_curvature(m, spec, q, FDScheme{1e-2, 2, false}); }, {}, 8, 2};
        closed = std::max(closed, ext_deriv(Ff, p, FDScheme{1e-2, 2, false}).max_abs());
      }
    }
    EXPECT_LT(worst, 1e-8);
    EXPECT_LT(closed, 1e-6);
  }
}

TEST(RotationDegree, Examples) {
  FlatModel m(1);
  EXPECT_LT(rotation_degree_check(m, CircleActionSpec({0}, {1})), 1e-14);
  EXPECT_LT(rotation_degree_check(m, CircleActionSpec({1}, {1})), 1e-14);
  EXPECT_LT(rotation_degree_check(m, CircleActionSpec({2}, {0})), 1e-14);
  EXPECT_EQ(CircleActionSpec({2}, {0}).degree(), 2);
}

TEST(RotationDegree, DirectPullbackOracle) {
  // R^*(dz^dw) computed on complex vectors for weights (2,0)
  FlatModel m(1);
  CircleActionSpec spec({2}, {0});
  const double th = 0.7;
  Vec X = Vec::Unit(4, 0), Y = Vec::Unit(4, 2);
  Mat R = spec.rotation(th);
  auto lhs = dz_wedge_dw(m, R * X, R * Y);
  auto rhs = std::polar(1.0, 2 * th) * dz_wedge_dw(m, X, Y);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-14);
}

TEST(Killing, LinearActionsPreserveMetricAndOmega1) {
  FlatModel m(2);
  for (auto spec : {CircleActionSpec::uniform(2, 0, 1), CircleActionSpec({2, 1}, {0, 1}), CircleActionSpec({5, -3}, {-2, 6})}) {
    auto [g, w] = killing_residual(m, spec);
    EXPECT_LT(g, 1e-10);
    EXPECT_LT(w, 1e-10);
  }
}
