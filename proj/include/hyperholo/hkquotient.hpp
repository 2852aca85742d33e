#pragma once

// Hyperkahler quotient of flat H^n by a linear triholomorphic group action,
// the circle data that descends to it, and Gibbons-Hawking coordinates on
// four-dimensional quotients.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hyperholo/errors.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/forms.hpp"
#include "hyperholo/hkspace.hpp"

namespace hyperholo {

using Vec3 = Eigen::Vector3d;

/// Linear action of a compact group on flat H^n given by its Lie algebra
/// generators (real 4n x 4n matrices).
class LinearAction {
 public:
  LinearAction(const FlatModel& model, std::vector<Mat> gens, double tol = 1e-10) : model_(model), gens_(std::move(gens)) {
    const int N = model_.dim();
    if (gens_.empty()) throw ModelError("LinearAction: needs at least one generator");
    const auto S = model_.structures();
    for (const Mat& A : gens_) {
      if (A.rows() != N || A.cols() != N) throw ModelError("LinearAction: generator has wrong size");
      if ((A + A.transpose()).cwiseAbs().maxCoeff() > tol) throw ModelError("LinearAction: generator is not skew");
      for (const Mat& s : S)
        if ((A * s - s * A).cwiseAbs().maxCoeff() > tol)
          throw ModelError("LinearAction: generator does not commute with I, J, K");
    }
    const int r = rank();
    Mat flat(N * N, r);
    for (int a = 0; a < r; ++a) flat.col(a) = Eigen::Map<const Vec>(gens_[static_cast<std::size_t>(a)].data(), N * N);
    Eigen::JacobiSVD<Mat> svd(flat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(r - 1) < 1e-9 * svd.singularValues()(0))
      throw ModelError("LinearAction: generators are linearly dependent");
    f_.assign(static_cast<std::size_t>(r * r * r), 0.0);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const Mat br = gen(a) * gen(b) - gen(b) * gen(a);
        const Vec v = Eigen::Map<const Vec>(br.data(), N * N);
        const Vec coef = svd.solve(v);
        if ((flat * coef - v).cwiseAbs().maxCoeff() > 1e-8)
          throw ModelError("LinearAction: generators do not close under the bracket");
        for (int c = 0; c < r; ++c) f_[idx(a, b, c)] = coef(c);
      }
  }

  /// Torus T^r: generator a rotates z_i with weight k[a][i] and w_i with -k[a][i].
  static LinearAction torus(const FlatModel& model, const std::vector<std::vector<int>>& weights) {
    std::vector<Mat> gens;
    for (const auto& k : weights) {
      std::vector<int> l(k.size());
      std::transform(k.begin(), k.end(), l.begin(), [](int x) { return -x; });
      if (static_cast<int>(k.size()) != model.n()) throw ModelError("LinearAction::torus: weight vector has wrong length");
      gens.push_back(CircleActionSpec(k, l).generator());
    }
    return LinearAction(model, std::move(gens));
  }

  /// U(n) acting by z -> U z, w -> conj(U) w. Only used to exercise the nonabelian code paths.
  static LinearAction unitary(const FlatModel& model) {
    const int n = model.n();
    std::vector<Mat> gens;
    auto realify = [&](const Eigen::MatrixXcd& X) {
      Mat A = Mat::Zero(model.dim(), model.dim());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double a = X(i, j).real(), b = X(i, j).imag();
          A(model.zre(i), model.zre(j)) = a;
          A(model.zre(i), model.zim(j)) = -b;
          A(model.zim(i), model.zre(j)) = b;
          A(model.zim(i), model.zim(j)) = a;
          A(model.wre(i), model.wre(j)) = a;
          A(model.wre(i), model.wim(j)) = b;
          A(model.wim(i), model.wre(j)) = -b;
          A(model.wim(i), model.wim(j)) = a;
        }
      return A;
    };
    const cplx I(0.0, 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
        if (i == j) {
          X(i, i) = I;
          gens.push_back(realify(X));
          continue;
        }
        X(i, j) = 1.0;
        X(j, i) = -1.0;
        gens.push_back(realify(X));
        X(i, j) = I;
        X(j, i) = I;
        gens.push_back(realify(X));
      }
    return LinearAction(model, std::move(gens));
  }

  const FlatModel& model() const { return model_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const Mat& gen(int a) const { return gens_[static_cast<std::size_t>(a)]; }
  const std::vector<Mat>& generators() const { return gens_; }

  /// [A_a, A_b] = sum_c f_ab^c A_c.
  double structure_constant(int a, int b, int c) const { return f_[idx(a, b, c)]; }

  bool abelian() const {
    return std::all_of(f_.begin(), f_.end(), [](double x) { return std::abs(x) < 1e-12; });
  }

  /// Columns A_a m.
  Mat orbit(const Vec& m) const {
    Mat O(m.size(), rank());
    for (int a = 0; a < rank(); ++a) O.col(a) = gen(a) * m;
    return O;
  }

  /// exp(sum_a t_a A_a).
  Mat exp(const Vec& t) const {
    Mat X = Mat::Zero(model_.dim(), model_.dim());
    for (int a = 0; a < rank(); ++a) X += t(a) * gen(a);
    return X.exp();
  }

 private:
  std::size_t idx(int a, int b, int c) const { return static_cast<std::size_t>((a * rank() + b) * rank() + c); }

  FlatModel model_;
  std::vector<Mat> gens_;
  std::vector<double> f_;
};

/// nu_i(a) = 1/2 omega_i(A_a m, m); rows i = 1, 2, 3, columns a. Then d nu_i(a) = i_{A_a m} omega_i.
inline Mat hk_moment(const LinearAction& act, const Vec& m) {
  const auto w = act.model().kahler_triple();
  Mat nu(3, act.rank());
  for (int i = 0; i < 3; ++i) {
    const Mat W = w[static_cast<std::size_t>(i)].matrix();
    for (int a = 0; a < act.rank(); ++a) nu(i, a) = 0.5 * (act.gen(a) * m).dot(W * m);
  }
  return nu;
}

/// Derivative of the flattened moment map; row i * r + a is the gradient S_i A_a m.
inline Mat hk_jacobian(const LinearAction& act, const Vec& m) {
  const auto S = act.model().structures();
  const int r = act.rank();
  Mat D(3 * r, m.size());
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < r; ++a) D.row(i * r + a) = (S[static_cast<std::size_t>(i)] * act.gen(a) * m).transpose();
  return D;
}

/// max |c([A_a, A_b])|: zero iff the level (c, 0, 0) is fixed by the coadjoint action.
inline double coadjoint_residual(const LinearAction& act, const Vec& c) {
  if (c.size() != act.rank()) throw ModelError("level has wrong length");
  double worst = 0.0;
  for (int a = 0; a < act.rank(); ++a)
    for (int b = 0; b < act.rank(); ++b) {
      double s = 0.0;
      for (int k = 0; k < act.rank(); ++k) s += act.structure_constant(a, b, k) * c(k);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

namespace detail {

inline Vec flatten_moment(const Mat& nu) {
  Vec v(nu.size());
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < nu.cols(); ++a) v(i * nu.cols() + a) = nu(i, a);
  return v;
}

inline Vec level_target(const Vec& c) {
  Vec t = Vec::Zero(3 * c.size());
  t.head(c.size()) = c;
  return t;
}

inline void require_full_rank(const Mat& D, double rank_tol) {
  Eigen::JacobiSVD<Mat> svd(D);
  const Vec sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) < rank_tol * std::max(1.0, sv(0)))
    throw NonFreePointError("moment map derivative is rank deficient: the group does not act freely here");
}

}  // namespace detail

struct LevelSetPoint {
  Vec m;
  Vec c;
  int iterations = 0;
  double residual = 0.0;
};

struct LevelSolveOptions {
  double tol = 1e-12;
  int max_iter = 60;
  double rank_tol = 1e-9;
};

/// Gauss-Newton with minimum-norm steps onto nu = (c, 0, 0).
inline LevelSetPoint solve_level(const LinearAction& act, const Vec& c, const Vec& seed, const LevelSolveOptions& o = {}) {
  if (seed.size() != act.model().dim()) throw ModelError("solve_level: seed has wrong dimension");
  if (coadjoint_residual(act, c) > 1e-10) throw ModelError("solve_level: level is not coadjoint invariant");
  const Vec target = detail::level_target(c);
  LevelSetPoint out{seed, c, 0, 0.0};
  for (;;) {
    const Vec res = detail::flatten_moment(hk_moment(act, out.m)) - target;
    out.residual = res.cwiseAbs().maxCoeff();
    const Mat D = hk_jacobian(act, out.m);
    detail::require_full_rank(D, o.rank_tol);
    if (out.residual < o.tol) return out;
    if (out.iterations >= o.max_iter)
      throw ConvergenceError("solve_level: no convergence, residual " + std::to_string(out.residual));
    out.m -= D.completeOrthogonalDecomposition().solve(res);
    ++out.iterations;
  }
}

/// Orthogonal projection away from the orbit directions.
inline Mat orbit_projector(const LinearAction& act, const Vec& m) {
  const Mat O = act.orbit(m);
  return Mat::Identity(m.size(), m.size()) - O * (O.transpose() * O).ldlt().solve(O.transpose());
}

/// Horizontal space (orbit and its I, J, K images)^perp with the descended structures,
/// written in an orthonormal frame oriented so that omega_1 has positive top power.
struct QuotientSample {
  Vec m;
  Mat frame;  // 4n x 4(n - r), orthonormal columns
  std::array<Form, 3> omega;
  std::array<Mat, 3> S;

  int dim() const { return static_cast<int>(frame.cols()); }
  Metric metric() const { return Metric::euclidean(dim()); }
};

namespace detail {

inline Form top_power(const Form& w) {
  Form acc = w;
  while (acc.degree() + 2 <= w.dim()) acc = wedge(acc, w);
  return acc;
}

}  // namespace detail

inline QuotientSample quotient_sample(const LinearAction& act, const LevelSetPoint& p) {
  const int N = act.model().dim(), r = act.rank();
  const int k = N - 4 * r;
  if (k <= 0) throw ModelError("quotient_sample: quotient would have nonpositive dimension");
  const auto S = act.model().structures();
  const Mat O = act.orbit(p.m);
  Mat C(N, 4 * r);
  C.leftCols(r) = O;
  for (int i = 0; i < 3; ++i) C.middleCols((i + 1) * r, r) = S[static_cast<std::size_t>(i)] * O;
  detail::require_full_rank(C, 1e-9);
  Eigen::HouseholderQR<Mat> qr(C);
  const Mat Q = qr.householderQ() * Mat::Identity(N, N);
  QuotientSample q;
  q.m = p.m;
  q.frame = Q.rightCols(k);
  const auto w = act.model().kahler_triple();
  if (detail::top_power(pullback(q.frame, w[0]))[0] < 0) q.frame.col(0) *= -1.0;
  for (int i = 0; i < 3; ++i) {
    const auto u = static_cast<std::size_t>(i);
    q.omega[u] = pullback(q.frame, w[u]);
    q.S[u] = q.frame.transpose() * S[u] * q.frame;
  }
  return q;
}

/// Local slice s(t) = m + E t + N lambda(t) of the level set through m, with
/// E the horizontal frame and N = D nu(m)^T. The parameters t are coordinates on
/// the quotient near [m].
class LocalSection {
 public:
  LocalSection(const LinearAction& act, const LevelSetPoint& p)
      : act_(act), c_(p.c), m_(p.m), E_(quotient_sample(act, p).frame), N_(hk_jacobian(act, p.m).transpose()) {}

  int dim() const { return static_cast<int>(E_.cols()); }
  const LinearAction& action() const { return act_; }
  const Mat& frame() const { return E_; }

  Vec point(const Vec& t) const {
    const Vec target = detail::level_target(c_);
    const Vec base = m_ + E_ * t;
    Vec lam = Vec::Zero(N_.cols());
    for (int it = 0; it < 40; ++it) {
      const Vec s = base + N_ * lam;
      const Vec res = detail::flatten_moment(hk_moment(act_, s)) - target;
      if (res.cwiseAbs().maxCoeff() < 1e-15) return s;
      const Vec step = (hk_jacobian(act_, s) * N_).partialPivLu().solve(res);
      lam -= step;
      if (step.cwiseAbs().maxCoeff() < 1e-16) return base + N_ * lam;
    }
    const Vec s = base + N_ * lam;
    if ((detail::flatten_moment(hk_moment(act_, s)) - target).cwiseAbs().maxCoeff() < 1e-12) return s;
    throw ConvergenceError("LocalSection: slice left the neighbourhood where it is a graph");
  }

  /// Columns d s / d t_j, exact: d lambda = -(D nu N)^{-1} D nu E.
  Mat tangents(const Vec& t) const {
    const Vec s = point(t);
    const Mat D = hk_jacobian(act_, s);
    return E_ - N_ * (D * N_).partialPivLu().solve(D * E_);
  }

  /// Tangents with the orbit component removed: horizontal lifts of the coordinate vectors.
  Mat horizontal(const Vec& t) const { return orbit_projector(act_, point(t)) * tangents(t); }

 private:
  LinearAction act_;
  Vec c_, m_;
  Mat E_, N_;
};

/// Quotient metric in slice coordinates.
inline Mat quotient_metric(const LocalSection& sec, const Vec& t) {
  const Mat H = sec.horizontal(t);
  return H.transpose() * H;
}

/// omega_i pulled back by the slice; orbit directions drop out on the level set.
inline Form quotient_omega(const LocalSection& sec, const Vec& t, int i) {
  return pullback(sec.tangents(t), sec.action().model().kahler_triple()[static_cast<std::size_t>(i)]);
}

inline FormField quotient_omega_field(const LocalSection& sec, int i) {
  return FormField{[sec, i](const Vec& t) { return quotient_omega(sec, t, i); }, {}, sec.dim(), 2};
}

/// Descended complex structure in slice coordinates: S_i acting on horizontal lifts.
inline Mat quotient_structure(const LocalSection& sec, const Vec& t, int i) {
  const Mat H = sec.horizontal(t);
  return (H.transpose() * H).ldlt().solve(H.transpose() * sec.action().model().structures()[static_cast<std::size_t>(i)] * H);
}

/// Connection theta(Y) = (O^T O)^{-1} O^T Y of the level set over the quotient,
/// pulled back by the slice; column j is theta(d s / d t_j).
inline Mat connection_form(const LocalSection& sec, const Vec& t) {
  const Vec s = sec.point(t);
  const Mat O = sec.action().orbit(s);
  return (O.transpose() * O).ldlt().solve(O.transpose() * sec.tangents(t));
}

struct Character {
  Vec chi;
  bool integral = true;
};

/// Character whose associated bundle carries the canonical connection matched
/// to a circle rotating (omega_2, omega_3) on the quotient by a level (c, 0, 0).
/// Non-integral levels are flagged: no line bundle exists then.
inline Character canonical_character(const Vec& c) {
  Character ch{c, true};
  for (int a = 0; a < c.size(); ++a)
    if (std::abs(c(a) - std::round(c(a))) > 1e-12) ch.integral = false;
  return ch;
}

/// Curvature -chi . d theta of the associated line bundle, in slice coordinates.
inline Form canonical_bundle_curvature(const LocalSection& sec, const Vec& chi, const Vec& t, const FDScheme& s) {
  if (chi.size() != sec.action().rank()) throw ModelError("character has wrong length");
  FormField th{[sec, chi](const Vec& x) { return Form::covector(connection_form(sec, x).transpose() * chi); }, {}, sec.dim(), 1};
  return ext_deriv(th, t, s) * -1.0;
}

/// Residual circle data on the quotient for a rotator commuting with the gauge action.
struct DescendedCircleData {
  Vec x_bar;        // horizontal part of B m, ambient coordinates
  Vec x_bar_frame;  // same vector in the orthonormal quotient frame
  double mu_bar = 0.0;
  double level_drift = 0.0;  // |D nu(m) B m|: zero iff the flow stays on the level set
};

inline void check_rotator(const LinearAction& act, const CircleActionSpec& spec) {
  check_compatible(act.model(), spec);
  const Mat B = spec.generator();
  for (const Mat& A : act.generators())
    if ((A * B - B * A).cwiseAbs().maxCoeff() > 1e-12) throw ModelError("rotator does not commute with the gauge action");
}

inline DescendedCircleData descended_circle_data(const LinearAction& act, const CircleActionSpec& spec, const QuotientSample& q) {
  check_rotator(act, spec);
  const Vec X = spec.generator() * q.m;
  DescendedCircleData d;
  d.x_bar_frame = q.frame.transpose() * X;
  d.x_bar = q.frame * d.x_bar_frame;
  d.mu_bar = moment_map(spec, q.m);
  d.level_drift = (hk_jacobian(act, q.m) * X).cwiseAbs().maxCoeff();
  return d;
}

inline ScalarField quotient_moment_field(const LocalSection& sec, const CircleActionSpec& spec) {
  return ScalarField{[sec, spec](const Vec& t) { return moment_map(spec, sec.point(t)); }, {}, sec.dim()};
}

/// d^c mu on the quotient: the quotient structure lifts to I on horizontal vectors,
/// so (d^c mu)_j = -d mu(I H_j) with d mu(Z) = omega_1(B s, Z).
inline Form quotient_dc_moment(const LocalSection& sec, const CircleActionSpec& spec, const Vec& t) {
  const Vec s = sec.point(t);
  const FlatModel& model = sec.action().model();
  const Vec X = spec.generator() * s;
  const Mat W1 = model.kahler_triple()[0].matrix();
  const Mat H = orbit_projector(sec.action(), s) * sec.tangents(t);
  return Form::covector(-(X.transpose() * W1 * model.I() * H).transpose());
}

/// omega_1 + (1/n) dd^c mu on the quotient, the exterior derivative taken by finite differences.
inline Form quotient_rotator_curvature(const LocalSection& sec, const CircleActionSpec& spec, const Vec& t, const FDScheme& s,
                                       CurvatureCoefficient coef = CurvatureCoefficient::inverse_degree) {
  check_rotator(sec.action(), spec);
  const double a = curvature_coefficient(spec, coef);
  const Form w1 = quotient_omega(sec, t, 0);
  if (a == 0.0) return w1;
  FormField dc{[sec, spec](const Vec& x) { return quotient_dc_moment(sec, spec, x); }, {}, sec.dim(), 1};
  return w1 + a * ext_deriv(dc, t, s);
}

// ---- Gibbons-Hawking coordinates on four-dimensional quotients ----

/// Largest d <= max_d with exp(2 pi C / d) equal to some exp(phi A) for a circle gauge group,
/// found by scanning phi on a grid: the order of the subgroup that acts trivially on the quotient.
inline int ineffective_order(const LinearAction& act, const Mat& C, int max_d = 12, int grid = 720) {
  if (act.rank() != 1) throw ModelError("ineffective_order: only circle gauge groups are supported");
  for (int d = max_d; d >= 1; --d) {
    const Mat R = (2.0 * std::numbers::pi / d * C).exp();
    for (int j = 0; j < grid; ++j) {
      const Mat G = (2.0 * std::numbers::pi * j / grid * act.gen(0)).exp();
      if ((R - G).cwiseAbs().maxCoeff() < 1e-9) return d;
    }
  }
  return 1;
}

struct GHPoint {
  Vec3 x;
  double V = 0.0;
};

/// Moment triple of the residual circle generated by C / (2d) and the potential
/// V = 1 / |horizontal part of the generating field|^2.
/// The scale 1/(2d) makes the effective circle have period 2 pi and the potential unit strength.
inline GHPoint gh_coordinates(const LinearAction& act, const Mat& C, int d, const QuotientSample& q) {
  const auto S = act.model().structures();
  for (const Mat& s : S)
    if ((C * s - s * C).cwiseAbs().maxCoeff() > 1e-12) throw ModelError("gh_coordinates: circle is not triholomorphic");
  for (const Mat& A : act.generators())
    if ((A * C - C * A).cwiseAbs().maxCoeff() > 1e-12) throw ModelError("gh_coordinates: circle does not commute with the gauge action");
  const Mat Y = C / (2.0 * d);
  const auto w = act.model().kahler_triple();
  GHPoint g;
  const Vec Ym = Y * q.m;
  for (int i = 0; i < 3; ++i) g.x(i) = 0.5 * Ym.dot(w[static_cast<std::size_t>(i)].matrix() * q.m);
  const double len2 = (q.frame.transpose() * Ym).squaredNorm();
  if (len2 < 1e-14) throw NonFreePointError("gh_coordinates: residual circle has a fixed point here");
  g.V = 1.0 / len2;
  return g;
}

struct GHFit {
  std::vector<Vec3> centers;
  double residual = 0.0;  // max relative misfit of V
};

namespace detail {

struct GHFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Vec;
  using ValueType = Vec;
  using JacobianType = Mat;

  const std::vector<GHPoint>* pts;
  int count;

  int inputs() const { return 3 * count; }
  int values() const { return static_cast<int>(pts->size()); }

  int operator()(const Vec& a, Vec& f) const {
    for (std::size_t k = 0; k < pts->size(); ++k) {
      const GHPoint& p = (*pts)[k];
      double v = 0.0;
      for (int i = 0; i < count; ++i) v += 1.0 / (p.x - a.segment<3>(3 * i)).norm();
      f(static_cast<Eigen::Index>(k)) = v / p.V - 1.0;
    }
    return 0;
  }
  int df(const Vec& a, Mat& J) const {
    for (std::size_t k = 0; k < pts->size(); ++k) {
      const GHPoint& p = (*pts)[k];
      for (int i = 0; i < count; ++i) {
        const Vec3 d = p.x - a.segment<3>(3 * i);
        const double r = d.norm();
        J.block<1, 3>(static_cast<Eigen::Index>(k), 3 * i) = (d / (r * r * r) / p.V).transpose();
      }
    }
    return 0;
  }
};

}  // namespace detail

/// Least-squares fit of V = sum 1/|x - a_i| with unit strength, Levenberg-Marquardt
/// from several starts spread along the principal axis of the samples.
inline GHFit fit_gh_centers(const std::vector<GHPoint>& pts, int count) {
  if (count < 1 || static_cast<int>(pts.size()) < 3 * count) throw ModelError("fit_gh_centers: too few samples");
  Vec3 mean = Vec3::Zero();
  for (const auto& p : pts) mean += p.x;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p.x - mean) * (p.x - mean).transpose();
  cov /= static_cast<double>(pts.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Vec3 axis = es.eigenvectors().col(2);
  const double spread = std::sqrt(std::max(es.eigenvalues()(2), 1e-12));

  detail::GHFunctor fn{&pts, count};
  GHFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (double scale : {0.1, 0.25, 0.5, 1.0, 1.5}) {
    Vec a(3 * count);
    for (int i = 0; i < count; ++i) a.segment<3>(3 * i) = mean + scale * spread * (i - 0.5 * (count - 1)) * axis;
    Eigen::LevenbergMarquardt<detail::GHFunctor> lm(fn);
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.parameters.maxfev = 4000;
    lm.minimize(a);
    Vec f(fn.values());
    fn(a, f);
    const double res = f.cwiseAbs().maxCoeff();
    if (std::isfinite(res) && res < best.residual) {
      best.residual = res;
      best.centers.clear();
      for (int i = 0; i < count; ++i) best.centers.push_back(a.segment<3>(3 * i));
    }
  }
  std::sort(best.centers.begin(), best.centers.end(), [&](const Vec3& p, const Vec3& q) { return p.dot(axis) < q.dot(axis); });
  return best;
}

// ---- Eguchi-Hanson fixture: H^2 by the circle with weights (1, 1) on z, (-1, -1) on w ----

struct EguchiHansonFixture {
  FlatModel model{2};
  LinearAction action = LinearAction::torus(FlatModel(2), {{1, 1}});
  CircleActionSpec rotator{{1, 1}, {1, 1}};       // e^{i theta}(z, w), rotation degree 2
  CircleActionSpec residual{{1, -1}, {-1, 1}};    // triholomorphic
};

}  // namespace hyperholo
