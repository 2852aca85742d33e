#pragma once

// Explicit hyperkahler potential on the cotangent bundle of CP^1.
// Chart coordinates q = (Re z, Im z, Re p, Im p) for the covector v = p dz.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "hyperholo/errors.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/forms.hpp"
#include "hyperholo/hkspace.hpp"

namespace hyperholo {

namespace bg {

inline constexpr double kSeriesSwitch = 1e-4;

/// (u f(u))' = (sqrt(1+u) - 1)/(2u), written without cancellation.
inline double uf_prime(double u) {
  if (u < 0.0) throw DomainError("bg::uf_prime: u < 0");
  return 0.5 / (std::sqrt(1.0 + u) + 1.0);
}

inline double f(double u) {
  if (u < 0.0) throw DomainError("bg::f: u < 0");
  if (u < kSeriesSwitch) return 0.25 + u * (-1.0 / 32 + u * (1.0 / 96 - u * 5.0 / 1024));
  const double q = u / (std::sqrt(1.0 + u) + 1.0);  // sqrt(1+u) - 1
  return (q - std::log1p(0.5 * q)) / u;
}

inline double g(double u) {
  if (u < 0.0) throw DomainError("bg::g: u < 0");
  if (u < kSeriesSwitch) return -0.25 + u * (3.0 / 32 + u * (-5.0 / 96 + u * 35.0 / 1024));
  const double q = u / (std::sqrt(1.0 + u) + 1.0);
  return -std::log1p(0.5 * q) / u;
}

}  // namespace bg

/// max over the grid of |d/du (u f(u)) - (sqrt(1+u) - 1)/(2u)|, derivative by 4th-order FD.
inline double fu_identity_residual(const std::vector<double>& grid) {
  double worst = 0.0;
  for (double u : grid) {
    if (!(u > 0.0)) throw DomainError("fu_identity_residual: grid must be positive");
    const double d = 1e-3 * u;
    auto uf = [](double x) { return x * bg::f(x); };
    const double deriv = (8.0 * (uf(u + d) - uf(u - d)) - (uf(u + 2 * d) - uf(u - 2 * d))) / (12.0 * d);
    worst = std::max(worst, std::abs(deriv - (std::sqrt(1.0 + u) - 1.0) / (2.0 * u)));
  }
  return worst;
}

inline std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a * std::pow(b / a, n == 1 ? 0.0 : double(i) / (n - 1));
  return g;
}

using CMat = Eigen::MatrixXcd;

/// Re (fn(U) c, c) via the eigendecomposition of the hermitian operator U.
inline double spectral_pairing(const CMat& U, const CVec& c, const std::function<double(double)>& fn, double clamp = 1e-12) {
  Eigen::SelfAdjointEigenSolver<CMat> es(U);
  const Vec& lam = es.eigenvalues();
  const CMat& Q = es.eigenvectors();
  const CVec a = Q.adjoint() * c;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    double l = lam(i);
    if (l < -clamp) throw ModelError("curvature operator has a negative eigenvalue");
    l = std::max(l, 0.0);
    acc += fn(l) * std::norm(a(i));
  }
  return acc;
}

/// CP^1 with [omega/2pi] integral, in one affine chart.
/// The fibre is written in a unitary frame: c = p (1 + |z|^2)/sqrt(2), |v|^2 = |c|^2,
/// and IR(Iv, v) acts by u = 2|c|^2 = |p|^2 (1 + |z|^2)^2.
struct CP1Model {
  static constexpr int dim = 4;
  static constexpr double curvature_scale = 2.0;

  /// i dd-bar log(1 + |z|^2) = 2 dx^dy / (1 + |z|^2)^2, pulled back to the chart.
  Form base_form(const Vec& q) const {
    const double r = 1.0 + q(0) * q(0) + q(1) * q(1);
    Form w(4, 2);
    w.set_component({0, 1}, 2.0 / (r * r));
    return w;
  }

  CVec fibre_coeffs(const Vec& q) const {
    const double r = 1.0 + q(0) * q(0) + q(1) * q(1);
    CVec c(1);
    c(0) = cplx(q(2), q(3)) * (r / std::sqrt(2.0));
    return c;
  }

  CMat curvature_operator(const Vec& q) const {
    const CVec c = fibre_coeffs(q);
    CMat U(1, 1);
    U(0, 0) = curvature_scale * std::norm(c(0));
    return U;
  }

  /// Complex structure of the cotangent bundle: multiplication by i on (z, p).
  Mat I() const { return FlatModel(1).I(); }

  /// omega_2 + i omega_3 = dp ^ dz.
  Form omega2() const {
    Form w(4, 2);
    w.set_component({0, 2}, -1.0);
    w.set_component({1, 3}, 1.0);
    return w;
  }
  Form omega3() const {
    Form w(4, 2);
    w.set_component({1, 2}, -1.0);
    w.set_component({0, 3}, -1.0);
    return w;
  }

  /// Generator of v -> e^{i theta} v.
  Vec fibre_rotation(const Vec& q) const {
    Vec X = Vec::Zero(4);
    X(2) = -q(3);
    X(3) = q(2);
    return X;
  }

  static Vec point(cplx z, cplx p) {
    Vec q(4);
    q << z.real(), z.imag(), p.real(), p.imag();
    return q;
  }
};

/// h(v) = (f(IR(Iv,v)) v, v).
inline double potential_h(const CP1Model& m, const Vec& q) {
  return spectral_pairing(m.curvature_operator(q), m.fibre_coeffs(q), [](double u) { return bg::f(u); });
}

/// k(v) = (g(IR(Iv,v)) v, v).
inline double potential_k(const CP1Model& m, const Vec& q) {
  return spectral_pairing(m.curvature_operator(q), m.fibre_coeffs(q), [](double u) { return bg::g(u); });
}

/// mu(v) = -2((u f(u))' v, v).
inline double bg_moment_map(const CP1Model& m, const Vec& q) {
  return -2.0 * spectral_pairing(m.curvature_operator(q), m.fibre_coeffs(q), [](double u) { return bg::uf_prime(u); });
}

inline Vec scale_fibre(const Vec& q, double s) {
  Vec r = q;
  r(2) *= s;
  r(3) *= s;
  return r;
}

/// d/dlambda h(lambda^{-1} v) at lambda = 1, central 4th-order difference.
inline double moment_from_scaling(const CP1Model& m, const Vec& q, double d = 1e-3) {
  auto hl = [&](double lam) { return potential_h(m, scale_fibre(q, 1.0 / lam)); };
  return (8.0 * (hl(1 + d) - hl(1 - d)) - (hl(1 + 2 * d) - hl(1 - 2 * d))) / (12.0 * d);
}

inline ScalarField h_field(const CP1Model& m) {
  return ScalarField{[m](const Vec& q) { return potential_h(m, q); }, {}, 4};
}
inline ScalarField k_field(const CP1Model& m) {
  return ScalarField{[m](const Vec& q) { return potential_k(m, q); }, {}, 4};
}
inline ScalarField mu_field(const CP1Model& m) {
  return ScalarField{[m](const Vec& q) { return bg_moment_map(m, q); }, {}, 4};
}

/// -i_X d^c h for the fibre rotation X.
inline double moment_from_dc(const CP1Model& m, const Vec& q, const FDScheme& s) {
  const Form dch = dc_deriv(h_field(m), constant_structure(m.I()), q, s);
  return -dch(m.fibre_rotation(q));
}

/// omega_1 = p^* omega + dd^c h.
inline Form bg_omega1(const CP1Model& m, const Vec& q, const FDScheme& s) {
  return m.base_form(q) + ddc(h_field(m), constant_structure(m.I()), q, s);
}

/// p^* omega + dd^c k.
inline Form bg_curvature(const CP1Model& m, const Vec& q, const FDScheme& s) {
  return m.base_form(q) + ddc(k_field(m), constant_structure(m.I()), q, s);
}

/// omega_1 + dd^c mu, computed independently of k.
inline Form bg_curvature_via_moment(const CP1Model& m, const Vec& q, const FDScheme& s) {
  return bg_omega1(m, q, s) + ddc(mu_field(m), constant_structure(m.I()), q, s);
}

struct BGHyperkahlerResiduals {
  double j_square = 0.0;            // |J^2 + Id|
  std::array<double, 3> type11{};   // F against I, J, K
};

/// Builds g from (omega_1, I), J from omega_2, and tests F for type (1,1).
/// Throws MetricError if g is not positive definite at q.
inline BGHyperkahlerResiduals bg_hyperkahler_check(const CP1Model& m, const Vec& q, const FDScheme& s) {
  const Form w1 = bg_omega1(m, q, s);
  const Mat I = m.I();
  const Mat G = w1.matrix() * I;  // g(X, Y) = omega_1(X, IY)
  const Metric g(G, 1e-6);
  const Mat J = -g.inverse() * m.omega2().matrix();
  BGHyperkahlerResiduals r;
  r.j_square = ComplexStructure::defect(J);
  const Form F = bg_curvature(m, q, s);
  const std::array<Mat, 3> S{I, J, I * J};
  for (int i = 0; i < 3; ++i) r.type11[static_cast<std::size_t>(i)] = type11_residual(F, ComplexStructure(S[static_cast<std::size_t>(i)], 1e-4), g);
  return r;
}

}  // namespace hyperholo
