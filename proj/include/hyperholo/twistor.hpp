#pragma once

// Twistor space of flat H^n: the two holomorphic charts, the smooth product
// structure, the line-bundle transition function, the meromorphic connection
// attached to the full rotation and the hermitian metric for the rotation of w.
//
// Holomorphic coordinates are packed as q = (v_1..v_n, xi_1..xi_n, zeta).
// Real coordinates on Z are (hkspace packing of (z, w), Re zeta, Im zeta).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "hyperholo/errors.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/forms.hpp"
#include "hyperholo/hkspace.hpp"

namespace hyperholo {

using CMatX = Eigen::MatrixXcd;

struct TwistorPointU {
  CVec v, xi;
  cplx zeta;
};

struct TwistorPointV {
  CVec vt, xit;
  cplx zetat;
};

inline TwistorPointV to_V(const TwistorPointU& p) {
  if (p.zeta == cplx(0.0)) throw DomainError("chart V does not contain zeta = 0");
  return {p.v / p.zeta, p.xi / p.zeta, 1.0 / p.zeta};
}

inline TwistorPointU to_U(const TwistorPointV& p) {
  if (p.zetat == cplx(0.0)) throw DomainError("chart U does not contain zeta = infinity");
  return {p.vt / p.zetat, p.xit / p.zetat, 1.0 / p.zetat};
}

inline CVec pack_q(const CVec& a, const CVec& b, cplx c) {
  CVec q(a.size() + b.size() + 1);
  q << a, b, c;
  return q;
}
inline CVec pack_q(const TwistorPointU& p) { return pack_q(p.v, p.xi, p.zeta); }
inline CVec pack_q(const TwistorPointV& p) { return pack_q(p.vt, p.xit, p.zetat); }

inline TwistorPointU unpack_U(const CVec& q) {
  const auto n = (q.size() - 1) / 2;
  return {q.head(n), q.segment(n, n), q(2 * n)};
}
inline TwistorPointV unpack_V(const CVec& q) {
  const auto n = (q.size() - 1) / 2;
  return {q.head(n), q.segment(n, n), q(2 * n)};
}

/// (z, w, zeta) -> (z + zeta conj w, w - zeta conj z, zeta).
inline TwistorPointU smooth_to_U(const CVec& z, const CVec& w, cplx zeta) {
  return {z + zeta * w.conjugate(), w - zeta * z.conjugate(), zeta};
}

/// Inverse of smooth_to_U on a fibre.
inline std::pair<CVec, CVec> U_to_smooth(const TwistorPointU& p) {
  const double d = 1.0 + std::norm(p.zeta);
  return {(p.v - p.zeta * p.xi.conjugate()) / d, (p.xi + p.zeta * p.v.conjugate()) / d};
}

/// Real tangent X of H^n at fixed zeta, pushed to (dv, dxi).
inline CVec vertical_pushforward(const FlatModel& m, cplx zeta, const Vec& X) {
  const CVec xz = m.z_of(X), xw = m.w_of(X);
  CVec t(2 * m.n());
  t << xz + zeta * xw.conjugate(), xw - zeta * xz.conjugate();
  return t;
}

/// (omega_2 + i omega_3) + 2i omega_1 zeta + (omega_2 - i omega_3) zeta^2 on real tangents.
inline cplx fibre_symplectic(const FlatModel& m, cplx zeta, const Vec& X, const Vec& Y) {
  const auto w = m.kahler_triple();
  const cplx a(w[1](X, Y), w[2](X, Y));
  return a + 2.0 * cplx(0.0, 1.0) * w[0](X, Y) * zeta + std::conj(a) * zeta * zeta;
}

// ---- transition function and the pair of connection forms for the rotation of w ----

inline cplx transition_gUV(const TwistorPointU& p) {
  if (p.zeta == cplx(0.0)) throw DomainError("transition function has an essential singularity at zeta = 0");
  return std::exp(-p.v.cwiseProduct(p.xi).sum() / (2.0 * p.zeta));
}

/// The inverse transition written in chart V: v.xi / zeta = vt.xit / zetat.
inline cplx transition_gVU(const TwistorPointV& p) {
  if (p.zetat == cplx(0.0)) throw DomainError("transition function has an essential singularity at zeta = infinity");
  return std::exp(p.vt.cwiseProduct(p.xit).sum() / (2.0 * p.zetat));
}

/// d q_V / d q_U on the overlap.
inline CMatX chart_jacobian_UV(const CVec& q) {
  const auto m = q.size();
  const auto n = (m - 1) / 2;
  const cplx z = q(2 * n);
  if (z == cplx(0.0)) throw DomainError("chart change at zeta = 0");
  CMatX J = CMatX::Zero(m, m);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    J(i, i) = 1.0 / z;
    J(i, 2 * n) = -q(i) / (z * z);
  }
  J(2 * n, 2 * n) = -1.0 / (z * z);
  return J;
}

/// A_U = (1/2 zeta) sum v_i dxi_i.
inline CVec connection_AU(const CVec& q) {
  const auto n = (q.size() - 1) / 2;
  CVec a = CVec::Zero(q.size());
  a.segment(n, n) = q.head(n) / (2.0 * q(2 * n));
  return a;
}

/// Which way round the V-chart form is written: -(1/2 zt) sum xit dvt makes the
/// pair glue through g_UV; the other ordering is kept to show that it does not.
enum class AVOrdering { xi_dv, v_dxi };

inline CVec connection_AV(const CVec& qt, AVOrdering ord = AVOrdering::xi_dv) {
  const auto n = (qt.size() - 1) / 2;
  if (qt(2 * n) == cplx(0.0)) throw DomainError("A_V has a pole at zeta = infinity");
  CVec a = CVec::Zero(qt.size());
  if (ord == AVOrdering::xi_dv)
    a.head(n) = -qt.segment(n, n) / (2.0 * qt(2 * n));
  else
    a.segment(n, n) = -qt.head(n) / (2.0 * qt(2 * n));
  return a;
}

/// d(v.xi / 2 zeta), differentiated by hand.
inline CVec d_half_vxi_over_zeta(const CVec& q) {
  const auto n = (q.size() - 1) / 2;
  const cplx z = q(2 * n);
  CVec d(q.size());
  d.head(n) = q.segment(n, n) / (2.0 * z);
  d.segment(n, n) = q.head(n) / (2.0 * z);
  d(2 * n) = -(q.head(n).transpose() * q.segment(n, n))(0) / (2.0 * z * z);
  return d;
}

/// |(A_V - A_U + d(v.xi/2 zeta))(T)| for a holomorphic tangent T in chart U.
inline double connection_pair_residual(const CVec& q, const CVec& T, AVOrdering ord = AVOrdering::xi_dv) {
  const CVec qt = pack_q(to_V(unpack_U(q)));
  const CVec Tt = chart_jacobian_UV(q) * T;
  const cplx av = (connection_AV(qt, ord).transpose() * Tt)(0);
  const cplx au = (connection_AU(q).transpose() * T)(0);
  const cplx dg = (d_half_vxi_over_zeta(q).transpose() * T)(0);
  return std::abs(av - au + dg);
}

// ---- meromorphic connection of the full rotation ----

/// Scale of the fibre term that makes -i dA restrict to the twisted fibre form
/// in the conventions of hkspace. Scale 1 is the unnormalised term.
inline constexpr double kFibreScale = -0.5;

struct MeroConnection {
  int n = 1;                       // quaternionic dimension
  int lift_weight = 1;             // weight of the circle on the line bundle
  double fibre_scale = kFibreScale;

  /// 2 pi i k dzeta/zeta + (s / 2 zeta) sum (xi_i dv_i - v_i dxi_i).
  CVec A_U(const CVec& q) const {
    check(q);
    const cplx z = q(2 * n);
    if (z == cplx(0.0)) throw DomainError("connection has a pole at zeta = 0");
    CVec a(q.size());
    a.head(n) = fibre_scale * q.segment(n, n) / (2.0 * z);
    a.segment(n, n) = -fibre_scale * q.head(n) / (2.0 * z);
    a(2 * n) = 2.0 * std::numbers::pi * cplx(0.0, 1.0) * static_cast<double>(lift_weight) / z;
    return a;
  }

  /// The same connection in chart V, pulled back through the chart change.
  CVec A_V(const CVec& qt) const {
    check(qt);
    const CVec q = pack_q(to_U(unpack_V(qt)));
    // d q_U / d q_V is the inverse of d q_V / d q_U
    const CMatX JVU = chart_jacobian_UV(q).inverse();
    return JVU.transpose() * A_U(q);
  }

  /// Exterior derivative of A_U, by hand; complex antisymmetric in q.
  CMatX dA(const CVec& q) const {
    check(q);
    const cplx z = q(2 * n);
    const double s = fibre_scale;
    CMatX F = CMatX::Zero(q.size(), q.size());
    auto add = [&](Eigen::Index a, Eigen::Index b, cplx c) {
      F(a, b) += c;
      F(b, a) -= c;
    };
    for (int i = 0; i < n; ++i) {
      add(i, n + i, -s / z);                                    // dv ^ dxi
      add(2 * n, i, -s / (2.0 * z * z) * q(n + i));             // dzeta ^ dv
      add(2 * n, n + i, s / (2.0 * z * z) * q(i));              // dzeta ^ dxi
    }
    return F;
  }

  /// F_Z = -i dA.
  CMatX F(const CVec& q) const { return cplx(0.0, -1.0) * dA(q); }

 private:
  void check(const CVec& q) const {
    if (q.size() != 2 * n + 1) throw ModelError("twistor point has wrong dimension");
  }
};

/// Holomorphic vector field of the rotation e^{i theta}(z, w), normalised to project to i zeta d/dzeta.
inline CVec action_field(const CVec& q) {
  const auto n = (q.size() - 1) / 2;
  CVec V(q.size());
  V.head(2 * n) = 0.5 * cplx(0.0, 1.0) * q.head(2 * n);
  V(2 * n) = cplx(0.0, 1.0) * q(2 * n);
  return V;
}

/// Same field obtained by differentiating the rotated smooth-product point in theta.
inline CVec transported_action_field(const CVec& z, const CVec& w, cplx zeta, const FDScheme& s) {
  auto path = [&](const Vec& th) {
    const cplx e = std::polar(1.0, th(0));
    return pack_q(smooth_to_U(e * z, e * w, e * e * zeta));
  };
  const CVec d = partial(path, Vec::Zero(1), 0, s);
  return 0.5 * d;  // the rotation moves zeta with weight 2
}

namespace detail {

inline CVec real_to_q(const Vec& s) {
  const auto m = s.size() / 2;
  return s.head(m).cast<cplx>() + cplx(0.0, 1.0) * s.tail(m).cast<cplx>();
}

inline Vec q_to_real(const CVec& q) {
  Vec s(2 * q.size());
  s << q.real(), q.imag();
  return s;
}

}  // namespace detail

/// Holomorphic partial derivatives of the components of A_U, by finite differences along Re q.
inline CMatX dA_numeric(const MeroConnection& c, const CVec& q, const FDScheme& s) {
  auto f = [&](const Vec& r) { return c.A_U(detail::real_to_q(r)); };
  const Vec r = detail::q_to_real(q);
  CMatX D(q.size(), q.size());  // D(a, b) = d_a A_b
  for (Eigen::Index a = 0; a < q.size(); ++a) D.row(a) = partial(f, r, static_cast<int>(a), s).transpose();
  return D - D.transpose();
}

/// max |d F| over index triples, F differentiated numerically.
inline double curvature_closedness(const MeroConnection& c, const CVec& q, const FDScheme& s) {
  auto f = [&](const Vec& r) {
    const CMatX F = c.F(detail::real_to_q(r));
    return CVec(Eigen::Map<const CVec>(F.data(), F.size()));
  };
  const Vec r = detail::q_to_real(q);
  const auto m = q.size();
  std::vector<CMatX> dF;
  for (Eigen::Index a = 0; a < m; ++a) {
    const CVec d = partial(f, r, static_cast<int>(a), s);
    dF.push_back(Eigen::Map<const CMatX>(d.data(), m, m));
  }
  double worst = 0.0;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b)
      for (Eigen::Index k = b + 1; k < m; ++k)
        worst = std::max(worst, std::abs(dF[static_cast<std::size_t>(a)](b, k) + dF[static_cast<std::size_t>(b)](k, a) +
                                         dF[static_cast<std::size_t>(k)](a, b)));
  return worst;
}

/// max |i_V F_Z|.
inline double interior_action_residual(const MeroConnection& c, const CVec& q) {
  return (c.F(q).transpose() * action_field(q)).cwiseAbs().maxCoeff();
}

/// max over real tangent pairs of |F_Z(X, Y) - twisted fibre form(X, Y)| at a point (z, w, zeta), zeta != 0.
inline double fibre_restriction_residual(const MeroConnection& c, const FlatModel& m, const CVec& z, const CVec& w, cplx zeta) {
  const CVec q = pack_q(smooth_to_U(z, w, zeta));
  const CMatX F = c.F(q);
  const int N = m.dim();
  const auto tri = m.kahler_triple();
  double worst = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Vec X = Vec::Zero(N), Y = Vec::Zero(N);
      X(a) = 1.0;
      Y(b) = 1.0;
      CVec tx = CVec::Zero(q.size()), ty = CVec::Zero(q.size());
      tx.head(2 * m.n()) = vertical_pushforward(m, zeta, X);
      ty.head(2 * m.n()) = vertical_pushforward(m, zeta, Y);
      const cplx lhs = (tx.transpose() * F * ty)(0);
      const cplx a2(tri[1](X, Y), tri[2](X, Y));
      const cplx rhs = a2 / (2.0 * cplx(0.0, 1.0) * zeta) + tri[0](X, Y) + std::conj(a2) * zeta / (2.0 * cplx(0.0, 1.0));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

/// Ratio F_Z(X, Y) / fibre form(X, Y) on the pair X = d/dRe z_1, Y = d/dRe w_1; 1 when the scale is right.
inline cplx fibre_ratio(const MeroConnection& c, const FlatModel& m, const CVec& z, const CVec& w, cplx zeta) {
  const CVec q = pack_q(smooth_to_U(z, w, zeta));
  Vec X = Vec::Zero(m.dim()), Y = Vec::Zero(m.dim());
  X(m.zre(0)) = 1.0;
  Y(m.wre(0)) = 1.0;
  CVec tx = CVec::Zero(q.size()), ty = CVec::Zero(q.size());
  tx.head(2 * m.n()) = vertical_pushforward(m, zeta, X);
  ty.head(2 * m.n()) = vertical_pushforward(m, zeta, Y);
  return (tx.transpose() * c.F(q) * ty)(0) / (fibre_symplectic(m, zeta, X, Y) / (2.0 * cplx(0.0, 1.0) * zeta));
}

/// Trapezoid rule for (1 / 2 pi i) of the contour integral of f dzeta over |zeta| = r.
template <class F>
auto contour_residue(const F& f, double r = 1e-2, int nodes = 64) {
  using T = std::decay_t<std::invoke_result_t<const F&, cplx>>;
  T acc = f(cplx(r, 0.0)) * cplx(r, 0.0);
  for (int j = 1; j < nodes; ++j) {
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / nodes);
    acc += f(z) * z;
  }
  return T(acc / static_cast<double>(nodes));
}

/// Residue of the dzeta coefficient at zeta = 0 with (v, xi) held fixed: 2 pi i k.
inline cplx residue_value(const MeroConnection& c, const CVec& v, const CVec& xi, double r = 1e-2, int nodes = 64) {
  return contour_residue([&](cplx z) { return c.A_U(pack_q(v, xi, z))(2 * c.n); }, r, nodes);
}

/// Residue of the fibre part at zeta = 0, a holomorphic 1-form in (v, xi).
inline CVec residue_form(const MeroConnection& c, const CVec& v, const CVec& xi, double r = 1e-2, int nodes = 64) {
  return contour_residue([&](cplx z) { return CVec(c.A_U(pack_q(v, xi, z)).head(2 * c.n)); }, r, nodes);
}

/// max over real tangents Y of |residue(Y) - i_X (omega_2 + i omega_3)(Y) / 2i| on the fibre zeta = 0,
/// with X the rotation field normalised like action_field.
inline double residue_form_residual(const MeroConnection& c, const FlatModel& m, const CVec& z, const CVec& w, double r = 1e-2,
                                    int nodes = 64) {
  const CVec res = residue_form(c, z, w, r, nodes);
  const auto spec = CircleActionSpec::uniform(m.n(), 1, 1);
  const Vec p = m.pack(z, w);
  const Vec X = spec.generator() * p / static_cast<double>(spec.degree());
  const auto tri = m.kahler_triple();
  double worst = 0.0;
  for (int k = 0; k < m.dim(); ++k) {
    Vec Y = Vec::Zero(m.dim());
    Y(k) = 1.0;
    const cplx lhs = (res.transpose() * vertical_pushforward(m, 0.0, Y))(0);
    const cplx rhs = cplx(tri[1](X, Y), tri[2](X, Y)) / (2.0 * cplx(0.0, 1.0));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// Largest k with a nonzero coefficient of zeta^{-k} in the Laurent series of f on |zeta| = eps.
template <class F>
int laurent_pole_order(const F& f, double eps = 1e-2, int nodes = 64, int max_order = 6, double rel_tol = 1e-8) {
  std::vector<double> mag(static_cast<std::size_t>(max_order + 1));
  double scale = 0.0;
  for (int k = 0; k <= max_order; ++k) {
    // c_{-k} = (1/2 pi i) of the integral of f zeta^{k-1} dzeta
    const cplx c = contour_residue([&](cplx z) { return f(z) * std::pow(z, k - 1); }, eps, nodes);
    mag[static_cast<std::size_t>(k)] = std::abs(c);
    scale = std::max(scale, std::abs(c) * std::pow(eps, -k));
  }
  int order = 0;
  for (int k = 1; k <= max_order; ++k)
    if (mag[static_cast<std::size_t>(k)] * std::pow(eps, -k) > rel_tol * scale) order = k;
  return order;
}

/// max over coordinates of |d g / d conj(q_a)| / |g|, by finite differences.
inline double cauchy_riemann_residual(const CVec& q, const FDScheme& s) {
  auto g = [](const Vec& r) { return transition_gUV(unpack_U(detail::real_to_q(r))); };
  const Vec r = detail::q_to_real(q);
  const auto m = q.size();
  double worst = 0.0;
  for (Eigen::Index a = 0; a < m; ++a) {
    const cplx dx = partial(g, r, static_cast<int>(a), s), dy = partial(g, r, static_cast<int>(m + a), s);
    worst = std::max(worst, std::abs(0.5 * (dx + cplx(0.0, 1.0) * dy)));
  }
  return worst / std::abs(g(r));
}

// ---- hermitian metric for the rotation of w ----

/// log h_U = 1/2 sum |z|^2 - |w|^2 + zeta conj(z w) + conj(zeta) z w.
inline double log_hU(const CVec& z, const CVec& w, cplx zeta) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    acc += std::norm(z(i)) - std::norm(w(i)) + 2.0 * (std::conj(zeta) * z(i) * w(i)).real();
  return 0.5 * acc;
}

inline double log_hV(const CVec& z, const CVec& w, cplx zeta) {
  if (zeta == cplx(0.0)) throw DomainError("log h_V is not defined at zeta = 0");
  return -log_hU(z, w, -1.0 / std::conj(zeta));
}

namespace detail {

inline void split_real(const FlatModel& m, const Vec& r, CVec& z, CVec& w, cplx& zeta) {
  z = m.z_of(r.head(m.dim()));
  w = m.w_of(r.head(m.dim()));
  zeta = cplx(r(m.dim()), r(m.dim() + 1));
}

}  // namespace detail

inline Vec twistor_real_point(const FlatModel& m, const CVec& z, const CVec& w, cplx zeta) {
  Vec r(m.dim() + 2);
  r << m.pack(z, w), zeta.real(), zeta.imag();
  return r;
}

/// d q / d r for q = (v, xi, zeta) and r the real coordinates of Z.
inline CMatX chart_U_real_jacobian(const FlatModel& m, const Vec& r) {
  CVec z, w;
  cplx zeta;
  detail::split_real(m, r, z, w, zeta);
  const int n = m.n();
  const cplx I(0.0, 1.0);
  const int zr = m.dim(), zi = m.dim() + 1;
  CMatX P = CMatX::Zero(2 * n + 1, m.dim() + 2);
  for (int i = 0; i < n; ++i) {
    P(i, m.zre(i)) = 1.0;
    P(i, m.zim(i)) = I;
    P(i, m.wre(i)) = zeta;
    P(i, m.wim(i)) = -I * zeta;
    P(i, zr) = std::conj(w(i));
    P(i, zi) = I * std::conj(w(i));
    P(n + i, m.wre(i)) = 1.0;
    P(n + i, m.wim(i)) = I;
    P(n + i, m.zre(i)) = -zeta;
    P(n + i, m.zim(i)) = I * zeta;
    P(n + i, zr) = -std::conj(z(i));
    P(n + i, zi) = -I * std::conj(z(i));
  }
  P(2 * n, zr) = 1.0;
  P(2 * n, zi) = I;
  return P;
}

/// log h_U as a function of the real and imaginary parts of the holomorphic coordinates.
inline ScalarField log_hU_in_chart(int n) {
  return ScalarField{[](const Vec& s) {
                       const TwistorPointU p = unpack_U(detail::real_to_q(s));
                       const auto [z, w] = U_to_smooth(p);
                       return log_hU(z, w, p.zeta);
                     },
                     {}, 2 * (2 * n + 1)};
}

/// dbar log h_U pulled back to the real coordinates of Z, by finite differences in the chart.
inline CVec dbar_log_hU(const FlatModel& m, const Vec& r, const FDScheme& s) {
  CVec z, w;
  cplx zeta;
  detail::split_real(m, r, z, w, zeta);
  const CVec q = pack_q(smooth_to_U(z, w, zeta));
  const Vec g = gradient(log_hU_in_chart(m.n()), detail::q_to_real(q), s);
  const auto k = q.size();
  CVec dbar(k);  // d/d conj(q_b) = (d/dx_b + i d/dy_b) / 2
  for (Eigen::Index b = 0; b < k; ++b) dbar(b) = 0.5 * cplx(g(b), g(k + b));
  return chart_U_real_jacobian(m, r).conjugate().transpose() * dbar;
}

/// The closed form 1/2 sum (z w dconj(zeta) + z dconj(z) - w dconj(w) + conj(zeta) d(z w)).
inline CVec dbar_log_hU_closed(const FlatModel& m, const Vec& r) {
  CVec z, w;
  cplx zeta;
  detail::split_real(m, r, z, w, zeta);
  const cplx I(0.0, 1.0);
  CVec out = CVec::Zero(m.dim() + 2);
  const int zr = m.dim(), zi = m.dim() + 1;
  for (int i = 0; i < m.n(); ++i) {
    out(zr) += 0.5 * z(i) * w(i);
    out(zi) += -0.5 * I * z(i) * w(i);
    out(m.zre(i)) += 0.5 * z(i) + 0.5 * std::conj(zeta) * w(i);
    out(m.zim(i)) += -0.5 * I * z(i) + 0.5 * I * std::conj(zeta) * w(i);
    out(m.wre(i)) += -0.5 * w(i) + 0.5 * std::conj(zeta) * z(i);
    out(m.wim(i)) += 0.5 * I * w(i) + 0.5 * I * std::conj(zeta) * z(i);
  }
  return out;
}

/// dbar d log h_U as a complex 2-form on the real coordinates of Z: matrix M(k, l) = form(e_k, e_l).
inline CMatX ddbar_log_hU(const FlatModel& m, const Vec& r, const FDScheme& s) {
  CVec z, w;
  cplx zeta;
  detail::split_real(m, r, z, w, zeta);
  const CVec q = pack_q(smooth_to_U(z, w, zeta));
  const Mat Hr = hessian(log_hU_in_chart(m.n()), detail::q_to_real(q), s);
  const auto k = q.size();
  CMatX H(k, k);  // d^2 / dq_a dconj(q_b)
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      H(a, b) = 0.25 * cplx(Hr(a, b) + Hr(k + a, k + b), Hr(a, k + b) - Hr(k + a, b));
  const CMatX P = chart_U_real_jacobian(m, r);
  // sum H_ab dconj(q_b) ^ dq_a
  const CMatX A = P.conjugate().transpose() * H.transpose() * P;
  return A - A.transpose();
}

/// (sum -dz ^ dconj z + dw ^ dconj w) / 2 on the real coordinates of Z.
inline CMatX hermitian_target(const FlatModel& m) {
  const int N = m.dim() + 2;
  CMatX T = CMatX::Zero(N, N);
  const cplx I(0.0, 1.0);
  auto add = [&](int re, int im, double sign) {
    CVec d = CVec::Zero(N);
    d(re) = 1.0;
    d(im) = I;
    const CMatX A = d * d.conjugate().transpose();  // dq ^ dconj(q) = A - A^T
    T += 0.5 * sign * (A - A.transpose());
  };
  for (int i = 0; i < m.n(); ++i) {
    add(m.zre(i), m.zim(i), -1.0);
    add(m.wre(i), m.wim(i), 1.0);
  }
  return T;
}

}  // namespace hyperholo
