#pragma once

// Multi-centre Gibbons-Hawking spaces with collinear centres on the x1-axis.
// R^3 quantities take x = (x1, x2, x3); four-dimensional ones take the chart
// point (x1, x2, x3, theta).

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
#include "hyperholo/quadrature.hpp"

namespace hyperholo {

/// down: Dirac string runs from the centre towards x1 = -inf; up: towards +inf.
enum class StringGauge { down, up };

struct GHConfig {
  std::vector<double> centers;  // strictly increasing
  double c = 0.0;               // additive constant of the lift f
  double strength = 1.0;        // V = strength * sum 1/|x - a_i|
  std::vector<StringGauge> gauges;  // per centre; empty means all down

  void validate() const {
    if (centers.empty()) throw ModelError("GHConfig: at least one centre is required");
    for (double a : centers)
      if (!std::isfinite(a)) throw ModelError("GHConfig: non-finite centre");
    for (std::size_t i = 1; i < centers.size(); ++i)
      if (!(centers[i] > centers[i - 1])) throw ModelError("GHConfig: centres must be strictly increasing");
    if (!(strength > 0.0)) throw ModelError("GHConfig: strength must be positive");
    if (!gauges.empty() && gauges.size() != centers.size()) throw ModelError("GHConfig: one gauge tag per centre");
  }

  int count() const { return static_cast<int>(centers.size()); }
  StringGauge gauge(std::size_t i) const { return gauges.empty() ? StringGauge::down : gauges[i]; }
  GHConfig with_gauge(StringGauge g) const {
    GHConfig out = *this;
    out.gauges.assign(centers.size(), g);
    return out;
  }
  bool integral_spacing() const {
    for (std::size_t i = 1; i < centers.size(); ++i) {
      const double d = centers[i] - centers[i - 1];
      if (d != std::round(d)) return false;
    }
    return true;
  }
};

namespace gh {

inline constexpr double kCenterMargin = 1e-8;
inline constexpr double kMinCylRadius = 1e-3;

inline double rho(const Vec& x, double a) {
  const double d = x(0) - a;
  return std::sqrt(d * d + x(1) * x(1) + x(2) * x(2));
}

inline double sgn(StringGauge g) { return g == StringGauge::down ? 1.0 : -1.0; }

/// Distance from x to the Dirac string of centre a in gauge g.
inline double string_distance(const Vec& x, double a, StringGauge g) {
  if (sgn(g) * (x(0) - a) >= 0.0) return rho(x, a);
  return std::hypot(x(1), x(2));
}

inline double center_clearance(const GHConfig& cfg, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (double a : cfg.centers) d = std::min(d, rho(x, a));
  return d;
}

inline double string_clearance(const GHConfig& cfg, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.centers.size(); ++i) d = std::min(d, string_distance(x, cfg.centers[i], cfg.gauge(i)));
  return d;
}

inline void require_off_centers(const GHConfig& cfg, const Vec& x) {
  if (!(center_clearance(cfg, x) > kCenterMargin)) throw DomainError("point too close to a Gibbons-Hawking centre");
}

inline Vec r3(const Vec& p) { return p.head(3); }

/// Unit-charge connection for centre a: d(alpha) = *d(1/rho).
inline Vec alpha_unit(const Vec& x, double a, StringGauge g) {
  const double s = sgn(g);
  const double r = rho(x, a);
  if (string_distance(x, a, g) < kMinCylRadius && s * (x(0) - a) < 0.0)
    throw DomainError("point within the minimum radius of a Dirac string");
  const double den = r * (r + s * (x(0) - a));
  if (!(den > 0.0)) throw DomainError("point on a Dirac string");
  Vec al = Vec::Zero(3);
  al(1) = s * x(2) / den;
  al(2) = -s * x(1) / den;
  return al;
}

}  // namespace gh

inline double gh_potential(const GHConfig& cfg, const Vec& x) {
  gh::require_off_centers(cfg, x);
  double v = 0.0;
  for (double a : cfg.centers) v += 1.0 / gh::rho(x, a);
  return cfg.strength * v;
}

/// Closed-form gradient of V.
inline Vec gh_potential_gradient(const GHConfig& cfg, const Vec& x) {
  gh::require_off_centers(cfg, x);
  Vec g = Vec::Zero(3);
  for (double a : cfg.centers) {
    Vec d = gh::r3(x);
    d(0) -= a;
    g -= d / std::pow(d.norm(), 3);
  }
  return cfg.strength * g;
}

/// alpha on R^3 with *dV = d alpha, as a covector (dx1 component is zero).
inline Vec gh_alpha(const GHConfig& cfg, const Vec& x) {
  gh::require_off_centers(cfg, x);
  Vec al = Vec::Zero(3);
  for (std::size_t i = 0; i < cfg.centers.size(); ++i) al += gh::alpha_unit(x, cfg.centers[i], cfg.gauge(i));
  return cfg.strength * al;
}

inline Clearance gh_clearance(const GHConfig& cfg) {
  return [cfg](const Vec& x) { return std::min(gh::center_clearance(cfg, x), gh::string_clearance(cfg, x)); };
}

inline ScalarField gh_potential_field(const GHConfig& cfg) {
  return ScalarField{[cfg](const Vec& x) { return gh_potential(cfg, x); },
                     [cfg](const Vec& x) { return gh::center_clearance(cfg, x); }, 3};
}

inline FormField gh_alpha_field(const GHConfig& cfg) {
  return FormField{[cfg](const Vec& x) { return Form::covector(gh_alpha(cfg, x)); }, gh_clearance(cfg), 3, 1};
}

/// e = d theta + alpha in the chart (x1, x2, x3, theta).
inline Vec gh_fibre_form(const GHConfig& cfg, const Vec& p) {
  Vec e(4);
  e.head(3) = gh_alpha(cfg, gh::r3(p));
  e(3) = 1.0;
  return e;
}

/// g = V dx^2 + V^{-1} (d theta + alpha)^2.
inline Metric gh_metric(const GHConfig& cfg, const Vec& p) {
  const double V = gh_potential(cfg, gh::r3(p));
  const Vec e = gh_fibre_form(cfg, p);
  Mat G = Mat::Zero(4, 4);
  G.topLeftCorner(3, 3) = V * Mat::Identity(3, 3);
  G += e * e.transpose() / V;
  return Metric(G);
}

/// omega_1 = V dx2^dx3 + dx1^e and cyclically; self-dual for the chart orientation.
inline std::array<Form, 3> gh_kahler_triple(const GHConfig& cfg, const Vec& p) {
  const double V = gh_potential(cfg, gh::r3(p));
  const Form e = Form::covector(gh_fibre_form(cfg, p));
  std::array<Form, 3> w;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    Form f(4, 2);
    f.set_component({j, k}, V);
    w[static_cast<std::size_t>(i)] = f + wedge(Form::covector(Vec::Unit(4, i)), e);
  }
  return w;
}

inline FormField gh_kahler_field(const GHConfig& cfg, int i) {
  return FormField{[cfg, i](const Vec& p) { return gh_kahler_triple(cfg, p)[static_cast<std::size_t>(i)]; },
                   [cfg](const Vec& p) { return gh_clearance(cfg)(gh::r3(p)); }, 4, 2};
}

/// Lift of the rotation about the x1-axis: f = strength * sum (x1 - a_i)/|x - a_i| + c.
inline double rotation_lift_f(const GHConfig& cfg, const Vec& x) {
  gh::require_off_centers(cfg, x);
  double f = 0.0;
  for (double a : cfg.centers) f += (x(0) - a) / gh::rho(x, a);
  return cfg.strength * f + cfg.c;
}

inline ScalarField rotation_lift_field(const GHConfig& cfg) {
  return ScalarField{[cfg](const Vec& x) { return rotation_lift_f(cfg, x); },
                     [cfg](const Vec& x) { return gh::center_clearance(cfg, x); }, 3};
}

/// The 1-form (x2 V_2 + x3 V_3) dx1 - x2 V_1 dx2 - x3 V_1 dx3 built from dV.
/// The lift f above satisfies df = -(this form).
inline Form lift_df_reference(const GHConfig& cfg, const Vec& x) {
  const Vec dV = gh_potential_gradient(cfg, x);
  Vec c(3);
  c << x(1) * dV(1) + x(2) * dV(2), -x(1) * dV(0), -x(2) * dV(0);
  return Form::covector(c);
}

/// Two presentations of the monopole: the lift form phi = -x1 V + f (charges -strength*a_i)
/// and the Dirac form with charges strength*(a_{k+1} - a_i). They differ by the gauge shift
/// A -> A + s alpha, phi -> phi + s V with s = a_{k+1}.
enum class MonopoleForm { lift, dirac };

inline std::vector<double> monopole_charges(const GHConfig& cfg, MonopoleForm form) {
  std::vector<double> q(cfg.centers.size());
  const double last = cfg.centers.back();
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = cfg.strength * (form == MonopoleForm::lift ? -cfg.centers[i] : last - cfg.centers[i]);
  return q;
}

inline double monopole_gauge_shift(const GHConfig& cfg) { return cfg.centers.back(); }

inline double monopole_phi(const GHConfig& cfg, const Vec& x, MonopoleForm form = MonopoleForm::dirac) {
  gh::require_off_centers(cfg, x);
  const auto q = monopole_charges(cfg, form);
  double phi = cfg.c;
  for (std::size_t i = 0; i < q.size(); ++i) phi += q[i] / gh::rho(x, cfg.centers[i]);
  return phi;
}

inline Vec monopole_A(const GHConfig& cfg, const Vec& x, MonopoleForm form = MonopoleForm::dirac) {
  gh::require_off_centers(cfg, x);
  const auto q = monopole_charges(cfg, form);
  Vec A = Vec::Zero(3);
  for (std::size_t i = 0; i < q.size(); ++i) A += q[i] * gh::alpha_unit(x, cfg.centers[i], cfg.gauge(i));
  return A;
}

inline ScalarField monopole_phi_field(const GHConfig& cfg, MonopoleForm form = MonopoleForm::dirac) {
  return ScalarField{[cfg, form](const Vec& x) { return monopole_phi(cfg, x, form); },
                     [cfg](const Vec& x) { return gh::center_clearance(cfg, x); }, 3};
}

inline FormField monopole_A_field(const GHConfig& cfg, MonopoleForm form = MonopoleForm::dirac) {
  return FormField{[cfg, form](const Vec& x) { return Form::covector(monopole_A(cfg, x, form)); }, gh_clearance(cfg), 3, 1};
}

/// Optional gauge shift (A + s alpha, phi + s V) applied on top of a monopole form.
struct MonopoleGauge {
  MonopoleForm form = MonopoleForm::dirac;
  double shift = 0.0;
};

/// A-hat = A - phi V^{-1} (d theta + alpha) on the chart.
inline Vec connection_Ahat(const GHConfig& cfg, const Vec& p, MonopoleGauge mg = {}) {
  const Vec x = gh::r3(p);
  const double V = gh_potential(cfg, x);
  const double phi = monopole_phi(cfg, x, mg.form) + mg.shift * V;
  Vec A(4);
  A.head(3) = monopole_A(cfg, x, mg.form) + mg.shift * gh_alpha(cfg, x);
  A(3) = 0.0;
  return A - (phi / V) * gh_fibre_form(cfg, p);
}

inline FormField connection_Ahat_field(const GHConfig& cfg, MonopoleGauge mg = {}) {
  return FormField{[cfg, mg](const Vec& p) { return Form::covector(connection_Ahat(cfg, p, mg)); },
                   [cfg](const Vec& p) { return gh_clearance(cfg)(gh::r3(p)); }, 4, 1};
}

inline Form curvature_Ahat(const GHConfig& cfg, const Vec& p, const FDScheme& s, MonopoleGauge mg = {}) {
  return ext_deriv(connection_Ahat_field(cfg, mg), p, s);
}

/// |*dA-hat + dA-hat|_g with the orientation that makes omega_i self-dual.
inline double asd_residual(const GHConfig& cfg, const Vec& p, const FDScheme& s, MonopoleGauge mg = {}) {
  const Form F = curvature_Ahat(cfg, p, s, mg);
  const Metric g = gh_metric(cfg, p);
  return norm(g, hodge_star(g, 1, F) + F);
}

/// |i_Y dA-hat - d(phi/V)| for Y = d/dtheta.
inline double interior_Y_residual(const GHConfig& cfg, const Vec& p, const FDScheme& s, MonopoleGauge mg = {}) {
  const Form F = curvature_Ahat(cfg, p, s, mg);
  const Form iy = interior(Vec::Unit(4, 3), F);
  ScalarField ratio{[cfg, mg](const Vec& q) {
                      const Vec x = gh::r3(q);
                      const double V = gh_potential(cfg, x);
                      return (monopole_phi(cfg, x, mg.form) + mg.shift * V) / V;
                    },
                    [cfg](const Vec& q) { return gh::center_clearance(cfg, gh::r3(q)); }, 4};
  return (iy - ext_deriv(ratio, p, s)).max_abs();
}

/// Integral of omega_1 over the 2-sphere swept by the circle fibres over [a_i, a_{i+1}]
/// (zero-based i). The surface runs at cylindrical radius rho0 next to the axis.
inline double sphere_period(const GHConfig& cfg, int i, int panels = 2, int nodes = 6, double rho0 = 2.0 * gh::kMinCylRadius) {
  cfg.validate();
  if (i < 0 || i + 1 >= cfg.count()) throw ModelError("sphere_period: segment index out of range");
  const double a = cfg.centers[static_cast<std::size_t>(i)], b = cfg.centers[static_cast<std::size_t>(i) + 1];
  // strings point away from the segment so the surface can hug the axis
  GHConfig local = cfg;
  local.gauges.assign(cfg.centers.size(), StringGauge::down);
  for (std::size_t j = static_cast<std::size_t>(i) + 1; j < cfg.centers.size(); ++j) local.gauges[j] = StringGauge::up;
  Surface surf{[a, b, rho0](double s, double t) {
                 Vec p(4);
                 p << a + s * (b - a), rho0, 0.0, 2.0 * std::numbers::pi * t;
                 return p;
               },
               [a, b](double, double) {
                 Mat J = Mat::Zero(4, 2);
                 J(0, 0) = b - a;
                 J(3, 1) = 2.0 * std::numbers::pi;
                 return J;
               }};
  FormField w1{[local](const Vec& p) { return gh_kahler_triple(local, p)[0]; },
               [local](const Vec& p) { return gh::center_clearance(local, gh::r3(p)); }, 4, 2};
  return surface_integral(w1, surf, panels, nodes);
}

struct AxisSample {
  double x1, V, f, phi;
};

/// (x1, V, f, phi) along the x1-axis; points within `skip` of a centre are dropped.
inline std::vector<AxisSample> axis_profile(const GHConfig& cfg, double from, double to, int samples, double skip = 1e-6,
                                            MonopoleForm form = MonopoleForm::dirac) {
  cfg.validate();
  if (samples < 2) throw ModelError("axis_profile: need at least two samples");
  std::vector<AxisSample> out;
  for (int j = 0; j < samples; ++j) {
    Vec x = Vec::Zero(3);
    x(0) = from + (to - from) * j / (samples - 1);
    if (gh::center_clearance(cfg, x) < skip) continue;
    out.push_back({x(0), gh_potential(cfg, x), rotation_lift_f(cfg, x), monopole_phi(cfg, x, form)});
  }
  return out;
}

/// Values of f at `per_segment` interior points of each open axis segment
/// (including the two unbounded ends). Result[j] holds segment j, left to right.
inline std::vector<std::vector<double>> axis_segment_values(const GHConfig& cfg, int per_segment = 25) {
  cfg.validate();
  std::vector<double> cuts{cfg.centers.front() - 10.0};
  cuts.insert(cuts.end(), cfg.centers.begin(), cfg.centers.end());
  cuts.push_back(cfg.centers.back() + 10.0);
  std::vector<std::vector<double>> out;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    std::vector<double> vals;
    for (int j = 1; j <= per_segment; ++j) {
      Vec x = Vec::Zero(3);
      x(0) = cuts[s] + (cuts[s + 1] - cuts[s]) * j / (per_segment + 1.0);
      vals.push_back(rotation_lift_f(cfg, x));
    }
    out.push_back(vals);
  }
  return out;
}

/// Riemann tensor R^a_{bcd} of a coordinate metric by nested central differences.
inline std::vector<double> riemann_fd(const std::function<Mat(const Vec&)>& gfun, const Vec& p, const FDScheme& s) {
  const int n = static_cast<int>(p.size());
  auto christoffel = [&](const Vec& q) {
    const Mat gi = gfun(q).inverse();
    std::vector<Mat> dg(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) dg[static_cast<std::size_t>(c)] = partial(gfun, q, c, s);
    // Gamma^a_{bc} flattened as a*(n*n) + b*n + c
    Vec G(n * n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double acc = 0.0;
          for (int d = 0; d < n; ++d)
            acc += gi(a, d) * (dg[static_cast<std::size_t>(b)](d, c) + dg[static_cast<std::size_t>(c)](d, b) -
                               dg[static_cast<std::size_t>(d)](b, c));
          G(a * n * n + b * n + c) = 0.5 * acc;
        }
    return G;
  };
  const Vec G = christoffel(p);
  std::vector<Vec> dG(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) dG[static_cast<std::size_t>(c)] = partial(christoffel, p, c, s);
  auto Gm = [&](int a, int b, int c) { return G(a * n * n + b * n + c); };
  auto dGm = [&](int e, int a, int b, int c) { return dG[static_cast<std::size_t>(e)](a * n * n + b * n + c); };
  std::vector<double> R(static_cast<std::size_t>(n * n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double r = dGm(c, a, d, b) - dGm(d, a, c, b);
          for (int e = 0; e < n; ++e) r += Gm(a, c, e) * Gm(e, d, b) - Gm(a, d, e) * Gm(e, c, b);
          R[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)] = r;
        }
  return R;
}

/// sqrt(R_{abcd} R^{abcd}) for the Gibbons-Hawking metric at p.
inline double gh_riemann_norm(const GHConfig& cfg, const Vec& p, const FDScheme& s) {
  auto gfun = [cfg](const Vec& q) { return gh_metric(cfg, q).matrix(); };
  const auto R = riemann_fd(gfun, p, s);
  const Mat g = gfun(p), gi = g.inverse();
  const int n = 4;
  auto up = [&](int a, int b, int c, int d) { return R[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)]; };
  double acc = 0.0;
  // R_{abcd} R^{abcd} = R^a_{bcd} g_{ae} R^e_{fgh} g^{bf} g^{cg} g^{dh}
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < n; ++e)
      for (int b = 0; b < n; ++b)
        for (int f = 0; f < n; ++f)
          for (int c = 0; c < n; ++c)
            for (int gg = 0; gg < n; ++gg)
              for (int d = 0; d < n; ++d)
                for (int h = 0; h < n; ++h) acc += up(a, b, c, d) * g(a, e) * up(e, f, gg, h) * gi(b, f) * gi(c, gg) * gi(d, h);
  return std::sqrt(std::abs(acc));
}

}  // namespace hyperholo
