#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "hyperholo/errors.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/forms.hpp"

namespace hyperholo {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw ModelError("gauss_legendre: need at least one node");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    r.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

/// Composite Gauss-Legendre on [a, b]; exact for polynomials of degree < 2*nodes per panel.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 4, int nodes = 8) {
  const GaussRule g = gauss_legendre(nodes);
  const double w = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += w * g.weights[i] * f(a + w * (p + g.nodes[i]));
  return acc;
}

/// A map [0,1]^2 -> R^N; the Jacobian is optional (central differences otherwise).
struct Surface {
  std::function<Vec(double, double)> map;
  std::function<Mat(double, double)> jacobian;
};

inline Mat surface_jacobian(const Surface& s, double u, double v) {
  if (s.jacobian) return s.jacobian(u, v);
  const double h = 1e-3;
  auto d = [h](const std::function<Vec(double)>& f) -> Vec {
    return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
  };
  Vec a = d([&](double t) { return s.map(u + t, v); });
  Vec b = d([&](double t) { return s.map(u, v + t); });
  Mat J(a.size(), 2);
  J.col(0) = a;
  J.col(1) = b;
  return J;
}

/// Integral of a 2-form over a parametrized surface, tensor-product Gauss rule.
/// Error decays like panels^(-2*nodes) for smooth integrands.
inline double surface_integral(const FormField& w, const Surface& surf, int panels = 4, int nodes = 8) {
  if (w.degree != 2) throw ModelError("surface_integral: need a 2-form");
  const GaussRule g = gauss_legendre(nodes);
  const double step = 1.0 / panels;
  double acc = 0.0;
  for (int pu = 0; pu < panels; ++pu)
    for (int pv = 0; pv < panels; ++pv)
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          const double u = step * (pu + g.nodes[i]);
          const double v = step * (pv + g.nodes[j]);
          const Vec x = surf.map(u, v);
          if (w.clearance && !(w.clearance(x) > 0.0)) throw DomainError("surface_integral: surface meets the singular set");
          const Mat J = surface_jacobian(surf, u, v);
          const Form f = w.eval(x);
          acc += step * step * g.weights[i] * g.weights[j] * f(Vec(J.col(0)), Vec(J.col(1)));
        }
  return acc;
}

}  // namespace hyperholo
