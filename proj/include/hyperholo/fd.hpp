#pragma once

// Central-difference exterior calculus on fields given by callbacks.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>

#include "hyperholo/errors.hpp"
#include "hyperholo/forms.hpp"

namespace hyperholo {

struct FDScheme {
  double h = 1e-3;
  int order = 4;  // 2 or 4
  bool richardson = false;

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw ModelError("FDScheme: step must be positive");
    if (order != 2 && order != 4) throw ModelError("FDScheme: order must be 2 or 4");
  }
  /// Furthest sample from the centre point along one axis.
  double radius() const { return (order == 4 ? 2.0 : 1.0) * h; }
};

/// Distance from a point to the singular set of a field; +inf when smooth everywhere.
using Clearance = std::function<double(const Vec&)>;

struct ScalarField {
  std::function<double(const Vec&)> eval;
  Clearance clearance;
  int dim = 0;

  double operator()(const Vec& p) const { return eval(p); }
};

struct FormField {
  std::function<Form(const Vec&)> eval;
  Clearance clearance;
  int dim = 0;
  int degree = 0;

  Form operator()(const Vec& p) const { return eval(p); }
};

/// Constant complex structure or a point-dependent one.
using StructureField = std::function<Mat(const Vec&)>;

inline StructureField constant_structure(Mat s) {
  return [s = std::move(s)](const Vec&) { return s; };
}

inline Clearance no_singularities() { return {}; }

namespace detail {

inline void require_stencil(const Clearance& cl, const Vec& p, const FDScheme& s) {
  s.validate();
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!std::isfinite(p(i))) throw DomainError("non-finite evaluation point");
  if (!cl) return;
  const double d = cl(p);
  if (!(d >= s.radius() + 10.0 * s.h))
    throw DomainError("stencil within 10h of the singular set (clearance " + std::to_string(d) + ")");
}

template <class F>
std::decay_t<std::invoke_result_t<const F&, const Vec&>> diff_once(const F& f, const Vec& p, const Vec& dir, double h, int order) {
  if (order == 2) return (f(Vec(p + h * dir)) - f(Vec(p - h * dir))) / (2.0 * h);
  return (8.0 * (f(Vec(p + h * dir)) - f(Vec(p - h * dir))) - (f(Vec(p + 2.0 * h * dir)) - f(Vec(p - 2.0 * h * dir)))) /
         (12.0 * h);
}

template <class F>
std::decay_t<std::invoke_result_t<const F&, const Vec&>> second_once(const F& f, const Vec& p, const Vec& dir, double h, int order) {
  const auto f0 = f(p);
  if (order == 2) return (f(Vec(p + h * dir)) + f(Vec(p - h * dir)) - 2.0 * f0) / (h * h);
  return (16.0 * (f(Vec(p + h * dir)) + f(Vec(p - h * dir))) - (f(Vec(p + 2.0 * h * dir)) + f(Vec(p - 2.0 * h * dir))) -
          30.0 * f0) /
         (12.0 * h * h);
}

}  // namespace detail

/// Directional derivative of a scalar- or Form-valued callable.
template <class F>
std::decay_t<std::invoke_result_t<const F&, const Vec&>> directional_derivative(const F& f, const Vec& p, const Vec& dir, const FDScheme& s) {
  s.validate();
  auto d1 = detail::diff_once(f, p, dir, s.h, s.order);
  if (!s.richardson) return d1;
  auto d2 = detail::diff_once(f, p, dir, 0.5 * s.h, s.order);
  const double r = std::pow(2.0, s.order);
  return (r * d2 - d1) / (r - 1.0);
}

template <class F>
std::decay_t<std::invoke_result_t<const F&, const Vec&>> partial(const F& f, const Vec& p, int i, const FDScheme& s) {
  Vec e = Vec::Zero(p.size());
  e(i) = 1.0;
  return directional_derivative(f, p, e, s);
}

inline Vec gradient(const ScalarField& f, const Vec& p, const FDScheme& s) {
  detail::require_stencil(f.clearance, p, s);
  Vec g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) g(i) = partial(f.eval, p, static_cast<int>(i), s);
  return g;
}

/// d of a scalar field, as a 1-form.
inline Form ext_deriv(const ScalarField& f, const Vec& p, const FDScheme& s) { return Form::covector(gradient(f, p, s)); }

/// dw = sum_i dx^i ^ d_i w.
inline Form ext_deriv(const FormField& w, const Vec& p, const FDScheme& s) {
  detail::require_stencil(w.clearance, p, s);
  if (w.degree >= w.dim) return Form(w.dim, w.dim) * 0.0;
  Form out(w.dim, w.degree + 1);
  for (int i = 0; i < w.dim; ++i) {
    Vec e = Vec::Zero(w.dim);
    e(i) = 1.0;
    out += wedge(Form::covector(e), partial(w.eval, p, i, s));
  }
  return out;
}

/// The 1-form X -> -df(IX).
inline Form dc_deriv(const ScalarField& f, const StructureField& I, const Vec& p, const FDScheme& s,
                     double structure_tol = 1e-8) {
  ComplexStructure cs(I(p), structure_tol);
  return Form::covector(-cs.matrix().transpose() * gradient(f, p, s));
}

/// d^c f as a field, so it can be differentiated again.
inline FormField dc_field(const ScalarField& f, const StructureField& I, const FDScheme& s) {
  FormField out;
  out.dim = f.dim;
  out.degree = 1;
  out.eval = [f, I, s](const Vec& p) { return dc_deriv(f, I, p, s); };
  // inner stencils sit up to one radius further out
  if (f.clearance)
    out.clearance = [cl = f.clearance, s](const Vec& p) { return cl(p) - s.radius() - 10.0 * s.h; };
  return out;
}

inline Form ddc(const ScalarField& f, const StructureField& I, const Vec& p, const FDScheme& s) {
  return ext_deriv(dc_field(f, I, s), p, s);
}

inline FormField ext_deriv_field(const FormField& w, const FDScheme& s) {
  FormField out;
  out.dim = w.dim;
  out.degree = w.degree + 1;
  out.eval = [w, s](const Vec& p) { return ext_deriv(w, p, s); };
  if (w.clearance)
    out.clearance = [cl = w.clearance, s](const Vec& p) { return cl(p) - s.radius() - 10.0 * s.h; };
  return out;
}

inline double laplacian(const ScalarField& f, const Vec& p, const FDScheme& s) {
  detail::require_stencil(f.clearance, p, s);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec e = Vec::Zero(p.size());
    e(i) = 1.0;
    double d1 = detail::second_once(f.eval, p, e, s.h, s.order);
    if (s.richardson) {
      const double d2 = detail::second_once(f.eval, p, e, 0.5 * s.h, s.order);
      const double r = std::pow(2.0, s.order);
      d1 = (r * d2 - d1) / (r - 1.0);
    }
    acc += d1;
  }
  return acc;
}

inline Mat hessian(const ScalarField& f, const Vec& p, const FDScheme& s) {
  detail::require_stencil(f.clearance, p, s);
  const auto n = p.size();
  Mat H(n, n);
  auto grad = [&](const Vec& q) {
    Vec g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = partial(f.eval, q, static_cast<int>(i), s);
    return g;
  };
  for (Eigen::Index j = 0; j < n; ++j) H.col(j) = partial(grad, p, static_cast<int>(j), s);
  return 0.5 * (H + H.transpose());
}

inline FormField constant_form_field(const Form& w) {
  FormField out;
  out.dim = w.dim();
  out.degree = w.degree();
  out.eval = [w](const Vec&) { return w; };
  return out;
}

}  // namespace hyperholo
