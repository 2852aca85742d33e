#pragma once

// Flat H^n = C^n x C^n with its Kahler triple and weighted circle actions.
// Real coordinates are packed as (Re z1, Im z1, ..., Re zn, Im zn, Re w1, Im w1, ..., Re wn, Im wn).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hyperholo/errors.hpp"
#include "hyperholo/fd.hpp"
#include "hyperholo/forms.hpp"

namespace hyperholo {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

class FlatModel {
 public:
  explicit FlatModel(int n) : n_(n) {
    if (n < 1) throw ModelError("FlatModel: quaternionic dimension must be >= 1");
    const int N = 4 * n;
    I_ = Mat::Zero(N, N);
    J_ = Mat::Zero(N, N);
    for (int i = 0; i < 2 * n; ++i) {  // z and w blocks alike
      I_(2 * i + 1, 2 * i) = 1.0;
      I_(2 * i, 2 * i + 1) = -1.0;
    }
    // J(z, w) = (-conj w, conj z)
    for (int i = 0; i < n; ++i) {
      const int x = zre(i), y = zim(i), u = wre(i), v = wim(i);
      J_(u, x) = 1.0;
      J_(v, y) = -1.0;
      J_(x, u) = -1.0;
      J_(y, v) = 1.0;
    }
    K_ = I_ * J_;
  }

  int n() const { return n_; }
  int dim() const { return 4 * n_; }
  int zre(int i) const { return 2 * i; }
  int zim(int i) const { return 2 * i + 1; }
  int wre(int i) const { return 2 * n_ + 2 * i; }
  int wim(int i) const { return 2 * n_ + 2 * i + 1; }

  const Mat& I() const { return I_; }
  const Mat& J() const { return J_; }
  const Mat& K() const { return K_; }
  std::array<Mat, 3> structures() const { return {I_, J_, K_}; }
  Metric metric() const { return Metric::euclidean(dim()); }

  /// omega_i(X, Y) = g(S_i X, Y); flat g makes this -S_i.
  std::array<Form, 3> kahler_triple() const {
    return {Form::from_matrix(-I_), Form::from_matrix(-J_), Form::from_matrix(-K_)};
  }

  Vec pack(const CVec& z, const CVec& w) const {
    if (z.size() != n_ || w.size() != n_) throw ModelError("FlatModel::pack: wrong length");
    Vec p(dim());
    for (int i = 0; i < n_; ++i) {
      p(zre(i)) = z(i).real();
      p(zim(i)) = z(i).imag();
      p(wre(i)) = w(i).real();
      p(wim(i)) = w(i).imag();
    }
    return p;
  }
  CVec z_of(const Vec& p) const {
    CVec z(n_);
    for (int i = 0; i < n_; ++i) z(i) = cplx(p(zre(i)), p(zim(i)));
    return z;
  }
  CVec w_of(const Vec& p) const {
    CVec w(n_);
    for (int i = 0; i < n_; ++i) w(i) = cplx(p(wre(i)), p(wim(i)));
    return w;
  }

 private:
  int n_;
  Mat I_, J_, K_;
};

/// (z, w) -> (e^{ik theta} z, e^{il theta} w) componentwise; rotation degree n = k_i + l_i.
class CircleActionSpec {
 public:
  CircleActionSpec(std::vector<int> k, std::vector<int> l) : k_(std::move(k)), l_(std::move(l)) {
    if (k_.empty() || k_.size() != l_.size()) throw ModelError("CircleActionSpec: weight vectors must be non-empty and equal length");
    degree_ = k_[0] + l_[0];
    for (std::size_t i = 0; i < k_.size(); ++i)
      if (k_[i] + l_[i] != degree_)
        throw ModelError("CircleActionSpec: k_i + l_i must be the same for every i (rotation degree)");
  }

  /// Same weights on every coordinate pair.
  static CircleActionSpec uniform(int n, int k, int l) {
    return CircleActionSpec(std::vector<int>(static_cast<std::size_t>(n), k), std::vector<int>(static_cast<std::size_t>(n), l));
  }

  int n() const { return static_cast<int>(k_.size()); }
  int degree() const { return degree_; }
  const std::vector<int>& k() const { return k_; }
  const std::vector<int>& l() const { return l_; }
  bool trivial() const {
    for (std::size_t i = 0; i < k_.size(); ++i)
      if (k_[i] != 0 || l_[i] != 0) return false;
    return true;
  }

  /// Infinitesimal generator A with X(p) = A p.
  Mat generator() const {
    const int n = this->n();
    Mat A = Mat::Zero(4 * n, 4 * n);
    for (int i = 0; i < n; ++i) {
      block(A, 2 * i, k_[static_cast<std::size_t>(i)]);
      block(A, 2 * n + 2 * i, l_[static_cast<std::size_t>(i)]);
    }
    return A;
  }

  /// exp(theta A), assembled from 2x2 rotations.
  Mat rotation(double theta) const {
    const int n = this->n();
    Mat R = Mat::Zero(4 * n, 4 * n);
    auto rot = [&](int at, int wt) {
      const double c = std::cos(wt * theta), s = std::sin(wt * theta);
      R(at, at) = c;
      R(at, at + 1) = -s;
      R(at + 1, at) = s;
      R(at + 1, at + 1) = c;
    };
    for (int i = 0; i < n; ++i) {
      rot(2 * i, k_[static_cast<std::size_t>(i)]);
      rot(2 * n + 2 * i, l_[static_cast<std::size_t>(i)]);
    }
    return R;
  }

 private:
  static void block(Mat& A, int at, int wt) {
    A(at + 1, at) = wt;
    A(at, at + 1) = -wt;
  }

  std::vector<int> k_, l_;
  int degree_ = 0;
};

inline void check_compatible(const FlatModel& m, const CircleActionSpec& s) {
  if (m.n() != s.n()) throw ModelError("circle action and model have different quaternionic dimension");
}

inline Vec action_vector_field(const CircleActionSpec& spec, const Vec& p) { return spec.generator() * p; }

/// mu = -1/2 sum (k_i |z_i|^2 + l_i |w_i|^2), so that d mu = i_X omega_1 and mu(0) = 0.
inline double moment_map(const CircleActionSpec& spec, const Vec& p) {
  const int n = spec.n();
  double mu = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z2 = p(2 * i) * p(2 * i) + p(2 * i + 1) * p(2 * i + 1);
    const double w2 = p(2 * n + 2 * i) * p(2 * n + 2 * i) + p(2 * n + 2 * i + 1) * p(2 * n + 2 * i + 1);
    mu -= 0.5 * (spec.k()[static_cast<std::size_t>(i)] * z2 + spec.l()[static_cast<std::size_t>(i)] * w2);
  }
  return mu;
}

inline ScalarField moment_field(const CircleActionSpec& spec) {
  return ScalarField{[spec](const Vec& p) { return moment_map(spec, p); }, {}, 4 * spec.n()};
}

/// Coefficient in front of dd^c mu. Only 1/n reproduces both flat examples
/// (weights (0,1): F = dx^dy - du^dv; weights (1,1): F = 0).
enum class CurvatureCoefficient { inverse_degree, literal_degree };

inline double curvature_coefficient(const CircleActionSpec& spec, CurvatureCoefficient c = CurvatureCoefficient::inverse_degree) {
  if (spec.trivial()) return 0.0;
  if (spec.degree() == 0) throw ModelError("curvature: nontrivial action with rotation degree 0 (triholomorphic)");
  return c == CurvatureCoefficient::inverse_degree ? 1.0 / spec.degree() : static_cast<double>(spec.degree());
}

inline Form hyperholo_curvature(const FlatModel& model, const CircleActionSpec& spec, const Vec& p, const FDScheme& s,
                                CurvatureCoefficient coef = CurvatureCoefficient::inverse_degree) {
  check_compatible(model, spec);
  const Form w1 = model.kahler_triple()[0];
  const double a = curvature_coefficient(spec, coef);
  if (a == 0.0) return w1;
  return w1 + a * ddc(moment_field(spec), constant_structure(model.I()), p, s);
}

/// max over sampled theta of |R_theta^*(omega_2 + i omega_3) - e^{i n theta}(omega_2 + i omega_3)|.
inline double rotation_degree_check(const FlatModel& model, const CircleActionSpec& spec, int samples = 16) {
  check_compatible(model, spec);
  const auto w = model.kahler_triple();
  const Mat W2 = w[1].matrix(), W3 = w[2].matrix();
  const int n = spec.degree();
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.37) / samples;
    const Mat R = spec.rotation(th);
    const Mat re = R.transpose() * W2 * R - (std::cos(n * th) * W2 - std::sin(n * th) * W3);
    const Mat im = R.transpose() * W3 * R - (std::sin(n * th) * W2 + std::cos(n * th) * W3);
    worst = std::max({worst, re.cwiseAbs().maxCoeff(), im.cwiseAbs().maxCoeff()});
  }
  return worst;
}

/// |A^T + A| (Killing for the flat metric) and |L_X omega_1| = |A^T W + W A|.
inline std::pair<double, double> killing_residual(const FlatModel& model, const CircleActionSpec& spec) {
  check_compatible(model, spec);
  const Mat A = spec.generator();
  const Mat W = model.kahler_triple()[0].matrix();
  return {(A.transpose() + A).cwiseAbs().maxCoeff(), (A.transpose() * W + W * A).cwiseAbs().maxCoeff()};
}

/// d mu - i_X omega_1 at p, by finite differences.
inline double moment_residual(const FlatModel& model, const CircleActionSpec& spec, const Vec& p, const FDScheme& s) {
  const Form dmu = ext_deriv(moment_field(spec), p, s);
  const Form ix = interior(action_vector_field(spec, p), model.kahler_triple()[0]);
  return (dmu - ix).max_abs();
}

}  // namespace hyperholo
