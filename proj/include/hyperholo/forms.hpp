#pragma once

// Pointwise exterior algebra on R^N: k-forms stored on the ordered
// multi-index basis dx^{i1}^...^dx^{ik}, i1 < ... < ik, plus the metric
// operations (Hodge star, norms) and complex-structure type tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperholo/errors.hpp"

namespace hyperholo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A point of R^N. Coordinates are finite by construction.
using PointR = Vec;

namespace detail {

inline std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Colex rank of a strictly increasing index tuple.
inline std::size_t rank_of(std::span<const int> sorted) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) r += binomial(sorted[j], static_cast<int>(j) + 1);
  return r;
}

inline std::vector<int> unrank(std::size_t rank, int degree) {
  std::vector<int> idx(static_cast<std::size_t>(degree));
  for (int j = degree; j >= 1; --j) {
    int c = j - 1;
    while (binomial(c + 1, j) <= rank) ++c;
    idx[static_cast<std::size_t>(j - 1)] = c;
    rank -= binomial(c, j);
  }
  return idx;
}

// Sorts idx in place, returns the permutation sign, or 0 on a repeated index.
inline int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j)
    if (idx[j] == idx[j + 1]) return 0;
  return sign;
}

inline Mat submatrix(const Mat& m, std::span<const int> rows, std::span<const int> cols) {
  Mat s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return s;
}

inline double det_small(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  return m.determinant();
}

}  // namespace detail

/// Antisymmetric k-linear form on R^N at a point.
class Form {
 public:
  Form() = default;
  Form(int dim, int degree)
      : dim_(dim), degree_(degree), comps_(detail::binomial(dim, degree), 0.0) {
    if (dim < 1 || degree < 0 || degree > dim) throw ModelError("Form: invalid dimension/degree");
  }

  static Form scalar(int dim, double value) {
    Form f(dim, 0);
    f.comps_[0] = value;
    return f;
  }

  static Form covector(const Vec& c) {
    Form f(static_cast<int>(c.size()), 1);
    for (Eigen::Index i = 0; i < c.size(); ++i) f.comps_[static_cast<std::size_t>(i)] = c(i);
    return f;
  }

  /// 2-form with F(e_i, e_j) = antisymmetric part of m(i, j).
  static Form from_matrix(const Mat& m) {
    Form f(static_cast<int>(m.rows()), 2);
    for (std::size_t r = 0; r < f.size(); ++r) {
      auto ij = f.multi_index(r);
      f.comps_[r] = 0.5 * (m(ij[0], ij[1]) - m(ij[1], ij[0]));
    }
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return comps_.size(); }

  double operator[](std::size_t r) const { return comps_[r]; }
  double& operator[](std::size_t r) { return comps_[r]; }

  std::vector<int> multi_index(std::size_t rank) const { return detail::unrank(rank, degree_); }

  /// Component on an arbitrary index tuple, with the antisymmetry sign applied.
  double component(std::vector<int> idx) const {
    assert(static_cast<int>(idx.size()) == degree_);
    int s = detail::sort_with_sign(idx);
    if (s == 0) return 0.0;
    return s * comps_[detail::rank_of(idx)];
  }
  double component(std::initializer_list<int> idx) const { return component(std::vector<int>(idx)); }

  /// Sets w_{idx} = value (and hence every permutation up to sign).
  void set_component(std::vector<int> idx, double value) {
    int s = detail::sort_with_sign(idx);
    if (s == 0) throw ModelError("Form::set_component: repeated index");
    comps_[detail::rank_of(idx)] = s * value;
  }
  void set_component(std::initializer_list<int> idx, double value) { set_component(std::vector<int>(idx), value); }

  /// w(X_1, ..., X_k).
  double apply(std::span<const Vec> vs) const {
    assert(static_cast<int>(vs.size()) == degree_);
    if (degree_ == 0) return comps_[0];
    Mat cols(dim_, degree_);
    for (int j = 0; j < degree_; ++j) cols.col(j) = vs[static_cast<std::size_t>(j)];
    double acc = 0.0;
    for (std::size_t r = 0; r < comps_.size(); ++r) {
      if (comps_[r] == 0.0) continue;
      auto I = multi_index(r);
      Mat sub(degree_, degree_);
      for (int a = 0; a < degree_; ++a)
        for (int b = 0; b < degree_; ++b) sub(a, b) = cols(I[static_cast<std::size_t>(a)], b);
      acc += comps_[r] * sub.determinant();
    }
    return acc;
  }
  double operator()(const Vec& x) const {
    const Vec v[1] = {x};
    return apply(v);
  }
  double operator()(const Vec& x, const Vec& y) const {
    assert(degree_ == 2);
    return x.dot(matrix() * y);
  }

  /// Matrix F_ij = F(e_i, e_j) of a 2-form.
  Mat matrix() const {
    assert(degree_ == 2);
    Mat m = Mat::Zero(dim_, dim_);
    for (std::size_t r = 0; r < comps_.size(); ++r) {
      auto ij = multi_index(r);
      m(ij[0], ij[1]) = comps_[r];
      m(ij[1], ij[0]) = -comps_[r];
    }
    return m;
  }

  Vec vector() const {
    assert(degree_ == 1);
    Vec v(dim_);
    for (int i = 0; i < dim_; ++i) v(i) = comps_[static_cast<std::size_t>(i)];
    return v;
  }

  double max_abs() const {
    double m = 0.0;
    for (double c : comps_) m = std::max(m, std::abs(c));
    return m;
  }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  Form& operator*=(double s) {
    for (double& c : comps_) c *= s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) { return a *= -1.0; }
  friend Form operator*(double s, Form a) { return a *= s; }
  friend Form operator*(Form a, double s) { return a *= s; }
  friend Form operator/(Form a, double s) { return a *= (1.0 / s); }

 private:
  void check_same(const Form& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw ModelError("Form: dimension/degree mismatch");
  }

  int dim_ = 0;
  int degree_ = 0;
  std::vector<double> comps_;
};

inline Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw ModelError("wedge: dimension mismatch");
  const int k = a.degree() + b.degree();
  Form out(a.dim(), std::min(k, a.dim()));
  if (k > a.dim()) return Form(a.dim(), a.dim()) * 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] == 0.0) continue;
    auto I = a.multi_index(r);
    for (std::size_t s = 0; s < b.size(); ++s) {
      if (b[s] == 0.0) continue;
      auto J = b.multi_index(s);
      std::vector<int> IJ = I;
      IJ.insert(IJ.end(), J.begin(), J.end());
      int sign = detail::sort_with_sign(IJ);
      if (sign == 0) continue;
      out[detail::rank_of(IJ)] += sign * a[r] * b[s];
    }
  }
  return out;
}

/// Interior product i_X w (contraction in the first slot).
inline Form interior(const Vec& x, const Form& w) {
  if (w.degree() == 0) throw ModelError("interior: cannot contract a 0-form");
  Form out(w.dim(), w.degree() - 1);
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto J = out.multi_index(r);
    double acc = 0.0;
    for (int i = 0; i < w.dim(); ++i) {
      if (x(i) == 0.0) continue;
      std::vector<int> iJ{i};
      iJ.insert(iJ.end(), J.begin(), J.end());
      acc += x(i) * w.component(iJ);
    }
    out[r] = acc;
  }
  return out;
}

/// Pullback of w under the linear map with matrix `jac` (target dim x source dim).
inline Form pullback(const Mat& jac, const Form& w) {
  const int src = static_cast<int>(jac.cols());
  Form out(src, w.degree());
  std::vector<Vec> cols(static_cast<std::size_t>(w.degree()));
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto I = out.multi_index(r);
    for (std::size_t j = 0; j < I.size(); ++j) cols[j] = jac.col(I[j]);
    out[r] = w.apply(cols);
  }
  return out;
}

/// Symmetric positive-definite metric at a point.
class Metric {
 public:
  explicit Metric(Mat g, double symmetry_tol = 1e-10) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() == 0) throw MetricError("Metric: not a square matrix");
    const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
    if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
      throw MetricError("Metric: matrix is not symmetric");
    g_ = 0.5 * (g_ + g_.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(g_);
    min_eig_ = es.eigenvalues().minCoeff();
    if (!(min_eig_ > 0.0)) throw MetricError("Metric: not positive definite");
    inv_ = g_.inverse();
  }

  static Metric euclidean(int n) { return Metric(Mat::Identity(n, n)); }

  const Mat& matrix() const { return g_; }
  const Mat& inverse() const { return inv_; }
  int dim() const { return static_cast<int>(g_.rows()); }
  double det() const { return g_.determinant(); }
  double min_eigenvalue() const { return min_eig_; }

  /// Columns form a g-orthonormal frame (E^T g E = Id).
  Mat orthonormal_frame() const {
    Eigen::LLT<Mat> llt(g_);
    Mat L = llt.matrixL();
    return L.transpose().inverse();
  }

 private:
  Mat g_;
  Mat inv_;
  double min_eig_ = 0.0;
};

/// Components w^I with all indices raised by the metric.
inline Form raise_indices(const Metric& g, const Form& w) {
  Form out(w.dim(), w.degree());
  for (std::size_t r = 0; r < w.size(); ++r) {
    auto I = w.multi_index(r);
    double acc = 0.0;
    for (std::size_t s = 0; s < w.size(); ++s) {
      if (w[s] == 0.0) continue;
      auto J = w.multi_index(s);
      acc += detail::det_small(detail::submatrix(g.inverse(), I, J)) * w[s];
    }
    out[r] = acc;
  }
  return out;
}

inline double inner(const Metric& g, const Form& a, const Form& b) {
  Form braised = raise_indices(g, b);
  double acc = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) acc += a[r] * braised[r];
  return acc;
}

inline double norm(const Metric& g, const Form& w) { return std::sqrt(std::max(0.0, inner(g, w, w))); }

/// Metric Hodge dual; orientation = +1 means dx^0 ^ ... ^ dx^{N-1} is positive.
inline Form hodge_star(const Metric& g, int orientation, const Form& w) {
  if (orientation != 1 && orientation != -1) throw ModelError("hodge_star: orientation must be +1 or -1");
  if (g.dim() != w.dim()) throw MetricError("hodge_star: metric/form dimension mismatch");
  const int n = w.dim();
  const double vol = std::sqrt(g.det());
  Form up = raise_indices(g, w);
  Form out(n, n - w.degree());
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto K = out.multi_index(r);
    std::vector<int> Kc;
    for (int i = 0, j = 0; i < n; ++i) {
      if (j < static_cast<int>(K.size()) && K[static_cast<std::size_t>(j)] == i) {
        ++j;
        continue;
      }
      Kc.push_back(i);
    }
    std::vector<int> perm = Kc;
    perm.insert(perm.end(), K.begin(), K.end());
    const int sign = detail::sort_with_sign(perm);
    out[r] = orientation * vol * sign * up[detail::rank_of(Kc)];
  }
  return out;
}

/// Almost-complex structure at a point: S^2 = -Id to tolerance.
class ComplexStructure {
 public:
  explicit ComplexStructure(Mat s, double tol = 1e-8) : s_(std::move(s)) {
    if (s_.rows() != s_.cols()) throw StructureError("ComplexStructure: not square");
    const double res = defect(s_);
    if (!(res <= tol)) throw StructureError("ComplexStructure: |S^2 + Id| = " + std::to_string(res));
  }

  static double defect(const Mat& s) {
    return (s * s + Mat::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
  }

  const Mat& matrix() const { return s_; }
  int dim() const { return static_cast<int>(s_.rows()); }

 private:
  Mat s_;
};

/// Complex structure S with w(X, Y) = g(SX, Y) for a 2-form w: S = -g^{-1} W.
inline Mat structure_from_form(const Mat& g, const Form& w) { return -g.inverse() * w.matrix(); }

/// Largest |F(SX,SY) - F(X,Y)| over unit vectors X, Y of an orthonormal frame;
/// zero iff F has no (2,0)+(0,2) part with respect to S.
inline double type11_residual(const Form& f, const ComplexStructure& s) {
  if (f.degree() != 2 || f.dim() != s.dim()) throw ModelError("type11_residual: needs a 2-form of matching dimension");
  const Mat& S = s.matrix();
  const Mat F = f.matrix();
  const Mat D = S.transpose() * F * S - F;
  Eigen::JacobiSVD<Mat> svd(D);
  return svd.singularValues()(0);
}

/// Same residual for a non-orthonormal coordinate frame with metric g.
inline double type11_residual(const Form& f, const ComplexStructure& s, const Metric& g) {
  const Mat E = g.orthonormal_frame();
  const Form fe = pullback(E, f);
  const Mat se = E.inverse() * s.matrix() * E;
  return type11_residual(fe, ComplexStructure(se, 1e-6));
}

inline double pfaffian4(const Form& w) {
  assert(w.dim() == 4 && w.degree() == 2);
  return w.component({0, 1}) * w.component({2, 3}) - w.component({0, 2}) * w.component({1, 3}) +
         w.component({0, 3}) * w.component({1, 2});
}

}  // namespace hyperholo
