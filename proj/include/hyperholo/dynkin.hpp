#pragma once

// Extended A-D-E diagrams: sign assignments along edges and McKay marks.

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "hyperholo/errors.hpp"

namespace hyperholo {

struct DynkinGraph {
  std::string tag;  // e.g. "A4", "E8"
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // multiset; a double edge appears twice

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
    for (auto [a, b] : edges) {
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
  }

  bool connected() const {
    if (vertices == 0) return false;
    auto adj = adjacency();
    std::vector<bool> seen(static_cast<std::size_t>(vertices), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          ++count;
          stack.push_back(w);
        }
    }
    return count == vertices;
  }
};

namespace detail {

inline void chain(DynkinGraph& g, int from, int to) {
  for (int v = from; v < to; ++v) g.edges.emplace_back(v, v + 1);
}

}  // namespace detail

/// Extended diagram of type A_k (k >= 1), D_k (k >= 4), E6, E7, E8.
inline DynkinGraph extended_diagram(char type, int k) {
  DynkinGraph g;
  g.tag = std::string(1, type) + std::to_string(k);
  switch (type) {
    case 'A':
      if (k < 1) break;
      g.vertices = k + 1;
      if (k == 1) {
        g.edges = {{0, 1}, {0, 1}};
      } else {
        detail::chain(g, 0, k);
        g.edges.emplace_back(k, 0);
      }
      return g;
    case 'D':
      if (k < 4) break;
      // v0, v1 hang off v2; v2 ... v_{k-2} is a chain; v_{k-1}, v_k hang off v_{k-2}
      g.vertices = k + 1;
      g.edges = {{0, 2}, {1, 2}};
      detail::chain(g, 2, k - 2);
      g.edges.emplace_back(k - 2, k - 1);
      g.edges.emplace_back(k - 2, k);
      return g;
    case 'E':
      if (k == 6) {
        g.vertices = 7;
        detail::chain(g, 0, 4);
        g.edges.emplace_back(2, 5);
        g.edges.emplace_back(5, 6);
        return g;
      }
      if (k == 7) {
        g.vertices = 8;
        detail::chain(g, 0, 6);
        g.edges.emplace_back(3, 7);
        return g;
      }
      if (k == 8) {
        g.vertices = 9;
        detail::chain(g, 0, 7);
        g.edges.emplace_back(5, 8);
        return g;
      }
      break;
    default:
      break;
  }
  throw ModelError("extended_diagram: unsupported type " + g.tag);
}

/// Parses tags like "A4", "d6", "E8".
inline DynkinGraph parse_diagram(const std::string& tag) {
  if (tag.size() < 2) throw ModelError("diagram tag must look like A4, D5 or E6");
  const char t = static_cast<char>(std::toupper(static_cast<unsigned char>(tag[0])));
  for (std::size_t i = 1; i < tag.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tag[i]))) throw ModelError("diagram tag must look like A4, D5 or E6");
  int k = 0;
  try {
    k = std::stoi(tag.substr(1));
  } catch (const std::exception&) {
    throw ModelError("diagram rank out of range");
  }
  if (k > 1000) throw ModelError("diagram rank out of range");
  return extended_diagram(t, k);
}

/// c_i = +-1 with c_i c_j = -1 on every edge (breadth-first 2-colouring); nullopt iff an odd cycle exists.
inline std::optional<std::vector<int>> dynkin_signs(const DynkinGraph& g) {
  if (!g.connected()) throw ModelError("dynkin_signs: graph must be connected");
  auto adj = g.adjacency();
  std::vector<int> c(static_cast<std::size_t>(g.vertices), 0);
  std::queue<int> q;
  c[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (c[static_cast<std::size_t>(w)] == 0) {
        c[static_cast<std::size_t>(w)] = -c[static_cast<std::size_t>(v)];
        q.push(w);
      } else if (c[static_cast<std::size_t>(w)] == c[static_cast<std::size_t>(v)]) {
        return std::nullopt;
      }
    }
  }
  return c;
}

inline Eigen::MatrixXi affine_cartan(const DynkinGraph& g) {
  Eigen::MatrixXi C = 2 * Eigen::MatrixXi::Identity(g.vertices, g.vertices);
  for (auto [a, b] : g.edges) {
    C(a, b) -= 1;
    C(b, a) -= 1;
  }
  return C;
}

/// Minimal positive integer null vector of the affine Cartan matrix.
inline std::vector<int> mckay_dims(const DynkinGraph& g) {
  const Eigen::MatrixXi C = affine_cartan(g);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C.cast<double>(), Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv(sv.size() - 1) > 1e-9 || (sv.size() > 1 && sv(sv.size() - 2) < 1e-9))
    throw ModelError("affine Cartan matrix does not have a one-dimensional kernel");
  Eigen::VectorXd v = svd.matrixV().col(g.vertices - 1);
  if (v.sum() < 0) v = -v;
  v /= v.minCoeff();
  std::vector<int> d(static_cast<std::size_t>(g.vertices));
  for (int i = 0; i < g.vertices; ++i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(v(i)));
    if (std::abs(v(i) - d[static_cast<std::size_t>(i)]) > 1e-8 || d[static_cast<std::size_t>(i)] < 1)
      throw ModelError("null vector is not a positive integer vector");
  }
  Eigen::VectorXi di = Eigen::Map<Eigen::VectorXi>(d.data(), g.vertices);
  if ((C * di).cwiseAbs().maxCoeff() != 0) throw ModelError("marks are not an exact null vector");
  return d;
}

/// Complex dimension of the quiver space: each edge contributes Hom both ways.
inline int quiver_dim(const DynkinGraph& g) {
  const auto d = mckay_dims(g);
  int acc = 0;
  for (auto [a, b] : g.edges) acc += 2 * d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(b)];
  return acc;
}

/// Order of the finite subgroup of SU(2) attached to the diagram.
inline int group_order(char type, int k) {
  switch (type) {
    case 'A':
      return k + 1;
    case 'D':
      return 4 * (k - 2);
    case 'E':
      if (k == 6) return 24;
      if (k == 7) return 48;
      if (k == 8) return 120;
      break;
    default:
      break;
  }
  throw ModelError("group_order: unsupported type");
}

}  // namespace hyperholo
