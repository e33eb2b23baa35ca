#pragma once

// Deterministic synthetic data for tests: clustered group samples and
// small meshes.

#include <cstdint>
#include <random>
#include <vector>

#include "bistats/group.hpp"
#include "bistats/mesh.hpp"
#include "bistats/stats.hpp"

namespace datagen {

using bistats::Group;
using bistats::GroupElement;
using bistats::SampleSet;

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double normal(double stddev = 1.0) {
    std::normal_distribution<double> dist(0.0, stddev);
    return dist(engine);
  }
  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(engine);
  }
  Eigen::VectorXd normal_vector(int k, double stddev) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = normal(stddev);
    return v;
  }
};

inline GroupElement random_element(const Group& g, Rng& rng, double scale) {
  return bistats::group_exp(
      bistats::make_tangent(g, rng.normal_vector(g.dim(), scale)));
}

/// Samples center * exp(noise), noise ~ N(0, spread^2) per coordinate.
inline SampleSet clustered_samples(const Group& g, Rng& rng, int m,
                                   const GroupElement& center, double spread) {
  std::vector<GroupElement> elems;
  elems.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    elems.push_back(bistats::compose(
        center,
        bistats::group_exp(
            bistats::make_tangent(g, rng.normal_vector(g.dim(), spread)))));
  return bistats::make_sample_set(g, std::move(elems));
}

inline SampleSet clustered_samples(const Group& g, Rng& rng, int m,
                                   double center_scale, double spread) {
  return clustered_samples(g, rng, m, random_element(g, rng, center_scale),
                           spread);
}

/// UV sphere with 2 * segments * (rings - 1) triangular faces.
inline bistats::TriangleMesh uv_sphere(int segments, int rings,
                                       double radius = 1.0) {
  bistats::TriangleMesh mesh;
  mesh.vertices.emplace_back(0, 0, radius);  // north pole
  for (int r = 1; r < rings; ++r) {
    const double phi = M_PI * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double theta = 2.0 * M_PI * s / segments;
      mesh.vertices.emplace_back(radius * std::sin(phi) * std::cos(theta),
                                 radius * std::sin(phi) * std::sin(theta),
                                 radius * std::cos(phi));
    }
  }
  mesh.vertices.emplace_back(0, 0, -radius);  // south pole
  const int south = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring_vertex = [&](int r, int s) {
    return 1 + (r - 1) * segments + (s % segments);
  };
  for (int s = 0; s < segments; ++s)
    mesh.faces.push_back({0, ring_vertex(1, s), ring_vertex(1, s + 1)});
  for (int r = 1; r < rings - 1; ++r) {
    for (int s = 0; s < segments; ++s) {
      const int a = ring_vertex(r, s), b = ring_vertex(r, s + 1);
      const int c = ring_vertex(r + 1, s), d = ring_vertex(r + 1, s + 1);
      mesh.faces.push_back({a, c, d});
      mesh.faces.push_back({a, d, b});
    }
  }
  for (int s = 0; s < segments; ++s)
    mesh.faces.push_back(
        {south, ring_vertex(rings - 1, s + 1), ring_vertex(rings - 1, s)});
  return mesh;
}

/// Smooth low-frequency warp keeping triangles non-degenerate.
inline bistats::TriangleMesh smooth_deformation(const bistats::TriangleMesh& in,
                                                Rng& rng,
                                                double amplitude = 0.1) {
  Eigen::Vector3d freq(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                       rng.uniform(0.5, 2.0));
  Eigen::Vector3d phase(rng.uniform(0, 6.28), rng.uniform(0, 6.28),
                        rng.uniform(0, 6.28));
  Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) linear(r, c) += rng.normal(0.05);

  bistats::TriangleMesh out = in;
  for (auto& v : out.vertices) {
    Eigen::Vector3d d;
    for (int i = 0; i < 3; ++i)
      d[i] = std::sin(freq[i] * v[(i + 1) % 3] + phase[i]);
    v = linear * v + amplitude * d;
  }
  return out;
}

}  // namespace datagen
