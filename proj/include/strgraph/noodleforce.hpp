#pragma once

#include <set>
#include <string>

#include "strgraph/representation.hpp"

namespace strgraph {

class NoodleForceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node (i, j) sits at (offset.x + i*pitch, offset.y + j*pitch), 0 <= i <= nx, 0 <= j <= ny.
///
/// The mesh is a staggered brick pattern. With s = pitch/8 and e = pitch/32:
///   mesh:h:i:j  y = y_j + (i%2)*s,  x in [x_i - e, x_{i+1} + s + e]   (0 <= i < nx)
///   mesh:v:i:j  x = x_i + (j%2)*s,  y in [y_j - e, y_{j+1} + s + e]   (0 <= j < ny)
/// Near every node two horizontal and two vertical pieces cross in four
/// distinct points. Curves may not cross a mesh line inside a node window,
/// within [x_i - e, x_i + s + e] horizontally or [y_j - e, y_j + s + e]
/// vertically, where consecutive pieces overlap.
struct MeshParameters {
  Rational pitch;
  Point offset;
  long nx = 0;
  long ny = 0;

  Point extent_lo() const;
  Point extent_hi() const;
};

struct NoodleForceResult {
  IntersectionGraph graph;
  Representation representation;
  std::set<VertexId> original_vertices;
  MeshParameters mesh;
};

std::string mesh_h_id(long i, long j);
std::string mesh_v_id(long i, long j);
bool is_mesh_id(const VertexId& id);

/// Coarsest power-of-two pitch (and first offset on a dyadic grid) such that
/// curves cross mesh lines outside node windows, no vertex or crossing lies on a mesh line,
/// every mesh piece crosses every curve at most once, and two curves share a
/// grid cell only next to a cell holding one of their mutual crossings.
MeshParameters choose_mesh(const Representation& r);

/// Mesh segments only.
Representation mesh_curves(const MeshParameters& m);

NoodleForceResult noodle_force(const Representation& r);
NoodleForceResult noodle_force_precise(const Representation& r, long k);

}  // namespace strgraph
