#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corf/isometry.hpp"
#include "corf/tubes.hpp"

namespace corf {

// Compact all-right polyhedron.  Faces are unit spacelike normals with the
// interior on the <x,u> < 0 side; adjacent faces meet at dihedral angle
// pi/2, non-adjacent face planes are disjoint.
struct Polyhedron {
  int dim = 0;
  std::string name;
  std::vector<Vec> face_normals;
  std::vector<std::vector<char>> adjacent;  // symmetric, zero diagonal
  std::vector<Vec> vertices;
  double diameter = 0.0;  // max pairwise vertex distance
  double volume = 0.0;
  double volume_std_error = 0.0;  // 0 when the volume is exact
  Vec reference_point;            // interior base point for tiles and folds
  double circumradius = 0.0;      // max distance reference_point -> vertex
  // Nonempty sets of pairwise adjacent faces (sizes 1..dim); the size-dim
  // ones are the vertices.  Used by the exact point-to-polyhedron distance.
  std::vector<std::vector<int>> face_cliques;

  int face_count() const { return static_cast<int>(face_normals.size()); }
  bool contains(const Vec& point, double tol) const;
};

// Regular all-right pentagon in H^2 centered at the origin, wall distance
// solved numerically; area pi/2 (Gauss-Bonnet), recorded exactly.
Polyhedron builtin_pentagon();

// Regular right-angled dodecahedron in H^3, face normals along the
// icosahedral directions, wall distance solved numerically; volume
// estimated by seeded Monte Carlo at construction.
Polyhedron builtin_dodecahedron();

Polyhedron builtin_polyhedron(const std::string& name);

struct PolyhedronValidation {
  bool ok = true;
  double max_right_angle_deviation = 0.0;  // max |<ui,uj>| over adjacent pairs
  double min_disjoint_separation = 0.0;    // min |<ui,uj>| over non-adjacent pairs
  double max_vertex_residual = 0.0;        // max |<v,u>| over vertex/incident-wall pairs
  double max_vertex_unit_residual = 0.0;   // max |<v,v> + 1|
  double diameter_residual = 0.0;
  std::vector<std::string> violations;
};

PolyhedronValidation validate_polyhedron(const Polyhedron& p);

// Hyperbolic volume by importance sampling in ball-model coordinates over
// the circumscribed ball.
McEstimate mc_polyhedron_volume(const Polyhedron& p, long n_samples, std::uint64_t seed);

// Exact distance from a point to the solid polyhedron (0 inside): the
// closest boundary point is the Minkowski projection onto one of the
// face cliques, whose normals are orthonormal for an all-right polyhedron.
double dist_point_to_polyhedron(const Polyhedron& p, const Vec& point);

// JSON schema: { "dim": n, "normals": [[...], ...],
//                "adjacency": [[i,j], ...], "name": "..." }
// with 0-based face indices.  Vertices, diameter and volume are always
// recomputed, never trusted from the file.
Polyhedron polyhedron_from_json(const std::string& text);
std::string polyhedron_to_json(const Polyhedron& p);

// Accepts a builtin name ("pentagon", "dodecahedron") or a JSON file path.
Polyhedron load_polyhedron(const std::string& spec);

}  // namespace corf
