#pragma once

#include <string>
#include <vector>

#include "corf/tiling.hpp"

namespace corf {

struct BoundaryWall {
  int tile = 0;  // index into the region's tile list
  int face = 0;
  Vec outward_normal;  // region on the <x,w> <= 0 side
};

// Convex union of tessellation tiles around a loxodromic axis: the tiles of
// the axis convexification cut between two cap walls, the start cap and its
// image under the corresponding power of the element.
struct ConvexTileRegion {
  TileSet tiles;
  Geodesic axis;
  std::vector<BoundaryWall> boundary;
  int periods = 0;
  double t_entry = 0.0;  // axis parameter on the start cap
  double t_exit = 0.0;   // t_entry + periods * translation length
  std::vector<int> cap_tile_word;  // tile whose exit face defines the start cap
  int cap_face = -1;
  std::vector<double> tile_param;     // closest-approach axis parameter per tile
  std::vector<double> tile_distance;  // distance from each tile to the axis line
  int axis_wall_count = 0;  // tessellation walls containing the axis (mirror case)

  ConvexTileRegion(const Polyhedron& p, Geodesic ax) : tiles(p), axis(std::move(ax)) {}
};

// Builds the convexification window of `periods` consecutive fundamental
// segments of the axis of g: candidate tiles near the axis are collected by
// breadth-first search, tiles separated from the full axis by a candidate
// wall are pruned, and the survivors between the cap walls are returned
// with recomputed boundary walls.  The result is audited for convexity and
// for the property that every tile meets the max_threshold-neighborhood of
// the axis.
ConvexTileRegion p_convexification(const Polyhedron& p, const Isometry& g, int periods = 2,
                                   long frontier_bound = 500000);

struct FoldWitness {
  std::vector<int> wall_reflections;  // indices into the boundary wall list, in order applied
  double residual = 0.0;              // ||w * alpha - I||_inf
};

struct SeparationCertificate {
  std::string polyhedron;
  int dim = 0;
  std::vector<int> alpha_word;
  double translation_length = 0.0;
  int k = 0;      // tiles in one period block
  int index = 0;  // total tiles = periods * k, the subgroup index
  double theorem_bound = 0.0;
  double diameter = 0.0;
  double volume = 0.0;
  double volume_std_error = 0.0;
  ConvexTileRegion region;
  FoldWitness witness;

  SeparationCertificate(const Polyhedron& p, Geodesic ax) : region(p, std::move(ax)) {}
};

// Runs the whole construction for the loxodromic element spelled by
// alpha_word: convexification with periods = 2 (extended when an interior
// lift endpoint is not found), the reflection subgroup H generated by the
// boundary walls, the index, the closed-form bound (with the polyhedron
// volume widened down by three standard errors when it is a Monte Carlo
// value), and the fold witness certifying that alpha is not in H.
SeparationCertificate build_certificate(const Polyhedron& p, const std::vector<int>& alpha_word,
                                        long frontier_bound = 500000);

struct CertificateCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CertificateReport {
  bool ok = true;
  std::vector<CertificateCheck> checks;

  void add(std::string name, bool check_ok, std::string detail = "");
};

// Re-validates a certificate from scratch: the element and its length, tile
// words and fingerprints, the neighborhood property of every tile, boundary
// walls, convexity, axis containment, the index and the bound, and the fold
// witness residual.
CertificateReport verify_certificate(const Polyhedron& p, const SeparationCertificate& cert);

std::string certificate_to_json(const SeparationCertificate& cert);
SeparationCertificate certificate_from_json(const Polyhedron& p, const std::string& text);

}  // namespace corf
