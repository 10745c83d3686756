#include "corf/separator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "corf/thresholds.hpp"
#include "corf/tubes.hpp"

namespace corf {

namespace {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty = false;
};

// Parameter interval { t : x(t) in the closed tile }.  Each face gives
// e^t A + e^-t B <= 0 with A = <fwd,w>/2, B = <bwd,w>/2; walls containing
// the axis (A = B = 0) put no constraint.
Interval axis_interval_in_tile(const Polyhedron& p, const Tile& tile, const Geodesic& geo) {
  constexpr double kEps = 1e-11;
  Interval iv;
  for (int f = 0; f < p.face_count(); ++f) {
    const Vec w = tile.iso(p.face_normals[f]);
    const double a = 0.5 * minkowski_inner(geo.fwd(), w);
    const double b = 0.5 * minkowski_inner(geo.bwd(), w);
    if (std::abs(a) <= kEps && std::abs(b) <= kEps) continue;  // mirror wall
    if (std::abs(a) <= kEps) {
      if (b > kEps) iv.empty = true;
      continue;
    }
    if (std::abs(b) <= kEps) {
      if (a > kEps) iv.empty = true;
      continue;
    }
    if (a > 0.0 && b > 0.0) {
      iv.empty = true;
    } else if (a < 0.0 && b < 0.0) {
      // satisfied for every t
    } else if (a > 0.0) {  // b < 0: upper bound
      iv.hi = std::min(iv.hi, 0.5 * std::log(-b / a));
    } else {  // a < 0 < b: lower bound
      iv.lo = std::max(iv.lo, 0.5 * std::log(b / -a));
    }
    if (iv.lo > iv.hi) iv.empty = true;
    if (iv.empty) break;
  }
  if (iv.lo > iv.hi) iv.empty = true;
  return iv;
}

struct AxisApproach {
  double param = 0.0;
  double distance = 0.0;
};

// Closest approach of the axis line to the tile: zero on the tile's axis
// chord, otherwise a ternary search on the convex distance profile.
AxisApproach closest_approach(const Polyhedron& p, const Tile& tile, const Geodesic& geo) {
  const Interval iv = axis_interval_in_tile(p, tile, geo);
  if (!iv.empty && std::isfinite(iv.lo) && std::isfinite(iv.hi)) {
    return {0.5 * (iv.lo + iv.hi), 0.0};
  }
  const Isometry inv = tile.iso.inverse();
  const auto profile = [&](double t) { return dist_point_to_polyhedron(p, inv(geo.point_at(t))); };
  const double foot = geodesic_foot_param(tile.base_point, geo);
  const double d0 = dist_point_to_geodesic(tile.base_point, geo);
  const double span = 2.0 * d0 + p.circumradius + 1.0;
  double lo = foot - span, hi = foot + span;
  for (int i = 0; i < 120; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (profile(m1) <= profile(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double t = 0.5 * (lo + hi);
  return {t, profile(t)};
}

struct SeparatingWall {
  Vec normal;  // oriented so the axis lies strictly on the negative side
};

struct WallKey {
  std::array<std::int64_t, 5> q{0, 0, 0, 0, 0};
  bool operator==(const WallKey&) const = default;
};
struct WallKeyHash {
  std::size_t operator()(const WallKey& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

WallKey wall_key(const Vec& w) {
  WallKey k;
  for (int i = 0; i < w.size() && i < 5; ++i) k.q[i] = llround(w[i] / 1e-7);
  return k;
}

bool tile_inside_halfspace(const std::vector<Vec>& verts, const Vec& w, double tol) {
  for (const Vec& v : verts)
    if (minkowski_inner(v, w) > tol * (1.0 + std::abs(v[0]))) return false;
  return true;
}

bool tile_past_wall(const std::vector<Vec>& verts, const Vec& w, double tol) {
  for (const Vec& v : verts)
    if (minkowski_inner(v, w) < -tol * (1.0 + std::abs(v[0]))) return false;
  return true;
}

Vec reflect_across(const Vec& x, const Vec& unit_normal) {
  return x - 2.0 * minkowski_inner(x, unit_normal) * unit_normal;
}

// One attempt at the construction from a given axis offset.
std::optional<ConvexTileRegion> try_convexification(const Polyhedron& p, const Isometry& g,
                                                    double ell, const Geodesic& geo, int periods,
                                                    long frontier_bound, double delta0,
                                                    std::string* why) {
  const double kTol = geometric_tol();
  const double reach = max_threshold(p.dim) + p.diameter;

  // start cap: the wall through which the axis leaves the tile at x(delta0)
  const FoldResult fold = fold_to_fundamental(p, geo.point_at(delta0));
  const Isometry seed_iso = fold.g.inverse();
  const Tile seed_tile{fold.word, seed_iso, seed_iso(p.reference_point)};
  const Interval iv = axis_interval_in_tile(p, seed_tile, geo);
  if (iv.empty || !std::isfinite(iv.hi)) {
    *why = "axis chord of the seed tile is degenerate";
    return std::nullopt;
  }
  const double t_entry = iv.hi;
  // Axes through a codimension-2 corner leave through several walls at
  // once; any transversally crossed one is a valid cap since no tile
  // straddles a tessellation wall.  Ties break to the lowest face index.
  int exit_face = -1;
  for (int f = 0; f < p.face_count(); ++f) {
    const Vec w = seed_tile.iso(p.face_normals[f]);
    const double a = 0.5 * minkowski_inner(geo.fwd(), w);
    const double b = 0.5 * minkowski_inner(geo.bwd(), w);
    if (a > 1e-11 && b < -1e-11 && std::abs(0.5 * std::log(-b / a) - t_entry) < 1e-9) {
      exit_face = f;
      break;
    }
  }
  if (exit_face < 0) {
    *why = "no transversal exit wall found";
    return std::nullopt;
  }

  // cap normals, oriented positive toward larger axis parameter
  std::vector<Vec> caps(periods + 1);
  caps[0] = seed_tile.iso(p.face_normals[exit_face]);
  Isometry g_pow = Isometry::identity(p.dim);
  for (int j = 1; j <= periods; ++j) {
    g_pow = g * g_pow;
    caps[j] = g_pow(caps[0]);
  }
  const double t_exit = t_entry + periods * ell;

  // candidate tiles: inside the cap slab and within R + d_P of the axis line
  const auto predicate = [&](const Tile& tile) {
    std::vector<Vec> verts;
    verts.reserve(p.vertices.size());
    for (const Vec& v : p.vertices) verts.push_back(tile.iso(v));
    if (!tile_past_wall(verts, caps[0], kTol)) return false;
    if (!tile_inside_halfspace(verts, caps[periods], kTol)) return false;
    const double d_line = dist_point_to_geodesic(tile.base_point, geo);
    if (d_line - p.circumradius > reach + 1e-9) return false;
    if (d_line <= reach + 1e-9) return true;
    return closest_approach(p, tile, geo).distance <= reach + 1e-9;
  };

  std::vector<Vec> seeds;
  for (int j = 0; j < 9; ++j)
    seeds.push_back(geo.point_at(t_entry + (t_exit - t_entry) * (2 * j + 1) / 18.0));

  TileSet candidates = tiles_meeting_region(p, predicate, frontier_bound, seeds);

  // vertex images, reused by every wall test below
  std::vector<std::vector<Vec>> verts(candidates.size());
  for (int i = 0; i < candidates.size(); ++i) {
    verts[i].reserve(p.vertices.size());
    for (const Vec& v : p.vertices) verts[i].push_back(candidates.tiles()[i].iso(v));
  }

  // Separating walls from every candidate face, axis strictly on one
  // side.  The discriminant <fwd,w><bwd,w> is invariant under the deck
  // translation (the endpoint functionals scale by e^(+-l)), so the
  // classification is consistent across period blocks; its square root is
  // sinh of the axis-wall distance.
  std::vector<SeparatingWall> walls;
  std::unordered_map<WallKey, char, WallKeyHash> seen;
  int axis_wall_count = 0;
  constexpr double kSinhMargin = 1e-9;
  for (int i = 0; i < candidates.size(); ++i) {
    const Tile& tile = candidates.tiles()[i];
    for (int f = 0; f < p.face_count(); ++f) {
      Vec w = tile.iso(p.face_normals[f]);
      const double a = minkowski_inner(geo.fwd(), w);
      const double b = minkowski_inner(geo.bwd(), w);
      const double prod = a * b;
      if (prod < kSinhMargin * kSinhMargin) {
        // crossing (negative product) or touching the axis: never
        // separating; a wall containing the axis makes the construction
        // two-sided and is only counted
        const double scale =
            (1.0 + geo.fwd().cwiseAbs().maxCoeff() + geo.bwd().cwiseAbs().maxCoeff()) *
            (1.0 + w.cwiseAbs().maxCoeff());
        if (std::abs(a) < 1e-9 * scale && std::abs(b) < 1e-9 * scale) {
          if (seen.emplace(wall_key(w), 1).second) {
            seen.emplace(wall_key(Vec(-w)), 1);
            ++axis_wall_count;
          }
        }
        continue;
      }
      if (a > 0.0) w = -w;
      if (seen.emplace(wall_key(w), 1).second) walls.push_back({std::move(w)});
    }
  }

  // prune tiles separated from the axis, then count the period blocks
  std::vector<int> survivors;
  for (int i = 0; i < candidates.size(); ++i) {
    bool keep = true;
    for (const SeparatingWall& wall : walls) {
      if (!tile_inside_halfspace(verts[i], wall.normal, kTol)) {
        keep = false;
        break;
      }
    }
    if (keep) survivors.push_back(i);
  }
  if (survivors.empty()) {
    *why = "pruning removed every candidate";
    return std::nullopt;
  }

  std::vector<int> block_of(survivors.size(), 0);
  std::vector<int> block_count(periods + 2, 0);
  for (size_t s = 0; s < survivors.size(); ++s) {
    int past = 0;
    for (int j = 0; j <= periods; ++j)
      if (tile_past_wall(verts[survivors[s]], caps[j], kTol)) ++past;
    block_of[s] = past;
    block_count[std::min(past, periods + 1)]++;
  }
  if (block_count[0] > 0 || block_count[periods + 1] > 0) {
    *why = "a surviving tile fell outside the cap slab";
    return std::nullopt;
  }
  const int k = block_count[1];
  for (int j = 1; j <= periods; ++j) {
    if (block_count[j] != k) {
      std::ostringstream msg;
      msg << "period blocks are unbalanced:";
      for (int jj = 1; jj <= periods; ++jj) msg << " " << block_count[jj];
      if (std::getenv("CORF_DEBUG_BLOCKS")) {
        msg << "\n t_entry=" << t_entry << " t_exit=" << t_exit << " nwalls=" << walls.size()
            << " ncand=" << candidates.size() << " nsurv=" << survivors.size();
        for (size_t s = 0; s < survivors.size(); ++s) {
          const Tile& tile = candidates.tiles()[survivors[s]];
          const AxisApproach ap = closest_approach(p, tile, geo);
          msg << "\n  tile";
          for (int wv : tile.word) msg << " " << wv;
          msg << " | block=" << block_of[s] << " t*=" << ap.param << " d=" << ap.distance;
        }
      }
      *why = msg.str();
      return std::nullopt;
    }
  }

  ConvexTileRegion region(p, geo);
  region.periods = periods;
  region.t_entry = t_entry;
  region.t_exit = t_exit;
  region.cap_tile_word = seed_tile.word;
  region.cap_face = exit_face;
  region.axis_wall_count = axis_wall_count;
  for (int s : survivors) region.tiles.insert(candidates.tiles()[s]);

  // boundary walls: faces whose neighbor tile is not in the region
  for (int i = 0; i < region.tiles.size(); ++i) {
    const Tile& tile = region.tiles.tiles()[i];
    for (int f = 0; f < p.face_count(); ++f) {
      const Isometry neighbor = tile.iso * Isometry::reflection(p.face_normals[f]);
      if (region.tiles.find(neighbor(p.reference_point)) < 0)
        region.boundary.push_back({i, f, tile.iso(p.face_normals[f])});
    }
  }

  // closest-approach data and the neighborhood property of every tile
  const double r_max = max_threshold(p.dim);
  for (int i = 0; i < region.tiles.size(); ++i) {
    const AxisApproach ap = closest_approach(p, region.tiles.tiles()[i], geo);
    region.tile_param.push_back(ap.param);
    region.tile_distance.push_back(ap.distance);
    if (ap.distance > r_max + 1e-6) {
      std::ostringstream msg;
      msg << "tile " << i << " lies " << ap.distance << " from the axis, beyond the threshold "
          << r_max;
      *why = msg.str();
      return std::nullopt;
    }
  }

  // convexity audit: every tile inside every boundary wall
  for (const BoundaryWall& wall : region.boundary) {
    for (int i = 0; i < region.tiles.size(); ++i) {
      for (const Vec& v : p.vertices) {
        const Vec img = region.tiles.tiles()[i].iso(v);
        if (minkowski_inner(img, wall.outward_normal) > 1e-7 * (1.0 + std::abs(img[0]))) {
          *why = "convexity audit failed";
          return std::nullopt;
        }
      }
    }
  }

  // the cut axis segment stays inside (with convexity this extends to all of it)
  for (double t : {t_entry, t_exit}) {
    const Vec x = geo.point_at(t);
    for (const BoundaryWall& wall : region.boundary) {
      if (minkowski_inner(x, wall.outward_normal) > 1e-7 * (1.0 + std::abs(x[0]))) {
        *why = "axis segment escapes the region";
        return std::nullopt;
      }
    }
  }

  return region;
}

ConvexTileRegion convexification_with_retries(const Polyhedron& p, const Isometry& g, int periods,
                                              long frontier_bound) {
  if (classify(g) != IsometryClass::Loxodromic)
    throw InputError("p_convexification: element is not loxodromic");
  const double ell = translation_length(g);
  const Geodesic geo = axis(g);
  // Center the window at the axis point nearest the reference point:
  // coordinates across the window then grow like e^(periods*l/2) instead
  // of picking up an arbitrary gauge offset.
  const double t_center = geodesic_foot_param(p.reference_point, geo);
  std::string why = "no attempt";
  for (int attempt = 0; attempt < 6; ++attempt) {
    const double delta0 = t_center - 0.5 * periods * ell + 0.1 * attempt * ell;
    auto region = try_convexification(p, g, ell, geo, periods, frontier_bound, delta0, &why);
    if (region) return std::move(*region);
  }
  throw DegenerateAxisError("p_convexification failed: " + why);
}

double widened_bound(const Polyhedron& p, double ell) {
  const double v_lo = std::max(p.volume - 3.0 * p.volume_std_error, 1e-12);
  return index_bound({p.dim, p.diameter, v_lo, ell});
}

bool point_strictly_inside(const ConvexTileRegion& region, const Vec& x, double margin) {
  for (const BoundaryWall& wall : region.boundary)
    if (minkowski_inner(x, wall.outward_normal) > -margin * (1.0 + std::abs(x[0]))) return false;
  return true;
}

FoldWitness fold_into_region(const ConvexTileRegion& region, const Isometry& alpha, const Vec& z0) {
  const double kTol = geometric_tol();
  FoldWitness witness;
  Vec z = alpha(z0);
  Isometry w = Isometry::identity(alpha.dim());
  long iterations = 0;
  while (true) {
    int worst = -1;
    double worst_val = 0.0;
    for (size_t i = 0; i < region.boundary.size(); ++i) {
      const double s = minkowski_inner(z, region.boundary[i].outward_normal);
      const double threshold = kTol * (1.0 + std::abs(z[0]));
      if (s > threshold && s > worst_val) {
        worst_val = s;
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0) break;
    const Vec n = normalize_normal(region.boundary[worst].outward_normal);
    z = reflect_across(z, n);
    w = Isometry::reflection(n) * w;
    witness.wall_reflections.push_back(worst);
    if (++iterations % 64 == 0) z = normalize_point(z);
    if (iterations > 1000000) throw NumericalError("H-fold: iteration cap exceeded");
  }
  const Mat m = (w * alpha).matrix();
  witness.residual = (m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  return witness;
}

}  // namespace

void CertificateReport::add(std::string name, bool check_ok, std::string detail) {
  ok = ok && check_ok;
  checks.push_back({std::move(name), check_ok, std::move(detail)});
}

ConvexTileRegion p_convexification(const Polyhedron& p, const Isometry& g, int periods,
                                   long frontier_bound) {
  if (periods < 2) throw InputError("p_convexification: need at least two periods");
  return convexification_with_retries(p, g, periods, frontier_bound);
}

SeparationCertificate build_certificate(const Polyhedron& p, const std::vector<int>& alpha_word,
                                        long frontier_bound) {
  const Isometry alpha = word_to_isometry(p, alpha_word);
  if (classify(alpha) != IsometryClass::Loxodromic)
    throw InputError("build_certificate: word does not spell a loxodromic element");
  const double ell = translation_length(alpha);

  for (int periods = 2; periods <= 4; ++periods) {
    ConvexTileRegion region = p_convexification(p, alpha, periods, frontier_bound);

    // one endpoint of a centered lift must be interior
    const double t_mid = 0.5 * (region.t_entry + region.t_exit);
    const bool lo_interior = point_strictly_inside(region, region.axis.point_at(t_mid - 0.5 * ell), 1e-9);
    const bool hi_interior = point_strictly_inside(region, region.axis.point_at(t_mid + 0.5 * ell), 1e-9);
    if (!lo_interior && !hi_interior) continue;

    SeparationCertificate cert(p, region.axis);
    cert.polyhedron = p.name;
    cert.dim = p.dim;
    cert.alpha_word = reduce_reflection_word(alpha_word);
    cert.translation_length = ell;
    cert.index = region.tiles.size();
    cert.k = cert.index / region.periods;
    cert.theorem_bound = widened_bound(p, ell);
    cert.diameter = p.diameter;
    cert.volume = p.volume;
    cert.volume_std_error = p.volume_std_error;

    if (cert.index > cert.theorem_bound + 1e-9)
      throw VerificationError("certificate index exceeds the theorem bound");

    // fold witness from the base point of a tile near the window center
    int anchor = 0;
    for (int i = 1; i < region.tiles.size(); ++i)
      if (std::abs(region.tile_param[i] - t_mid) < std::abs(region.tile_param[anchor] - t_mid))
        anchor = i;
    const Vec z0 = region.tiles.tiles()[anchor].base_point;
    FoldWitness witness = fold_into_region(region, alpha, z0);

    const double identity_scale = 1e-7 * (1.0 + alpha.matrix().cwiseAbs().maxCoeff());
    if (witness.residual < identity_scale)
      throw VerificationError("fold witness reduced alpha to the identity: alpha lies in H");
    if (witness.residual <= 0.1)
      throw InconclusiveCertificateError(
          "fold witness residual is between the identity tolerance and the certification margin");

    cert.region = std::move(region);
    cert.witness = std::move(witness);
    return cert;
  }
  throw InconclusiveCertificateError(
      "no lift endpoint became interior after extending to four periods");
}

CertificateReport verify_certificate(const Polyhedron& p, const SeparationCertificate& cert) {
  CertificateReport report;

  if (p.name != cert.polyhedron || p.dim != cert.dim) {
    report.add("polyhedron", false, "certificate was issued for a different polyhedron");
    return report;
  }
  report.add("polyhedron", true);

  Isometry alpha = Isometry::identity(p.dim);
  bool loxodromic = false;
  try {
    alpha = word_to_isometry(p, cert.alpha_word);
    loxodromic = classify(alpha) == IsometryClass::Loxodromic;
  } catch (const Error&) {
    loxodromic = false;
  }
  report.add("element is loxodromic", loxodromic);
  if (!loxodromic) return report;

  const double ell = translation_length(alpha);
  report.add("translation length", std::abs(ell - cert.translation_length) <= 1e-9 * (1.0 + ell));

  const Geodesic geo = axis(alpha);

  // rebuild tile set from the stored words
  TileSet tiles(p);
  bool tiles_ok = true;
  std::string tile_detail;
  for (const Tile& stored : cert.region.tiles.tiles()) {
    try {
      const Isometry iso = word_to_isometry(p, stored.word);
      const Vec base = iso(p.reference_point);
      if ((base - stored.base_point).cwiseAbs().maxCoeff() > 1e-6 * (1.0 + std::abs(base[0]))) {
        tiles_ok = false;
        tile_detail = "stored base point does not match its word";
        break;
      }
      if (!tiles.insert(Tile{stored.word, iso, base})) {
        tiles_ok = false;
        tile_detail = "duplicate tile";
        break;
      }
    } catch (const Error& e) {
      tiles_ok = false;
      tile_detail = e.what();
      break;
    }
  }
  report.add("tile words", tiles_ok, tile_detail);
  if (!tiles_ok) return report;

  report.add("index equals tile count", cert.index == tiles.size());
  report.add("index equals periods * k",
             cert.region.periods >= 2 && cert.index == cert.region.periods * cert.k);

  // caps
  bool caps_ok = true;
  std::string caps_detail;
  std::vector<Vec> caps;
  try {
    const Isometry cap_iso = word_to_isometry(p, cert.region.cap_tile_word);
    if (cert.region.cap_face < 0 || cert.region.cap_face >= p.face_count())
      throw InputError("cap face out of range");
    Vec cap0 = cap_iso(p.face_normals[cert.region.cap_face]);
    const double a = minkowski_inner(geo.fwd(), cap0);
    const double b = minkowski_inner(geo.bwd(), cap0);
    if (!(a > 0.0 && b < 0.0)) throw VerificationError("cap wall does not cross the axis forward");
    const double t_cross = 0.5 * std::log(-b / a);
    if (std::abs(t_cross - cert.region.t_entry) > 1e-7 * (1.0 + std::abs(t_cross)))
      throw VerificationError("stored entry parameter does not match the cap wall");
    if (std::abs(cert.region.t_exit - cert.region.t_entry - cert.region.periods * ell) > 1e-7)
      throw VerificationError("stored exit parameter is not entry + periods * length");
    caps.resize(cert.region.periods + 1);
    caps[0] = cap0;
    Isometry g_pow = Isometry::identity(p.dim);
    for (int j = 1; j <= cert.region.periods; ++j) {
      g_pow = alpha * g_pow;
      caps[j] = g_pow(cap0);
    }
  } catch (const Error& e) {
    caps_ok = false;
    caps_detail = e.what();
  }
  report.add("cap walls", caps_ok, caps_detail);
  if (!caps_ok) return report;

  // every tile meets the threshold neighborhood of the axis
  const double r_max = max_threshold(p.dim);
  double worst_dist = 0.0;
  for (const Tile& tile : tiles.tiles())
    worst_dist = std::max(worst_dist, closest_approach(p, tile, geo).distance);
  report.add("tiles meet the threshold neighborhood", worst_dist <= r_max + 1e-6,
             "max distance " + std::to_string(worst_dist));

  // block balance across the caps
  {
    bool blocks_ok = true;
    std::vector<int> block_count(cert.region.periods + 2, 0);
    for (const Tile& tile : tiles.tiles()) {
      std::vector<Vec> verts;
      verts.reserve(p.vertices.size());
      for (const Vec& v : p.vertices) verts.push_back(tile.iso(v));
      int past = 0;
      for (int j = 0; j <= cert.region.periods; ++j)
        if (tile_past_wall(verts, caps[j], geometric_tol())) ++past;
      if (past < 1 || past > cert.region.periods) {
        blocks_ok = false;
        break;
      }
      block_count[past]++;
    }
    for (int j = 1; blocks_ok && j <= cert.region.periods; ++j)
      if (block_count[j] != cert.k) blocks_ok = false;
    report.add("period blocks balanced with k tiles each", blocks_ok);
  }

  // boundary walls: recompute and compare as a set
  {
    std::vector<BoundaryWall> boundary;
    for (int i = 0; i < tiles.size(); ++i) {
      const Tile& tile = tiles.tiles()[i];
      for (int f = 0; f < p.face_count(); ++f) {
        const Isometry neighbor = tile.iso * Isometry::reflection(p.face_normals[f]);
        if (tiles.find(neighbor(p.reference_point)) < 0)
          boundary.push_back({i, f, tile.iso(p.face_normals[f])});
      }
    }
    auto key = [](const BoundaryWall& w) { return w.tile * 1024 + w.face; };
    std::vector<int> a, b;
    for (const auto& w : boundary) a.push_back(key(w));
    for (const auto& w : cert.region.boundary) b.push_back(key(w));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    report.add("boundary walls", a == b);
    if (a != b) return report;

    // convexity: every tile inside every boundary wall
    bool convex = true;
    for (const BoundaryWall& wall : boundary) {
      for (const Tile& tile : tiles.tiles()) {
        for (const Vec& v : p.vertices) {
          const Vec img = tile.iso(v);
          if (minkowski_inner(img, wall.outward_normal) > 1e-7 * (1.0 + std::abs(img[0]))) {
            convex = false;
            break;
          }
        }
        if (!convex) break;
      }
      if (!convex) break;
    }
    report.add("convexity audit", convex);

    bool contained = true;
    for (double t : {cert.region.t_entry, cert.region.t_exit}) {
      const Vec x = geo.point_at(t);
      for (const BoundaryWall& wall : boundary)
        if (minkowski_inner(x, wall.outward_normal) > 1e-7 * (1.0 + std::abs(x[0]))) contained = false;
    }
    report.add("axis containment", contained);

    // fold witness over the stored boundary list
    bool witness_ok = true;
    std::string witness_detail;
    Isometry w = Isometry::identity(p.dim);
    for (int idx : cert.witness.wall_reflections) {
      if (idx < 0 || idx >= static_cast<int>(cert.region.boundary.size())) {
        witness_ok = false;
        witness_detail = "witness index out of range";
        break;
      }
      w = Isometry::reflection(normalize_normal(cert.region.boundary[idx].outward_normal)) * w;
    }
    if (witness_ok) {
      const Mat m = (w * alpha).matrix();
      const double residual = (m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
      if (std::abs(residual - cert.witness.residual) > 1e-6 * (1.0 + residual)) {
        witness_ok = false;
        witness_detail = "stored residual does not match the witness word";
      } else if (residual <= 0.1) {
        witness_ok = false;
        witness_detail = "residual below the certification margin";
      }
    }
    report.add("fold witness", witness_ok, witness_detail);
  }

  // bound compliance with the recomputed widened bound
  const double bound = widened_bound(p, ell);
  report.add("theorem bound recomputed",
             std::abs(bound - cert.theorem_bound) <= 1e-6 * (1.0 + bound));
  report.add("index within bound", cert.index <= bound + 1e-9,
             std::to_string(cert.index) + " <= " + std::to_string(bound));

  return report;
}

std::string certificate_to_json(const SeparationCertificate& cert) {
  nlohmann::ordered_json j;
  j["polyhedron"] = cert.polyhedron;
  j["dim"] = cert.dim;
  j["alpha_word"] = cert.alpha_word;
  j["translation_length"] = cert.translation_length;
  j["k"] = cert.k;
  j["index"] = cert.index;
  j["theorem_bound"] = cert.theorem_bound;
  j["diameter"] = cert.diameter;
  j["volume"] = cert.volume;
  j["volume_std_error"] = cert.volume_std_error;
  nlohmann::ordered_json region;
  region["periods"] = cert.region.periods;
  region["t_entry"] = cert.region.t_entry;
  region["t_exit"] = cert.region.t_exit;
  region["cap_tile_word"] = cert.region.cap_tile_word;
  region["cap_face"] = cert.region.cap_face;
  region["axis_wall_count"] = cert.region.axis_wall_count;
  auto& tiles = region["tiles"] = nlohmann::json::array();
  for (const Tile& t : cert.region.tiles.tiles()) tiles.push_back(t.word);
  auto& boundary = region["boundary"] = nlohmann::json::array();
  for (const BoundaryWall& w : cert.region.boundary)
    boundary.push_back({{"tile", w.tile}, {"face", w.face}});
  region["tile_param"] = cert.region.tile_param;
  region["tile_distance"] = cert.region.tile_distance;
  j["region"] = std::move(region);
  j["fold_witness"] = {{"wall_reflections", cert.witness.wall_reflections},
                       {"residual", cert.witness.residual}};
  return j.dump(2) + "\n";
}

SeparationCertificate certificate_from_json(const Polyhedron& p, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("certificate JSON parse error: ") + e.what());
  }
  try {
    const auto alpha_word = j.at("alpha_word").get<std::vector<int>>();
    const Isometry alpha = word_to_isometry(p, alpha_word);
    if (classify(alpha) != IsometryClass::Loxodromic)
      throw InputError("certificate element is not loxodromic");
    SeparationCertificate cert(p, axis(alpha));
    cert.polyhedron = j.at("polyhedron").get<std::string>();
    cert.dim = j.at("dim").get<int>();
    cert.alpha_word = alpha_word;
    cert.translation_length = j.at("translation_length").get<double>();
    cert.k = j.at("k").get<int>();
    cert.index = j.at("index").get<int>();
    cert.theorem_bound = j.at("theorem_bound").get<double>();
    cert.diameter = j.value("diameter", 0.0);
    cert.volume = j.value("volume", 0.0);
    cert.volume_std_error = j.value("volume_std_error", 0.0);
    const auto& region = j.at("region");
    cert.region.periods = region.at("periods").get<int>();
    cert.region.t_entry = region.at("t_entry").get<double>();
    cert.region.t_exit = region.at("t_exit").get<double>();
    cert.region.cap_tile_word = region.at("cap_tile_word").get<std::vector<int>>();
    cert.region.cap_face = region.at("cap_face").get<int>();
    cert.region.axis_wall_count = region.value("axis_wall_count", 0);
    for (const auto& word_json : region.at("tiles")) {
      const auto word = word_json.get<std::vector<int>>();
      const Isometry iso = word_to_isometry(p, word);
      const Vec base = iso(p.reference_point);
      cert.region.tiles.insert(Tile{word, iso, base});
    }
    for (const auto& wall : region.at("boundary")) {
      const int tile = wall.at("tile").get<int>();
      const int face = wall.at("face").get<int>();
      if (tile < 0 || tile >= cert.region.tiles.size() || face < 0 || face >= p.face_count())
        throw InputError("certificate boundary wall out of range");
      cert.region.boundary.push_back(
          {tile, face, cert.region.tiles.tiles()[tile].iso(p.face_normals[face])});
    }
    if (region.contains("tile_param"))
      cert.region.tile_param = region.at("tile_param").get<std::vector<double>>();
    if (region.contains("tile_distance"))
      cert.region.tile_distance = region.at("tile_distance").get<std::vector<double>>();
    cert.witness.wall_reflections =
        j.at("fold_witness").at("wall_reflections").get<std::vector<int>>();
    cert.witness.residual = j.at("fold_witness").at("residual").get<double>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace corf
