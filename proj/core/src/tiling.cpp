#include "corf/tiling.hpp"

#include <cmath>
#include <deque>

#include "corf/models.hpp"

namespace corf {

namespace {

constexpr double kFingerprintGrid = 1e-6;
constexpr long kFoldCap = 1000000;
constexpr int kFoldRenormalizeEvery = 64;

}  // namespace

std::size_t TileSet::KeyHash::operator()(const Key& k) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::int64_t v : k.q) {
    h ^= static_cast<std::size_t>(v);
    h *= 0x100000001b3ull;
  }
  return h;
}

TileSet::Key TileSet::key_of(const Vec& ball_coords) const {
  Key k;
  for (int i = 0; i < ball_coords.size() && i < 4; ++i)
    k.q[i] = llround(ball_coords[i] / kFingerprintGrid);
  return k;
}

int TileSet::find(const Vec& base_point) const {
  const Vec b = model_convert(normalize_point(base_point), Model::Hyperboloid, Model::Ball);
  const Key center = key_of(b);
  const int n = static_cast<int>(b.size());
  // probe the neighboring grid cells so points straddling a cell edge
  // still match; offsets in {-1,0,1}^n via mixed radix
  int total = 1;
  for (int d = 0; d < n; ++d) total *= 3;
  for (int c = 0; c < total; ++c) {
    int rem = c;
    Key k = center;
    for (int d = 0; d < n; ++d) {
      k.q[d] += rem % 3 - 1;
      rem /= 3;
    }
    auto it = index_.find(k);
    if (it != index_.end() && (ball_points_[it->second] - b).norm() < kFingerprintGrid)
      return it->second;
  }
  return -1;
}

bool TileSet::insert(Tile tile) {
  const Vec b = model_convert(normalize_point(tile.base_point), Model::Hyperboloid, Model::Ball);
  const int existing = find(tile.base_point);
  if (existing >= 0) {
    // fingerprint soundness audit: a matching base point must come from
    // the same isometry
    const double diff = (tiles_[existing].iso.matrix() - tile.iso.matrix()).cwiseAbs().maxCoeff();
    if (diff > 1e-6 * (1.0 + tile.iso.matrix().cwiseAbs().maxCoeff()))
      throw VerificationError("tile fingerprint collision: equal base points, different isometries");
    return false;
  }
  const int id = static_cast<int>(tiles_.size());
  index_.emplace(key_of(b), id);
  ball_points_.push_back(b);
  tiles_.push_back(std::move(tile));
  return true;
}

TileSet tiles_meeting_region(const Polyhedron& p,
                             const std::function<bool(const Tile&)>& meets_region,
                             long frontier_bound, const std::vector<Vec>& seed_points) {
  TileSet kept(p);
  TileSet visited(p);  // everything ever tested, kept or not
  std::deque<int> queue;  // indices into kept

  auto consider = [&](Tile tile) {
    if (visited.find(tile.base_point) >= 0) return;
    Tile copy = tile;
    visited.insert(std::move(copy));
    if (!meets_region(tile)) return;
    if (kept.size() >= frontier_bound)
      throw FrontierExceededError("tiles_meeting_region: frontier bound exceeded", kept);
    kept.insert(std::move(tile));
    queue.push_back(kept.size() - 1);
  };

  if (seed_points.empty()) {
    consider(Tile{{}, Isometry::identity(p.dim), p.reference_point});
  } else {
    for (const Vec& s : seed_points) {
      const FoldResult fold = fold_to_fundamental(p, s);
      // g folds s into P, so the tile containing s is g^-1 P, whose word
      // is the fold word read in application order
      const Isometry g = fold.g.inverse();
      consider(Tile{fold.word, g, g(p.reference_point)});
    }
  }

  while (!queue.empty()) {
    const int current = queue.front();
    queue.pop_front();
    for (int face = 0; face < p.face_count(); ++face) {
      const Tile& t = kept.tiles()[current];  // re-borrow, vector may have grown
      std::vector<int> word = t.word;
      if (!word.empty() && word.back() == face)
        word.pop_back();
      else
        word.push_back(face);
      Isometry iso = t.iso * Isometry::reflection(p.face_normals[face]);
      Vec base = iso(p.reference_point);
      consider(Tile{std::move(word), std::move(iso), std::move(base)});
    }
  }
  return kept;
}

std::function<bool(const Tile&)> ball_region(const Polyhedron& p, Vec center, double radius) {
  return [&p, center = std::move(center), radius](const Tile& tile) {
    const Vec local = tile.iso.inverse()(center);
    return dist_point_to_polyhedron(p, local) <= radius + 1e-12;
  };
}

FoldResult fold_to_fundamental(const Polyhedron& p, const Vec& x) {
  if (!is_point(x, 1e-6)) throw InputError("fold_to_fundamental: not a point");
  const double tol = geometric_tol();
  FoldResult out{{}, Isometry::identity(p.dim), 0};
  Vec z = normalize_point(x);
  while (true) {
    int worst = -1;
    double worst_val = tol;
    for (int i = 0; i < p.face_count(); ++i) {
      const double s = minkowski_inner(z, p.face_normals[i]);
      if (s > worst_val) {
        worst_val = s;
        worst = i;
      }
    }
    if (worst < 0) break;
    const Isometry r = Isometry::reflection(p.face_normals[worst]);
    z = r(z);
    out.g = r * out.g;
    out.word.push_back(worst);
    if (++out.iterations % kFoldRenormalizeEvery == 0) z = normalize_point(z);
    if (out.iterations > kFoldCap) throw NumericalError("fold_to_fundamental: iteration cap exceeded");
  }
  return out;
}

std::vector<int> reduce_reflection_word(std::vector<int> word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int letter : word) {
    if (!out.empty() && out.back() == letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Isometry word_to_isometry(const Polyhedron& p, const std::vector<int>& word) {
  for (int letter : word)
    if (letter < 0 || letter >= p.face_count()) throw InputError("word_to_isometry: face index out of range");
  Isometry out = Isometry::identity(p.dim);
  for (int letter : reduce_reflection_word(word)) out = out * Isometry::reflection(p.face_normals[letter]);
  return out;
}

}  // namespace corf
