#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "corf/errors.hpp"
#include "corf/polyhedron.hpp"

namespace corf {

// One copy g.P of the fundamental polyhedron, identified by a reduced
// reflection word, the isometry it spells, and the image of the interior
// reference point.
struct Tile {
  std::vector<int> word;
  Isometry iso;
  Vec base_point;
};

// Tiles are deduplicated by the quantized ball-model coordinates of their
// base points (grid 1e-6); distinct tiles keep base points several orders
// of magnitude further apart than the accumulated numerical drift.
class TileSet {
 public:
  explicit TileSet(Polyhedron poly) : poly_(std::move(poly)) {}

  const Polyhedron& polyhedron() const { return poly_; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  int size() const { return static_cast<int>(tiles_.size()); }

  // -1 when no tile with this base point is present.
  int find(const Vec& base_point) const;

  // False when the tile is already present.  Throws VerificationError on a
  // fingerprint collision whose matrices disagree.
  bool insert(Tile tile);

 private:
  struct Key {
    std::array<std::int64_t, 4> q{0, 0, 0, 0};
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  Key key_of(const Vec& ball_coords) const;

  Polyhedron poly_;
  std::vector<Tile> tiles_;
  std::vector<Vec> ball_points_;
  std::unordered_map<Key, int, KeyHash> index_;
};

struct FrontierExceededError : NumericalError {
  FrontierExceededError(const std::string& msg, TileSet partial_set)
      : NumericalError(msg), partial(std::move(partial_set)) {}
  TileSet partial;
};

// Breadth-first expansion across face adjacencies keeping tiles whose
// closure meets the region, exploring only neighbors of kept tiles.
// Deterministic order; seeds are folded into their containing tiles (the
// fundamental tile starts the search when no seeds are given).  Throws
// FrontierExceededError carrying the partial set when more than
// frontier_bound tiles are kept.
TileSet tiles_meeting_region(const Polyhedron& p,
                             const std::function<bool(const Tile&)>& meets_region,
                             long frontier_bound = 500000,
                             const std::vector<Vec>& seed_points = {});

// Region helper: closure of g.P meets the closed ball, via the exact
// point-to-polyhedron distance.
std::function<bool(const Tile&)> ball_region(const Polyhedron& p, Vec center, double radius);

struct FoldResult {
  std::vector<int> word;  // faces in the order they were applied
  Isometry g;             // product of those reflections; g(x) lies in the closed tile
  long iterations = 0;
};

// Reflect x across the most-violated wall (ties to the lowest face index)
// until it lies in the closed fundamental tile.
FoldResult fold_to_fundamental(const Polyhedron& p, const Vec& x);

// Cancels adjacent equal letters (reflections are involutions).
std::vector<int> reduce_reflection_word(std::vector<int> word);

// Ordered product of face reflections, leftmost letter applied last;
// the word is freely reduced first.
Isometry word_to_isometry(const Polyhedron& p, const std::vector<int>& word);

}  // namespace corf
