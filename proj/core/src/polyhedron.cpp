#include "corf/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "corf/errors.hpp"
#include "corf/models.hpp"
#include "corf/rng.hpp"

namespace corf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMcWorkers = 4;
constexpr long kBuiltinVolumeSamples = 2000000;
constexpr std::uint64_t kBuiltinVolumeSeed = 0x5eed0decaull;

// Euclidean volume of the unit n-ball, n <= 4.
double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    case 4: return kPi * kPi / 2.0;
  }
  throw InputError("unit_ball_volume: unsupported dimension");
}

// All nonempty pairwise-adjacent face subsets of size <= dim, ascending.
std::vector<std::vector<int>> enumerate_face_cliques(const std::vector<std::vector<char>>& adj, int dim) {
  const int f = static_cast<int>(adj.size());
  std::vector<std::vector<int>> cliques;
  std::vector<int> current;
  auto extend = [&](auto&& self, int next) -> void {
    if (!current.empty()) cliques.push_back(current);
    if (static_cast<int>(current.size()) == dim) return;
    for (int i = next; i < f; ++i) {
      bool ok = true;
      for (int j : current)
        if (!adj[j][i]) { ok = false; break; }
      if (!ok) continue;
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  return cliques;
}

// Timelike unit vector orthogonal to the given spacelike normals.
std::optional<Vec> wall_intersection_point(const std::vector<Vec>& normals, const std::vector<int>& which) {
  const int n = static_cast<int>(normals.front().size());
  Mat a(static_cast<int>(which.size()), n);
  const Mat j = minkowski_form(n - 1);
  for (size_t r = 0; r < which.size(); ++r) a.row(static_cast<int>(r)) = (j * normals[which[r]]).transpose();
  Eigen::FullPivLU<Mat> lu(a);
  lu.setThreshold(1e-9);
  if (lu.dimensionOfKernel() != 1) return std::nullopt;
  Vec v = lu.kernel().col(0);
  if (minkowski_inner(v, v) >= -1e-12) return std::nullopt;
  return normalize_point(std::move(v));
}

// Derived data: vertices from the size-dim cliques, diameter, circumradius.
void finish_geometry(Polyhedron& p) {
  p.face_cliques = enumerate_face_cliques(p.adjacent, p.dim);
  p.vertices.clear();
  for (const auto& clique : p.face_cliques) {
    if (static_cast<int>(clique.size()) != p.dim) continue;
    auto v = wall_intersection_point(p.face_normals, clique);
    if (!v) continue;
    bool inside = true;
    for (const Vec& u : p.face_normals) {
      if (minkowski_inner(*v, u) > 1e-8) { inside = false; break; }
    }
    if (inside) p.vertices.push_back(*v);
  }
  if (p.vertices.empty()) throw InputError("polyhedron has no vertices; not compact");

  if (p.reference_point.size() == 0) {
    Vec sum = Vec::Zero(p.dim + 1);
    for (const Vec& v : p.vertices) sum += v;
    p.reference_point = normalize_point(std::move(sum));
  }

  p.diameter = 0.0;
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t j = i + 1; j < p.vertices.size(); ++j)
      p.diameter = std::max(p.diameter, dist_points(p.vertices[i], p.vertices[j]));
  p.circumradius = 0.0;
  for (const Vec& v : p.vertices) p.circumradius = std::max(p.circumradius, dist_points(p.reference_point, v));
}

// Common wall distance for a vertex-transitive direction family: solve
// <u_i(t), u_j(t)> = 0 for an adjacent pair by bisection.
double solve_wall_distance(const Vec& ci, const Vec& cj) {
  const double c = ci.dot(cj);
  if (c <= 0.0 || c >= 1.0) throw NumericalError("solve_wall_distance: directions are not acute");
  auto f = [&](double t) { return -std::sinh(t) * std::sinh(t) + std::cosh(t) * std::cosh(t) * c; };
  double lo = 1e-6, hi = 5.0;
  if (f(lo) <= 0.0 || f(hi) >= 0.0) throw NumericalError("solve_wall_distance: bracket failed");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Polyhedron assemble_centered(std::string name, int dim, const std::vector<Vec>& directions,
                             double adjacency_dot_threshold) {
  Polyhedron p;
  p.dim = dim;
  p.name = std::move(name);
  const int f = static_cast<int>(directions.size());
  p.adjacent.assign(f, std::vector<char>(f, 0));
  int ai = -1, aj = -1;
  for (int i = 0; i < f; ++i)
    for (int j = i + 1; j < f; ++j)
      if (directions[i].dot(directions[j]) > adjacency_dot_threshold) {
        p.adjacent[i][j] = p.adjacent[j][i] = 1;
        if (ai < 0) { ai = i; aj = j; }
      }
  if (ai < 0) throw NumericalError("assemble_centered: no adjacent pair");
  const double t = solve_wall_distance(directions[ai], directions[aj]);
  for (const Vec& c : directions) {
    Vec u(dim + 1);
    u[0] = std::sinh(t);
    u.tail(dim) = std::cosh(t) * c;
    p.face_normals.push_back(std::move(u));
  }
  p.reference_point = Vec::Unit(dim + 1, 0);
  finish_geometry(p);
  return p;
}

}  // namespace

bool Polyhedron::contains(const Vec& point, double tol) const {
  for (const Vec& u : face_normals)
    if (minkowski_inner(point, u) > tol) return false;
  return true;
}

Polyhedron builtin_pentagon() {
  static const Polyhedron cached = [] {
    std::vector<Vec> dirs;
    for (int k = 0; k < 5; ++k) {
      Vec c(2);
      c << std::cos(2.0 * kPi * k / 5.0), std::sin(2.0 * kPi * k / 5.0);
      dirs.push_back(std::move(c));
    }
    // adjacent directions are 72 degrees apart (dot .309), the rest 144 (dot -.809)
    Polyhedron p = assemble_centered("pentagon", 2, dirs, 0.0);
    p.volume = kPi / 2.0;  // Gauss-Bonnet: 3*pi - 5*pi/2
    p.volume_std_error = 0.0;
    return p;
  }();
  return cached;
}

Polyhedron builtin_dodecahedron() {
  static const Polyhedron cached = [] {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec> dirs;
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        Vec a(3), b(3), c(3);
        a << 0.0, s1, s2 * phi;
        b << s1, s2 * phi, 0.0;
        c << s2 * phi, 0.0, s1;
        dirs.push_back(a.normalized());
        dirs.push_back(b.normalized());
        dirs.push_back(c.normalized());
      }
    // adjacent icosahedral directions have dot 1/sqrt5, others -1/sqrt5 or -1
    Polyhedron p = assemble_centered("dodecahedron", 3, dirs, 0.2);
    const McEstimate v = mc_polyhedron_volume(p, kBuiltinVolumeSamples, kBuiltinVolumeSeed);
    p.volume = v.estimate;
    p.volume_std_error = v.std_error;
    return p;
  }();
  return cached;
}

Polyhedron builtin_polyhedron(const std::string& name) {
  if (name == "pentagon") return builtin_pentagon();
  if (name == "dodecahedron") return builtin_dodecahedron();
  throw InputError("unknown builtin polyhedron: " + name);
}

PolyhedronValidation validate_polyhedron(const Polyhedron& p) {
  PolyhedronValidation out;
  out.min_disjoint_separation = std::numeric_limits<double>::infinity();
  const double tol = geometric_tol();
  const int f = p.face_count();
  if (p.dim < 2 || p.dim > 4) {
    out.ok = false;
    out.violations.push_back("dimension must be 2, 3 or 4");
    return out;
  }

  for (int i = 0; i < f; ++i) {
    if (!is_unit_normal(p.face_normals[i], 1e-8)) {
      out.ok = false;
      out.violations.push_back("face " + std::to_string(i) + " normal is not unit spacelike");
    }
  }
  for (int i = 0; i < f; ++i) {
    for (int j = i + 1; j < f; ++j) {
      const double g = std::abs(minkowski_inner(p.face_normals[i], p.face_normals[j]));
      if (p.adjacent[i][j]) {
        out.max_right_angle_deviation = std::max(out.max_right_angle_deviation, g);
        if (g >= tol) {
          out.ok = false;
          out.violations.push_back("adjacent faces (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") are not orthogonal: |<ui,uj>| = " + std::to_string(g));
        }
      } else {
        out.min_disjoint_separation = std::min(out.min_disjoint_separation, g);
        if (g < 1.0 - tol) {
          out.ok = false;
          out.violations.push_back("non-adjacent faces (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") intersect: |<ui,uj>| = " + std::to_string(g));
        }
      }
    }
  }

  if (p.vertices.empty()) {
    out.ok = false;
    out.violations.push_back("no vertices");
  }
  for (const Vec& v : p.vertices) {
    const double unit_residual = std::abs(minkowski_inner(v, v) + 1.0);
    out.max_vertex_unit_residual = std::max(out.max_vertex_unit_residual, unit_residual);
    if (v[0] <= 0.0 || unit_residual > 1e-8) {
      out.ok = false;
      out.violations.push_back("vertex is not a normalized future point");
    }
    // a vertex must sit on exactly dim walls: the dim smallest incidence
    // values should all vanish
    std::vector<double> incidence;
    incidence.reserve(f);
    for (const Vec& u : p.face_normals) incidence.push_back(std::abs(minkowski_inner(v, u)));
    std::sort(incidence.begin(), incidence.end());
    if (static_cast<int>(incidence.size()) >= p.dim)
      out.max_vertex_residual = std::max(out.max_vertex_residual, incidence[p.dim - 1]);
    if (out.max_vertex_residual > 1e-8) {
      out.ok = false;
      out.violations.push_back("vertex does not lie on dim walls");
    }
  }

  double diameter = 0.0;
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t j = i + 1; j < p.vertices.size(); ++j)
      diameter = std::max(diameter, dist_points(p.vertices[i], p.vertices[j]));
  out.diameter_residual = std::abs(diameter - p.diameter);
  if (out.diameter_residual > tol) {
    out.ok = false;
    out.violations.push_back("stored diameter does not match the vertex set");
  }
  return out;
}

McEstimate mc_polyhedron_volume(const Polyhedron& p, long n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw InputError("mc_polyhedron_volume: too few samples");
  const int n = p.dim;

  // sample the circumscribed ball in ball-model coordinates around the
  // reference point; the translation moving the origin there is a boost
  const double r_ball = std::tanh((p.circumradius * 1.0000001 + 1e-9) / 2.0);
  const double euclid_volume = unit_ball_volume(n) * std::pow(r_ball, n);

  // orthonormal (Lorentz) frame taking e0 to the reference point
  Mat frame = Mat::Identity(n + 1, n + 1);
  {
    frame.col(0) = p.reference_point;
    const Mat j = minkowski_form(n);
    for (int i = 1; i <= n; ++i) {
      Vec c = Vec::Unit(n + 1, i);
      for (int k = 0; k < i; ++k) {
        const Vec ck = frame.col(k);
        c -= (c.dot(j * ck) / ck.dot(j * ck)) * ck;
      }
      frame.col(i) = c / std::sqrt(c.dot(j * c));
    }
  }

  std::vector<double> sums(kMcWorkers, 0.0), sums2(kMcWorkers, 0.0);
  std::uint64_t seed_state = seed;
  std::vector<std::uint64_t> worker_seeds(kMcWorkers);
  for (int w = 0; w < kMcWorkers; ++w) worker_seeds[w] = splitmix64(seed_state);

  auto run = [&](int w) {
    Rng rng(worker_seeds[w]);
    const long lo = n_samples * w / kMcWorkers;
    const long hi = n_samples * (w + 1) / kMcWorkers;
    double sum = 0.0, sum2 = 0.0;
    Vec y(n);
    for (long i = lo; i < hi; ++i) {
      double norm = 0.0;
      do {
        for (int d = 0; d < n; ++d) y[d] = rng.normal();
        norm = y.norm();
      } while (norm < 1e-12);
      const double radius = r_ball * std::pow(rng.uniform(), 1.0 / n);
      y *= radius / norm;
      const double r2 = y.squaredNorm();
      const double weight = std::pow(2.0 / (1.0 - r2), n);
      Vec x(n + 1);
      x[0] = (1.0 + r2) / (1.0 - r2);
      x.tail(n) = 2.0 * y / (1.0 - r2);
      if (p.contains(frame * x, 0.0)) {
        const double v = euclid_volume * weight;
        sum += v;
        sum2 += v * v;
      }
    }
    sums[w] = sum;
    sums2[w] = sum2;
  };

  std::vector<std::thread> pool;
  pool.reserve(kMcWorkers);
  for (int w = 0; w < kMcWorkers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();

  double sum = 0.0, sum2 = 0.0;
  for (int w = 0; w < kMcWorkers; ++w) {
    sum += sums[w];
    sum2 += sums2[w];
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, sum2 / n_samples - mean * mean);

  McEstimate out;
  out.estimate = mean;
  out.std_error = std::sqrt(var / n_samples);
  out.n_samples = n_samples;
  out.seed = seed;
  return out;
}

double dist_point_to_polyhedron(const Polyhedron& p, const Vec& point) {
  const int f = p.face_count();
  std::vector<double> s(f);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < f; ++i) {
    s[i] = minkowski_inner(point, p.face_normals[i]);
    worst = std::max(worst, s[i]);
  }
  if (worst <= 0.0) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  Vec candidate(p.dim + 1);
  for (const auto& clique : p.face_cliques) {
    double norm2 = 0.0;
    for (int i : clique) norm2 += s[i] * s[i];
    const double d = std::asinh(std::sqrt(norm2));
    if (d >= best) continue;
    // feasibility of the Minkowski projection z - sum s_i u_i
    candidate = point;
    for (int i : clique) candidate -= s[i] * p.face_normals[i];
    bool feasible = true;
    for (int jf = 0; jf < f; ++jf) {
      if (minkowski_inner(candidate, p.face_normals[jf]) > 1e-8 * (1.0 + std::abs(candidate[0]))) {
        feasible = false;
        break;
      }
    }
    if (feasible) best = d;
  }
  if (!std::isfinite(best)) throw NumericalError("dist_point_to_polyhedron: no feasible projection found");
  return best;
}

Polyhedron polyhedron_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polyhedron JSON parse error: ") + e.what());
  }
  Polyhedron p;
  try {
    p.dim = j.at("dim").get<int>();
    p.name = j.value("name", std::string("unnamed"));
    for (const auto& row : j.at("normals")) {
      if (static_cast<int>(row.size()) != p.dim + 1)
        throw InputError("polyhedron JSON: normal has wrong dimension");
      Vec u(p.dim + 1);
      for (int i = 0; i <= p.dim; ++i) u[i] = row.at(i).get<double>();
      p.face_normals.push_back(normalize_normal(std::move(u)));
    }
    const int f = p.face_count();
    p.adjacent.assign(f, std::vector<char>(f, 0));
    for (const auto& pair : j.at("adjacency")) {
      const int a = pair.at(0).get<int>();
      const int b = pair.at(1).get<int>();
      if (a < 0 || b < 0 || a >= f || b >= f || a == b)
        throw InputError("polyhedron JSON: bad adjacency pair");
      p.adjacent[a][b] = p.adjacent[b][a] = 1;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polyhedron JSON: ") + e.what());
  }
  finish_geometry(p);
  const PolyhedronValidation check = validate_polyhedron(p);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "polyhedron failed validation:";
    for (const auto& v : check.violations) msg << "\n  " << v;
    throw InputError(msg.str());
  }
  const McEstimate v = mc_polyhedron_volume(p, kBuiltinVolumeSamples, kBuiltinVolumeSeed);
  p.volume = v.estimate;
  p.volume_std_error = v.std_error;
  return p;
}

std::string polyhedron_to_json(const Polyhedron& p) {
  nlohmann::ordered_json j;
  j["dim"] = p.dim;
  j["name"] = p.name;
  auto& normals = j["normals"] = nlohmann::ordered_json::array();
  for (const Vec& u : p.face_normals) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int i = 0; i <= p.dim; ++i) row.push_back(u[i]);
    normals.push_back(std::move(row));
  }
  auto& adj = j["adjacency"] = nlohmann::ordered_json::array();
  for (int i = 0; i < p.face_count(); ++i)
    for (int k = i + 1; k < p.face_count(); ++k)
      if (p.adjacent[i][k]) adj.push_back({i, k});
  return j.dump(2) + "\n";
}

Polyhedron load_polyhedron(const std::string& spec) {
  if (spec == "pentagon" || spec == "dodecahedron") return builtin_polyhedron(spec);
  std::ifstream in(spec);
  if (!in) throw InputError("cannot open polyhedron file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return polyhedron_from_json(buf.str());
}

}  // namespace corf
