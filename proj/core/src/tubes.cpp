#include "corf/tubes.hpp"

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "corf/errors.hpp"
#include "corf/rng.hpp"
#include "corf/thresholds.hpp"

namespace corf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMcWorkers = 4;  // fixed so results are machine-independent

void check_spec(const TubeSpec& spec) {
  if (spec.dim < 2 || spec.dim > 4) throw InputError("tube: dim must be 2, 3 or 4");
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) throw InputError("tube: radius must be positive");
  if (!(spec.length > 0.0) || !std::isfinite(spec.length)) throw InputError("tube: length must be positive");
}

}  // namespace

double angle_of_parallelism(double b) {
  if (!(b > 0.0)) throw InputError("angle_of_parallelism: b must be positive");
  return std::atan(1.0 / std::sinh(b));
}

double tube_volume(const TubeSpec& spec) {
  check_spec(spec);
  const double sh = std::sinh(spec.radius);
  switch (spec.dim) {
    case 2: return 2.0 * sh * spec.length;
    case 3: return kPi * sh * sh * spec.length;
    case 4: return (4.0 / 3.0) * kPi * sh * sh * sh * spec.length;
  }
  throw InputError("tube_volume: unsupported dimension");
}

McEstimate mc_tube_volume(const TubeSpec& spec, long n_samples, std::uint64_t seed) {
  check_spec(spec);
  if (n_samples < 10000) throw InputError("mc_tube_volume: need at least 1e4 samples");

  const int n = spec.dim;
  const double r_hi = std::exp(spec.length);
  const double sech_b = 1.0 / std::cosh(spec.radius);
  const double tanh_b = std::tanh(spec.radius);

  // bounding box of the truncated cone in half-space coordinates
  const double s = r_hi * tanh_b;        // horizontal half-width
  const double u_lo = sech_b;            // lowest height, on the inner sphere
  const double u_hi = r_hi;
  const double box_volume = std::pow(2.0 * s, n - 1) * (u_hi - u_lo);

  std::vector<double> sums(kMcWorkers, 0.0), sums2(kMcWorkers, 0.0);
  std::vector<long> counts(kMcWorkers, 0);
  std::uint64_t seed_state = seed;
  std::vector<std::uint64_t> worker_seeds(kMcWorkers);
  for (int w = 0; w < kMcWorkers; ++w) worker_seeds[w] = splitmix64(seed_state);

  auto run = [&](int w) {
    Rng rng(worker_seeds[w]);
    const long lo = n_samples * w / kMcWorkers;
    const long hi = n_samples * (w + 1) / kMcWorkers;
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> x(n);
    for (long i = lo; i < hi; ++i) {
      double r2 = 0.0;
      for (int d = 0; d + 1 < n; ++d) {
        x[d] = rng.uniform(-s, s);
        r2 += x[d] * x[d];
      }
      const double u = rng.uniform(u_lo, u_hi);
      r2 += u * u;
      const double r = std::sqrt(r2);
      if (r >= 1.0 && r <= r_hi && u >= r * sech_b) {
        const double w_val = box_volume * std::pow(u, -n);
        sum += w_val;
        sum2 += w_val * w_val;
      }
    }
    sums[w] = sum;
    sums2[w] = sum2;
    counts[w] = hi - lo;
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

double index_bound(const BoundInputs& in) {
  if (in.dim < 2 || in.dim > 4) throw InputError("index_bound: dim must be 2, 3 or 4");
  if (!(in.volume > 0.0)) throw InputError("index_bound: polyhedron volume must be positive");
  if (!(in.length > 0.0)) throw InputError("index_bound: geodesic length must be positive");
  if (in.diameter < 0.0) throw InputError("index_bound: diameter must be nonnegative");
  const TubeSpec tube{in.dim, max_threshold(in.dim) + in.diameter, in.length};
  return 2.0 * tube_volume(tube) / in.volume;
}

double tile_count_bound(const BoundInputs& in) { return 0.5 * index_bound(in); }

}  // namespace corf
