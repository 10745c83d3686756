#include "corf/growth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "corf/rng.hpp"
#include "corf/tiling.hpp"

namespace corf {

namespace {

// Backtracking search for a partial permutation action on {0..n-1} moving
// the base point 0 along the word.  Images are drawn from already-used
// points plus one fresh representative, which enumerates actions up to
// relabeling fixing the base point.
class DivisibilitySearch {
 public:
  DivisibilitySearch(int n_generators, const FreeWord& word, int n)
      : word_(word), n_(n) {
    fwd_.assign(n_generators, std::vector<int>(n, -1));
    bwd_.assign(n_generators, std::vector<int>(n, -1));
  }

  bool solve() { return step(0, 0, 1); }

 private:
  bool step(size_t pos, int point, int used) {
    if (pos == word_.size()) return point != 0;
    const int letter = word_[pos];
    const int gen = std::abs(letter) - 1;
    auto& fwd = letter > 0 ? fwd_[gen] : bwd_[gen];
    auto& bwd = letter > 0 ? bwd_[gen] : fwd_[gen];
    if (fwd[point] >= 0) return step(pos + 1, fwd[point], used);
    const int limit = std::min(used + 1, n_);
    for (int image = 0; image < limit; ++image) {
      if (bwd[image] >= 0) continue;  // injectivity
      fwd[point] = image;
      bwd[image] = point;
      if (step(pos + 1, image, std::max(used, image + 1))) return true;
      fwd[point] = -1;
      bwd[image] = -1;
    }
    return false;
  }

  const FreeWord& word_;
  int n_;
  std::vector<std::vector<int>> fwd_, bwd_;
};

void check_word(int n_generators, const FreeWord& word) {
  if (word.empty()) throw InputError("divisibility: word is trivial");
  for (int letter : word) {
    if (letter == 0 || std::abs(letter) > n_generators)
      throw InputError("divisibility: letter out of range");
  }
  if (!is_freely_reduced(word)) throw InputError("divisibility: word is not freely reduced");
}

// Enumerates freely reduced words of exactly the given length over
// n_generators, lexicographic, calling fn(word).
template <typename Fn>
void for_each_reduced_word(int n_generators, int length, Fn&& fn) {
  FreeWord word;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(word.size()) == length) {
      fn(word);
      return;
    }
    for (int g = 1; g <= n_generators; ++g) {
      for (int letter : {g, -g}) {
        if (!word.empty() && word.back() == -letter) continue;
        word.push_back(letter);
        self(self);
        word.pop_back();
      }
    }
  };
  rec(rec);
}

struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

}  // namespace

FreeWord parse_free_word(const std::string& text) {
  FreeWord out;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == ',') continue;
    if (ch >= 'a' && ch <= 'z')
      out.push_back(ch - 'a' + 1);
    else if (ch >= 'A' && ch <= 'Z')
      out.push_back(-(ch - 'A' + 1));
    else
      throw InputError(std::string("parse_free_word: unexpected character '") + ch + "'");
  }
  return out;
}

std::string format_free_word(const FreeWord& word) {
  std::string out;
  for (int letter : word) {
    const int g = std::abs(letter) - 1;
    out.push_back(static_cast<char>(letter > 0 ? 'a' + g : 'A' + g));
  }
  return out;
}

FreeWord free_reduce(FreeWord word) {
  FreeWord out;
  out.reserve(word.size());
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

FreeWord cyclic_reduce(FreeWord word) {
  word = free_reduce(std::move(word));
  while (word.size() >= 2 && word.front() == -word.back()) {
    word.erase(word.begin());
    word.pop_back();
  }
  return word;
}

bool is_freely_reduced(const FreeWord& word) {
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == -word[i + 1]) return false;
  return true;
}

std::optional<int> divisibility_bruteforce(int n_generators, const FreeWord& word, int max_index) {
  check_word(n_generators, word);
  if (max_index < 2) throw InputError("divisibility_bruteforce: max_index must be at least 2");
  for (int n = 2; n <= max_index; ++n) {
    DivisibilitySearch search(n_generators, word, n);
    if (search.solve()) return n;
  }
  return std::nullopt;
}

int divisibility_upper_cyclic(long exponent) {
  if (exponent == 0) throw InputError("divisibility_upper_cyclic: trivial element");
  const long n = std::abs(exponent);
  for (int m = 2;; ++m)
    if (n % m != 0) return m;
}

double GrowthCurve::value_at(int n) const {
  double best = 0.0;
  for (const auto& [threshold, value] : points)
    if (threshold <= n) best = std::max(best, value);
  return best;
}

GrowthCurve growth_curve(const std::vector<GrowthSample>& samples, const std::string& norm,
                         bool allow_mixed) {
  if (samples.empty()) throw InputError("growth_curve: no samples");
  if (norm != "word" && norm != "geodesic") throw InputError("growth_curve: unknown norm");
  bool any_bound = false, any_exact = false;
  for (const auto& s : samples) (s.is_upper_bound ? any_bound : any_exact) = true;
  if (any_bound && any_exact && !allow_mixed)
    throw InputError("growth_curve: mixed exact and upper-bound samples without the mixed flag");

  auto norm_of = [&](const GrowthSample& s) {
    return norm == "word" ? static_cast<double>(s.word_length) : s.geodesic_length;
  };

  int lo = std::numeric_limits<int>::max(), hi = 0;
  for (const auto& s : samples) {
    const int n = static_cast<int>(std::ceil(norm_of(s) - 1e-12));
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }

  GrowthCurve curve;
  curve.norm = norm;
  curve.is_upper_bound = any_bound;
  double running = 0.0;
  for (int n = lo; n <= hi; ++n) {
    for (const auto& s : samples)
      if (norm_of(s) <= n + 1e-12) running = std::max(running, s.d_value);
    curve.points.emplace_back(n, running);
  }
  return curve;
}

CoverTransferReport cover_transfer_check(int degree, const GrowthCurve& base,
                                         const GrowthCurve& cover) {
  if (degree < 1) throw InputError("cover_transfer_check: degree must be positive");
  CoverTransferReport rep;
  rep.degree = degree;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const int lo = std::max(base.points.front().first, cover.points.front().first);
  const int hi = std::min(base.points.back().first, cover.points.back().first);
  for (int n = lo; n <= hi; ++n) {
    CoverTransferRow row;
    row.n = n;
    row.base = base.value_at(n);
    row.cover = cover.value_at(n);
    row.margin = degree * row.cover - row.base;
    rep.min_margin = std::min(rep.min_margin, row.margin);
    if (row.margin < -1e-9) rep.holds = false;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<GrowthSample> f2_divisibility_samples(int max_len, int max_index) {
  std::vector<GrowthSample> samples;
  for (int len = 1; len <= max_len; ++len) {
    double worst = 0.0;
    std::string worst_word;
    for_each_reduced_word(2, len, [&](const FreeWord& w) {
      const auto d = divisibility_bruteforce(2, w, max_index);
      if (!d) throw NumericalError("f2_divisibility_samples: divisibility exceeded max_index");
      if (*d > worst) {
        worst = *d;
        worst_word = format_free_word(w);
      }
    });
    GrowthSample s;
    s.element = worst_word;
    s.word_length = len;
    s.cyc_length = static_cast<int>(cyclic_reduce(parse_free_word(worst_word)).size());
    s.geodesic_length = std::numeric_limits<double>::quiet_NaN();
    s.d_value = worst;
    s.source = "bruteforce";
    samples.push_back(std::move(s));
  }
  return samples;
}

GrowthCurve f2_divisibility_curve(int max_len, int max_index) {
  return growth_curve(f2_divisibility_samples(max_len, max_index), "word");
}

bool index2_kernel_contains(const FreeWord& word) {
  long a_sum = 0;
  for (int letter : word)
    if (std::abs(letter) == 1) a_sum += letter > 0 ? 1 : -1;
  return a_sum % 2 == 0;
}

FreeWord rewrite_in_index2_kernel(const FreeWord& word) {
  if (!index2_kernel_contains(word)) throw InputError("rewrite_in_index2_kernel: word is not in K");
  // Schreier transversal {1, a}; generators x = a^2, y = b, z = a b a^-1.
  FreeWord out;
  int coset = 0;  // 0 ~ 1, 1 ~ a
  for (int letter : word) {
    const bool is_a = std::abs(letter) == 1;
    if (letter > 0) {
      if (is_a) {
        if (coset == 1) out.push_back(1);  // x
        coset ^= 1;
      } else {
        out.push_back(coset == 0 ? 2 : 3);  // y or z
      }
    } else {
      if (is_a) {
        coset ^= 1;
        if (coset == 1) out.push_back(-1);  // x^-1
      } else {
        out.push_back(coset == 0 ? -2 : -3);
      }
    }
  }
  return free_reduce(std::move(out));
}

GrowthCurve f2_index2_subgroup_curve(int max_len, int max_index) {
  std::vector<GrowthSample> samples;
  for (int len = 1; len <= max_len; ++len) {
    double worst = 0.0;
    std::string worst_word;
    for_each_reduced_word(2, len, [&](const FreeWord& w) {
      if (!index2_kernel_contains(w)) return;
      const FreeWord rewritten = rewrite_in_index2_kernel(w);
      if (rewritten.empty()) throw NumericalError("f2_index2_subgroup_curve: rewriting killed a word");
      const auto d = divisibility_bruteforce(3, rewritten, max_index);
      if (!d) throw NumericalError("f2_index2_subgroup_curve: divisibility exceeded max_index");
      if (*d > worst) {
        worst = *d;
        worst_word = format_free_word(w);
      }
    });
    if (worst == 0.0) continue;  // no kernel elements at this length
    GrowthSample s;
    s.element = worst_word;
    s.word_length = len;
    s.cyc_length = len;
    s.geodesic_length = std::numeric_limits<double>::quiet_NaN();
    s.d_value = worst;
    s.source = "bruteforce";
    samples.push_back(std::move(s));
  }
  return growth_curve(samples, "word");
}

std::vector<Example62Row> example_6_2_table(long n_max) {
  if (n_max < 1) throw InputError("example_6_2_table: n_max must be at least 1");
  const Mat2 a{1, 2, 0, 1};
  const Mat2 b{1, 0, 2, 1};
  std::vector<Example62Row> rows;
  Mat2 product = a;
  for (long n = 1; n <= n_max; ++n) {
    product = product * b;  // a b^n
    Example62Row row;
    row.n = n;
    row.word_length = n + 1;
    row.trace = product.a + product.d;
    row.geodesic_length = sl2_translation_length(static_cast<double>(row.trace));
    row.ratio = row.geodesic_length / std::log(static_cast<double>(row.word_length));
    rows.push_back(row);
  }
  return rows;
}

SvarcMilnorReport svarc_milnor_probe(const Polyhedron& p, int n_words, int max_len,
                                     std::uint64_t seed) {
  if (n_words < 1 || max_len < 2) throw InputError("svarc_milnor_probe: bad parameters");
  SvarcMilnorReport rep;
  rep.n_words = n_words;
  rep.max_len = max_len;
  rep.seed = seed;

  const Vec& x0 = p.reference_point;
  for (int f = 0; f < p.face_count(); ++f) {
    const Vec moved = Isometry::reflection(p.face_normals[f])(x0);
    rep.max_generator_displacement = std::max(rep.max_generator_displacement, dist_points(x0, moved));
  }

  Rng rng(seed);
  for (int i = 0; i < n_words; ++i) {
    const int len = 2 + static_cast<int>(rng.below(max_len - 1));
    std::vector<int> word;
    word.reserve(len);
    for (int j = 0; j < len; ++j) {
      int letter;
      do {
        letter = static_cast<int>(rng.below(p.face_count()));
      } while (!word.empty() && word.back() == letter);
      word.push_back(letter);
    }
    const Isometry g = word_to_isometry(p, word);
    IsometryClass cls;
    try {
      cls = classify(g);
    } catch (const NumericalError&) {
      continue;  // ambiguous spectral radius: skip the sample
    }
    if (cls != IsometryClass::Loxodromic) continue;
    ++rep.loxodromic_found;

    SvarcMilnorSample sample;
    sample.word_length = static_cast<int>(word.size());
    sample.displacement = dist_points(x0, g(x0));
    sample.translation_length = translation_length(g);
    if (sample.translation_length > sample.displacement + 1e-9)
      rep.translation_bounded_by_displacement = false;
    rep.a_upper = std::max(rep.a_upper, sample.displacement / sample.word_length);
    rep.a_lower = std::max(rep.a_lower, sample.word_length / sample.displacement);
    rep.samples.push_back(sample);
  }
  rep.a_fit = std::max(rep.a_upper, rep.a_lower);
  return rep;
}

}  // namespace corf
