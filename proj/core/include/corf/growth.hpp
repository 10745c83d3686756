#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corf/polyhedron.hpp"

namespace corf {

// Word in a free group: letters are +-(g+1) for generator g, so "aBa"
// over {a,b} is {1, -2, 1}.
using FreeWord = std::vector<int>;

// Parses compact ("abA") or space-separated ("a b A") words; uppercase
// letters are inverses.
FreeWord parse_free_word(const std::string& text);
std::string format_free_word(const FreeWord& word);

FreeWord free_reduce(FreeWord word);
FreeWord cyclic_reduce(FreeWord word);
bool is_freely_reduced(const FreeWord& word);

// Minimal index n <= max_index of a subgroup of the free group missing the
// word: exhaustive backtracking over partial permutation actions on
// {1..n}, points introduced in first-use order (relabeling fixes the base
// point), tracing the word from the base point.  Empty when no subgroup of
// index <= max_index separates the word.
std::optional<int> divisibility_bruteforce(int n_generators, const FreeWord& word, int max_index);

// min { m >= 2 : m does not divide n }, the cyclic-quotient upper bound
// for the word a^n.
int divisibility_upper_cyclic(long exponent);

struct GrowthSample {
  std::string element;
  int word_length = 0;
  int cyc_length = 0;
  double geodesic_length = 0.0;  // NaN when not applicable
  double d_value = 0.0;
  bool is_upper_bound = false;
  std::string source;  // bruteforce | certificate | formula
};

struct GrowthCurve {
  std::string norm;  // word | geodesic
  bool is_upper_bound = false;
  std::vector<std::pair<int, double>> points;  // (n, max D over the n-ball)

  double value_at(int n) const;  // largest point with threshold <= n
};

// Running maximum of D over balls of integer radius in the chosen norm.
// Samples with mixed exact/upper-bound values are rejected unless
// allow_mixed is set; the curve is flagged as an upper bound when any
// sample is.
GrowthCurve growth_curve(const std::vector<GrowthSample>& samples, const std::string& norm,
                         bool allow_mixed = false);

struct CoverTransferRow {
  int n = 0;
  double base = 0.0;     // growth of the base manifold group
  double cover = 0.0;    // growth of the degree-C cover
  double margin = 0.0;   // C * cover - base
};

struct CoverTransferReport {
  int degree = 0;
  bool holds = true;
  double min_margin = 0.0;
  std::vector<CoverTransferRow> rows;
};

// Checks base(n) <= C * cover(n) at all shared integer thresholds.
CoverTransferReport cover_transfer_check(int degree, const GrowthCurve& base,
                                         const GrowthCurve& cover);

// Exhaustive divisibility data for the free group F2 over the ball of the
// given radius: one sample per word length carrying the hardest element.
std::vector<GrowthSample> f2_divisibility_samples(int max_len, int max_index);
GrowthCurve f2_divisibility_curve(int max_len, int max_index);

// Membership and Reidemeister-Schreier rewriting for the index-2 subgroup
// K = ker(F2 -> Z/2) sending a -> 1, b -> 0; K is free on
// x = a^2, y = b, z = a b a^-1.
bool index2_kernel_contains(const FreeWord& word);
FreeWord rewrite_in_index2_kernel(const FreeWord& word);

// Divisibility curve of K over words of F2, lengths measured upstairs.
GrowthCurve f2_index2_subgroup_curve(int max_len, int max_index);

struct Example62Row {
  long n = 0;
  long word_length = 0;
  long trace = 0;  // exact integer, 2 + 4n
  double geodesic_length = 0.0;
  double ratio = 0.0;  // geodesic_length / ln(word_length)
};

// The family a b^n for the parabolic pair a = [[1,2],[0,1]],
// b = [[1,0],[2,1]]: integer traces and logarithmic geodesic growth.
std::vector<Example62Row> example_6_2_table(long n_max);

struct SvarcMilnorSample {
  int word_length = 0;
  double displacement = 0.0;  // d(x0, alpha x0)
  double translation_length = 0.0;
};

struct SvarcMilnorReport {
  int n_words = 0;
  int max_len = 0;
  std::uint64_t seed = 0;
  long loxodromic_found = 0;
  double a_upper = 0.0;  // max displacement / word length (b = 0)
  double a_lower = 0.0;  // max word length / displacement (b = 0)
  double a_fit = 0.0;    // max of the two
  double max_generator_displacement = 0.0;
  bool translation_bounded_by_displacement = true;
  std::vector<SvarcMilnorSample> samples;
};

// Samples random reflection words in the polyhedron group and fits the
// smallest two-sided comparison constants between word length and orbit
// displacement; translation length never exceeds displacement.
SvarcMilnorReport svarc_milnor_probe(const Polyhedron& p, int n_words, int max_len,
                                     std::uint64_t seed);

}  // namespace corf
