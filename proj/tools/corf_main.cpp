// corf: constructive separation certificates and growth experiments for
// right-angled hyperbolic reflection groups.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corf/errors.hpp"
#include "corf/growth.hpp"
#include "corf/models.hpp"
#include "corf/separator.hpp"
#include "corf/thresholds.hpp"
#include "corf/tubes.hpp"

namespace {

using corf::InputError;
using json = nlohmann::ordered_json;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file: " + out_path);
  out << text;
}

std::vector<int> parse_face_word(const std::string& text) {
  std::vector<int> word;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      word.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw InputError("word tokens must be face indices: '" + token + "'");
    }
  }
  if (word.empty()) throw InputError("empty word");
  return word;
}

std::string format_csv_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int cmd_thresholds(const std::string& out_path) {
  json report;
  report["command"] = "thresholds";
  const double r3 = corf::inscribed_circle_radius_right_triangle();
  const double r4 = corf::inscribed_sphere_radius_right_tetrahedron();
  const double mid = corf::right_tetrahedron_center_angle();
  report["inscribed_circle_radius_triangle"] = r3;
  report["inscribed_sphere_radius_tetrahedron"] = r4;
  report["tetrahedron_center_angle"] = mid;

  double worst = 0.0;
  auto dev = [&worst](double value, double reference) {
    const double d = std::abs(value - reference);
    worst = std::max(worst, d);
    return d;
  };
  report["deviations"] = {
      {"triangle_radius", dev(r3, std::acos(std::sqrt(2.0 / 3.0)))},
      {"tetrahedron_radius", dev(r4, std::numbers::pi / 6.0)},
      {"center_angle", dev(mid, std::acos(1.0 / std::sqrt(3.0)))},
  };

  json cases = json::array();
  for (int dim = 2; dim <= 4; ++dim) {
    for (int k = 1; k <= dim; ++k) {
      const corf::ThresholdCase c = corf::codim_threshold(dim, k);
      double reference = 0.0;
      switch (k) {
        case 1: reference = 0.0; break;
        case 2: reference = std::log(1.0 + std::sqrt(2.0)); break;
        case 3: reference = std::log(std::sqrt(2.0) + std::sqrt(3.0)); break;
        case 4: reference = std::log(2.0 + std::sqrt(3.0)); break;
      }
      cases.push_back({{"dim", c.dim},
                       {"codim", c.codim},
                       {"inscribed_radius", c.inscribed_radius},
                       {"threshold", c.threshold},
                       {"closed_form_deviation", dev(c.threshold, reference)},
                       {"note", c.note}});
    }
    cases.back()["max_threshold"] = corf::max_threshold(dim);
  }
  report["cases"] = std::move(cases);
  report["max_deviation"] = worst;
  report["ok"] = worst < 1e-10;
  write_output(report.dump(2) + "\n", out_path);
  return worst < 1e-10 ? 0 : 1;
}

int cmd_volumes(int dim, double b, double ell, long samples, std::uint64_t seed,
                const std::string& out_path) {
  const corf::TubeSpec spec{dim, b, ell};
  const double closed = corf::tube_volume(spec);
  const corf::McEstimate mc = corf::mc_tube_volume(spec, samples, seed);
  const double z = (mc.estimate - closed) / mc.std_error;
  json report;
  report["command"] = "volumes";
  report["config"] = {{"dim", dim}, {"b", b}, {"ell", ell}, {"samples", samples}, {"seed", seed}};
  report["closed_form"] = closed;
  report["mc_estimate"] = mc.estimate;
  report["std_error"] = mc.std_error;
  report["z_score"] = z;
  write_output(report.dump(2) + "\n", out_path);
  return 0;
}

int cmd_separate(const std::string& poly_spec, const std::string& word_text, long frontier_bound,
                 const std::string& out_path) {
  const corf::Polyhedron poly = corf::load_polyhedron(poly_spec);
  const std::vector<int> word = parse_face_word(word_text);
  const corf::SeparationCertificate cert = corf::build_certificate(poly, word, frontier_bound);
  const corf::CertificateReport report = corf::verify_certificate(poly, cert);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "freshly built certificate failed verification:";
    for (const auto& c : report.checks)
      if (!c.ok) msg << " [" << c.name << "] " << c.detail;
    throw corf::VerificationError(msg.str());
  }
  write_output(corf::certificate_to_json(cert), out_path);
  return 0;
}

int cmd_verify(const std::string& poly_spec, const std::string& cert_path,
               const std::string& out_path) {
  const corf::Polyhedron poly = corf::load_polyhedron(poly_spec);
  std::ifstream in(cert_path);
  if (!in) throw InputError("cannot open certificate file: " + cert_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const corf::SeparationCertificate cert = corf::certificate_from_json(poly, buf.str());
  const corf::CertificateReport report = corf::verify_certificate(poly, cert);
  json out;
  out["command"] = "verify";
  out["certificate"] = cert_path;
  out["ok"] = report.ok;
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  out["checks"] = std::move(checks);
  write_output(out.dump(2) + "\n", out_path);
  return report.ok ? 0 : 1;
}

std::string growth_csv_header(std::uint64_t seed, const std::string& experiment,
                              const std::string& params) {
  std::ostringstream out;
  out << "# command=growth experiment=" << experiment << " seed=" << seed << " " << params << "\n";
  return out.str();
}

int cmd_growth(const std::string& experiment, const std::string& poly_spec, long n_max,
               int max_len, int max_index, int n_words, std::uint64_t seed,
               const std::string& out_path) {
  std::ostringstream csv;
  if (experiment == "example62") {
    csv << growth_csv_header(seed, experiment, "n_max=" + std::to_string(n_max));
    csv << "n,word_length,trace,geodesic_length,ratio\n";
    for (const auto& row : corf::example_6_2_table(n_max)) {
      csv << row.n << "," << row.word_length << "," << row.trace << ","
          << format_csv_double(row.geodesic_length) << "," << format_csv_double(row.ratio) << "\n";
    }
  } else if (experiment == "bruteforce") {
    csv << growth_csv_header(seed, experiment,
                             "max_len=" + std::to_string(max_len) +
                                 " max_index=" + std::to_string(max_index));
    csv << "n,word_length,cyc_length,geodesic_length,D_or_bound,source,element\n";
    int n_row = 0;
    for (const auto& s : corf::f2_divisibility_samples(max_len, max_index))
      csv << ++n_row << "," << s.word_length << "," << s.cyc_length << ","
          << format_csv_double(s.geodesic_length) << "," << format_csv_double(s.d_value) << ","
          << s.source << "," << s.element << "\n";
  } else if (experiment == "cover-transfer") {
    csv << growth_csv_header(seed, experiment,
                             "max_len=" + std::to_string(max_len) +
                                 " max_index=" + std::to_string(max_index));
    const corf::GrowthCurve base = corf::f2_divisibility_curve(max_len, max_index);
    const corf::GrowthCurve cover = corf::f2_index2_subgroup_curve(max_len, max_index);
    const corf::CoverTransferReport rep = corf::cover_transfer_check(2, base, cover);
    csv << "n,base_growth,cover_growth,degree_times_cover,margin\n";
    for (const auto& row : rep.rows)
      csv << row.n << "," << format_csv_double(row.base) << "," << format_csv_double(row.cover)
          << "," << format_csv_double(rep.degree * row.cover) << ","
          << format_csv_double(row.margin) << "\n";
    csv << "# inequality " << (rep.holds ? "holds at all n" : "VIOLATED") << ", min margin "
        << format_csv_double(rep.min_margin) << "\n";
    if (!rep.holds) {
      write_output(csv.str(), out_path);
      return 1;
    }
  } else if (experiment == "svarc-milnor") {
    const corf::Polyhedron poly = corf::load_polyhedron(poly_spec);
    const corf::SvarcMilnorReport rep = corf::svarc_milnor_probe(poly, n_words, max_len, seed);
    csv << growth_csv_header(seed, experiment,
                             "polyhedron=" + poly.name + " n_words=" + std::to_string(n_words) +
                                 " max_len=" + std::to_string(max_len));
    csv << "# a_fit=" << format_csv_double(rep.a_fit) << " a_upper=" << format_csv_double(rep.a_upper)
        << " a_lower=" << format_csv_double(rep.a_lower) << " b=0"
        << " max_generator_displacement=" << format_csv_double(rep.max_generator_displacement)
        << " translation_bounded=" << (rep.translation_bounded_by_displacement ? 1 : 0) << "\n";
    csv << "word_length,displacement,translation_length\n";
    for (const auto& s : rep.samples)
      csv << s.word_length << "," << format_csv_double(s.displacement) << ","
          << format_csv_double(s.translation_length) << "\n";
    if (!rep.translation_bounded_by_displacement) {
      write_output(csv.str(), out_path);
      return 1;
    }
  } else if (experiment == "certificate-curve") {
    const corf::Polyhedron poly = corf::load_polyhedron(poly_spec);
    csv << growth_csv_header(seed, experiment,
                             "polyhedron=" + poly.name + " n_max=" + std::to_string(n_max));
    csv << "n,word_length,cyc_length,geodesic_length,D_or_bound,source,element\n";
    const std::vector<int> base_word = {1, 3};
    for (long n = 1; n <= n_max; ++n) {
      std::vector<int> word;
      for (long i = 0; i < n; ++i) word.insert(word.end(), base_word.begin(), base_word.end());
      const corf::SeparationCertificate cert = corf::build_certificate(poly, word);
      std::ostringstream element;
      for (size_t i = 0; i < word.size(); ++i) element << (i ? " " : "") << word[i];
      csv << n << "," << word.size() << "," << word.size() << ","
          << format_csv_double(cert.translation_length) << "," << cert.index << ",certificate,"
          << element.str() << "\n";
    }
  } else {
    throw InputError("unknown experiment: " + experiment);
  }
  write_output(csv.str(), out_path);
  return 0;
}

int cmd_tiling_export(const std::string& poly_spec, double radius, long frontier_bound,
                      const std::string& out_path) {
  const corf::Polyhedron poly = corf::load_polyhedron(poly_spec);
  if (radius < 0.0) throw InputError("radius must be nonnegative");
  const corf::TileSet tiles = corf::tiles_meeting_region(
      poly, corf::ball_region(poly, poly.reference_point, radius), frontier_bound);
  json out;
  out["command"] = "tiling-export";
  out["config"] = {{"polyhedron", poly.name}, {"radius", radius}};
  out["tile_count"] = tiles.size();
  json tile_list = json::array();
  for (const corf::Tile& t : tiles.tiles()) {
    json vertices = json::array();
    for (const corf::Vec& v : poly.vertices) {
      const corf::Vec ball =
          corf::model_convert(t.iso(v), corf::Model::Hyperboloid, corf::Model::Ball);
      json coords = json::array();
      for (int i = 0; i < ball.size(); ++i) coords.push_back(ball[i]);
      vertices.push_back(std::move(coords));
    }
    tile_list.push_back({{"word", t.word}, {"ball_vertices", std::move(vertices)}});
  }
  out["tiles"] = std::move(tile_list);
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "corf: separation certificates, thresholds, tube volumes and growth\n"
      "experiments for right-angled hyperbolic reflection groups"};
  app.require_subcommand(1);

  std::string poly_spec = "pentagon";
  std::string word_text;
  std::string out_path;
  std::string cert_path;
  std::string experiment;
  std::uint64_t seed = 42;
  long samples = 1000000;
  long n_max = 10;
  int max_len = 6;
  int max_index = 6;
  int n_words = 200;
  int dim = 3;
  double b = 1.0;
  double ell = 1.0;
  double radius = 0.0;
  long frontier_bound = 500000;

  auto* thresholds = app.add_subcommand("thresholds", "separation threshold constants and deviations");
  thresholds->add_option("--out", out_path, "output path (default stdout)");

  auto* volumes = app.add_subcommand("volumes", "tube volume closed form vs Monte Carlo");
  volumes->add_option("--dim", dim, "ambient dimension (2, 3 or 4)");
  volumes->add_option("--b", b, "tube radius");
  volumes->add_option("--ell", ell, "core segment length");
  volumes->add_option("--samples", samples, "Monte Carlo samples");
  volumes->add_option("--seed", seed, "random seed");
  volumes->add_option("--out", out_path, "output path (default stdout)");

  auto* separate = app.add_subcommand("separate", "build a separation certificate for a word");
  separate->add_option("--polyhedron", poly_spec, "builtin name or polyhedron JSON path");
  separate->add_option("--word", word_text, "reflection word, 0-based face indices, e.g. \"1 3\"")
      ->required();
  separate->add_option("--frontier-bound", frontier_bound, "tile search bound");
  separate->add_option("--out", out_path, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "re-validate a serialized certificate");
  verify->add_option("--polyhedron", poly_spec, "builtin name or polyhedron JSON path");
  verify->add_option("--cert", cert_path, "certificate JSON path")->required();
  verify->add_option("--out", out_path, "output path (default stdout)");

  auto* growth = app.add_subcommand("growth", "growth experiments (CSV)");
  growth->add_option("--experiment", experiment,
                     "one of: example62, bruteforce, cover-transfer, svarc-milnor, certificate-curve")
      ->required();
  growth->add_option("--polyhedron", poly_spec, "builtin name or polyhedron JSON path");
  growth->add_option("--n-max", n_max, "row count for example62 / certificate-curve");
  growth->add_option("--max-len", max_len, "maximum word length");
  growth->add_option("--max-index", max_index, "maximum subgroup index for brute force");
  growth->add_option("--n-words", n_words, "sample count for svarc-milnor");
  growth->add_option("--seed", seed, "random seed");
  growth->add_option("--out", out_path, "output path (default stdout)");

  auto* tiling = app.add_subcommand("tiling-export", "tiles meeting a ball, ball-model coordinates");
  tiling->add_option("--polyhedron", poly_spec, "builtin name or polyhedron JSON path");
  tiling->add_option("--radius", radius, "ball radius around the reference point");
  tiling->add_option("--frontier-bound", frontier_bound, "tile search bound");
  tiling->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (thresholds->parsed()) return cmd_thresholds(out_path);
    if (volumes->parsed()) return cmd_volumes(dim, b, ell, samples, seed, out_path);
    if (separate->parsed()) return cmd_separate(poly_spec, word_text, frontier_bound, out_path);
    if (verify->parsed()) return cmd_verify(poly_spec, cert_path, out_path);
    if (growth->parsed())
      return cmd_growth(experiment, poly_spec, n_max, max_len, max_index, n_words, seed, out_path);
    if (tiling->parsed()) return cmd_tiling_export(poly_spec, radius, frontier_bound, out_path);
  } catch (const corf::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const corf::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const corf::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
