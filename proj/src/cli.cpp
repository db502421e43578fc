#include "qknot/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qknot/apoly.hpp"
#include "qknot/dilog.hpp"
#include "qknot/knot_spec.hpp"
#include "qknot/qjones.hpp"
#include "qknot/saddle.hpp"
#include "qknot/verify.hpp"

namespace qknot::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kOctahedron = 3.66386237670887606;

std::string sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fixed5(double v) {
  char buf[64];
  // avoid the "-0.00000" artifact
  if (v == 0.0) v = 0.0;
  std::snprintf(buf, sizeof(buf), "%.5f", v);
  return buf;
}

std::string complex_str(Cx z) {
  std::string out = sig17(z.real());
  out += (z.imag() < 0.0) ? " - " : " + ";
  out += sig17(std::abs(z.imag()));
  out += "i";
  return out;
}

json checks_json(const Report& report) {
  json arr = json::array();
  for (const auto& c : report.checks)
    arr.push_back({{"identity", c.identity}, {"status", c.status}, {"witness", c.witness}});
  return arr;
}

void print_checks_text(const Report& report, std::ostream& out, const char* prefix = "") {
  for (const auto& c : report.checks) {
    std::string tag = c.status == "pass" ? "PASS" : (c.status == "fail" ? "FAIL" : "SKIP");
    out << prefix << tag << ": " << c.identity;
    if (!c.witness.empty()) out << " (" << c.witness << ")";
    out << "\n";
  }
}

struct OutputTarget {
  std::string path;

  int deliver(const std::string& payload, std::ostream& out, std::ostream& err) const {
    if (path.empty()) {
      out << payload;
      return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "cannot open output file: " << path << "\n";
      return 2;
    }
    file << payload;
    return 0;
  }
};

json poly_terms_json(const BivarPoly& poly) {
  json arr = json::array();
  for (const auto& [key, coef] : poly.terms())
    arr.push_back({{"coef", coef.get_str()}, {"deg_l", key.first}, {"deg_m", key.second}});
  return arr;
}

json laurent_terms_json(const QLaurent& poly) {
  json arr = json::array();
  for (const auto& [e, coef] : poly.terms())
    arr.push_back({{"coef", coef.get_str()}, {"deg_q", e}});
  return arr;
}

int run_apoly(const std::string& knot_text, bool crosscheck, bool normalized,
              const std::string& format, const OutputTarget& target, std::ostream& out,
              std::ostream& err) {
  const KnotSpec knot = KnotSpec::parse(knot_text);
  BivarPoly poly = (knot.kind == KnotKind::twist) ? apoly::apoly_twist(knot.p)
                                                  : apoly::apoly_torus(knot.p);
  if (normalized) poly = poly.divided_by_content();

  Report checks;
  if (crosscheck) {
    if (knot.kind == KnotKind::twist) {
      const bool equal = apoly::apoly_twist(knot.p) == apoly::apoly_twist_3term(knot.p);
      checks.record(equal, "matrix route equals 3-term route");
    } else {
      checks.skip("matrix route equals 3-term route", "torus closed form has a single route");
    }
  }

  std::ostringstream payload;
  if (format == "json") {
    json doc;
    doc["command"] = "apoly";
    doc["config"] = {{"knot", knot.str()},
                     {"crosscheck", crosscheck},
                     {"normalized", normalized},
                     {"format", format}};
    doc["results"] = json::array(
        {{{"knot", knot.str()}, {"polynomial", poly.str()}, {"terms", poly_terms_json(poly)}}});
    doc["checks"] = checks_json(checks);
    payload << doc.dump(2) << "\n";
  } else {
    payload << poly.str() << "\n";
    print_checks_text(checks, payload, "# ");
  }
  const int rc = target.deliver(payload.str(), out, err);
  if (rc != 0) return rc;
  return checks.all_passed() ? 0 : 1;
}

int run_jones(const std::string& knot_text, unsigned N, const std::string& eval_spec,
              std::uint64_t max_chains, const std::string& format, const OutputTarget& target,
              std::ostream& out, std::ostream& err) {
  const KnotSpec knot = KnotSpec::parse(knot_text);
  qjones::SumLimits limits;
  if (max_chains > 0) limits.max_chains = max_chains;

  std::optional<double> r;
  if (!eval_spec.empty()) {
    std::string text = eval_spec;
    if (text.rfind("r=", 0) == 0) text = text.substr(2);
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--eval expects r=<real>, got: " + eval_spec);
    }
    if (used != text.size())
      throw CLI::ValidationError("--eval expects r=<real>, got: " + eval_spec);
    if (value == 0.0) throw CLI::ValidationError("--eval requires a nonzero r");
    r = value;
  }

  const QLaurent poly = (knot.kind == KnotKind::twist)
                            ? qjones::jones_twist(knot.p, N, limits)
                            : qjones::jones_torus(knot.p, N, limits);

  std::ostringstream payload;
  if (format == "json") {
    json doc;
    doc["command"] = "jones";
    doc["config"] = {{"knot", knot.str()}, {"color", N}, {"format", format}};
    if (r) doc["config"]["r"] = *r;
    json result = {{"knot", knot.str()}, {"color", N}, {"polynomial", poly.str()}};
    if (r) {
      const Cx value = poly.eval_root(*r, N);
      result["value_re"] = value.real();
      result["value_im"] = value.imag();
    } else {
      result["terms"] = laurent_terms_json(poly);
    }
    doc["results"] = json::array({result});
    doc["checks"] = json::array();
    payload << doc.dump(2) << "\n";
  } else if (r) {
    payload << complex_str(poly.eval_root(*r, N)) << "\n";
  } else {
    payload << poly.str() << "\n";
  }
  return target.deliver(payload.str(), out, err);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("--p-range expects <lo>..<hi>, got: " + text);
  try {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw CLI::ValidationError("--p-range is empty: " + text);
    return {lo, hi};
  } catch (const CLI::ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--p-range expects <lo>..<hi>, got: " + text);
  }
}

int run_volume(int single_p, const std::string& range_text, bool paper_table, bool limit_check,
               const std::string& format, const OutputTarget& target, std::ostream& out,
               std::ostream& err) {
  std::vector<int> ps;
  if (paper_table) {
    ps = {-5, -4, -3, -2, -1, 2, 3, 4, 5};
  } else if (!range_text.empty()) {
    const auto [lo, hi] = parse_range(range_text);
    for (int p = lo; p <= hi; ++p)
      if (p != 0) ps.push_back(p);
  } else if (single_p != 0) {
    ps.push_back(single_p);
  } else {
    throw CLI::ValidationError("volume needs --p, --p-range or --paper-table");
  }

  std::vector<saddle::VolumeRow> rows;
  rows.reserve(ps.size());
  for (int p : ps) rows.push_back(saddle::volume(p));

  Report checks;
  if (limit_check) {
    std::vector<const saddle::VolumeRow*> increasing_side;
    for (const auto& row : rows)
      if (row.p >= 2) increasing_side.push_back(&row);
    bool monotone = increasing_side.size() >= 2;
    for (size_t i = 1; i < increasing_side.size(); ++i)
      if (!(increasing_side[i]->volume > increasing_side[i - 1]->volume)) monotone = false;
    checks.record(monotone, "volumes strictly increase over the requested p >= 2 range");
    if (!increasing_side.empty()) {
      const auto& last = *increasing_side.back();
      checks.pass("limit gap |vol - 4 D(i)| at p=" + std::to_string(last.p),
                  sig17(std::abs(last.volume - kOctahedron)));
      checks.pass("|x0 - (1-2i)| at p=" + std::to_string(last.p),
                  sig17(std::abs(last.x0 - Cx(1.0, -2.0))));
    }
  }

  const auto fmt = [&](double v) { return paper_table ? fixed5(v) : sig17(v); };

  std::ostringstream payload;
  if (format == "json") {
    json doc;
    doc["command"] = "volume";
    doc["config"] = {{"paper_table", paper_table},
                     {"limit_check", limit_check},
                     {"format", format}};
    if (!range_text.empty()) doc["config"]["p_range"] = range_text;
    if (single_p != 0) doc["config"]["p"] = single_p;
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"p", row.p},
                     {"volume", row.volume},
                     {"re_x0", row.x0.real()},
                     {"im_x0", row.x0.imag()}});
    doc["results"] = arr;
    doc["checks"] = checks_json(checks);
    payload << doc.dump(2) << "\n";
  } else {
    payload << "p,volume,re_x0,im_x0\n";
    for (const auto& row : rows)
      payload << row.p << "," << fmt(row.volume) << "," << fmt(row.x0.real()) << ","
              << fmt(row.x0.imag()) << "\n";
    print_checks_text(checks, payload, "# ");
  }
  const int rc = target.deliver(payload.str(), out, err);
  if (rc != 0) return rc;
  return checks.all_passed() ? 0 : 1;
}

int run_vzeros(const std::string& k_text, bool upper_half, double residual_tol,
               const std::string& format, const OutputTarget& target, std::ostream& out,
               std::ostream& err) {
  std::vector<int> ks;
  std::stringstream ss(k_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      ks.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--k expects a comma-separated integer list, got: " + k_text);
    }
    if (ks.back() == 0) throw CLI::ValidationError("--k entries must be nonzero");
  }
  if (ks.empty()) throw CLI::ValidationError("--k list is empty");
  if (!(residual_tol > 0.0)) throw CLI::ValidationError("--residual-tol must be positive");

  const auto rows = saddle::vzeros(ks, upper_half);

  Report checks;
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.residual);
  checks.record(worst < residual_tol, "all residual certificates below tolerance",
                "worst " + sig17(worst) + " vs " + sig17(residual_tol));

  std::ostringstream payload;
  if (format == "json") {
    json doc;
    doc["command"] = "vzeros";
    doc["config"] = {{"k", k_text},
                     {"upper_half", upper_half},
                     {"residual_tol", residual_tol},
                     {"format", format}};
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"k", row.k},
                     {"re", row.root.real()},
                     {"im", row.root.imag()},
                     {"residual", row.residual}});
    doc["results"] = arr;
    doc["checks"] = checks_json(checks);
    payload << doc.dump(2) << "\n";
  } else {
    payload << "k,re,im,residual\n";
    for (const auto& row : rows)
      payload << row.k << "," << sig17(row.root.real()) << "," << sig17(row.root.imag()) << ","
              << sig17(row.residual) << "\n";
    print_checks_text(checks, payload, "# ");
  }
  const int rc = target.deliver(payload.str(), out, err);
  if (rc != 0) return rc;
  return checks.all_passed() ? 0 : 1;
}

int run_verify(const std::string& suite, const std::string& format, const OutputTarget& target,
               std::ostream& out, std::ostream& err) {
  const Report report = verify::run_suite(suite);
  int failures = 0;
  for (const auto& c : report.checks)
    if (!c.passed()) ++failures;

  std::ostringstream payload;
  if (format == "json") {
    json doc;
    doc["command"] = "verify";
    doc["config"] = {{"suite", suite}, {"format", format}};
    doc["results"] = json::array({{{"suite", suite},
                                   {"checks_run", report.checks.size()},
                                   {"failures", failures}}});
    doc["checks"] = checks_json(report);
    payload << doc.dump(2) << "\n";
  } else {
    print_checks_text(report, payload);
    payload << "verify " << suite << ": " << report.checks.size() << " checks, " << failures
            << " failure" << (failures == 1 ? "" : "s") << "\n";
  }
  const int rc = target.deliver(payload.str(), out, err);
  if (rc != 0) return rc;
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"colored Jones polynomials, A-polynomials and hyperbolic volumes of twist and torus knots"};
  app.name("qknot");
  app.require_subcommand(1);

  std::string knot_text, format = "text", eval_spec, range_text, k_text, suite = "all";
  std::string output_path;
  bool crosscheck = false, normalized = false, paper_table = false, limit_check = false;
  bool upper_half = false;
  unsigned color = 1;
  int single_p = 0;
  std::uint64_t max_chains = 0;
  double residual_tol = 1e-8;

  auto* apoly_cmd = app.add_subcommand("apoly", "A-polynomial of a twist or torus knot");
  apoly_cmd->add_option("--knot", knot_text, "knot spec, twist:<p> or torus:<p>")->required();
  apoly_cmd->add_flag("--crosscheck", crosscheck, "also run the 3-term route and compare");
  apoly_cmd->add_flag("--normalized", normalized, "divide by the integer content");
  apoly_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  apoly_cmd->add_option("--output", output_path, "write to a file instead of stdout");

  auto* jones_cmd = app.add_subcommand("jones", "colored Jones polynomial");
  jones_cmd->add_option("--knot", knot_text)->required();
  jones_cmd->add_option("--color", color, "color N >= 1")->required()->check(CLI::PositiveNumber);
  jones_cmd->add_option("--eval", eval_spec, "evaluate at q = exp(2 pi i r/N), e.g. r=1");
  jones_cmd->add_option("--max-chains", max_chains, "override the nested-sum resource cap");
  jones_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  jones_cmd->add_option("--output", output_path);

  auto* volume_cmd = app.add_subcommand("volume", "hyperbolic volumes of twist knots");
  volume_cmd->add_option("--p", single_p, "single twist parameter (nonzero)");
  volume_cmd->add_option("--p-range", range_text, "inclusive range <lo>..<hi>, 0 skipped");
  volume_cmd->add_flag("--paper-table", paper_table, "p in {-5..-1, 2..5}, 5-decimal output");
  volume_cmd->add_flag("--limit-check", limit_check, "report monotonicity vs the 4 D(i) limit");
  volume_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  volume_cmd->add_option("--output", output_path);

  auto* vzeros_cmd = app.add_subcommand("vzeros", "zeros of the V_k polynomials");
  vzeros_cmd->add_option("--k", k_text, "comma-separated nonzero k list")->required();
  vzeros_cmd->add_flag("--upper-half", upper_half, "only zeros with Im > 0");
  vzeros_cmd->add_option("--residual-tol", residual_tol,
                         "fail (exit 1) if any residual certificate exceeds this");
  vzeros_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  vzeros_cmd->add_option("--output", output_path);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite)->check(
      CLI::IsMember({"all", "poly", "jones", "apoly", "dilog", "saddle"}));
  verify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--output", output_path);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const OutputTarget target{output_path};
  try {
    if (apoly_cmd->parsed())
      return run_apoly(knot_text, crosscheck, normalized, format, target, out, err);
    if (jones_cmd->parsed())
      return run_jones(knot_text, color, eval_spec, max_chains, format, target, out, err);
    if (volume_cmd->parsed())
      return run_volume(single_p, range_text, paper_table, limit_check, format, target, out, err);
    if (vzeros_cmd->parsed())
      return run_vzeros(k_text, upper_half, residual_tol, format, target, out, err);
    if (verify_cmd->parsed()) return run_verify(suite, format, target, out, err);
  } catch (const qjones::ResourceCapError& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace qknot::cli
