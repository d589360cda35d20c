#include "bohrlab/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohrlab/functionals.hpp"
#include "bohrlab/harness.hpp"
#include "bohrlab/radius.hpp"

namespace bohrlab {

namespace {

struct Options {
  std::string theorem = "fr";
  double gamma = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  int m = 1;
  std::vector<double> c;
  int samples = 100;
  std::uint64_t seed = 0;
  int order = 256;
  double tol = 1e-6;
  std::string r = "at-critical";
  std::string format = "csv";
  std::string out_path;
  int workers = 1;
  std::string family = "random";
  std::vector<double> a_sweep;
  std::string name;
  int grid = 200;
  double a = 0.5;
  double x = 0.0;
  std::string descriptor_out;
  std::string descriptor_in;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BOHRLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      return 0;
    }
  }
  return 0;
}

void add_functional_flags(CLI::App* sub, Options& o) {
  sub->add_option("--theorem", o.theorem, "Functional id, e.g. fr, q_corrected, harmonic_quad");
  sub->add_option("--gamma", o.gamma, "Domain parameter gamma in [0, 1)");
  sub->add_option("--lambda", o.lambda, "Override lambda (defaults to 1/(1+gamma))");
  sub->add_option("--beta", o.beta, "beta for the beta-refined functional");
  sub->add_option("--m", o.m, "Degree of the correction polynomial");
  sub->add_option("--c", o.c, "Explicit Q coefficients c_1,...,c_m")->delimiter(',');
  sub->add_option("--tol", o.tol, "Bisection tolerance");
  sub->add_option("--order", o.order, "Truncation order N");
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
}

FunctionalParams functional_params(const CLI::App* sub, const Options& o) {
  FunctionalParams p;
  p.id = parse_functional_id(o.theorem);
  p.gamma = o.gamma;
  if (sub->count("--lambda") > 0) p.lambda = o.lambda;
  p.beta = o.beta;
  p.m = o.m;
  p.q_coeffs = o.c;
  if (!o.c.empty() && sub->count("--m") == 0) p.m = static_cast<int>(o.c.size());
  p.validate();
  return p;
}

std::vector<double> parse_radii(const std::string& text) {
  if (text == "at-critical" || text.empty()) return {};
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double r = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad --r value '" + item + "'");
    out.push_back(r);
  }
  return out;
}

// Either the --out file or the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::invalid_argument("cannot open " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_report(std::ostream& os, const BohrReport& r, bool json) {
  if (json) {
    os << to_json(r).dump() << '\n';
  } else {
    os << to_csv_row(r) << '\n';
  }
}

int cmd_verify(const CLI::App* sub, const Options& o, std::ostream& out, std::ostream& err) {
  CampaignConfig cfg;
  cfg.functional = functional_params(sub, o);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.order = o.order;
  cfg.tol = o.tol;
  cfg.r_points = parse_radii(o.r);
  cfg.workers = o.workers;
  cfg.family = o.family == "extremal" ? SampleFamily::extremal : SampleFamily::random;
  cfg.validate();

  const bool json = o.format == "json";
  Sink sink(o.out_path, out);
  if (!json) *sink << kReportCsvHeader << '\n';
  const auto summary = run_campaign(cfg, [&](const SampleResult& s) {
    for (const auto& r : s.reports) write_report(*sink, r, json);
  });
  (*sink).flush();

  err << "samples=" << o.samples << " holds=" << summary.holds << " violated=" << summary.violated
      << " inconclusive=" << summary.inconclusive
      << " violated_in_hypothesis=" << summary.violated_in_hypothesis
      << " min_slack=" << fmt(summary.min_slack) << " wall_s=" << summary.wall_seconds << '\n';
  if (summary.first_violation) {
    const auto& v = *summary.first_violation;
    err << "first violation: r=" << fmt(v.at("r").get<double>())
        << " value=" << fmt(v.at("value").get<double>());
    if (v.at("sample").contains("a")) err << " a=" << fmt(v["sample"]["a"].get<double>());
    err << '\n';
  }
  if (!o.descriptor_out.empty()) {
    std::ofstream d(o.descriptor_out);
    if (!d) throw std::invalid_argument("cannot open " + o.descriptor_out);
    d << (summary.first_violation ? *summary.first_violation : summary.worst).dump(2) << '\n';
  }
  return summary.exit_code();
}

int cmd_radius(const CLI::App* sub, const Options& o, std::ostream& out) {
  const auto p = functional_params(sub, o);
  const auto sweep = o.a_sweep.empty() ? kDefaultSweep : o.a_sweep;
  const auto fam = family_radius(p, sweep, o.tol);
  const double closed = p.stated_radius();
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    nlohmann::json j{{"functional_id", to_string(p.id)}, {"gamma", p.gamma},
                     {"lambda", p.effective_lambda()}, {"r_star", fam.r_star},
                     {"closed_form", closed}, {"difference", fam.r_star - closed},
                     {"a", fam.a_values}, {"radii", fam.radii}};
    *sink << j.dump() << '\n';
  } else {
    *sink << "functional_id,gamma,lambda,r_star,closed_form,difference\n"
          << to_string(p.id) << ',' << fmt(p.gamma) << ',' << fmt(p.effective_lambda()) << ','
          << fmt(fam.r_star) << ',' << fmt(closed) << ',' << fmt(fam.r_star - closed) << '\n';
  }
  return kExitOk;
}

int cmd_sharpness(const CLI::App* sub, const Options& o, std::ostream& out, std::ostream& err) {
  const auto p = functional_params(sub, o);
  const auto radii = parse_radii(o.r);
  if (radii.size() != 1) throw std::invalid_argument("sharpness needs a single --r value");
  const auto w = sharpness_witness(p, radii.front(), o.order);
  Sink sink(o.out_path, out);
  if (!w) {
    err << "no violator found at r=" << fmt(radii.front()) << " up to order " << 2 * o.order << '\n';
    if (o.format == "json") *sink << "null\n";
    return kExitOk;
  }
  if (o.format != "json") *sink << kReportCsvHeader << '\n';
  write_report(*sink, w->report, o.format == "json");
  return w->report.in_hypothesis ? kExitViolation : kExitOk;
}

int cmd_gadget(const CLI::App* sub, const Options& o, std::ostream& out) {
  using namespace gadgets;
  const Name name = parse_name(o.name);
  if (o.grid < 2) throw std::invalid_argument("--grid must be >= 2");
  Params gp;
  gp.m = o.m;
  gp.lambda = sub->count("--lambda") > 0 ? o.lambda : 1.0 / (1.0 + o.gamma);
  gp.beta = o.beta;
  gp.gamma = o.gamma;
  gp.a = o.a;
  gp.x = o.x;
  gp.c = o.c.empty() ? make_q(std::vector<double>(std::max(o.m, 1) - 1, 0.0)).coeffs : o.c;
  // Gm and Phi1 live on [0, 1); the rest on [0, 1].
  const bool half_open = name == Name::Gm || name == Name::Phi1;
  Sink sink(o.out_path, out);
  *sink << "x," << to_string(name) << '\n';
  for (int i = 0; i < o.grid; ++i) {
    const double x = half_open ? static_cast<double>(i) / o.grid : static_cast<double>(i) / (o.grid - 1);
    *sink << fmt(x) << ',' << fmt(evaluate(name, x, gp)) << '\n';
  }
  return kExitOk;
}

int cmd_show(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.descriptor_in);
  if (!in) throw std::invalid_argument("cannot open " + o.descriptor_in);
  const auto d = nlohmann::json::parse(in);
  const auto rep = replay(d);
  Sink sink(o.out_path, out);
  if (o.format != "json") *sink << kReportCsvHeader << '\n';
  write_report(*sink, rep, o.format == "json");
  if (d.contains("value")) {
    err << "stored value " << fmt(d["value"].get<double>()) << ", difference "
        << fmt(std::abs(rep.value - d["value"].get<double>())) << '\n';
  }
  return rep.verdict == Verdict::violated && rep.in_hypothesis ? kExitViolation : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bohr-type inequalities on shifted disks"};
  app.name("bohrlab");
  app.require_subcommand(1);
  Options o;
  o.seed = default_seed();

  auto* verify = app.add_subcommand("verify", "Randomized verification campaign");
  add_functional_flags(verify, o);
  add_output_flags(verify, o);
  verify->add_option("--samples", o.samples, "Number of samples");
  verify->add_option("--seed", o.seed, "Seed (default $BOHRLAB_SEED or 0)");
  verify->add_option("--r", o.r, "Comma-separated radii or at-critical");
  verify->add_option("--workers", o.workers, "Worker threads");
  verify->add_option("--family", o.family, "Sample family")->check(CLI::IsMember({"random", "extremal"}));
  verify->add_option("--descriptor-out", o.descriptor_out, "Write the worst or violating sample here");

  auto* radius = app.add_subcommand("radius", "Critical radius of the extremal family");
  add_functional_flags(radius, o);
  add_output_flags(radius, o);
  radius->add_option("--a-sweep", o.a_sweep, "Increasing values of a")->delimiter(',');

  auto* sharp = app.add_subcommand("sharpness", "Search the extremal family for a violator");
  add_functional_flags(sharp, o);
  add_output_flags(sharp, o);
  sharp->add_option("--r", o.r, "Radius to test")->required();

  auto* gadget = app.add_subcommand("gadget", "Tabulate a scalar function on a grid");
  add_output_flags(gadget, o);
  gadget->add_option("--name", o.name, "A, Fm, J, J1, F1, F2, Gm or Phi1")->required();
  gadget->add_option("--grid", o.grid, "Number of grid points");
  gadget->add_option("--gamma", o.gamma, "gamma");
  gadget->add_option("--lambda", o.lambda, "lambda");
  gadget->add_option("--beta", o.beta, "beta");
  gadget->add_option("--m", o.m, "m");
  gadget->add_option("--c", o.c, "c_1,...,c_m")->delimiter(',');
  gadget->add_option("--a", o.a, "a for Phi1");
  gadget->add_option("--x", o.x, "|alpha_0| for Gm");

  auto* show = app.add_subcommand("show", "Re-evaluate a saved sample descriptor");
  add_output_flags(show, o);
  show->add_option("descriptor", o.descriptor_in, "Descriptor JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(verify, o, out, err);
    if (*radius) return cmd_radius(radius, o, out);
    if (*sharp) return cmd_sharpness(sharp, o, out, err);
    if (*gadget) return cmd_gadget(gadget, o, out);
    if (*show) return cmd_show(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bohrlab
