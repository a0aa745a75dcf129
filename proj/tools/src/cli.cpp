#include "hbloch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hbloch/io.hpp"
#include "hbloch/support.hpp"

namespace hbloch::cli {

namespace {

using nlohmann::json;

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<Complex>& zs) {
  json out = json::array();
  for (const Complex z : zs) out.push_back(to_json(z));
  return out;
}

json mapping_json(const HarmonicMapping& f) { return json::parse(mapping_to_json(f)); }

struct Options {
  std::string command;
  std::optional<std::string> mapping_file;
  std::optional<double> family_a;
  double tol = 1e-6;
  std::optional<int> samples;
  std::uint64_t seed = 0;
  std::string grid = "64x128";
  std::optional<std::string> out;
  unsigned threads = 0;
  std::optional<double> a;
  std::string z0 = "0,0";
  double delta = 0.5;
  int n_max = 12;
  std::optional<std::string> functional_file;
  double eps = 0.1;
  double M = 1.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PolarGrid parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--grid expects RxT, e.g. 64x128");
  try {
    std::size_t used = 0;
    const int radii = std::stoi(text.substr(0, x), &used);
    if (used != x) throw UsageError("--grid expects RxT");
    const int angles = std::stoi(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw UsageError("--grid expects RxT");
    if (radii < 2 || angles < 4) throw UsageError("--grid needs at least 2 radii and 4 angles");
    return {radii, angles};
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects RxT, e.g. 64x128");
  }
}

Complex parse_point(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (!in) throw UsageError("--z0 expects RE or RE,IM");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw UsageError("--z0 expects RE or RE,IM");
  }
  in >> std::ws;
  if (!in.eof()) throw UsageError("--z0 expects RE or RE,IM");
  return {re, im};
}

HarmonicMapping load_mapping(const Options& o) {
  if (o.mapping_file && o.family_a) throw UsageError("give either --mapping or --family-a, not both");
  if (o.family_a) return counterexample_family(*o.family_a);
  if (o.mapping_file) return read_mapping_file(*o.mapping_file);
  throw UsageError("a mapping is required (--mapping FILE or --family-a VALUE)");
}

LinearFunctional load_functional(const Options& o) {
  if (!o.functional_file) throw UsageError("--functional FILE is required");
  std::ifstream in(*o.functional_file);
  if (!in) throw FormatError("cannot open functional file " + *o.functional_file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("functional file: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("functional file: expected an object {\"A\": ..., \"B\": ...}");
  LinearFunctional L;
  if (doc.contains("A")) L.A = parse_series_literal(doc["A"].dump());
  if (doc.contains("B")) L.B = parse_series_literal(doc["B"].dump());
  return L;
}

json lambda_json(const LambdaReport& r) {
  double radius = 0.0;
  for (const Complex p : r.points) radius = std::max(radius, std::abs(p));
  return {{"classification", to_string(r.classification)},
          {"radius", radius},
          {"witness_radius", r.witness_radius},
          {"clusters", r.clusters.size()},
          {"sup", r.sup_value},
          {"tolerance", r.tolerance},
          {"flagged", r.flagged},
          {"points", to_json(r.points)},
          {"residuals", r.residuals}};
}

json membership_json(const MembershipReport& m) {
  return {{"in_B_H1", m.in_B_H1},
          {"in_tilde_B_H1", m.in_tilde_B_H1},
          {"in_B_H01", to_string(m.in_B_H01)},
          {"in_tilde_B_H01", to_string(m.in_tilde_B_H01)},
          {"norm", m.norm_value},
          {"norm_accuracy", m.norm_accuracy},
          {"marginal", m.marginal}};
}

void execute(const Options& o, CommandResult& result) {
  LevelSetOptions level;
  level.optimizer.grid = parse_grid(o.grid);
  const DiskOptimizerOptions& opt = level.optimizer;
  const std::string& cmd = o.command;

  if (cmd == "beta") {
    const HarmonicMapping f = load_mapping(o);
    const SupEstimate b = bloch_constant(f, opt);
    result.payload = {{"beta", b.value},
                      {"accuracy", b.accuracy},
                      {"argmax", to_json(b.argmax)},
                      {"norm", b.value + std::abs(f.value_at_origin())}};
  } else if (cmd == "mu-grid") {
    const HarmonicMapping f = load_mapping(o);
    std::ostringstream csv;
    write_mu_grid_csv(csv, mu_grid(f, opt.grid));
    result.text = csv.str();
  } else if (cmd == "lambda") {
    const LambdaReport r = lambda_set(load_mapping(o), o.tol, level);
    result.payload = lambda_json(r);
    for (const auto& d : r.diagnostics) result.diagnostics.push_back(d);
  } else if (cmd == "membership") {
    const MembershipReport m = membership(load_mapping(o), opt);
    result.payload = membership_json(m);
    if (m.marginal) {
      result.status = Status::Flagged;
      result.diagnostics.push_back("membership is marginal: 1 < norm <= 1 + accuracy");
    }
  } else if (cmd == "counterexample") {
    if (!o.family_a) throw UsageError("counterexample needs --family-a VALUE");
    result.payload = mapping_json(counterexample_family(*o.family_a));
  } else if (cmd == "midpoint") {
    if (!o.a) throw UsageError("midpoint needs --a VALUE");
    const bool is_mid = midpoint_check(load_mapping(o), *o.a);
    result.payload = {{"midpoint", is_mid}, {"a", *o.a}};
  } else if (cmd == "extreme-check") {
    const ExtremeReport r = extreme_necessity(load_mapping(o), o.tol, level);
    result.payload = {{"verdict", to_string(r.verdict)},
                      {"explanation", r.explanation},
                      {"little_bloch_class", r.little_bloch_class},
                      {"radius", r.radius},
                      {"isolated_clusters", r.isolated_clusters},
                      {"lambda", lambda_json(r.lambda)},
                      {"membership", membership_json(r.membership)}};
  } else if (cmd == "sharpen") {
    const SharpeningResult s =
        sharpening_exponent(load_mapping(o), parse_point(o.z0), o.delta, o.n_max);
    result.payload = {{"outcome", s.found ? "FOUND" : "NOT_FOUND"},
                      {"exponent_n", s.exponent_n},
                      {"delta", s.delta},
                      {"worst_margin", s.worst_margin},
                      {"center", to_json(s.center)}};
    if (!s.found) {
      result.status = Status::Flagged;
      result.diagnostics.push_back("no exponent up to --n-max; the input needs review");
    }
  } else if (cmd == "functional") {
    const LinearFunctional L = load_functional(o);
    const HarmonicMapping f = load_mapping(o);
    const DilationBound d = dilation_bound(L, f, o.eps);
    result.payload = {{"value", to_json(functional_eval(L, f))},
                      {"eps", o.eps},
                      {"K", d.K},
                      {"actual", d.actual},
                      {"bound", o.eps * d.K}};
  } else if (cmd == "certify-support") {
    const int samples = o.samples.value_or(1000);
    const auto cert = support_certificate(load_mapping(o), samples, o.seed, o.tol, level);
    if (!cert) {
      result.payload = {{"result", "NONE"}};
    } else {
      result.payload = {{"result", "CERTIFICATE"},
                        {"z0", to_json(cert->z0)},
                        {"theta0", cert->theta0},
                        {"attained_value", cert->attained_value},
                        {"sample_max_other", cert->sample_max_other},
                        {"samples", cert->samples},
                        {"lambda_classification", to_string(cert->lambda_classification)},
                        {"verified", cert->verified}};
      if (!cert->verified) result.diagnostics.push_back("a sampled member exceeds the attained value");
    }
  } else if (cmd == "bonk") {
    if (!(o.M >= 0.0)) throw DomainError("bonk: M must be nonnegative");
    const BonkConstants b = bonk_constants(o.M);
    result.payload = {{"M", b.M}, {"epsilon1", b.epsilon1}, {"R", b.R}};
  } else if (cmd == "falsify") {
    const LinearFunctional L = load_functional(o);
    const FalsifierOutcome r = perturbation_falsifier(L, load_mapping(o), level);
    result.payload = {{"status", to_string(r.status)},
                      {"k0", r.k0},
                      {"uses_coanalytic_index", r.uses_coanalytic_index},
                      {"K", r.K},
                      {"epsilon", r.epsilon},
                      {"delta", r.delta},
                      {"bonk", {{"M", r.bonk.M}, {"epsilon1", r.bonk.epsilon1}, {"R", r.bonk.R}}},
                      {"M_original", r.M_original},
                      {"M_improved", r.M_improved},
                      {"improvement", r.improvement}};
    if (r.status == FalsifierStatus::Improved) result.payload["improved"] = mapping_json(r.improved);
    if (!r.diagnostic.empty()) result.diagnostics.push_back(r.diagnostic);
  } else if (cmd == "decompose") {
    const auto d = decompose_support_point(load_mapping(o), o.tol, level);
    if (!d) {
      result.payload = {{"result", "NONE"}};
    } else {
      result.payload = {{"result", "DECOMPOSITION"},
                        {"lambda1", d->lambda1},
                        {"u", to_json(d->u)},
                        {"f", mapping_json(d->f)},
                        {"lambda_classification", to_string(d->lambda_classification)}};
    }
  } else {
    throw UsageError("unknown subcommand '" + cmd + "'");
  }
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"beta", "Bloch constant and norm"},
    {"mu-grid", "mu_f on a polar grid as CSV (re,im,mu)"},
    {"lambda", "locate and classify Lambda_f = {mu_f = 1}"},
    {"membership", "unit-ball membership flags"},
    {"counterexample", "emit the mapping f_a as JSON"},
    {"midpoint", "test f = (f_a + f_{2-a}) / 2"},
    {"extreme-check", "necessary condition for extremality"},
    {"sharpen", "exponent of the sharpened bound near z0"},
    {"functional", "evaluate a linear functional and its dilation bound"},
    {"certify-support", "support-point certificate"},
    {"bonk", "constants epsilon1 and R for a given M"},
    {"falsify", "perturbation improving Re L inside K_{H,1}"},
    {"decompose", "split f0 = lambda1 u + (1 - lambda1) f"},
};

}  // namespace

int exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::Error: return 1;
    case Status::Flagged: return 2;
  }
  return 1;
}

CommandResult run(const std::vector<std::string>& args) {
  CommandResult result;
  Options o;
  CLI::App app{"Harmonic Bloch mapping analysis"};
  app.name("hbloch");
  app.require_subcommand(1, 1);
  app.add_option("--mapping", o.mapping_file, "mapping spec JSON file");
  app.add_option("--family-a", o.family_a, "use the family member f_a, 0 < a < 2");
  app.add_option("--tol", o.tol, "level-set tolerance")->capture_default_str();
  app.add_option("--samples", o.samples, "sample count");
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--grid", o.grid, "seed grid RxT (radii x angles)")->capture_default_str();
  app.add_option("--out", o.out, "write output to FILE");
  app.add_option("--threads", o.threads, "worker thread cap (0 = all cores)");
  app.add_option("--a", o.a, "family parameter for midpoint");
  app.add_option("--z0", o.z0, "centre RE,IM for sharpen")->capture_default_str();
  app.add_option("--delta", o.delta, "initial radius for sharpen")->capture_default_str();
  app.add_option("--n-max", o.n_max, "largest exponent for sharpen")->capture_default_str();
  app.add_option("--functional", o.functional_file, "functional JSON {\"A\": [...], \"B\": [...]}");
  app.add_option("--eps", o.eps, "dilation parameter for functional")->capture_default_str();
  app.add_option("--M", o.M, "bound M for bonk")->capture_default_str();
  for (const auto& [name, description] : kCommands) {
    app.add_subcommand(name, description)->fallthrough()->callback([&o, n = name] { o.command = n; });
  }

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const bool known = std::any_of(kCommands.begin(), kCommands.end(),
                                   [&](const auto& c) { return c.first == args.front(); });
    if (!known) {
      const std::string message = "unknown subcommand '" + args.front() + "'";
      result.status = Status::Error;
      result.diagnostics.push_back(message);
      result.payload = {{"error", message}};
      return result;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.status = Status::Error;
    result.diagnostics.push_back(e.what());
    result.payload = {{"error", e.what()}};
    return result;
  }

  try {
    set_max_threads(o.threads);
    execute(o, result);
    if (o.out) {
      std::ofstream file(*o.out);
      if (!file) throw FormatError("cannot write " + *o.out);
      if (!result.text.empty()) {
        file << result.text;
      } else {
        file << result.payload.dump(2) << '\n';
      }
    }
  } catch (const std::exception& e) {
    result.status = Status::Error;
    result.payload = {{"error", e.what()}};
    result.text.clear();
    result.diagnostics.push_back(e.what());
  }
  set_max_threads(0);
  return result;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const CommandResult result = run(args);
  bool to_file = false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) to_file = to_file || args[i] == "--out";
  if (!to_file || result.status == Status::Error) {
    if (!result.text.empty()) {
      std::cout << result.text;
    } else {
      std::cout << result.payload.dump(2) << '\n';
    }
  }
  for (const auto& d : result.diagnostics) std::cerr << to_string(result.status) << ": " << d << '\n';
  return exit_code(result.status);
}

}  // namespace hbloch::cli
