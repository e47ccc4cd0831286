#include "run.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "report.hpp"
#include "shiftop/oracle.hpp"
#include "shiftop/spectrum.hpp"

namespace shiftop::cli {

namespace {

struct Options {
  std::string config;
  std::string output;
  std::string weight;
  int samples = 512;
  int decimals = 4;
  double p = 0.0;
};

void emit(std::string const& text, std::string const& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

CircleFunction parse_weight(std::string const& text) {
  try {
    return CircleFunction(expr::parse(text));
  } catch (expr::ParseError const& e) {
    throw ConfigError("--weight", e.what());
  } catch (InvalidArgument const& e) {
    throw ConfigError("--weight", e.what());
  }
}

int analyze(Options const& o, std::ostream& out) {
  Config const cfg = load_config(o.config);
  OperatorSpec const op = build_operator(cfg);
  InvertibilityReport const report = decide(op, cfg.tolerances);
  Json doc;
  doc["structure"] = to_json(op.structure, op.shift);
  Json body = to_json(report);
  for (auto& [key, value] : body.items()) doc[key] = value;
  emit(dump(doc), o.output, out);
  return report.verdict == Verdict::undecidable ? kExitUndecidable : kExitOk;
}

int decompose(Options const& o, std::ostream& out) {
  Config const cfg = load_config(o.config);
  OperatorSpec const op = build_operator(cfg);
  emit(dump(to_json(op.structure, op.shift)), o.output, out);
  return kExitOk;
}

int spectrum(Options const& o, std::ostream& out) {
  Config const cfg = load_config(o.config);
  OperatorSpec const op = build_operator(cfg);
  CircleFunction const weight = parse_weight(o.weight);
  SpectrumSet const ss = shift_spectrum(weight, op.shift, op.structure, op.space, o.samples);
  std::ostringstream csv;
  write_spectrum_csv(csv, ss, o.decimals);
  emit(csv.str(), o.output, out);
  return kExitOk;
}

int radius(Options const& o, std::ostream& out) {
  Config const cfg = load_config(o.config);
  OperatorSpec const op = build_operator(cfg);
  CircleFunction const weight = parse_weight(o.weight);
  double const p = o.p > 0.0 ? o.p : cfg.oracle.p;
  Json doc;
  doc["weight"] = o.weight;
  doc["p"] = number(p);
  doc["radius"] = number(radius_lebesgue(weight, op.shift, op.structure, p));
  doc["space"] = {{"alpha", number(op.space.alpha)}, {"beta", number(op.space.beta)}};
  doc["bound"] = number(radius_bound(weight, op.shift, op.structure, op.space));
  emit(dump(doc), o.output, out);
  return kExitOk;
}

int verify(Options const& o, std::ostream& out) {
  Config const cfg = load_config(o.config);
  OperatorSpec const op = build_operator(cfg);
  InvertibilityReport const report = decide(op, cfg.tolerances);
  EvidenceRecord const record =
      invertibility_evidence(op, report.verdict, cfg.oracle.grids, cfg.oracle.p, cfg.oracle.seed, cfg.tolerances);
  Json doc;
  doc["verdict"] = to_string(report.verdict);
  doc["agreement"] = record.consistent;
  doc["seed"] = cfg.oracle.seed;
  doc["evidence"] = to_json(record);
  emit(dump(doc), o.output, out);
  return report.verdict == Verdict::undecidable ? kExitUndecidable : kExitOk;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invertibility and spectra of binomial functional operators with a circle shift", "shiftop"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&o](CLI::App* cmd) {
    cmd->add_option("-c,--config", o.config, "Configuration JSON file")->required();
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide one- and two-sided invertibility");
  add_config(analyze_cmd);
  analyze_cmd->add_option("-o,--output", o.output, "Write the report here instead of stdout");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum of the weighted shift as CSV");
  add_config(spectrum_cmd);
  spectrum_cmd->add_option("--weight", o.weight, "Weight expression d(t)")->required();
  spectrum_cmd->add_option("--samples", o.samples, "Samples per periodic arc")->check(CLI::Range(64, 1 << 20));
  spectrum_cmd->add_option("--decimals", o.decimals, "Fixed decimals in the CSV")->check(CLI::Range(0, 17));
  spectrum_cmd->add_option("-o,--output", o.output, "Write the CSV here instead of stdout");

  auto* decompose_cmd = app.add_subcommand("decompose", "Periodic structure of the shift");
  add_config(decompose_cmd);
  decompose_cmd->add_option("-o,--output", o.output, "Write the structure here instead of stdout");

  auto* radius_cmd = app.add_subcommand("radius", "Closed-form spectral radius of gW and its index bound");
  add_config(radius_cmd);
  radius_cmd->add_option("--weight", o.weight, "Weight expression g(t)")->required();
  radius_cmd->add_option("--p", o.p, "Lebesgue exponent (default: oracle.p from the config)");
  radius_cmd->add_option("-o,--output", o.output, "Write the result here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Discretization evidence and agreement with analyze");
  add_config(verify_cmd);
  verify_cmd->add_option("-o,--output", o.output, "Write the evidence here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitOk;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (radius_cmd->parsed() && radius_cmd->count("--p") && !(o.p > 1.0)) {
    err << "error: --p must satisfy 1 < p < inf\n";
    return kExitConfig;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(o, out);
    if (spectrum_cmd->parsed()) return spectrum(o, out);
    if (decompose_cmd->parsed()) return decompose(o, out);
    if (radius_cmd->parsed()) return radius(o, out);
    if (verify_cmd->parsed()) return verify(o, out);
  } catch (ConfigError const& e) {
    err << "config error at " << (e.path().empty() ? std::string("/") : e.path()) << ": "
        << std::string(e.what()).substr(e.path().size() + 2) << "\n";
    return kExitConfig;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace shiftop::cli
