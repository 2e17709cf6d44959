#include "qdisc/discrimination.hpp"
#include "qdisc/json_io.hpp"
#include "qdisc/oracle.hpp"
#include "qdisc/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitIo = 4;

std::string formatSig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Round through a 12-significant-digit decimal representation so emitted
// numbers are reproducible across platforms.
double roundSig(double v) { return std::stod(formatSig(v)); }

json qToJson(const qdisc::Matrix& q) {
  json out;
  out["matrix"] = qdisc::matrixToJson(q);
  if (q.rows() == 2) {
    const qdisc::BlochOperator b = qdisc::toBloch(q);
    out["bloch"] = {{"c", roundSig(b.c)}, {"r", {roundSig(b.r.x()), roundSig(b.r.y()), roundSig(b.r.z())}}};
  }
  return out;
}

struct CommonFlags {
  std::uint64_t seed = 20240817;
  int restarts = 16;
  int gridResolution = 40;
  std::string permutations = "all";
};

qdisc::DiscriminationOptions toOptions(const CommonFlags& flags) {
  qdisc::DiscriminationOptions options;
  options.allPermutations = flags.permutations == "all";
  options.optimizer.seed = flags.seed;
  options.optimizer.restarts = flags.restarts;
  return options;
}

int cmdDiscriminate(const std::string& path, const CommonFlags& flags, bool verify) {
  const qdisc::WeightedEnsemble e = qdisc::readEnsemble(path);
  qdisc::requireValidEnsemble(e);

  json report;
  if (e.size() == 2) {
    const qdisc::HelstromResult h = qdisc::helstrom(e);
    report["probability"] = roundSig(h.probability);
    report["method"] = "helstrom";
    report["permutation"] = {0, 1};
    report["measurement"] = qdisc::povmToJson(h.povm);
  } else if (e.size() == 3 || e.size() == 4) {
    const qdisc::DiscriminationResult r = qdisc::optimalProbability(e, toOptions(flags));
    report["probability"] = roundSig(r.probability);
    report["method"] = r.method;
    report["permutation"] = r.permutation;
    if (r.q.size() > 0) report["q"] = qToJson(r.q);
    if (!r.measurement.nodes.empty()) report["measurement"] = qdisc::nestedPovmToJson(r.measurement);
    if (verify) {
      const double oracle = qdisc::bruteForceNested(e, {flags.gridResolution});
      report["oracle"] = {{"grid_resolution", flags.gridResolution},
                          {"probability", roundSig(oracle)},
                          {"gap", roundSig(r.probability - oracle)}};
    }
  } else {
    throw qdisc::UnsupportedN("discriminate supports 2, 3 or 4 states");
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmdDecompose(const std::string& path) {
  const qdisc::Povm p = qdisc::readPovm(path);
  const qdisc::PovmReport check = qdisc::validate(p);
  if (!check.pass) throw qdisc::InvalidPovm(check.message);

  const qdisc::NestedPovm tree = qdisc::decompose(p);
  const qdisc::Povm back = qdisc::recompose(tree);
  double residual = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    residual = std::max(residual, (back.elements[static_cast<size_t>(j)] -
                                   p.elements[static_cast<size_t>(j)])
                                      .cwiseAbs()
                                      .maxCoeff());
  }
  json report;
  report["nested"] = qdisc::nestedPovmToJson(tree);
  report["residual"] = roundSig(residual);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmdSweep(const std::string& outPath, std::vector<double> phi2Values, double phi3Start,
             double phi3Stop, int steps, const CommonFlags& flags) {
  if (steps < 2) throw qdisc::ParseError("sweep needs at least 2 steps");
  for (double v : phi2Values) {
    if (!std::isfinite(v)) throw qdisc::ParseError("phi2 values must be finite");
  }
  if (!std::isfinite(phi3Start) || !std::isfinite(phi3Stop)) {
    throw qdisc::ParseError("phi3 range must be finite");
  }
  if (phi2Values.empty()) {
    phi2Values = {0.0, M_PI / 6.0, M_PI / 2.0, 2.0 * M_PI / 3.0, M_PI};
  }

  std::ostringstream rows;
  rows << "phi2,phi3,probability,method\n";
  const qdisc::DiscriminationOptions options = toOptions(flags);
  for (double phi2 : phi2Values) {
    for (int i = 0; i < steps; ++i) {
      const double phi3 = phi3Start + (phi3Stop - phi3Start) * i / (steps - 1);
      const qdisc::WeightedEnsemble e = qdisc::equatorialTriple(phi2, phi3);
      const qdisc::DiscriminationResult r = qdisc::optimalProbability(e, options);
      rows << formatSig(phi2) << ',' << formatSig(phi3) << ',' << formatSig(r.probability) << ','
           << r.method << '\n';
    }
  }

  std::ofstream out(outPath);
  if (!out) throw qdisc::IoError("cannot open " + outPath + " for writing");
  out << rows.str();
  if (!out) throw qdisc::IoError("failed writing " + outPath);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-error discrimination of 3 or 4 quantum states via nested binary measurements"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool verify = false;
  std::string ensemblePath, povmPath, sweepOut;
  std::vector<double> phi2Values;
  double phi3Start = 0.0, phi3Stop = 2.0 * M_PI;
  int steps = 100;

  CLI::App* disc = app.add_subcommand("discriminate", "Optimal success probability for an ensemble");
  disc->add_option("ensemble", ensemblePath, "Ensemble JSON file")->required();
  disc->add_option("--seed", flags.seed, "Optimizer RNG seed (default 20240817)");
  disc->add_option("--restarts", flags.restarts, "Optimizer restarts (default 16)");
  disc->add_option("--grid-resolution", flags.gridResolution,
                   "Oracle grid resolution for --verify (default 40)");
  disc->add_flag("--verify", verify, "Cross-check against the brute-force grid oracle");
  disc->add_option("--permutations", flags.permutations, "Label orderings to try: all|identity")
      ->check(CLI::IsMember({"all", "identity"}));

  CLI::App* deco = app.add_subcommand("decompose", "Decompose a POVM into nested binary steps");
  deco->add_option("povm", povmPath, "POVM JSON file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep over equatorial three-state ensembles");
  sweep->add_option("output", sweepOut, "Output CSV path")->required();
  sweep->add_option("--phi2", phi2Values,
                    "phi2 values in radians (default: 0, pi/6, pi/2, 2pi/3, pi)");
  sweep->add_option("--phi3-start", phi3Start, "Start of the phi3 range (default 0)");
  sweep->add_option("--phi3-stop", phi3Stop, "End of the phi3 range (default 2pi)");
  sweep->add_option("--steps", steps, "Number of phi3 grid points (default 100)");
  sweep->add_option("--seed", flags.seed, "Optimizer RNG seed (default 20240817)");
  sweep->add_option("--restarts", flags.restarts, "Optimizer restarts (default 16)");
  sweep->add_option("--permutations", flags.permutations, "Label orderings to try: all|identity")
      ->check(CLI::IsMember({"all", "identity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (disc->parsed()) return cmdDiscriminate(ensemblePath, flags, verify);
    if (deco->parsed()) return cmdDecompose(povmPath);
    return cmdSweep(sweepOut, phi2Values, phi3Start, phi3Stop, steps, flags);
  } catch (const qdisc::ParseError& err) {
    std::cerr << "parse error: " << err.what() << '\n';
    return kExitParse;
  } catch (const qdisc::IoError& err) {
    std::cerr << "i/o error: " << err.what() << '\n';
    return kExitIo;
  } catch (const qdisc::Error& err) {
    std::cerr << "unsupported input: " << err.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUnsupported;
  }
}
