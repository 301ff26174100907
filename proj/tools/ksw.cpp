#include "ksw/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void emit(const ksw::cli::Outcome& out, bool json) {
  if (json)
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << ksw::cli::render_text(out.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite spectral spacetimes: axioms, causality, Wick rotation and split Dirac structures"};
  app.require_subcommand(1);
  app.fallthrough();

  ksw::cli::Options opts;
  bool json = false;
  std::string signature, sigma;
  app.add_option("--tolerance", opts.tolerance, "predicate tolerance")->capture_default_str();
  app.add_flag("--json", json, "print the report as JSON");
  app.add_option("--signature", signature, "override: antilorentzian, lorentzian or euclidean");
  app.add_option("--sigma", sigma, "edge orientation signs, e.g. +1,-1,+1");
  app.add_option("--data-dir", opts.data_dir, "fixture directory for demos");

  std::string file, from, to, sub, demo;
  auto* verify = app.add_subcommand("verify", "check the axioms of a graph, structure or split file");
  verify->add_option("file", file)->required();
  auto* distance = app.add_subcommand("distance", "Connes distance against the geodesic distance");
  distance->add_option("file", file)->required();
  distance->add_option("from", from)->required();
  distance->add_option("to", to)->required();
  auto* causality = app.add_subcommand("causality", "stable causality of a graph or n = 4 split file");
  causality->add_option("file", file)->required();
  auto* wick = app.add_subcommand("wick", "Wick rotation and round trip");
  wick->add_option("file", file)->required();
  auto* split = app.add_subcommand("split", "split Dirac structure checks");
  split->add_option("action", sub, "verify, reconstruct or causality")
      ->required()
      ->check(CLI::IsMember({"verify", "reconstruct", "causality"}));
  split->add_option("file", file)->required();
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstructibility of a split or oriented structure");
  reconstruct->add_option("file", file)->required();
  auto* mvs = app.add_subcommand("mvs-compare", "compare with the discretized Dirac operator");
  mvs->add_option("file", file)->required();
  auto* demo_cmd = app.add_subcommand("demo", "run a bundled example");
  demo_cmd->add_option("name", demo)->required()->check(CLI::IsMember(ksw::cli::demo_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code == 0 ? 0 : 2;
  }

  try {
    if (!signature.empty()) opts.signature = ksw::parse_signature(signature);
    if (!sigma.empty()) opts.sigma = ksw::cli::parse_sigma(sigma);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  ksw::cli::Outcome out;
  if (*verify)
    out = ksw::cli::run_verify(file, opts);
  else if (*distance)
    out = ksw::cli::run_distance(file, from, to, opts);
  else if (*causality)
    out = ksw::cli::run_causality(file, opts);
  else if (*wick)
    out = ksw::cli::run_wick(file, opts);
  else if (*split)
    out = ksw::cli::run_split(sub, file, opts);
  else if (*reconstruct)
    out = ksw::cli::run_reconstruct(file, opts);
  else if (*mvs)
    out = ksw::cli::run_mvs_compare(file, opts);
  else
    out = ksw::cli::run_demo(demo, opts);

  emit(out, json);
  return out.exit_code;
}
