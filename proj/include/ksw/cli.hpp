#pragma once

#include "ksw/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ksw::cli {

struct Options {
  double tolerance = kPredicateTol;
  std::optional<Signature> signature;
  std::vector<int> sigma;  // one sign per edge; empty means all +1
  std::string data_dir;    // fixture directory for demos
};

// exit_code: 0 decided/pass, 1 decided/fail, 2 error or indeterminate.
struct Outcome {
  int exit_code = 2;
  io::Json report;
};

Outcome run_verify(const std::string& path, const Options& o);
Outcome run_distance(const std::string& path, const std::string& from, const std::string& to, const Options& o);
Outcome run_causality(const std::string& path, const Options& o);
Outcome run_wick(const std::string& path, const Options& o);
// sub in {verify, reconstruct, causality}
Outcome run_split(const std::string& sub, const std::string& path, const Options& o);
Outcome run_reconstruct(const std::string& path, const Options& o);
Outcome run_mvs_compare(const std::string& path, const Options& o);

const std::vector<std::string>& demo_names();
// name in {c2, fig2, boost-triangle, figsc, mvs-flat}
Outcome run_demo(const std::string& name, const Options& o);

// Parses "+1,-1,1" style lists.
std::vector<int> parse_sigma(const std::string& text);
// KSW_DATA_DIR if set, else the directory recorded at build time.
std::string default_data_dir();
// Indented key: value rendering of a report.
std::string render_text(const io::Json& report);

}  // namespace ksw::cli
