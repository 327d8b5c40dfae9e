// Batch front end: load a pair spec, build the orbit graph, run the pipeline,
// emit tables, and run the verification suites.
//
//   aklv run --spec data/presets/a1_group.json --max-delta 6 \
//            --emit orbits,b,P,relkf --verify all --format json --out out/
//
// Exit codes: 0 success, 1 verification failure, 2 unsupported input,
// 3 I/O or schema error.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aklv/io.hpp"

namespace {

std::set<std::string> split_set(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

const std::set<std::string> kOutputs = {"orbits", "b", "P", "c", "relkf", "oracle_P", "report"};
const std::set<std::string> kVerify = {"hecke",      "duality", "selfdual", "parity",
                                       "positivity", "degree",  "codim",    "group_case",
                                       "gl2o2",      "relkf",   "all"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Kazhdan-Lusztig-Vogan engine"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run the pipeline on a pair spec");
  std::string spec_path, emit = "orbits,P", verify, format = "json", out_dir = ".";
  long long max_delta = 4;
  int threads = 1;
  run->add_option("--spec", spec_path, "pair spec JSON path")->required();
  run->add_option("--max-delta", max_delta, "orbit graph truncation depth")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--emit", emit, "comma list: orbits,b,P,c,relkf,oracle_P (or report)");
  run->add_option("--verify", verify, "comma list or 'all'");
  run->add_option("--format", format, "json or csv");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads (AKLV_THREADS overrides)");

  CLI11_PARSE(app, argc, argv);

  aklv::RunConfig config;
  config.pair_spec_path = spec_path;
  config.max_delta = max_delta;
  config.outputs = split_set(emit);
  config.verify = split_set(verify);
  config.format = format;
  config.out_dir = out_dir;
  config.threads = threads;
  if (const char* env = std::getenv("AKLV_THREADS")) config.threads = std::atoi(env);
  if (config.threads < 1) config.threads = 1;

  if (config.outputs.empty()) {
    std::cerr << "error: --emit must name at least one output\n";
    return 3;
  }
  for (const auto& o : config.outputs)
    if (!kOutputs.count(o)) {
      std::cerr << "error: unknown output '" << o << "'\n";
      return 3;
    }
  for (const auto& v : config.verify)
    if (!kVerify.count(v)) {
      std::cerr << "error: unknown verification '" << v << "'\n";
      return 3;
    }
  if (format != "json" && format != "csv") {
    std::cerr << "error: --format must be json or csv\n";
    return 3;
  }

  try {
    auto pipe = aklv::run_pipeline(config);
    aklv::write_outputs(*pipe, config);
    std::cout << aklv::verification_report_json(*pipe);
    return pipe->all_pass() ? 0 : 1;
  } catch (const aklv::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const aklv::UnsupportedInput& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return 2;
  } catch (const aklv::TheoremViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
