#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "aklv/io.hpp"

using namespace aklv;

namespace {
std::string preset(const char* name) {
  return std::string(AKLV_PRESET_DIR) + "/" + name + ".json";
}
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("pipeline on the A1 group case passes all requested checks") {
  RunConfig cfg;
  cfg.pair_spec_path = preset("a1_group");
  cfg.max_delta = 4;
  cfg.outputs = {"orbits", "b", "P", "c", "relkf"};
  cfg.verify = {"all"};
  auto pipe = run_pipeline(cfg);
  CHECK(pipe->all_pass());
  REQUIRE(pipe->graph.has_value());
  bool saw_group_case = false, saw_gl2o2 = false;
  for (const auto& c : pipe->checks) {
    if (c.name == "group_case") saw_group_case = true;
    if (c.name == "gl2o2") saw_gl2o2 = true;
  }
  CHECK(saw_group_case);
  CHECK(saw_gl2o2);
}

TEST_CASE("outputs are deterministic across runs and thread counts") {
  namespace fs = std::filesystem;
  std::string base = fs::temp_directory_path().string() + "/aklv_io_test";
  std::vector<std::string> dirs = {base + "/run1", base + "/run2", base + "/run4"};
  int threads[] = {1, 1, 4};
  for (int i = 0; i < 3; ++i) {
    RunConfig cfg;
    cfg.pair_spec_path = preset("sl2_t");
    cfg.max_delta = 3;
    cfg.outputs = {"orbits", "b", "P", "c", "relkf"};
    cfg.verify = {"hecke"};
    cfg.threads = threads[i];
    cfg.out_dir = dirs[static_cast<size_t>(i)];
    auto pipe = run_pipeline(cfg);
    CHECK(pipe->all_pass());
    write_outputs(*pipe, cfg);
  }
  for (const char* file : {"orbits.json", "b.json", "P.json", "c.json", "relkf.json",
                           "verification_report.json"}) {
    std::string a = slurp(dirs[0] + "/" + file);
    CHECK(a == slurp(dirs[1] + "/" + file));
    CHECK(a == slurp(dirs[2] + "/" + file));
  }
}

TEST_CASE("csv emission") {
  namespace fs = std::filesystem;
  std::string dir = fs::temp_directory_path().string() + "/aklv_io_csv";
  RunConfig cfg;
  cfg.pair_spec_path = preset("sl2_t");
  cfg.max_delta = 2;
  cfg.outputs = {"P", "b", "orbits"};
  cfg.format = "csv";
  cfg.out_dir = dir;
  auto pipe = run_pipeline(cfg);
  write_outputs(*pipe, cfg);
  std::string p = slurp(dir + "/P.csv");
  CHECK(p.find("u,eta,v,xi,P") == 0);
  CHECK(slurp(dir + "/orbits.csv").find("id,delta") == 0);
}

TEST_CASE("gl2o2 verification runs without a graph") {
  RunConfig cfg;
  cfg.pair_spec_path = preset("gl2_o2");
  cfg.verify = {"gl2o2"};
  // graph-needing outputs are unsupported for this pair
  RunConfig with_graph = cfg;
  with_graph.outputs = {"P"};
  CHECK_THROWS_AS(run_pipeline(with_graph), UnsupportedInput);
  // the identities report alone succeeds
  RunConfig report_only = cfg;
  report_only.outputs = {"report"};
  auto pipe = run_pipeline(report_only);
  CHECK(pipe->all_pass());
  REQUIRE(pipe->checks.size() == 1);
  CHECK(pipe->checks[0].name == "gl2o2");
}

TEST_CASE("schema violations raise SchemaError") {
  namespace fs = std::filesystem;
  std::string bad = fs::temp_directory_path().string() + "/aklv_bad_spec.json";
  {
    std::ofstream out(bad);
    out << "{\"name\":\"bad\",\"rank\":1,\"simple_roots\":[[2]],\"simple_coroots\":[[1]],"
        << "\"theta_on_cocharacters\":[[2]],\"pinning_signs\":[1]}";
  }
  RunConfig cfg;
  cfg.pair_spec_path = bad;
  cfg.outputs = {"P"};
  CHECK_THROWS_AS(run_pipeline(cfg), SchemaError);
}

TEST_CASE("group case factor extraction") {
  PairSpec s = load_pair_spec(preset("a2_group"));
  validate(s.datum, s.inv);
  BasedRootDatum factor = group_case_factor_datum(s.datum);
  CHECK(factor.rank == 2);
  CHECK(factor.num_simple() == 2);
  CHECK(factor.positive_roots.cols() == 3);
}
