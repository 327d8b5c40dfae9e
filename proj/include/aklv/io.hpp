#pragma once

// Pipeline orchestration, verification suite, and deterministic table dumps
// (JSON and CSV). Shared by the CLI and the acceptance suite.

#include <algorithm>
#include <memory>
#include <set>

#include "aklv/oracles.hpp"
#include "aklv/spherical.hpp"

namespace aklv {

struct RunConfig {
  std::string pair_spec_path;
  Int max_delta = 4;
  std::set<std::string> outputs = {"orbits", "P"};  // orbits, b, P, c, relkf
  std::set<std::string> verify;  // hecke duality selfdual parity positivity degree codim
                                 // group_case gl2o2 relkf (or "all")
  std::string format = "json";
  int threads = 1;
  std::string out_dir = ".";
  Int spherical_bound = -1;  // default: max_delta
};

struct CheckOutcome {
  std::string name;
  int checked = 0;
  int skipped = 0;
  bool ran = false;
  std::vector<std::string> failures;
  bool pass() const { return !ran || failures.empty(); }
};

// Note: AffineCtx holds pointers into `spec`, so Pipeline lives on the heap
// and is neither copied nor moved.
struct Pipeline {
  Pipeline() = default;
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  PairSpec spec;
  ValidationReport validation;
  std::optional<AffineCtx> ctx;
  std::optional<OrbitGraph> graph;
  std::optional<DualityTable> duality;
  std::optional<PTable> p_table;
  std::optional<CTable> c_table;
  std::vector<SphericalOrbit> spherical;
  std::optional<RelKFTable> relkf;
  std::optional<SphericalBTable> b_sph;
  std::vector<CheckOutcome> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckOutcome& c) { return c.pass(); });
  }
};

// Quadratic and braid relations on every in-bounds basis element.
CheckOutcome verify_hecke_axioms(const OrbitGraph& g, const AffineCtx& ctx);

// Group-case equivalence against the word-based Coxeter oracle: P-table and
// b-table match under the orbit <-> element bijection.
CheckOutcome verify_group_case(const OrbitGraph& g, const AffineCtx& ctx,
                               const DualityTable& d, const PTable& p);

// Extracts the first tensor factor of a group-case pair spec.
BasedRootDatum group_case_factor_datum(const BasedRootDatum& doubled);

// Runs the full pipeline per config. Throws SchemaError / UnsupportedInput /
// TheoremViolation; the CLI maps those to exit codes 3 / 2 / 1.
std::unique_ptr<Pipeline> run_pipeline(const RunConfig& config);

// Deterministic table dumps; `format` is "json" or "csv".
void write_outputs(const Pipeline& pipe, const RunConfig& config);

std::string verification_report_json(const Pipeline& pipe);

}  // namespace aklv
