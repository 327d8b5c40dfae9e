#include "aklv/root_datum.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aklv {

IntMat BasedRootDatum::cartan() const {
  const Eigen::Index s = num_simple();
  IntMat c(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      c(i, j) = pair(simple_roots.col(j), simple_coroots.col(i));
  return c;
}

IntVec BasedRootDatum::reflect_char(int i, const IntVec& x) const {
  return x - pair(x, simple_coroots.col(i)) * simple_roots.col(i);
}

IntVec BasedRootDatum::reflect_cochar(int i, const IntVec& y) const {
  return y - pair(simple_roots.col(i), y) * simple_coroots.col(i);
}

IntMat BasedRootDatum::simple_reflection_cochar(int i) const {
  IntMat m = IntMat::Identity(rank, rank);
  for (Eigen::Index j = 0; j < rank; ++j) m.col(j) = reflect_cochar(i, IntVec(m.col(j)));
  return m;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "violation: " << v << "\n";
  for (const auto& f : findings) os << "finding: " << f << "\n";
  if (violations.empty() && findings.empty()) os << "ok\n";
  return os.str();
}

namespace {

struct VecLess {
  bool operator()(const IntVec& a, const IntVec& b) const { return lex_cmp(a, b) < 0; }
};

// Orbit closure of the simple roots under simple reflections; returns the
// positive half in a deterministic order (by height, then lex).
void build_positive_roots(BasedRootDatum& d) {
  const Eigen::Index s = d.num_simple();
  std::set<IntVec, VecLess> roots;
  std::map<IntVec, IntVec, VecLess> coroot_of;
  std::vector<IntVec> frontier;
  for (Eigen::Index i = 0; i < s; ++i) {
    roots.insert(d.simple_roots.col(i));
    coroot_of[d.simple_roots.col(i)] = d.simple_coroots.col(i);
    frontier.push_back(d.simple_roots.col(i));
  }
  const size_t kLimit = 100000;
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& r : frontier)
      for (int i = 0; i < s; ++i) {
        IntVec nr = d.reflect_char(i, r);
        if (!roots.count(nr)) {
          roots.insert(nr);
          coroot_of[nr] = d.reflect_cochar(i, coroot_of.at(r));
          next.push_back(nr);
        }
      }
    if (roots.size() > kLimit) throw SchemaError("root closure not finite");
    frontier = std::move(next);
  }
  // positivity: a root is positive iff it is a nonnegative rational combination
  // of simple roots (equivalently not a nonpositive one).
  std::vector<std::pair<IntVec, IntVec>> pos;
  for (const auto& r : roots) {
    auto c = solve_rational(d.simple_roots, r);
    if (!c) throw SchemaError("root outside simple-root span");
    bool nonneg = std::all_of(c->begin(), c->end(), [](const BigRat& x) { return x >= 0; });
    bool nonpos = std::all_of(c->begin(), c->end(), [](const BigRat& x) { return x <= 0; });
    if (nonneg == nonpos) throw SchemaError("root with mixed simple coefficients");
    if (nonneg) pos.emplace_back(r, coroot_of.at(r));
  }
  auto height = [&](const IntVec& r) {
    auto c = solve_rational(d.simple_roots, r);
    BigRat h = 0;
    for (auto& x : *c) h += x;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
    BigRat ha = height(a.first), hb = height(b.first);
    if (ha != hb) return ha < hb;
    return lex_cmp(a.first, b.first) < 0;
  });
  d.positive_roots.resize(d.rank, static_cast<Eigen::Index>(pos.size()));
  d.positive_coroots.resize(d.rank, static_cast<Eigen::Index>(pos.size()));
  d.two_rho = IntVec::Zero(d.rank);
  for (size_t k = 0; k < pos.size(); ++k) {
    d.positive_roots.col(static_cast<Eigen::Index>(k)) = pos[k].first;
    d.positive_coroots.col(static_cast<Eigen::Index>(k)) = pos[k].second;
    d.two_rho += pos[k].first;
  }
}

void build_components(BasedRootDatum& d) {
  const Eigen::Index s = d.num_simple();
  IntMat cartan = d.cartan();
  std::vector<int> comp(s, -1);
  int nc = 0;
  for (Eigen::Index i = 0; i < s; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<Eigen::Index> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      Eigen::Index a = stack.back();
      stack.pop_back();
      for (Eigen::Index b = 0; b < s; ++b)
        if (comp[b] < 0 && cartan(a, b) != 0) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  d.components.assign(nc, {});
  for (Eigen::Index i = 0; i < s; ++i) d.components[comp[i]].push_back(static_cast<int>(i));
  // highest root per component: the positive root of the component with
  // maximal height (unique for irreducible systems).
  d.highest_roots.resize(d.rank, nc);
  d.highest_coroots.resize(d.rank, nc);
  for (int c = 0; c < nc; ++c) {
    Eigen::Index best = -1;
    BigRat best_h = 0;
    for (Eigen::Index k = 0; k < d.positive_roots.cols(); ++k) {
      auto coeffs = solve_rational(d.simple_roots, IntVec(d.positive_roots.col(k)));
      bool in_comp = true;
      BigRat h = 0;
      for (Eigen::Index j = 0; j < d.num_simple(); ++j) {
        if ((*coeffs)[j] != 0 && comp[j] != c) in_comp = false;
        h += (*coeffs)[j];
      }
      if (!in_comp || h == 0) continue;
      if (best < 0 || h > best_h) {
        best = k;
        best_h = h;
      }
    }
    if (best < 0) throw SchemaError("component without roots");
    d.highest_roots.col(c) = d.positive_roots.col(best);
    d.highest_coroots.col(c) = d.positive_coroots.col(best);
  }
}

}  // namespace

ValidationReport validate(BasedRootDatum& datum, InvolutionDatum& inv) {
  ValidationReport rep;
  const Eigen::Index s = datum.num_simple();
  if (datum.simple_roots.rows() != datum.rank || datum.simple_coroots.rows() != datum.rank ||
      datum.simple_coroots.cols() != s)
    throw SchemaError("simple root/coroot shape mismatch");
  IntMat cartan = datum.cartan();
  for (Eigen::Index i = 0; i < s; ++i) {
    if (cartan(i, i) != 2) rep.violations.push_back("Cartan diagonal != 2 at " + std::to_string(i));
    for (Eigen::Index j = 0; j < s; ++j)
      if (i != j && cartan(i, j) > 0)
        rep.violations.push_back("Cartan off-diagonal > 0 at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
  }
  if (inv.theta_cochar.rows() != datum.rank || inv.theta_cochar.cols() != datum.rank)
    throw SchemaError("theta shape mismatch");
  if (!(inv.theta_cochar * inv.theta_cochar).isIdentity())
    rep.violations.push_back("theta squared != identity");
  if (static_cast<Eigen::Index>(inv.pinning_signs.size()) != s)
    throw SchemaError("pinning_signs size mismatch");
  for (Int e : inv.pinning_signs)
    if (e != 1 && e != -1) throw SchemaError("pinning sign not +-1");
  if (!rep.schema_ok()) return rep;

  build_positive_roots(datum);
  build_components(datum);

  // theta action on characters: does it permute the positive roots?
  IntMat theta_char = inv.theta_char();
  std::set<IntVec, VecLess> pos;
  for (Eigen::Index k = 0; k < datum.positive_roots.cols(); ++k)
    pos.insert(datum.positive_roots.col(k));
  rep.borel_preserving = true;
  for (Eigen::Index k = 0; k < datum.positive_roots.cols(); ++k) {
    IntVec img = theta_char * datum.positive_roots.col(k);
    if (!pos.count(img)) {
      rep.borel_preserving = false;
      break;
    }
  }
  inv.simple_perm.clear();
  if (rep.borel_preserving) {
    inv.simple_perm.assign(s, -1);
    for (Eigen::Index i = 0; i < s; ++i) {
      IntVec img = theta_char * datum.simple_roots.col(i);
      for (Eigen::Index j = 0; j < s; ++j)
        if (img == datum.simple_roots.col(j)) inv.simple_perm[i] = static_cast<int>(j);
      if (inv.simple_perm[i] < 0) {
        rep.findings.push_back("theta permutes positive roots but not simple roots");
        inv.simple_perm.clear();
        rep.borel_preserving = false;
        break;
      }
    }
  } else {
    rep.findings.push_back(
        "theta is not Borel-preserving (does not permute the positive roots); "
        "orbit-graph construction is unavailable for this pair");
  }
  return rep;
}

Int rho_pair(const BasedRootDatum& datum, const IntVec& lambda) {
  Int two = datum.pair(datum.two_rho, lambda);
  if (two % 2 != 0) throw AklvError("rho pairing is half-integral for this argument");
  return two / 2;
}

bool coroot_sum_leq(const BasedRootDatum& datum, const IntVec& mu, const IntVec& lambda) {
  IntVec diff = lambda - mu;
  if (diff.isZero()) return true;
  // Coefficients in the simple-coroot basis are determined over Q; the order
  // holds iff they are nonnegative integers.
  auto c = solve_rational(datum.simple_coroots, diff);
  if (!c) return false;
  for (const BigRat& x : *c) {
    if (x < 0) return false;
    if (boost::multiprecision::denominator(BigRat(x)) != 1) return false;
  }
  return true;
}

bool dominance_leq(const BasedRootDatum& datum, const InvolutionDatum& inv, const IntVec& mu,
                   const IntVec& lambda, bool strict_lattice) {
  if (strict_lattice) {
    if (!(inv.theta_cochar * mu + mu).isZero() || !(inv.theta_cochar * lambda + lambda).isZero())
      throw AklvError("not in Lambda_S");
  }
  return coroot_sum_leq(datum, mu, lambda);
}

LambdaSBasis lambda_s_basis(const BasedRootDatum& datum, const InvolutionDatum& inv) {
  const Eigen::Index n = datum.rank;
  // Lambda_S = ker(theta + 1) on the cocharacter lattice: saturated kernel.
  IntMat tp1 = inv.theta_cochar + IntMat::Identity(n, n);
  Snf s = smith_normal_form(tp1);
  // ker = V * (columns where D has zero diagonal)
  std::vector<Eigen::Index> zero_cols;
  for (Eigen::Index j = 0; j < s.D.cols(); ++j) {
    bool z = true;
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      if (s.D(i, j) != 0) z = false;
    if (z) zero_cols.push_back(j);
  }
  IntMat ker(n, static_cast<Eigen::Index>(zero_cols.size()));
  for (Eigen::Index j = 0; j < ker.cols(); ++j) ker.col(j) = s.V.col(zero_cols[j]);
  LambdaSBasis out;
  out.lambda_s = column_hnf_basis(ker);

  // Lambda_S intersect Q (coroot lattice): solve [lambda_s | -coroots] kernels.
  const Eigen::Index r = out.lambda_s.cols();
  const Eigen::Index m = datum.simple_coroots.cols();
  if (r == 0) {
    out.lambda_s_cap_q = IntMat(n, 0);
    return out;
  }
  IntMat stacked(n, r + m);
  stacked << out.lambda_s, -datum.simple_coroots;
  // integer kernel of `stacked` via SNF
  Snf ks = smith_normal_form(stacked);
  std::vector<Eigen::Index> zc;
  for (Eigen::Index j = 0; j < ks.D.cols(); ++j) {
    bool z = true;
    for (Eigen::Index i = 0; i < ks.D.rows(); ++i)
      if (ks.D(i, j) != 0) z = false;
    if (z) zc.push_back(j);
  }
  IntMat inter(n, static_cast<Eigen::Index>(zc.size()));
  for (Eigen::Index j = 0; j < inter.cols(); ++j) {
    IntVec coeff = ks.V.col(zc[j]);
    IntVec v = IntVec::Zero(n);
    for (Eigen::Index t = 0; t < r; ++t) v += coeff(t) * out.lambda_s.col(t);
    inter.col(j) = v;
  }
  out.lambda_s_cap_q = column_hnf_basis(inter);

  // quotient invariants: Lambda_S / (Lambda_S cap Q), in lambda_s coordinates
  IntMat sub(r, out.lambda_s_cap_q.cols());
  for (Eigen::Index j = 0; j < sub.cols(); ++j) {
    auto c = solve_rational(out.lambda_s, IntVec(out.lambda_s_cap_q.col(j)));
    if (!c) throw AklvError("lambda_s_cap_q outside lambda_s");
    for (Eigen::Index i = 0; i < r; ++i) {
      if (boost::multiprecision::denominator((*c)[i]) != 1)
        throw AklvError("non-integral coordinates in lambda_s_cap_q");
      sub(i, j) = static_cast<Int>(boost::multiprecision::numerator((*c)[i]));
    }
  }
  if (sub.cols() == 0) {
    out.quotient_invariants.assign(static_cast<size_t>(r), 0);
  } else {
    Snf qs = smith_normal_form(sub);
    Eigen::Index k = std::min(qs.D.rows(), qs.D.cols());
    for (Eigen::Index i = 0; i < r; ++i) {
      Int d = i < k ? qs.D(i, i) : 0;
      if (d != 1) out.quotient_invariants.push_back(d);  // d=0 means a free Z factor
    }
  }
  return out;
}

bool is_dominant(const BasedRootDatum& datum, const IntVec& lambda) {
  for (Eigen::Index i = 0; i < datum.num_simple(); ++i)
    if (datum.pair(datum.simple_roots.col(i), lambda) < 0) return false;
  return true;
}

IntVec dominantize(const BasedRootDatum& datum, IntVec lambda) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (Eigen::Index i = 0; i < datum.num_simple(); ++i)
      if (datum.pair(datum.simple_roots.col(i), lambda) < 0) {
        lambda = datum.reflect_cochar(static_cast<int>(i), lambda);
        moved = true;
      }
  }
  return lambda;
}

namespace {
IntMat json_to_mat(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw SchemaError(std::string("bad matrix: ") + what);
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  IntMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw SchemaError(std::string("ragged matrix: ") + what);
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<Int>();
  }
  return m;
}
}  // namespace

PairSpec parse_pair_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("pair spec is not valid JSON: ") + e.what());
  }
  for (const char* key :
       {"rank", "simple_roots", "simple_coroots", "theta_on_cocharacters", "pinning_signs"})
    if (!j.contains(key)) throw SchemaError(std::string("pair spec missing field: ") + key);
  PairSpec spec;
  spec.datum.rank = j["rank"].get<Eigen::Index>();
  // roots/coroots are given as row-lists of vectors; store as columns
  IntMat roots = json_to_mat(j["simple_roots"], "simple_roots");
  IntMat coroots = json_to_mat(j["simple_coroots"], "simple_coroots");
  spec.datum.simple_roots = roots.transpose();
  spec.datum.simple_coroots = coroots.transpose();
  spec.inv.theta_cochar = json_to_mat(j["theta_on_cocharacters"], "theta_on_cocharacters");
  spec.inv.pinning_signs = j["pinning_signs"].get<std::vector<Int>>();
  spec.inv.group_case = j.value("group_case", false);
  spec.name = j.value("name", std::string("unnamed"));
  spec.datum.cartan_type_label = spec.name;
  if (spec.datum.simple_roots.rows() != spec.datum.rank)
    throw SchemaError("simple_roots rank mismatch");
  return spec;
}

PairSpec load_pair_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open pair spec: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pair_spec(ss.str());
}

}  // namespace aklv
