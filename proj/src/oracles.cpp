#include "aklv/oracles.hpp"

#include <algorithm>
#include <queue>

#include "aklv/affine_weyl.hpp"

namespace aklv {

namespace {
std::vector<Int> mat_key(const IntMat& m) {
  std::vector<Int> k;
  k.reserve(static_cast<size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
  return k;
}
}  // namespace

CoxeterOracle::CoxeterOracle(const IntMat& cartan, Int max_len) : cartan_(cartan) {
  const Eigen::Index s = cartan.rows();
  // reflection representation on the root-coordinate space:
  // sigma_i(e_j) = e_j - a_{ji} e_i
  std::vector<IntMat> gens;
  for (Eigen::Index i = 0; i < s; ++i) {
    IntMat g = IntMat::Identity(s, s);
    for (Eigen::Index j = 0; j < s; ++j) g(i, j) -= cartan_(i, j);
    gens.push_back(g);
  }
  IntMat id = IntMat::Identity(s, s);
  elements_.push_back(id);
  lengths_.push_back(0);
  index_[mat_key(id)] = 0;
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int e = bfs.front();
    bfs.pop();
    if (lengths_[static_cast<size_t>(e)] == max_len) continue;
    for (Eigen::Index i = 0; i < s; ++i) {
      IntMat m = elements_[static_cast<size_t>(e)] * gens[static_cast<size_t>(i)];
      auto key = mat_key(m);
      if (index_.count(key)) continue;
      // right multiplication raises length iff w(alpha_i) > 0: the i-th
      // column of w expresses w(alpha_i) in simple-root coordinates
      bool ascent = true;
      for (Eigen::Index r = 0; r < s; ++r)
        if (elements_[static_cast<size_t>(e)](r, i) < 0) ascent = false;
      if (!ascent) continue;
      int idx = static_cast<int>(elements_.size());
      elements_.push_back(m);
      lengths_.push_back(lengths_[static_cast<size_t>(e)] + 1);
      index_[mat_key(m)] = idx;
      bfs.push(idx);
    }
  }
  // multiplication tables within the ball
  const int n = num_elements();
  left_mul_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(s), -1));
  right_mul_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(s), -1));
  for (int e = 0; e < n; ++e)
    for (Eigen::Index i = 0; i < s; ++i) {
      IntMat r = elements_[static_cast<size_t>(e)] * gens[static_cast<size_t>(i)];
      auto it = index_.find(mat_key(r));
      right_mul_[static_cast<size_t>(e)][static_cast<size_t>(i)] =
          it == index_.end() ? -1 : it->second;
      IntMat l = gens[static_cast<size_t>(i)] * elements_[static_cast<size_t>(e)];
      it = index_.find(mat_key(l));
      left_mul_[static_cast<size_t>(e)][static_cast<size_t>(i)] =
          it == index_.end() ? -1 : it->second;
    }
}

int CoxeterOracle::find(const IntMat& m) const {
  auto it = index_.find(mat_key(m));
  return it == index_.end() ? -1 : it->second;
}

int CoxeterOracle::mul_gen(int e, int s, bool left) const {
  int r = left ? left_mul_[static_cast<size_t>(e)][static_cast<size_t>(s)]
               : right_mul_[static_cast<size_t>(e)][static_cast<size_t>(s)];
  if (r < 0) throw AklvError("oracle: product outside the enumerated ball");
  return r;
}

int CoxeterOracle::descent(int w, bool left) const {
  for (int i = 0; i < num_gens(); ++i) {
    int r = left ? left_mul_[static_cast<size_t>(w)][static_cast<size_t>(i)]
                 : right_mul_[static_cast<size_t>(w)][static_cast<size_t>(i)];
    if (r >= 0 && len(r) < len(w)) return i;
  }
  return -1;
}

bool CoxeterOracle::bruhat_leq(int u, int w) const {
  if (u == w) return true;
  if (len(u) >= len(w)) return false;
  auto it = bruhat_cache_.find({u, w});
  if (it != bruhat_cache_.end()) return it->second != 0;
  int s = descent(w, true);
  if (s < 0) throw AklvError("oracle: non-identity element without descent");
  int sw = mul_gen(w, s, true);
  int su = left_mul_[static_cast<size_t>(u)][static_cast<size_t>(s)];
  bool res;
  if (su >= 0 && len(su) < len(u))
    res = bruhat_leq(su, sw);
  else
    res = bruhat_leq(u, sw);
  bruhat_cache_[{u, w}] = res ? 1 : 0;
  return res;
}

HalfLaurent CoxeterOracle::r_poly(int u, int w) const {
  if (!bruhat_leq(u, w)) return HalfLaurent();
  if (u == w) return HalfLaurent::one();
  auto it = r_cache_.find({u, w});
  if (it != r_cache_.end()) return it->second;
  int s = descent(w, true);
  int sw = mul_gen(w, s, true);
  int su = left_mul_[static_cast<size_t>(u)][static_cast<size_t>(s)];
  HalfLaurent res;
  const HalfLaurent q = HalfLaurent::q();
  if (su >= 0 && len(su) < len(u)) {
    res = r_poly(su, sw);
  } else {
    if (su < 0) throw AklvError("oracle: R recursion left the ball");
    res = (q - HalfLaurent::one()) * r_poly(u, sw) + q * r_poly(su, sw);
  }
  r_cache_[{u, w}] = res;
  return res;
}

HalfLaurent CoxeterOracle::mu(int z, int w) const {
  HalfLaurent p = kl_poly(z, w);
  Int top = len(w) - len(z) - 1;
  if (top < 0 || top % 2 != 0) return HalfLaurent();
  return HalfLaurent(p.coeff(static_cast<int>(top)));
}

HalfLaurent CoxeterOracle::kl_poly(int u, int w) const {
  if (!bruhat_leq(u, w)) return HalfLaurent();
  if (u == w) return HalfLaurent::one();
  auto it = kl_cache_.find({u, w});
  if (it != kl_cache_.end()) return it->second;
  const HalfLaurent q = HalfLaurent::q();
  int s = descent(w, true);
  int v = mul_gen(w, s, true);  // sw < w
  int su = left_mul_[static_cast<size_t>(u)][static_cast<size_t>(s)];
  if (su < 0) throw AklvError("oracle: KL recursion left the ball");
  const bool su_down = len(su) < len(u);
  // P_{u,w} = q^{1-c} P_{su,v} + q^c P_{u,v} - sum mu(z,v) q^{(l(w)-l(z))/2} P_{u,z}
  // with c = 1 if su < u else 0
  HalfLaurent res;
  if (su_down)
    res = kl_poly(su, v) + q * kl_poly(u, v);
  else
    res = q * kl_poly(su, v) + kl_poly(u, v);
  for (int z = 0; z < num_elements(); ++z) {
    if (len(z) >= len(w) || !bruhat_leq(u, z) || !bruhat_leq(z, v)) continue;
    int sz = left_mul_[static_cast<size_t>(z)][static_cast<size_t>(s)];
    if (sz < 0 || len(sz) >= len(z)) continue;  // need sz < z
    HalfLaurent m = mu(z, v);
    if (m.is_zero()) continue;
    res -= m * HalfLaurent::q_pow_half(static_cast<int>(len(w) - len(z))) * kl_poly(u, z);
  }
  kl_cache_[{u, w}] = res;
  return res;
}

IntMat affine_cartan_matrix(const BasedRootDatum& datum) {
  const Eigen::Index s = datum.num_simple();
  const Eigen::Index c = datum.highest_roots.cols();
  IntMat a(s + c, s + c);
  auto root = [&](Eigen::Index k) -> IntVec {
    return k < s ? IntVec(datum.simple_roots.col(k)) : IntVec(-datum.highest_roots.col(k - s));
  };
  auto coroot = [&](Eigen::Index k) -> IntVec {
    return k < s ? IntVec(datum.simple_coroots.col(k)) : IntVec(-datum.highest_coroots.col(k - s));
  };
  for (Eigen::Index i = 0; i < s + c; ++i)
    for (Eigen::Index j = 0; j < s + c; ++j) a(i, j) = root(j).dot(coroot(i));
  return a;
}

namespace {
// q-Kostant partition function over the given positive vectors; `height`
// tracks the coroot-basis height of `target` (nonnegative combinations have
// nonnegative height, and every column has strictly positive height, so the
// multiplicity loop terminates).
HalfLaurent q_kostant(const IntMat& pos, const std::vector<BigRat>& col_heights,
                      const IntVec& target, const BigRat& height,
                      std::map<std::pair<std::vector<Int>, Eigen::Index>, HalfLaurent>& memo,
                      Eigen::Index from) {
  if (from == pos.cols()) return target.isZero() ? HalfLaurent::one() : HalfLaurent();
  std::vector<Int> key(target.data(), target.data() + target.size());
  auto it = memo.find({key, from});
  if (it != memo.end()) return it->second;
  HalfLaurent total;
  IntVec rest = target;
  BigRat h = height;
  Int mult = 0;
  while (h >= 0) {
    total += HalfLaurent::q_pow_half(static_cast<int>(2 * mult)) *
             q_kostant(pos, col_heights, rest, h, memo, from + 1);
    rest -= pos.col(from);
    h -= col_heights[static_cast<size_t>(from)];
    ++mult;
  }
  memo[{key, from}] = total;
  return total;
}
}  // namespace

HalfLaurent q_weight_mult(const BasedRootDatum& datum, const IntVec& lambda, const IntVec& mu) {
  // work with doubled vectors so the rho-shift stays integral
  const IntMat pos = datum.positive_coroots;
  IntVec two_rho_vee = IntVec::Zero(datum.rank);
  for (Eigen::Index k = 0; k < pos.cols(); ++k) two_rho_vee += pos.col(k);
  auto weyl = finite_weyl_elements(datum);
  std::map<std::pair<std::vector<Int>, Eigen::Index>, HalfLaurent> memo;
  // coroot-basis heights of the positive coroots
  std::vector<BigRat> col_heights;
  for (Eigen::Index k = 0; k < pos.cols(); ++k) {
    auto c = solve_rational(datum.simple_coroots, IntVec(pos.col(k)));
    if (!c) throw AklvError("q_weight_mult: positive coroot outside span");
    BigRat h = 0;
    for (const BigRat& x : *c) h += x;
    col_heights.push_back(h);
  }
  HalfLaurent total;
  for (const IntMat& w : weyl) {
    // length = number of positive coroots sent to negative ones
    Int l = 0;
    for (Eigen::Index k = 0; k < pos.cols(); ++k) {
      IntVec img = w * pos.col(k);
      // negativity in the coroot order: solve in simple coroots
      auto c = solve_rational(datum.simple_coroots, img);
      if (!c) throw AklvError("q_weight_mult: coroot outside span");
      bool neg = std::all_of(c->begin(), c->end(), [](const BigRat& x) { return x <= 0; });
      if (neg) ++l;
    }
    IntVec arg2 = w * (2 * lambda + two_rho_vee) - (2 * mu + two_rho_vee);
    bool even = true;
    for (Eigen::Index i = 0; i < arg2.size(); ++i)
      if (arg2(i) % 2 != 0) even = false;
    if (!even) continue;
    IntVec arg = arg2 / 2;
    auto c = solve_rational(datum.simple_coroots, arg);
    if (!c) continue;
    BigRat h = 0;
    bool nonneg = true;
    for (const BigRat& x : *c) {
      h += x;
      if (x < 0) nonneg = false;
    }
    if (!nonneg) continue;
    HalfLaurent part = q_kostant(pos, col_heights, arg, h, memo, 0);
    if (l % 2 == 0)
      total += part;
    else
      total -= part;
  }
  return total;
}

GL2O2Seq gl2o2_sequences(int m) {
  GL2O2Seq out;
  const int n = m + 2;  // indices 0..m+1
  out.lambda.assign(static_cast<size_t>(n), BigRat(0));
  out.mu_over_mu0.assign(static_cast<size_t>(n), BigRat(0));
  // d^2 == s^2 + t mod t^{m+2} with d_i = lambda_i s^{-(2i-1)}:
  // sum_{k=0..i} lambda_k lambda_{i-k} = [i==0] + [i==1]
  out.lambda[0] = 1;
  for (int i = 1; i < n; ++i) {
    BigRat acc = (i == 1) ? BigRat(1) : BigRat(0);
    for (int k = 1; k < i; ++k) acc -= out.lambda[static_cast<size_t>(k)] *
                                       out.lambda[static_cast<size_t>(i - k)];
    out.lambda[static_cast<size_t>(i)] = acc / 2;
  }
  // b*d == mu0 s^{m+2} mod t^{m+2} with b_i = mu_i s^{m+1-2i}:
  // sum_{k=0..i} mu_k lambda_{i-k} = 0 for i >= 1; mu_i = c_i mu0
  out.mu_over_mu0[0] = 1;
  for (int i = 1; i < n; ++i) {
    BigRat acc = 0;
    for (int k = 0; k < i; ++k)
      acc -= out.mu_over_mu0[static_cast<size_t>(k)] * out.lambda[static_cast<size_t>(i - k)];
    out.mu_over_mu0[static_cast<size_t>(i)] = acc;
  }
  // identities; mu0^2 = (-1)^{m+1}
  const int sq_sign = (m + 1) % 2 == 0 ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    BigRat conv = 0;
    for (int k = 0; k <= i; ++k)
      conv += out.mu_over_mu0[static_cast<size_t>(k)] * out.mu_over_mu0[static_cast<size_t>(i - k)];
    conv *= sq_sign;  // multiply by mu0^2
    int expect = ((m + 1 - i) % 2 == 0) ? 1 : -1;
    if (conv != BigRat(expect))
      out.failures.push_back("convolution identity fails at i=" + std::to_string(i));
  }
  {
    BigRat conv_m = 0;
    for (int k = 0; k <= m; ++k)
      conv_m +=
          out.mu_over_mu0[static_cast<size_t>(k)] * out.mu_over_mu0[static_cast<size_t>(m - k)];
    conv_m *= sq_sign;
    if (conv_m != BigRat(-1)) out.failures.push_back("m-th convolution sum is not -1");
  }
  // auxiliary: mu_i = (sum_k (-1)^k lambda_{i-k}) mu_0
  for (int i = 0; i < n; ++i) {
    BigRat acc = 0;
    for (int k = 0; k <= i; ++k) {
      BigRat term = out.lambda[static_cast<size_t>(i - k)];
      if (k % 2 == 1) term = -term;
      acc += term;
    }
    if (acc != out.mu_over_mu0[static_cast<size_t>(i)])
      out.failures.push_back("auxiliary lambda/mu relation fails at i=" + std::to_string(i));
  }
  // denominators are powers of two
  for (int i = 0; i < n; ++i) {
    BigInt den = boost::multiprecision::denominator(out.lambda[static_cast<size_t>(i)]);
    while (den % 2 == 0) den /= 2;
    if (den != 1) out.failures.push_back("lambda denominator not a power of 2 at " +
                                         std::to_string(i));
  }
  return out;
}

}  // namespace aklv
