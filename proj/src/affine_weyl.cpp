#include "aklv/affine_weyl.hpp"

#include <algorithm>
#include <queue>

namespace aklv {

namespace {
std::vector<Int> to_key(const IntVec& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}
}  // namespace

int cmp(const ExtAffWeylElt& a, const ExtAffWeylElt& b) {
  int c = lex_cmp(a.tr, b.tr);
  if (c != 0) return c;
  return lex_cmp(a.fin, b.fin);
}

AffineCtx::AffineCtx(const BasedRootDatum& datum, const InvolutionDatum& inv)
    : datum_(&datum), inv_(&inv) {
  if (datum.positive_roots.cols() == 0)
    throw AklvError("AffineCtx: datum not validated (no positive roots)");
  for (Eigen::Index k = 0; k < datum.positive_roots.cols(); ++k) {
    positive_set_.insert(to_key(datum.positive_roots.col(k)));
    root_set_.insert(to_key(datum.positive_roots.col(k)));
    root_set_.insert(to_key(IntVec(-datum.positive_roots.col(k))));
  }
  for (Eigen::Index i = 0; i < datum.num_simple(); ++i) {
    simple_affine_.push_back({datum.simple_roots.col(i), 0});
    simple_affine_coroots_.push_back(datum.simple_coroots.col(i));
  }
  for (Eigen::Index c = 0; c < datum.highest_roots.cols(); ++c) {
    simple_affine_.push_back({IntVec(-datum.highest_roots.col(c)), 1});
    simple_affine_coroots_.push_back(IntVec(-datum.highest_coroots.col(c)));
  }
  // theta permutation on simple affine roots, when available
  affine_perm_.assign(simple_affine_.size(), -1);
  if (!inv.simple_perm.empty()) {
    for (int k = 0; k < num_simple_affine(); ++k) {
      AffineRoot img = theta_on_affine(simple_affine_[k]);
      affine_perm_[k] = simple_affine_index(img);
      if (affine_perm_[k] < 0)
        throw AklvError("theta does not permute the simple affine roots");
    }
  }
}

int AffineCtx::simple_affine_index(const AffineRoot& r) const {
  for (int k = 0; k < num_simple_affine(); ++k)
    if (simple_affine_[k] == r) return k;
  return -1;
}

bool AffineCtx::is_positive_finite_root(const IntVec& beta) const {
  return positive_set_.count(to_key(beta)) > 0;
}
bool AffineCtx::is_finite_root(const IntVec& beta) const {
  return root_set_.count(to_key(beta)) > 0;
}

bool AffineCtx::is_positive(const AffineRoot& r) const {
  if (r.level > 0) return true;
  if (r.level < 0) return false;
  return is_positive_finite_root(r.root);
}

AffineRoot AffineCtx::theta_on_affine(const AffineRoot& r) const {
  return {IntVec(inv_->theta_char() * r.root), r.level};
}

int AffineCtx::theta_simple_perm(int k) const {
  if (affine_perm_.empty() || affine_perm_[k] < 0)
    throw UnsupportedInput("theta permutation on simple affine roots unavailable");
  return affine_perm_[k];
}

Int AffineCtx::theta_sign(int k) const {
  const Eigen::Index s = datum_->num_simple();
  if (k < s) return inv_->pinning_signs[static_cast<size_t>(k)];
  // affine node of component c: the vector is the lowest root -theta_c
  const auto& comp = datum_->components[static_cast<size_t>(k - s)];
  if (comp.size() == 1) return inv_->pinning_signs[static_cast<size_t>(comp[0])];
  bool all_plus = true;
  for (int i : comp)
    if (inv_->pinning_signs[static_cast<size_t>(i)] != 1) all_plus = false;
  if (all_plus) return 1;
  // inner involutions: sign multiplicative over the simple coefficients
  if (inv_->theta_cochar.isIdentity()) {
    IntVec hr = datum_->highest_roots.col(k - s);
    auto coeffs = solve_rational(datum_->simple_roots, hr);
    if (coeffs) {
      Int sign = 1;
      for (Eigen::Index i = 0; i < datum_->num_simple(); ++i) {
        BigRat c = (*coeffs)[i];
        if (boost::multiprecision::denominator(c) != 1)
          throw UnsupportedInput("untracked scalar: non-integral highest root coefficients");
        if (static_cast<Int>(boost::multiprecision::numerator(c)) % 2 != 0 &&
            inv_->pinning_signs[static_cast<size_t>(i)] == -1)
          sign = -sign;
      }
      return sign;
    }
  }
  throw UnsupportedInput("untracked scalar: theta sign on affine node unavailable");
}

ExtAffWeylElt AffineCtx::identity() const {
  const Eigen::Index n = datum_->rank;
  return {IntVec::Zero(n), IntMat::Identity(n, n), IntMat::Identity(n, n)};
}

ExtAffWeylElt AffineCtx::translation(const IntVec& lambda) const {
  const Eigen::Index n = datum_->rank;
  return {lambda, IntMat::Identity(n, n), IntMat::Identity(n, n)};
}

ExtAffWeylElt AffineCtx::simple_reflection(int k) const {
  // s_{(beta,m)} = t^{-m beta_vee} s_beta
  const AffineRoot& a = simple_affine_[static_cast<size_t>(k)];
  const IntVec& av = simple_affine_coroots_[static_cast<size_t>(k)];
  const Eigen::Index n = datum_->rank;
  IntMat s = IntMat::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) s.col(j) -= a.root(j) * av;
  // s is an involution
  return {IntVec(-a.level * av), s, s};
}

ExtAffWeylElt mul(const ExtAffWeylElt& a, const ExtAffWeylElt& b) {
  return {IntVec(a.tr + a.fin * b.tr), IntMat(a.fin * b.fin), IntMat(b.fin_inv * a.fin_inv)};
}

ExtAffWeylElt inverse(const ExtAffWeylElt& a) {
  return {IntVec(-(a.fin_inv * a.tr)), a.fin_inv, a.fin};
}

IntVec char_action(const ExtAffWeylElt& a, const IntVec& x) {
  return a.fin_inv.transpose() * x;
}

AffineRoot act_on_affine_root(const ExtAffWeylElt& a, const AffineRoot& r) {
  IntVec g = char_action(a, r.root);
  return {g, r.level - g.dot(a.tr)};
}

Int length(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  const auto& pos = ctx.datum().positive_roots;
  Int total = 0;
  for (Eigen::Index k = 0; k < pos.cols(); ++k) {
    for (int sign : {1, -1}) {
      IntVec beta = sign * pos.col(k);
      IntVec gamma = char_action(a, beta);
      Int kk = gamma.dot(a.tr);
      Int d_gamma = ctx.is_positive_finite_root(gamma) ? 0 : 1;
      Int d_beta = sign > 0 ? 0 : 1;
      Int c = kk + d_gamma - d_beta;
      if (c > 0) total += c;
    }
  }
  return total;
}

ExtAffWeylElt theta_twist(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  const IntMat& th = ctx.inv().theta_cochar;
  return {IntVec(th * a.tr), IntMat(th * a.fin * th), IntMat(th * a.fin_inv * th)};
}

bool is_twisted_involution(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  return theta_twist(ctx, a) == inverse(a);
}

int left_descent(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  ExtAffWeylElt ai = inverse(a);
  for (int k = 0; k < ctx.num_simple_affine(); ++k)
    if (!ctx.is_positive(act_on_affine_root(ai, ctx.simple_affine(k)))) return k;
  return -1;
}

int right_descent(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  for (int k = 0; k < ctx.num_simple_affine(); ++k)
    if (!ctx.is_positive(act_on_affine_root(a, ctx.simple_affine(k)))) return k;
  return -1;
}

std::vector<int> reduced_word_left(const AffineCtx& ctx, ExtAffWeylElt a) {
  std::vector<int> word;
  int k;
  while ((k = left_descent(ctx, a)) >= 0) {
    word.push_back(k);
    a = mul(ctx.simple_reflection(k), a);
  }
  if (!(a == ctx.identity()))
    throw UnsupportedInput("element has a nontrivial length-zero part");
  return word;
}

OmegaPart omega_part(const AffineCtx& ctx, const ExtAffWeylElt& a) {
  ExtAffWeylElt x = a;
  ExtAffWeylElt aff = ctx.identity();
  int k;
  while ((k = right_descent(ctx, x)) >= 0) {
    x = mul(x, ctx.simple_reflection(k));
    aff = mul(ctx.simple_reflection(k), aff);
  }
  return {x, aff};
}

std::vector<IntMat> finite_weyl_elements(const BasedRootDatum& datum) {
  std::vector<IntMat> out;
  std::set<std::vector<Int>> seen;
  auto key = [&](const IntMat& m) {
    std::vector<Int> k;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
    return k;
  };
  std::queue<IntMat> bfs;
  IntMat id = IntMat::Identity(datum.rank, datum.rank);
  bfs.push(id);
  seen.insert(key(id));
  while (!bfs.empty()) {
    IntMat m = bfs.front();
    bfs.pop();
    out.push_back(m);
    for (Eigen::Index i = 0; i < datum.num_simple(); ++i) {
      IntMat nm = datum.simple_reflection_cochar(static_cast<int>(i)) * m;
      if (seen.insert(key(nm)).second) bfs.push(nm);
    }
    if (out.size() > 100000) throw AklvError("finite Weyl group too large");
  }
  return out;
}

bool finite_part_in_weyl(const BasedRootDatum& datum, const IntMat& m) {
  auto all = finite_weyl_elements(datum);
  return std::any_of(all.begin(), all.end(), [&](const IntMat& w) { return w == m; });
}

std::vector<ExtAffWeylElt> omega_elements(const AffineCtx& ctx, std::optional<Int> central_window) {
  const auto& datum = ctx.datum();
  const Eigen::Index n = datum.rank;
  // X_*/Q-vee via SNF of the coroot matrix
  Snf s = smith_normal_form(datum.simple_coroots);
  bool infinite = false;
  Int order = 1;
  Eigen::Index r = std::min(s.D.rows(), s.D.cols());
  Eigen::Index nonzero = 0;
  for (Eigen::Index i = 0; i < r; ++i)
    if (s.D(i, i) != 0) {
      order *= s.D(i, i);
      ++nonzero;
    }
  if (nonzero < n) infinite = true;
  if (infinite && !central_window)
    throw UnsupportedInput("Omega is infinite; a central translation window is required");
  if (!infinite && order == 1) return {ctx.identity()};

  const Int B = central_window.value_or(Int(1)) + 2;
  auto weyl = finite_weyl_elements(datum);
  std::vector<ExtAffWeylElt> found;
  IntVec lambda = IntVec::Constant(n, -B);
  while (true) {
    for (const IntMat& w : weyl) {
      IntMat winv(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        IntVec b = IntVec::Zero(n);
        b(j) = 1;
        auto col = solve_rational(w, b);
        if (!col) throw AklvError("singular Weyl matrix");
        for (Eigen::Index i = 0; i < n; ++i)
          winv(i, j) = static_cast<Int>(boost::multiprecision::numerator((*col)[i]));
      }
      ExtAffWeylElt e{lambda, w, winv};
      if (length(ctx, e) == 0) found.push_back(e);
    }
    // advance lambda in the box
    Eigen::Index pos = 0;
    while (pos < n && lambda(pos) == B) {
      lambda(pos) = -B;
      ++pos;
    }
    if (pos == n) break;
    ++lambda(pos);
  }
  std::sort(found.begin(), found.end(),
            [](const ExtAffWeylElt& a, const ExtAffWeylElt& b) { return cmp(a, b) < 0; });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  if (!infinite && static_cast<Int>(found.size()) != order)
    throw AklvError("Omega enumeration incomplete: found " + std::to_string(found.size()) +
                    " of " + std::to_string(order));
  return found;
}

std::vector<ExtAffWeylElt> enumerate(const AffineCtx& ctx, Int max_len, EnumFilter filter,
                                     std::optional<Int> central_window) {
  struct Entry {
    ExtAffWeylElt elt;
    Int len;
  };
  std::vector<Entry> all;
  std::set<std::pair<std::vector<Int>, std::vector<Int>>> seen;
  auto key = [](const ExtAffWeylElt& e) {
    std::vector<Int> kt(e.tr.data(), e.tr.data() + e.tr.size());
    std::vector<Int> kf;
    for (Eigen::Index i = 0; i < e.fin.rows(); ++i)
      for (Eigen::Index j = 0; j < e.fin.cols(); ++j) kf.push_back(e.fin(i, j));
    return std::make_pair(kt, kf);
  };
  std::queue<Entry> bfs;
  for (const auto& om : omega_elements(ctx, central_window)) {
    if (seen.insert(key(om)).second) bfs.push({om, 0});
  }
  while (!bfs.empty()) {
    Entry e = bfs.front();
    bfs.pop();
    all.push_back(e);
    if (e.len == max_len) continue;
    for (int k = 0; k < ctx.num_simple_affine(); ++k) {
      ExtAffWeylElt ne = mul(e.elt, ctx.simple_reflection(k));
      if (seen.count(key(ne))) continue;
      Int nl = length(ctx, ne);
      if (nl > max_len || nl <= e.len) continue;
      seen.insert(key(ne));
      bfs.push({ne, nl});
    }
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    if (a.len != b.len) return a.len < b.len;
    return cmp(a.elt, b.elt) < 0;
  });
  std::vector<ExtAffWeylElt> out;
  for (auto& e : all) {
    if (filter == EnumFilter::TwistedInvolutions && !is_twisted_involution(ctx, e.elt)) continue;
    out.push_back(e.elt);
  }
  return out;
}

// --- Tits calculus ---

TitsElt tits_of(const AffineCtx& ctx, const ExtAffWeylElt& w) {
  return {IntVec::Zero(ctx.datum().rank), w};
}

namespace {
// n_k * (kappa(-1) n_w), with the descent rule n_k n_w = coroot_k(-1) n_{s_k w}.
TitsElt prepend_simple(const AffineCtx& ctx, int k, const TitsElt& x) {
  const ExtAffWeylElt s = ctx.simple_reflection(k);
  IntVec kappa = mod2(IntVec(s.fin * x.kappa));
  ExtAffWeylElt sw = mul(s, x.w);
  if (length(ctx, sw) < length(ctx, x.w)) {
    kappa = mod2(IntVec(kappa + ctx.simple_affine_coroot(k)));
  }
  return {kappa, sw};
}
}  // namespace

TitsElt tits_mul(const AffineCtx& ctx, const TitsElt& a, const TitsElt& b) {
  std::vector<int> word = reduced_word_left(ctx, a.w);
  TitsElt acc = b;
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = prepend_simple(ctx, *it, acc);
  acc.kappa = mod2(IntVec(acc.kappa + a.kappa));
  return acc;
}

TitsElt tits_inverse(const AffineCtx& ctx, const TitsElt& a) {
  ExtAffWeylElt wi = inverse(a.w);
  TitsElt c = tits_mul(ctx, tits_of(ctx, wi), tits_of(ctx, a.w));
  if (!(c.w == ctx.identity())) throw AklvError("tits_inverse: cocycle not toral");
  IntVec kappa = mod2(IntVec(c.kappa + wi.fin * a.kappa));
  return {kappa, wi};
}

TitsElt tits_theta(const AffineCtx& ctx, const TitsElt& a) {
  std::vector<int> word = reduced_word_left(ctx, a.w);
  const Eigen::Index n = ctx.datum().rank;
  TitsElt acc{IntVec::Zero(n), ctx.identity()};
  const IntMat& th = ctx.inv().theta_cochar;
  for (int k : word) {
    int tk = ctx.theta_simple_perm(k);
    IntVec torus = IntVec::Zero(n);
    if (ctx.theta_sign(k) == -1) torus = mod2(IntVec(th * ctx.simple_affine_coroot(k)));
    TitsElt factor{torus, ctx.simple_reflection(tk)};
    acc = tits_mul(ctx, acc, factor);
  }
  acc.kappa = mod2(IntVec(acc.kappa + th * a.kappa));
  // element part must agree with the lattice-level twist
  if (!(acc.w == theta_twist(ctx, a.w))) throw AklvError("tits_theta: element mismatch");
  return acc;
}

}  // namespace aklv
