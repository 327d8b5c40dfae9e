#include "aklv/hecke_module.hpp"

namespace aklv {

void ModuleElt::add(const BasisKey& k, const HalfLaurent& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_[k] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ModuleElt ModuleElt::operator+(const ModuleElt& o) const {
  ModuleElt r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

ModuleElt ModuleElt::operator-(const ModuleElt& o) const {
  ModuleElt r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, -c);
  return r;
}

ModuleElt ModuleElt::scaled(const HalfLaurent& f) const {
  ModuleElt r;
  for (const auto& [k, c] : terms_) r.add(k, c * f);
  return r;
}

ModuleElt ModuleElt::bar_scaled(const HalfLaurent& f) const { return scaled(f.bar()); }

ModuleElt t_simple(const OrbitGraph& g, int k, const ModuleElt& m) {
  const HalfLaurent q = HalfLaurent::q();
  const HalfLaurent one = HalfLaurent::one();
  ModuleElt out;
  for (const auto& [key, coeff] : m.terms()) {
    const auto& [v, c] = key;
    const Edge& e = g.edge(v, k);
    const size_t ci = static_cast<size_t>(c);
    switch (e.type) {
      case OrbitType::I:
        out.add({v, c}, coeff * q);
        break;
      case OrbitType::IIa:
        if (e.up < 0) throw TruncationOverflow("truncation overflow: IIa neighbor above bound");
        out.add({e.up, e.cross_up[ci]}, coeff);
        break;
      case OrbitType::IIb:
        out.add({v, c}, coeff * (q - one));
        out.add({e.down, e.cross_down[ci]}, coeff * q);
        break;
      case OrbitType::IIIa:
        if (e.up < 0) throw TruncationOverflow("truncation overflow: IIIa neighbor above bound");
        out.add({e.partner, e.cross_partner[ci]}, coeff);
        out.add({e.up, e.cross_up[ci]}, coeff);
        break;
      case OrbitType::IIIb:
        if (e.a_nonzero[ci]) {
          out.add({v, c}, -coeff);
        } else {
          out.add({v, c}, coeff * (q - HalfLaurent(2)));
          out.add({e.down, e.bar_down[ci]}, coeff * (q - one));
          out.add({e.partner, e.bar_down[ci]}, coeff * (q - one));
        }
        break;
      case OrbitType::IVa:
        if (e.up < 0) throw TruncationOverflow("truncation overflow: IVa neighbor above bound");
        out.add({v, c}, coeff);
        out.add({e.up, e.preimages[ci].first}, coeff);
        out.add({e.up, e.preimages[ci].second}, coeff);
        break;
      case OrbitType::IVb:
        if (e.a_nonzero[ci]) {
          out.add({v, c}, -coeff);
        } else {
          out.add({v, c}, coeff * (q - one));
          out.add({v, e.xi_prime[ci]}, -coeff);
          out.add({e.down, e.bar_down[ci]}, coeff * (q - one));
        }
        break;
    }
  }
  return out;
}

ModuleElt omega_act(const OrbitGraph& g, const AffineCtx& ctx, const ExtAffWeylElt& omega,
                    const ModuleElt& m) {
  if (length(ctx, omega) != 0) throw AklvError("not length zero");
  if (omega == ctx.identity()) return m;
  ExtAffWeylElt om_inv = inverse(omega);
  ModuleElt out;
  for (const auto& [key, coeff] : m.terms()) {
    const auto& [v, c] = key;
    const Node& node = g.nodes[static_cast<size_t>(v)];
    ExtAffWeylElt w2 = mul(mul(omega, node.w), inverse(theta_twist(ctx, omega)));
    IntVec kappa2 = mod2(IntVec(omega.fin * node.tau.kappa));
    IntMat psi2 = w2.fin * ctx.inv().theta_cochar;
    const Eigen::Index n = ctx.datum().rank;
    IntMat span = f2_column_basis(saturation_basis(IntMat(IntMat::Identity(n, n) - psi2)));
    IntVec tag2 = f2_reduce(span, kappa2);
    int v2 = g.find_node(w2, tag2);
    if (v2 < 0) throw TruncationOverflow("omega action leaves the built graph");
    const ComponentGroup& cg2 = g.nodes[static_cast<size_t>(v2)].cg;
    IntVec x2 = cg2.reduce(char_action(om_inv, node.cg.chars[static_cast<size_t>(c)]));
    int c2 = cg2.char_index(x2);
    if (c2 < 0) throw TheoremViolation("omega action left the character group");
    out.add({v2, c2}, coeff);
  }
  return out;
}

ModuleElt word_act(const OrbitGraph& g, const AffineCtx& ctx, const std::vector<WordStep>& word,
                   ModuleElt m) {
  for (const WordStep& s : word) {
    if (s.is_omega)
      m = omega_act(g, ctx, s.omega, m);
    else
      m = t_simple(g, s.root, m);
  }
  return m;
}

int braid_order(const AffineCtx& ctx, int k1, int k2) {
  const AffineRoot& a = ctx.simple_affine(k1);
  const AffineRoot& b = ctx.simple_affine(k2);
  Int p = a.root.dot(ctx.simple_affine_coroot(k2));
  Int q = b.root.dot(ctx.simple_affine_coroot(k1));
  Int n = p * q;
  if (n == 0) return 2;
  if (n == 1) return 3;
  if (n == 2) return 4;
  if (n == 3) return 6;
  return 0;  // infinite
}

}  // namespace aklv
