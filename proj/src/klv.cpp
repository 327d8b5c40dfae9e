#include "aklv/klv.hpp"

#include <algorithm>
#include <thread>

namespace aklv {

namespace {

// one column of the P-table: all entries P_{eta,u;xi,v} for fixed (xi,v)
std::vector<std::pair<std::pair<BasisKey, BasisKey>, HalfLaurent>> solve_column(
    const OrbitGraph& g, const DualityTable& bt, int v, int xi) {
  std::vector<std::pair<std::pair<BasisKey, BasisKey>, HalfLaurent>> out;
  const BasisKey vk{v, xi};
  std::map<BasisKey, HalfLaurent> column;  // known entries of this column
  column[vk] = HalfLaurent::one();
  out.push_back({{vk, vk}, HalfLaurent::one()});
  // down-set in descending delta, diagonal characters handled implicitly
  std::vector<int> lows = g.down_set(v);
  std::sort(lows.begin(), lows.end(), [&](int a, int b) {
    if (g.delta(a) != g.delta(b)) return g.delta(a) > g.delta(b);
    return a < b;
  });
  const Int dv = g.delta(v);
  for (int u : lows) {
    if (u == v) continue;
    const Int d = dv - g.delta(u);
    for (int eta = 0; eta < g.num_chars(u); ++eta) {
      const BasisKey uk{u, eta};
      // rhs = q^{delta(v)} sum_{u<z<=v} b_{eta,u;zeta,z} bar(P_{zeta,z;xi,v})
      HalfLaurent rhs;
      for (int z : g.down_set(v)) {
        if (z == u || g.delta(z) <= g.delta(u)) continue;
        if (!g.closure_leq(u, z)) continue;
        for (int zeta = 0; zeta < g.num_chars(z); ++zeta) {
          auto pz = column.find({z, zeta});
          if (pz == column.end()) continue;
          HalfLaurent b = bt.b(g, uk, {z, zeta});
          if (b.is_zero()) continue;
          rhs += b * pz->second.bar();
        }
      }
      rhs = rhs.shifted(static_cast<int>(2 * dv));
      HalfLaurent p;
      try {
        p = kl_extract(rhs, static_cast<int>(d));
      } catch (const TheoremViolation& e) {
        throw TheoremViolation(std::string(e.what()) + " while solving P at nodes (" +
                               std::to_string(u) + "," + std::to_string(v) + ")");
      }
      if (!p.is_zero()) {
        if (!p.integral_powers())
          throw TheoremViolation("non-polynomial P: fractional q-powers at (" +
                                 std::to_string(u) + "," + std::to_string(v) + ")");
        column[uk] = p;
        out.push_back({{uk, vk}, p});
      }
    }
  }
  return out;
}

}  // namespace

PTable solve_P(const OrbitGraph& g, const DualityTable& bt, int threads) {
  PTable table;
  std::vector<BasisKey> columns;
  for (int v = 0; v < g.num_nodes(); ++v)
    for (int c = 0; c < g.num_chars(v); ++c) columns.push_back({v, c});
  std::vector<std::vector<std::pair<std::pair<BasisKey, BasisKey>, HalfLaurent>>> results(
      columns.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i)
      results[i] = solve_column(g, bt, columns[i].first, columns[i].second);
  };
  const size_t n = columns.size();
  const size_t nthreads = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(threads), n));
  if (nthreads <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    const size_t chunk = (n + nthreads - 1) / nthreads;
    for (size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t * chunk, std::min(n, (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  for (auto& local : results)
    for (auto& [key, val] : local) table.entries.emplace(key, std::move(val));
  return table;
}

ModuleElt kl_basis_elt(const OrbitGraph& g, const PTable& p, int v, int xi) {
  ModuleElt c;
  const BasisKey vk{v, xi};
  for (const auto& [key, val] : p.entries)
    if (key.second == vk) c.add(key.first, val);
  (void)g;
  return c;
}

KlvCheck verify_selfdual(const OrbitGraph& g, const DualityTable& d, const PTable& p) {
  KlvCheck rep;
  for (int v = 0; v < g.num_nodes(); ++v)
    for (int xi = 0; xi < g.num_chars(v); ++xi) {
      ModuleElt c = kl_basis_elt(g, p, v, xi);
      ModuleElt c_neg = kl_basis_elt(g, p, v, g.char_neg(v, xi));
      ModuleElt residual =
          apply_duality(d, c) -
          c_neg.scaled(HalfLaurent::q_pow_half(static_cast<int>(-2 * g.delta(v))));
      ++rep.checked;
      if (!residual.is_zero())
        rep.failures.push_back("self-duality residual nonzero at node " + std::to_string(v) +
                               " char " + std::to_string(xi));
    }
  return rep;
}

KlvCheck verify_p_invariants(const OrbitGraph& g, const PTable& p) {
  KlvCheck rep;
  for (const auto& [key, val] : p.entries) {
    const auto& [uk, vk] = key;
    ++rep.checked;
    if (uk == vk) {
      if (!val.is_one()) rep.failures.push_back("diagonal P != 1");
      continue;
    }
    if (uk.first == vk.first) {
      rep.failures.push_back("off-diagonal P within one orbit");
      continue;
    }
    if (!val.is_poly_in_q()) {
      rep.failures.push_back("P not a polynomial in q at (" + std::to_string(uk.first) + "," +
                             std::to_string(vk.first) + ")");
      continue;
    }
    if (!val.nonneg_coeffs())
      rep.failures.push_back("P with negative coefficient at (" + std::to_string(uk.first) + "," +
                             std::to_string(vk.first) + ")");
    const Int d = g.delta(vk.first) - g.delta(uk.first);
    if (!val.is_zero() && 2 * val.deg_q() > d - 1)
      rep.failures.push_back("P degree window violated at (" + std::to_string(uk.first) + "," +
                             std::to_string(vk.first) + ")");
  }
  return rep;
}

CTable c_from_P(const OrbitGraph& g, const PTable& p) {
  CTable c;
  for (const auto& [key, val] : p.entries) {
    if (!val.is_poly_in_q() || !val.nonneg_coeffs())
      throw TheoremViolation("parity violation: P is not a nonnegative polynomial in q");
    const Int dv = g.delta(key.second.first);
    for (const auto& [half, coeff] : val.coeffs()) {
      const Int j = half / 2;
      c.entries[{key.first, key.second, 2 * j - dv}] = HalfLaurent::monomial(coeff, half);
    }
  }
  return c;
}

KlvCheck verify_c_parity(const OrbitGraph& g, const CTable& c) {
  KlvCheck rep;
  for (const auto& [key, val] : c.entries) {
    const auto& [uk, vk, i] = key;
    (void)uk;
    ++rep.checked;
    if ((i + g.delta(vk.first)) % 2 != 0 && !val.is_zero())
      rep.failures.push_back("odd c-slot occupied at i=" + std::to_string(i));
    // the slot value must be a nonnegative multiple of q^{(i+delta)/2}
    if (val.coeffs().size() > 1 ||
        (!val.is_zero() &&
         (val.min_half() != static_cast<int>(i + g.delta(vk.first)) || !val.nonneg_coeffs())))
      rep.failures.push_back("c-slot not a nonneg multiple of q^{(i+delta)/2}");
  }
  return rep;
}

KlvCheck verify_bc_relation(const OrbitGraph& g, const DualityTable& d, const PTable& p,
                            const CTable& c) {
  KlvCheck rep;
  // E_{eta,u;xi,v} := sum_i (-1)^i c_{eta,u;xi,v,i}, tabulated once
  std::map<std::pair<BasisKey, BasisKey>, HalfLaurent> e_table;
  for (const auto& [key, val] : c.entries) {
    auto& slot = e_table[{std::get<0>(key), std::get<1>(key)}];
    if (std::get<2>(key) % 2 == 0)
      slot += val;
    else
      slot -= val;
  }
  auto e_sum = [&](const BasisKey& uk, const BasisKey& vk) {
    auto it = e_table.find({uk, vk});
    return it == e_table.end() ? HalfLaurent() : it->second;
  };
  for (const auto& [key, pval] : p.entries) {
    (void)pval;
    const auto& [uk, vk] = key;
    if (uk == vk) continue;
    const int v = vk.first, u = uk.first;
    const Int dv = g.delta(v), du = g.delta(u);
    BasisKey uk_neg{u, g.char_neg(u, uk.second)};
    BasisKey vk_neg{v, g.char_neg(v, vk.second)};
    HalfLaurent lhs = e_sum(uk, vk_neg) -
                      e_sum(uk_neg, vk).bar().shifted(static_cast<int>(2 * (dv - du)));
    HalfLaurent sign = (dv % 2 == 0) ? HalfLaurent(1) : HalfLaurent(-1);
    HalfLaurent rhs = sign * d.b(g, uk, vk).shifted(static_cast<int>(2 * dv));
    for (int z : g.down_set(v)) {
      if (z == v || z == u) continue;
      if (!g.closure_leq(u, z)) continue;
      for (int zeta = 0; zeta < g.num_chars(z); ++zeta) {
        HalfLaurent bz = d.b(g, uk, {z, zeta});
        if (bz.is_zero()) continue;
        HalfLaurent ez = e_sum({z, zeta}, vk).bar();
        if (ez.is_zero()) continue;
        rhs += bz.shifted(static_cast<int>(2 * dv)) * ez;
      }
    }
    ++rep.checked;
    if (lhs != rhs)
      rep.failures.push_back("b/c relation fails at (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
  }
  return rep;
}

}  // namespace aklv
