#pragma once

// Spherical-orbit level: arc-group orbits are the connected components of the
// orbit graph under level-zero (finite) root moves; each carries a dominant
// label, the unique open Iwahori node, and a delta. Hosts the relative
// Kostka-Foulkes extraction, the spherical B-coefficients with their
// recurrence, the codimension-formula check, and the spherical closure order.

#include "aklv/klv.hpp"

namespace aklv {

struct SphericalOrbit {
  IntVec label;  // dominantized translation part of the open node's involution
  Int delta = 0;
  int open_node = -1;
  std::vector<int> members;
  // characters of the open node that extend to arc-group-equivariant systems
  // on the stratum (restriction transport total over all members)
  std::vector<int> chars;
};

// All spherical orbits with delta <= bound; throws "orbit graph too shallow"
// when bound exceeds the graph truncation.
std::vector<SphericalOrbit> enumerate_dominant(const OrbitGraph& g, const AffineCtx& ctx,
                                               Int bound);

// Restriction of the character chi at the stratum's open node to a member
// orbit u, transported along descent edges inside the stratum. Returns -1
// when u is not reachable or the transport is ambiguous.
int restrict_char(const OrbitGraph& g, const SphericalOrbit& orbit, int chi, int u);

struct RelKFTable {
  // (mu index, chi' at open_mu, lambda index, chi at open_lambda) -> P
  std::map<std::tuple<int, int, int, int>, HalfLaurent> entries;
  HalfLaurent get(int mu, int chip, int lam, int chi) const {
    auto it = entries.find({mu, chip, lam, chi});
    return it == entries.end() ? HalfLaurent() : it->second;
  }
};

// Reads the spherical P off the Iwahori table at the open orbit and verifies
// independence of the Iwahori representative ("restriction mismatch").
RelKFTable rel_kf(const OrbitGraph& g, const PTable& p, const std::vector<SphericalOrbit>& sph);

struct SphericalBTable {
  // (mu index, chi', lambda index, chi) -> B; diagonal q^{-delta(lambda)}
  std::map<std::tuple<int, int, int, int>, HalfLaurent> entries;
  HalfLaurent get(int mu, int chip, int lam, int chi) const {
    auto it = entries.find({mu, chip, lam, chi});
    return it == entries.end() ? HalfLaurent() : it->second;
  }
};

SphericalBTable b_spherical(const OrbitGraph& g, const DualityTable& d,
                            const std::vector<SphericalOrbit>& sph);

// P_sph recurrence against the B-table; also checks the pole-order bound.
KlvCheck verify_spherical_recurrence(const OrbitGraph& g, const std::vector<SphericalOrbit>& sph,
                                     const SphericalBTable& b, const RelKFTable& p);

// delta(mu) - delta(lambda) == <rho, mu - lambda> on comparable pairs.
// Precondition: LX connected, i.e. Lambda_S/(Lambda_S cap Q) trivial.
KlvCheck codim_check(const BasedRootDatum& datum, const InvolutionDatum& inv,
                     const std::vector<SphericalOrbit>& sph);

bool lx_connected(const BasedRootDatum& datum, const InvolutionDatum& inv);

// Dominance order on spherical labels: mu <= lambda iff lambda - mu is a
// nonnegative sum of positive coroots. Arguments must be dominant with
// theta(arg) in W(-arg) (the spherical membership condition).
bool spherical_closure_leq(const BasedRootDatum& datum, const InvolutionDatum& inv,
                           const IntVec& mu, const IntVec& lambda);

}  // namespace aklv
