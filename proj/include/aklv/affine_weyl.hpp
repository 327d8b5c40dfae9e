#pragma once

// Extended affine Weyl group W~ = W_aff x| Omega in t^lambda * w normal form:
// elements act on the cocharacter space by x -> fin*x + tr. Affine roots are
// (finite root, level) pairs. Also hosts the exact Tits-section calculus on
// T[2]-classes used by the orbit builder's fiber bookkeeping.

#include <functional>
#include <optional>

#include "aklv/root_datum.hpp"

namespace aklv {

struct ExtAffWeylElt {
  IntVec tr;        // translation cocharacter
  IntMat fin;       // finite Weyl part on the cocharacter lattice
  IntMat fin_inv;   // cached inverse

  bool operator==(const ExtAffWeylElt& o) const { return tr == o.tr && fin == o.fin; }
  bool operator!=(const ExtAffWeylElt& o) const { return !(*this == o); }
};

struct AffineRoot {
  IntVec root;  // finite root, character lattice
  Int level = 0;
  bool operator==(const AffineRoot& o) const { return level == o.level && root == o.root; }
};

int cmp(const ExtAffWeylElt& a, const ExtAffWeylElt& b);

// Per-pair context: simple affine roots, their coroots, positivity tests.
class AffineCtx {
 public:
  AffineCtx(const BasedRootDatum& datum, const InvolutionDatum& inv);

  const BasedRootDatum& datum() const { return *datum_; }
  const InvolutionDatum& inv() const { return *inv_; }

  int num_simple_affine() const { return static_cast<int>(simple_affine_.size()); }
  const AffineRoot& simple_affine(int k) const { return simple_affine_[k]; }
  const IntVec& simple_affine_coroot(int k) const { return simple_affine_coroots_[k]; }
  // index of the simple affine root equal to r, or -1
  int simple_affine_index(const AffineRoot& r) const;

  bool is_positive_finite_root(const IntVec& beta) const;
  bool is_finite_root(const IntVec& beta) const;
  bool is_positive(const AffineRoot& r) const;

  // theta on affine roots (level preserved); requires Borel-preserving theta.
  AffineRoot theta_on_affine(const AffineRoot& r) const;
  // permutation of the simple affine roots induced by theta
  int theta_simple_perm(int k) const;
  // sign by which theta acts on the pinned vector of simple affine root k;
  // throws UnsupportedInput("untracked scalar") outside the tracked cases.
  Int theta_sign(int k) const;

  ExtAffWeylElt identity() const;
  ExtAffWeylElt translation(const IntVec& lambda) const;
  ExtAffWeylElt simple_reflection(int k) const;

 private:
  const BasedRootDatum* datum_;
  const InvolutionDatum* inv_;
  std::vector<AffineRoot> simple_affine_;
  std::vector<IntVec> simple_affine_coroots_;
  std::vector<int> affine_perm_;  // theta permutation on simple affine roots
  std::set<std::vector<Int>> positive_set_;
  std::set<std::vector<Int>> root_set_;
};

ExtAffWeylElt mul(const ExtAffWeylElt& a, const ExtAffWeylElt& b);
ExtAffWeylElt inverse(const ExtAffWeylElt& a);

// Character-lattice action of the element's finite part.
IntVec char_action(const ExtAffWeylElt& a, const IntVec& x);

AffineRoot act_on_affine_root(const ExtAffWeylElt& a, const AffineRoot& r);

Int length(const AffineCtx& ctx, const ExtAffWeylElt& a);

ExtAffWeylElt theta_twist(const AffineCtx& ctx, const ExtAffWeylElt& a);

bool is_twisted_involution(const AffineCtx& ctx, const ExtAffWeylElt& a);

// first simple affine k with l(s_k a) < l(a), or -1
int left_descent(const AffineCtx& ctx, const ExtAffWeylElt& a);
int right_descent(const AffineCtx& ctx, const ExtAffWeylElt& a);

// reduced word a = s_{w[0]} ... s_{w[k-1]} * omega with l(omega) = 0
std::vector<int> reduced_word_left(const AffineCtx& ctx, ExtAffWeylElt a);

struct OmegaPart {
  ExtAffWeylElt omega;
  ExtAffWeylElt affine_part;
};
OmegaPart omega_part(const AffineCtx& ctx, const ExtAffWeylElt& a);

enum class EnumFilter { All, TwistedInvolutions };

// BFS enumeration, complete up to max_len, ordered by (length, canonical lex).
// `central_window` bounds the central-translation coordinates when Omega is
// infinite; required in that case.
std::vector<ExtAffWeylElt> enumerate(const AffineCtx& ctx, Int max_len, EnumFilter filter,
                                     std::optional<Int> central_window = std::nullopt);

// Length-zero elements (Omega). Same window caveat.
std::vector<ExtAffWeylElt> omega_elements(const AffineCtx& ctx,
                                          std::optional<Int> central_window = std::nullopt);

std::vector<IntMat> finite_weyl_elements(const BasedRootDatum& datum);

// Is the finite part a product of simple reflections (i.e. in W)?
bool finite_part_in_weyl(const BasedRootDatum& datum, const IntMat& m);

// --- Tits-section calculus ---------------------------------------------
// Elements kappa(-1) * n_w with kappa in X_*/2X_* and n_w the canonical lift
// over reduced words (n_a = x_a(1) x_{-a}(-1) x_a(1), n_a^2 = coroot(a)(-1)).
// Only W_aff parts are supported (Omega lifts are not tracked).

struct TitsElt {
  IntVec kappa;  // F2 vector
  ExtAffWeylElt w;
};

TitsElt tits_of(const AffineCtx& ctx, const ExtAffWeylElt& w);
TitsElt tits_mul(const AffineCtx& ctx, const TitsElt& a, const TitsElt& b);
TitsElt tits_inverse(const AffineCtx& ctx, const TitsElt& a);
TitsElt tits_theta(const AffineCtx& ctx, const TitsElt& a);

}  // namespace aklv
