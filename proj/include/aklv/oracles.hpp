#pragma once

// Independent brute-force references. These share only the coefficient ring
// with the main pipeline: the Coxeter oracle works in the integral reflection
// representation built from a Cartan matrix, the Kostka-Foulkes oracle is a
// rho-shifted alternation of the q-Kostant partition function, and the
// GL2/O2 oracle checks the closure-curve sequence identities over Q(mu0).

#include "aklv/half_laurent.hpp"
#include "aklv/root_datum.hpp"

namespace aklv {

// Coxeter system in the reflection representation attached to a generalized
// Cartan matrix (rows/cols = generators); affine types give exact integer
// matrices. Elements are enumerated up to a length bound.
class CoxeterOracle {
 public:
  explicit CoxeterOracle(const IntMat& cartan, Int max_len);

  int num_elements() const { return static_cast<int>(elements_.size()); }
  Int len(int e) const { return lengths_[static_cast<size_t>(e)]; }
  int find(const IntMat& m) const;
  const IntMat& matrix(int e) const { return elements_[static_cast<size_t>(e)]; }
  int num_gens() const { return static_cast<int>(cartan_.rows()); }

  // product with a generator (both must stay within the enumerated ball)
  int mul_gen(int e, int s, bool left) const;

  bool bruhat_leq(int u, int w) const;

  // classical KL polynomial / R polynomial in q
  HalfLaurent kl_poly(int u, int w) const;
  HalfLaurent r_poly(int u, int w) const;

 private:
  int descent(int w, bool left) const;  // some descent generator, or -1
  HalfLaurent mu(int z, int w) const;

  IntMat cartan_;
  std::vector<IntMat> elements_;
  std::vector<Int> lengths_;
  std::vector<std::vector<int>> left_mul_, right_mul_;  // -1 = outside the ball
  std::map<std::vector<Int>, int> index_;
  mutable std::map<std::pair<int, int>, HalfLaurent> kl_cache_, r_cache_;
  mutable std::map<std::pair<int, int>, int> bruhat_cache_;
};

// Cartan matrix of the affine Weyl group of the datum (simple roots plus one
// affine node per Dynkin component).
IntMat affine_cartan_matrix(const BasedRootDatum& datum);

// Lusztig q-analog of the weight multiplicity of mu in the highest-weight
// module of lambda, computed for the coroot system of `datum` (arguments are
// cocharacters): K_{lambda,mu}(q) = sum_w (-1)^{l(w)} P_q(w(lambda+rho)-(mu+rho)).
HalfLaurent q_weight_mult(const BasedRootDatum& datum, const IntVec& lambda, const IntVec& mu);

struct GL2O2Seq {
  std::vector<BigRat> lambda;  // lambda_0 .. lambda_{m+1}
  std::vector<BigRat> mu_over_mu0;  // mu_i = c_i * mu0 with mu0^2 = (-1)^{m+1}
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Computes the closure-curve sequences for the given m and verifies the
// convolution identities sum_k mu_k mu_{i-k} = (-1)^{m+1-i}, the m-th sum
// = -1, and the auxiliary relation mu_i = (sum_k (-1)^k lambda_{i-k}) mu_0.
GL2O2Seq gl2o2_sequences(int m);

}  // namespace aklv
