#ifndef SMZ_BRAID_HPP
#define SMZ_BRAID_HPP

// The Ind construction on families satisfying the infinitesimal pure braid
// relations, the tower A^(k) = Ind(A^(k+1)) with A^(n)_ij = a_ij, and checks
// built on it.

#include "smz/graphs.hpp"
#include "smz/poly.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace smz {

using IntPolyMatrix = PolyMatrix<long long>;

// Matrices A_ij, 1 <= i < j <= k, stored by pair_symbol(i, j).
struct BraidFamily {
  int k = 0;
  int dim = 0;
  std::vector<IntPolyMatrix> mats;

  const IntPolyMatrix& A(int i, int j) const { return mats.at(pair_symbol(i, j)); }
  IntPolyMatrix& A(int i, int j) { return mats.at(pair_symbol(i, j)); }
};

// A_ij = a_ij as 1x1 matrices.
BraidFamily scalar_family(int k);

// Level k -> level k-1. Block (i_k) is the outermost index of the new space.
BraidFamily ind_step(const BraidFamily& fam);

// Ind on plain numeric matrices (used for corrupted-input negative controls).
std::vector<Eigen::MatrixXd> ind_step_numeric(const std::vector<Eigen::MatrixXd>& a, int k);

struct Tower {
  int n = 0, r = 0;
  std::vector<BraidFamily> levels;  // levels[0] is level n
  const BraidFamily& level(int k) const;
};

// Dimension k(k+1)...(n-1); throws when it exceeds max_dim.
long long tower_dimension(int n, int k);
Tower build_tower(int n, int r, long long max_dim = 5040);

// Position of (i_{r+1},...,i_n) in V_{r,n}, i_{r+1} outermost.
int tuple_coordinate(const IndexTuple& I);
IndexTuple coordinate_tuple(int n, int r, int coord);

struct RelationDefect {
  std::string relation;  // e.g. "[A12+A23,A13]"
  double norm = 0;
};

// Commutator norms for every relation [A_ij, A_kl] (disjoint pairs) and
// [A_ij + A_jk, A_ik]. Exact for the polynomial tower; the numeric variant
// reports values at or below tol as 0.
std::vector<RelationDefect> pure_braid_defects(const BraidFamily& fam);
std::vector<RelationDefect> pure_braid_defects(const std::vector<Eigen::MatrixXd>& a, int k, double tol = 0);

bool is_degree_one_homogeneous(const BraidFamily& fam);

// Substitute numeric values for the symbols (values indexed by pair_symbol).
Eigen::MatrixXd specialize(const IntPolyMatrix& m, const std::vector<double>& alpha);
std::vector<Eigen::MatrixXd> specialize(const BraidFamily& fam, const std::vector<double>& alpha);

// a_ij = p/1000 with p uniform in [40, 160].
std::vector<double> sample_generic_alpha(int n, std::mt19937_64& rng);

// (a;b) = a(a+1)...(a+b-1)
long long ascending_factorial(long long a, int b);

struct SpectrumEntry {
  std::vector<int> T;  // subset of [k+1, n]
  double value = 0;    // a_{S u T}
  long long multiplicity = 0;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> formula;
  std::vector<double> formula_multiset;  // sorted
  std::vector<double> numeric;           // sorted real parts
  double max_imag = 0;
  double max_deviation = 0;
  double eigvec_condition = 0;
  double invariance_residual = 0;  // reduced variant only
  long long dimension = 0;
};

double alpha_sum(const std::vector<int>& U, const std::vector<double>& alpha);

std::vector<SpectrumEntry> spectrum_formula(const std::vector<int>& S, int k, int n,
                                            const std::vector<double>& alpha, bool reduced);

// Basis (columns) of the reduced subspace of V_{k,n}: at every level the block
// vectors sum to zero.
Eigen::MatrixXd reduced_basis(int n, int k);

SpectrumReport spectrum(const Tower& tower, const std::vector<int>& S, int k,
                        const std::vector<double>& alpha, bool reduced);

// A_S = sum_{i<j in S} A_ij at the given level.
IntPolyMatrix subset_sum(const BraidFamily& fam, const std::vector<int>& S);

// A_{e_l} ... A_{e_1}
IntPolyMatrix graph_matrix(const OrderedRootedGraph& g, const BraidFamily& fam);

// Both sides of the combinatorial identity at a rational point x (1-based),
// with commuting symbols: the I-coordinate of w_r and
// sum_Gamma a_Gamma prod_e a_e omega_coefficient(Gamma, x).
struct EtaGammaResult {
  AlphaPoly w_coordinate;
  AlphaPoly eta;
  Rational defect;  // max |coefficient| of the difference
};
EtaGammaResult eta_gamma_check(const Tower& tower, const IndexTuple& I, const std::vector<Rational>& x);

// All w_r coordinates at once.
std::vector<AlphaPoly> w_vector(const Tower& tower, const std::vector<Rational>& x);

// Product formula for the q-th component of A_Gamma^(n-1) (a_np e_p) on trees
// Gamma with vertex set [n-1]. Returns the number of (Gamma, p, q) cases that
// disagree with the closed form (including the vanishing statement).
struct ProductLemmaReport {
  long long cases = 0;
  long long nonzero_cases = 0;
  long long mismatches = 0;
};
ProductLemmaReport product_lemma_check(const Tower& tower, const std::vector<OrderedRootedGraph>& graphs);

}  // namespace smz

#endif
