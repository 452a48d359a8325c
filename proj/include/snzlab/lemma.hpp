#pragma once

// Exact verification of the duality / approximation machinery behind the
// strict-nonzeroness argument: the triangular matrix M and its dual basis,
// recovery of the combination coefficients b from a weight vector, the
// binomial-ratio matrix P~ with its power sandwich, the floor-spaced sample
// columns, and the quadratic form Q with exact eigenvalue certification.
// Everything is rational arithmetic; no check involves floating point.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snzlab/charge.hpp"
#include "snzlab/numeric.hpp"

namespace snzlab {

// M_{j,k} = (-1)^{k-j} C(t-j, t-k) together with the dual family
// u_i = (C(t-i, t), ..., C(t-i, 0)); columns v_k of M and the u_i satisfy
// <u_i, v_k> = [i == k].
struct DualBasisData {
  std::size_t t = 0;
  std::vector<std::vector<BigInt>> m;  // row j, column k

  std::vector<BigInt> column(std::size_t k) const;       // v_k
  std::vector<BigInt> dual_vector(std::size_t i) const;  // u_i
};

DualBasisData build_dual_basis(std::size_t t);

// True iff the duality identity holds exactly for every pair (i, k).
bool check_dual_basis(std::size_t t);

// b_k = <w, v_k> truncated at the last nonzero entry; R(X) = sum b_i X^i.
struct BCoefficients {
  std::size_t s = 0;        // degree: b[s] != 0
  std::vector<BigInt> b;    // size s+1
};

// Requires w not all zero; the reconstruction sum_i b_i u_i equals w.
BCoefficients recover_b(const WeightVector& w);

// sum_i b_i u_i over the level-t dual family (w recovery inverse).
std::vector<BigInt> combine_dual_vectors(const BCoefficients& b, std::size_t t);

// P~_{i,j} = C(t-i, t-j) / C(t, j) = prod_{r<i} (j-r)/(t-r);  row 0 is all 1.
BigRat ptilde_entry(std::size_t t, std::size_t i, std::size_t j);

struct RatioMatrix {
  std::size_t t = 0;
  std::vector<std::vector<BigRat>> rows;  // rows 0..max_row, each of length t+1
};

RatioMatrix build_ptilde(std::size_t t, std::size_t max_row);

// One entry of a check report; margin is the worst (smallest) slack seen,
// as an exact rational string.
struct CheckEntry {
  std::string check;
  std::map<std::string, std::string> params;
  bool ok = true;
  std::string margin;
  std::string note;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool all_ok() const;
};

// ((j-i+1)/t)^i <= P~_{i,j} <= (j/(t-i+1))^i for 1 <= i <= max_row,
// i < j, i < t-j; exact comparisons, any violation reported per cell.
CheckReport check_sandwich(std::size_t t, std::size_t max_row);

// Sample columns at lambda_ell = floor(ell*t/(s+2)), ell = 1..s+1, restricted
// to rows 0..s.  Requires s >= 1 and t >= (s+2)^2 (keeps the lambda_ell
// distinct and interior; the strict form t > (s+2)^2 would reject t = (s+2)^2
// where everything already holds).
struct SamplePoint {
  std::size_t ell = 0;
  std::size_t lambda = 0;
  std::vector<BigRat> column;  // rows 0..s
};

std::vector<SamplePoint> sample_points(std::size_t t, std::size_t s);

// Certifies (ell/(s+2))^i * lo(e^{-x}) <= P~_{i,lambda_ell} <=
// (ell/(s+2))^i * hi(e^{x}) with x = 4 s^3 / t, via exp_bounds.  Requires
// s >= 1, t >= 4(s+2)^2 and t >= 4 s^3 (so |x| <= 1 as exp_bounds needs).
CheckReport check_vandermonde_error(std::size_t t, std::size_t s,
                                    unsigned exp_terms = 32);

// Q_{ab} = sum_{ell=1..s+1} (ell/(s+2))^{a+b}, a symmetric positive-definite
// (s+1)x(s+1) rational matrix.
struct QuadraticForm {
  std::size_t s = 0;
  std::vector<std::vector<BigRat>> q;
};

QuadraticForm build_q(std::size_t s);

// Exact determinant (Gaussian elimination over the rationals).
BigRat rational_det(std::vector<std::vector<BigRat>> mat);

// Determinants of the leading k x k blocks, k = 1..n; all positive iff the
// symmetric matrix is positive definite.
std::vector<BigRat> leading_principal_minors(const std::vector<std::vector<BigRat>>& mat);

struct SpectralReport {
  std::size_t s = 0;
  BigRat det_q;
  BigRat det_lower_bound;          // (s+2)^{-2s(s+1)}
  bool det_ok = false;             // det_q >= det_lower_bound
  BigRat chain_bound;              // det_q / (s+1)^{2(s-1)}
  BigRat eigen_target;             // (10 s)^{-10 s^2}
  bool chain_ok = false;           // chain_bound >= eigen_target
  bool psd_chain_ok = false;       // Q - chain_bound*I positive definite
  std::vector<BigRat> chain_minors;
  BigRat corrected_chain_bound;    // det_q / (s+1)^{2s}
  bool psd_corrected_ok = false;   // Q - corrected_chain_bound*I pos. def.
  bool psd_eigen_ok = false;       // Q - eigen_target*I pos. def.
};

// Exact certification chain for the smallest eigenvalue of Q.  Note: the
// classical bound lambda_min >= det/lambda_1^{s-1} uses one factor too few
// for an (s+1)-dimensional form; at s = 1 the PSD check of
// Q - chain_bound*I exposes this (second minor -13/81).  The corrected
// exponent (s) and the eigen target are certified alongside.
SpectralReport q_spectral_report(std::size_t s);

// For each sampled w: recovers b, reports C = sum |b_i|, checks the coarse
// certified bound C <= (s+1)^2 * t^s and flags C <= (20 s)^{20 s^2}.
CheckReport check_bbound(std::size_t t, const std::vector<WeightVector>& sample);

// The full battery behind `check-lemmas`: dual basis, sandwich, Q chain;
// plus sample points / Vandermonde error when `s` is given and t is in range.
CheckReport run_lemma_checks(std::size_t t, std::optional<std::size_t> s);

}  // namespace snzlab
