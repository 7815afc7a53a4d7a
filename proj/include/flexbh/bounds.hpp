#pragma once

#include <span>
#include <vector>

#include "flexbh/assignment.hpp"
#include "flexbh/rational.hpp"
#include "flexbh/topology.hpp"

namespace flexbh {

/// Certificate for a DoF upper bound: the users S whose messages sit at no
/// more than M transmitters, and the subset A_bar of S holding the elements
/// whose ascending rank in S is congruent to M+1 modulo 2M+1.
struct BoundWitness {
  int M = 0;
  std::vector<int> S;
  std::vector<int> A_bar;
  int bound = 0;  // K - |A_bar|
};

/// Elements of the sorted set S with rank (2M+1)(j-1) + M + 1, j >= 1.
std::vector<int> rank_complement(std::span<const int> S, int M);

/// Witness for a fixed M with S = { i : |T_i| <= M }.
BoundWitness witness_for(const MessageAssignment& a, int M);

/// 4B|S| >= (2M+1)K, the integer form of the subset-size guarantee.
bool meets_subset_guarantee(int S_size, int M, int K, int B);

/// Over M in {0, ..., 2B-1}, the witness meeting the subset-size guarantee
/// with the smallest bound; ties go to the larger S, then the smaller M.
/// Throws std::invalid_argument if B < 1 or the assignment exceeds load B.
BoundWitness lemma3_witness(const MessageAssignment& a, int B);

/// K - |A_bar|. Throws std::invalid_argument for a witness inconsistent with K.
int lemma2_bound(const BoundWitness& w, int K);

/// Same, but refuses every topology except the linear model, whose
/// connectivity the converse argument relies on.
int lemma2_bound(const BoundWitness& w, const NetworkTopology& topology);

/// (4B-1)/(4B). Throws std::invalid_argument for B < 1.
Rational tau(int B);

/// Input for verify_reconstruction built from a witness: messages of S are
/// cut to their window {i-M, ..., i+M-1}, and the unobserved receivers are
/// A_bar minus the elements within M of the last user (those are the
/// finite-K edge slack of the bound).
struct ReconstructionInstance {
  MessageAssignment pruned;
  std::vector<int> observed;
  std::vector<int> edge_dropped;
};

ReconstructionInstance reconstruction_instance(const MessageAssignment& a, const BoundWitness& w);

}  // namespace flexbh
