#include "flexbh/bounds.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace flexbh {

std::vector<int> rank_complement(std::span<const int> S, int M) {
  if (M < 0) throw std::invalid_argument("M must be nonnegative");
  std::vector<int> out;
  const int period = 2 * M + 1;
  for (std::size_t k = 0; k < S.size(); ++k) {
    const int rank = static_cast<int>(k) + 1;
    if (rank >= M + 1 && (rank - (M + 1)) % period == 0) out.push_back(S[k]);
  }
  return out;
}

BoundWitness witness_for(const MessageAssignment& a, int M) {
  BoundWitness w;
  w.M = M;
  for (int i = 1; i <= a.K(); ++i)
    if (static_cast<int>(a.transmit_set(i).size()) <= M) w.S.push_back(i);
  w.A_bar = rank_complement(w.S, M);
  w.bound = a.K() - static_cast<int>(w.A_bar.size());
  return w;
}

bool meets_subset_guarantee(int S_size, int M, int K, int B) {
  return 4LL * B * S_size >= static_cast<long long>(2 * M + 1) * K;
}

BoundWitness lemma3_witness(const MessageAssignment& a, int B) {
  if (B < 1) throw std::invalid_argument("backhaul constraint B must be a positive integer");
  if (a.total_load() > static_cast<long long>(B) * a.K())
    throw std::invalid_argument("assignment load " + to_string(backhaul_load(a)) +
                                " exceeds B = " + std::to_string(B));
  std::optional<BoundWitness> best;
  for (int M = 0; M <= 2 * B - 1; ++M) {
    BoundWitness w = witness_for(a, M);
    if (!meets_subset_guarantee(static_cast<int>(w.S.size()), M, a.K(), B)) continue;
    const bool better = !best || w.bound < best->bound ||
                        (w.bound == best->bound && w.S.size() > best->S.size());
    if (better) best = std::move(w);
  }
  if (!best) throw std::logic_error("no M satisfies the subset-size guarantee; load check is broken");
  return *best;
}

int lemma2_bound(const BoundWitness& w, int K) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (!std::is_sorted(w.S.begin(), w.S.end()) || (!w.S.empty() && (w.S.front() < 1 || w.S.back() > K)))
    throw std::invalid_argument("witness S is not a sorted subset of [1,K]");
  for (int x : w.A_bar)
    if (!std::binary_search(w.S.begin(), w.S.end(), x))
      throw std::invalid_argument("witness A_bar is not a subset of S");
  return K - static_cast<int>(w.A_bar.size());
}

int lemma2_bound(const BoundWitness& w, const NetworkTopology& topology) {
  if (topology.model().kind != ModelKind::kLinear)
    throw std::invalid_argument("the DoF bound is only established for the linear model, not " +
                                topology.model().name());
  return lemma2_bound(w, topology.K());
}

Rational tau(int B) {
  if (B < 1) throw std::invalid_argument("B must be a positive integer");
  Rational q(4 * B - 1, 4 * B);
  q.canonicalize();
  return q;
}

ReconstructionInstance reconstruction_instance(const MessageAssignment& a, const BoundWitness& w) {
  const int K = a.K();
  std::vector<std::vector<int>> sets = a.transmit_sets();
  for (int i : w.S) sets[i - 1] = prune_transmit_set(i, a.transmit_set(i), w.M);

  std::vector<bool> hidden(K + 1, false);
  ReconstructionInstance out{MessageAssignment(K, std::move(sets)), {}, {}};
  for (int s : w.A_bar) {
    if (s + w.M > K)
      out.edge_dropped.push_back(s);
    else
      hidden[s] = true;
  }
  for (int i = 1; i <= K; ++i)
    if (!hidden[i]) out.observed.push_back(i);
  return out;
}

}  // namespace flexbh
