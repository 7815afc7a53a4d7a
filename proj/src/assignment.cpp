#include "flexbh/assignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flexbh {

MessageAssignment::MessageAssignment(int K, std::vector<std::vector<int>> transmit_sets)
    : K_(K), sets_(std::move(transmit_sets)) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (static_cast<int>(sets_.size()) != K)
    throw std::invalid_argument("expected " + std::to_string(K) + " transmit sets, got " +
                                std::to_string(sets_.size()));
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& t = sets_[i];
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw std::invalid_argument("duplicate transmitter in T_" + std::to_string(i + 1));
    for (int j : t)
      if (j < 1 || j > K)
        throw std::invalid_argument("transmitter " + std::to_string(j) + " in T_" +
                                    std::to_string(i + 1) + " outside [1," +
                                    std::to_string(K) + "]");
  }
}

MessageAssignment MessageAssignment::empty(int K) {
  return MessageAssignment(K, std::vector<std::vector<int>>(K > 0 ? K : 0));
}

int MessageAssignment::total_load() const {
  int total = 0;
  for (const auto& t : sets_) total += static_cast<int>(t.size());
  return total;
}

Rational backhaul_load(const MessageAssignment& a) {
  Rational q(a.total_load(), a.K());
  q.canonicalize();
  return q;
}

BackhaulProfile profile(const MessageAssignment& a) {
  std::vector<int> counts(a.K() + 1, 0);
  for (const auto& t : a.transmit_sets()) ++counts[t.size()];
  BackhaulProfile p;
  p.R.reserve(counts.size());
  for (int c : counts) {
    Rational q(c, a.K());
    q.canonicalize();
    p.R.push_back(q);
  }
  return p;
}

MessageAssignment canonical_flexible_assignment(int K, int B) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (B < 1) throw std::invalid_argument("backhaul constraint B must be a positive integer");
  const int block = 4 * B;
  std::vector<std::vector<int>> sets(K);
  for (int offset = 0; offset + block <= K; offset += block) {
    for (int l = 1; l <= 2 * B; ++l)
      for (int t = l; t <= 2 * B; ++t) sets[offset + l - 1].push_back(offset + t);
    for (int l = 2 * B + 2; l <= block; ++l)
      for (int t = 2 * B + 1; t <= l - 1; ++t) sets[offset + l - 1].push_back(offset + t);
  }
  return MessageAssignment(K, std::move(sets));
}

AssignmentStrategy canonical_strategy(int B) {
  if (B < 1) throw std::invalid_argument("backhaul constraint B must be a positive integer");
  return {[B](int K) { return canonical_flexible_assignment(K, B); },
          [B](int) { return 4 * B; }};
}

bool check_local_cooperation(const AssignmentStrategy& s, std::span<const int> ks) {
  if (!s.radius_bound) throw std::invalid_argument("strategy has no radius bound r(K)");
  for (int K : ks) {
    const MessageAssignment a = s.generator(K);
    const int r = (*s.radius_bound)(K);
    for (int i = 1; i <= a.K(); ++i)
      for (int j : a.transmit_set(i))
        if (j < i - r || j > i + r) return false;
  }
  return true;
}

std::vector<int> prune_transmit_set(int user, std::span<const int> transmit_set, int M) {
  std::vector<int> kept;
  for (int k : transmit_set)
    if (k >= user - M && k <= user + M - 1) kept.push_back(k);
  return kept;
}

MessageAssignment prune_assignment(const MessageAssignment& a, int M) {
  std::vector<std::vector<int>> sets;
  sets.reserve(a.K());
  for (int i = 1; i <= a.K(); ++i) {
    const auto& t = a.transmit_set(i);
    if (static_cast<int>(t.size()) > M)
      throw std::invalid_argument("|T_" + std::to_string(i) + "| = " + std::to_string(t.size()) +
                                  " exceeds M = " + std::to_string(M));
    sets.push_back(prune_transmit_set(i, t, M));
  }
  return MessageAssignment(a.K(), std::move(sets));
}

}  // namespace flexbh
