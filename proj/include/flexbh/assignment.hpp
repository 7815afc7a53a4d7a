#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flexbh/rational.hpp"

namespace flexbh {

/// Transmit sets T_1..T_K. Each set is a sorted list of 1-based transmitter
/// indices; the empty set is allowed.
class MessageAssignment {
 public:
  /// Throws std::invalid_argument on out-of-range or duplicate indices or
  /// when the number of sets differs from K.
  MessageAssignment(int K, std::vector<std::vector<int>> transmit_sets);
  /// K = 0 placeholder, only useful as a target for assignment.
  MessageAssignment() = default;

  static MessageAssignment empty(int K);

  int K() const noexcept { return K_; }
  const std::vector<int>& transmit_set(int user) const { return sets_.at(user - 1); }
  const std::vector<std::vector<int>>& transmit_sets() const noexcept { return sets_; }

  /// Sum of transmit set sizes.
  int total_load() const;

  friend bool operator==(const MessageAssignment&, const MessageAssignment&) = default;

 private:
  int K_ = 0;
  std::vector<std::vector<int>> sets_;
};

/// R_j for j = 0..K: the fraction of users whose message sits at exactly j
/// transmitters.
struct BackhaulProfile {
  std::vector<Rational> R;
};

Rational backhaul_load(const MessageAssignment& a);
BackhaulProfile profile(const MessageAssignment& a);

/// Blocks of 4B users: the first 2B users cooperate forward up to local
/// transmitter 2B, user 2B+1 gets nothing, the rest cooperate backward down
/// to local transmitter 2B+1. A trailing partial block gets empty sets.
MessageAssignment canonical_flexible_assignment(int K, int B);

struct AssignmentStrategy {
  std::function<MessageAssignment(int)> generator;
  std::optional<std::function<int(int)>> radius_bound;
};

/// The canonical strategy for backhaul B, with radius 4B.
AssignmentStrategy canonical_strategy(int B);

/// True iff every T_i generated for every K in ks lies in [i-r(K), i+r(K)].
/// Throws std::invalid_argument when the strategy carries no radius bound.
bool check_local_cooperation(const AssignmentStrategy& s, std::span<const int> ks);

/// Drops every transmitter outside {user-M, ..., user+M-1}.
std::vector<int> prune_transmit_set(int user, std::span<const int> transmit_set, int M);

/// prune_transmit_set applied to every message. Requires |T_i| <= M for all
/// i (the hypothesis under which the removal costs no rate); throws
/// std::invalid_argument otherwise.
MessageAssignment prune_assignment(const MessageAssignment& a, int M);

}  // namespace flexbh
