#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "flexbh/assignment.hpp"

namespace testing_helpers {

// Random assignment with total load at most B*K: each message draws a size
// in [0, max_size] until the load runs out, then a random transmitter set.
inline flexbh::MessageAssignment random_assignment(std::mt19937_64& gen, int K, int B, int max_size) {
  std::vector<std::vector<int>> sets(K);
  int left = B * K;
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<int> tx(K);
  std::iota(tx.begin(), tx.end(), 1);
  for (int u : order) {
    const int cap = std::min({max_size, left, K});
    const int size = std::uniform_int_distribution<int>(0, cap)(gen);
    std::shuffle(tx.begin(), tx.end(), gen);
    sets[u].assign(tx.begin(), tx.begin() + size);
    left -= size;
  }
  return flexbh::MessageAssignment(K, std::move(sets));
}

// Random assignment whose sets lie in the windows {i-M, ..., i+M-1}.
inline flexbh::MessageAssignment random_windowed(std::mt19937_64& gen, int K, int M) {
  std::vector<std::vector<int>> sets(K);
  for (int i = 1; i <= K; ++i) {
    std::vector<int> w;
    for (int j = std::max(1, i - M); j <= std::min(K, i + M - 1); ++j) w.push_back(j);
    std::shuffle(w.begin(), w.end(), gen);
    const int size = std::uniform_int_distribution<int>(0, static_cast<int>(w.size()))(gen);
    sets[i - 1].assign(w.begin(), w.begin() + size);
  }
  return flexbh::MessageAssignment(K, std::move(sets));
}

}  // namespace testing_helpers
