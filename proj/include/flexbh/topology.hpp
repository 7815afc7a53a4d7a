#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flexbh/rational.hpp"

namespace flexbh {

enum class ModelKind { kLinear, kLocallyConnected, kTwoDimensional };

struct ModelDescriptor {
  ModelKind kind = ModelKind::kLinear;
  int L = 0;  // only meaningful for kLocallyConnected

  static ModelDescriptor linear() { return {ModelKind::kLinear, 0}; }
  static ModelDescriptor locally_connected(int L) { return {ModelKind::kLocallyConnected, L}; }
  static ModelDescriptor two_dimensional() { return {ModelKind::kTwoDimensional, 0}; }

  std::string name() const;
  static ModelDescriptor from_name(const std::string& name, int L = 0);

  friend bool operator==(const ModelDescriptor&, const ModelDescriptor&) = default;
};

/// Which transmitter is heard at which receiver. Users, receivers and
/// transmitters are all indexed 1..K.
class NetworkTopology {
 public:
  int K() const noexcept { return K_; }
  const ModelDescriptor& model() const noexcept { return model_; }
  /// Grid side for the two-dimensional model, 0 otherwise.
  int side() const noexcept { return side_; }

  /// True iff receiver i hears transmitter j.
  bool support(int i, int j) const;

  const std::vector<int>& receivers_hearing(int tx) const { return rx_of_tx_.at(tx - 1); }
  const std::vector<int>& transmitters_heard_by(int rx) const { return tx_of_rx_.at(rx - 1); }

  /// All (receiver, transmitter) pairs on the support, sorted lexicographically.
  std::vector<std::pair<int, int>> support_pairs() const;

  /// Receivers that would hear tx if the network were not truncated to
  /// [1,K]; used to decide whether a transmitter leaks past a block edge.
  std::pair<int, int> unclipped_reach(int tx) const;

 private:
  friend NetworkTopology build_topology(int K, ModelDescriptor model);

  int K_ = 0;
  int side_ = 0;
  ModelDescriptor model_;
  std::vector<std::vector<int>> rx_of_tx_;
  std::vector<std::vector<int>> tx_of_rx_;
};

/// Throws std::invalid_argument for K < 1, a non-square K in the
/// two-dimensional model, or L outside [1, K-1] in the locally connected one.
NetworkTopology build_topology(int K, ModelDescriptor model);

/// Exact nonzero coefficients on the support of a topology.
class ChannelRealization {
 public:
  /// Coefficients must cover the support exactly and be nonzero.
  ChannelRealization(NetworkTopology topology,
                     const std::map<std::pair<int, int>, Rational>& coefficients,
                     std::uint64_t seed = 0);

  const NetworkTopology& topology() const noexcept { return topology_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// H_{i,j}; exactly zero off the support.
  Rational coefficient(int rx, int tx) const;
  /// H_{i,j} reduced modulo ModularMatrix::kPrime.
  std::uint64_t residue(int rx, int tx) const;

 private:
  struct Entry {
    int tx;
    Rational value;
    std::uint64_t residue;
  };
  const Entry* find(int rx, int tx) const;

  NetworkTopology topology_;
  std::uint64_t seed_;
  std::vector<std::vector<Entry>> rows_;
};

/// Deterministic in seed. Every support coefficient is an integer drawn
/// uniformly from [1, 2^31).
ChannelRealization sample_realization(const NetworkTopology& topology, std::uint64_t seed);

}  // namespace flexbh
