#include "flexbh/topology.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "flexbh/linalg.hpp"

namespace flexbh {

std::string ModelDescriptor::name() const {
  switch (kind) {
    case ModelKind::kLinear: return "linear";
    case ModelKind::kLocallyConnected: return "locally_connected";
    case ModelKind::kTwoDimensional: return "two_dimensional";
  }
  return "unknown";
}

ModelDescriptor ModelDescriptor::from_name(const std::string& name, int L) {
  if (name == "linear") return linear();
  if (name == "locally_connected") return locally_connected(L);
  if (name == "two_dimensional") return two_dimensional();
  throw std::invalid_argument("unknown channel model '" + name + "'");
}

namespace {

// Offsets (receiver - transmitter) heard by a transmitter, before truncation.
std::vector<int> reach_offsets(const ModelDescriptor& model, int side) {
  switch (model.kind) {
    case ModelKind::kLinear: return {0, 1};
    case ModelKind::kLocallyConnected: {
      std::vector<int> out;
      for (int d = -(model.L / 2); d <= (model.L + 1) / 2; ++d) out.push_back(d);
      return out;
    }
    case ModelKind::kTwoDimensional: {
      std::vector<int> out{0, 1, side, side + 1};
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  return {};
}

}  // namespace

NetworkTopology build_topology(int K, ModelDescriptor model) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  NetworkTopology t;
  t.K_ = K;
  t.model_ = model;
  if (model.kind == ModelKind::kTwoDimensional) {
    int s = 0;
    while ((s + 1) * (s + 1) <= K) ++s;
    if (s * s != K)
      throw std::invalid_argument("two-dimensional model needs a perfect-square K, got " +
                                  std::to_string(K));
    t.side_ = s;
  } else if (model.kind == ModelKind::kLocallyConnected) {
    if (model.L < 1) throw std::invalid_argument("locally connected model needs L >= 1");
    if (model.L >= K)
      throw std::invalid_argument("locally connected model needs L < K (L=" +
                                  std::to_string(model.L) + ", K=" + std::to_string(K) + ")");
  } else {
    t.model_.L = 0;
  }

  const auto offsets = reach_offsets(t.model_, t.side_);
  t.rx_of_tx_.assign(K, {});
  t.tx_of_rx_.assign(K, {});
  for (int j = 1; j <= K; ++j) {
    for (int d : offsets) {
      const int i = j + d;
      if (i < 1 || i > K) continue;
      t.rx_of_tx_[j - 1].push_back(i);
      t.tx_of_rx_[i - 1].push_back(j);
    }
  }
  for (auto& v : t.tx_of_rx_) std::sort(v.begin(), v.end());
  return t;
}

bool NetworkTopology::support(int i, int j) const {
  if (i < 1 || i > K_ || j < 1 || j > K_) return false;
  const auto& rx = rx_of_tx_[j - 1];
  return std::find(rx.begin(), rx.end(), i) != rx.end();
}

std::vector<std::pair<int, int>> NetworkTopology::support_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= K_; ++i)
    for (int j : tx_of_rx_[i - 1]) out.emplace_back(i, j);
  return out;
}

std::pair<int, int> NetworkTopology::unclipped_reach(int tx) const {
  const auto offsets = reach_offsets(model_, side_);
  return {tx + offsets.front(), tx + offsets.back()};
}

ChannelRealization::ChannelRealization(NetworkTopology topology,
                                       const std::map<std::pair<int, int>, Rational>& coefficients,
                                       std::uint64_t seed)
    : topology_(std::move(topology)), seed_(seed), rows_(topology_.K()) {
  const auto pairs = topology_.support_pairs();
  if (coefficients.size() != pairs.size())
    throw std::invalid_argument("realization must define exactly the support coefficients");
  for (const auto& [rx, tx] : pairs) {
    auto it = coefficients.find({rx, tx});
    if (it == coefficients.end())
      throw std::invalid_argument("missing coefficient H(" + std::to_string(rx) + "," +
                                  std::to_string(tx) + ")");
    if (it->second == 0)
      throw std::invalid_argument("support coefficient H(" + std::to_string(rx) + "," +
                                  std::to_string(tx) + ") is zero");
    rows_[rx - 1].push_back({tx, it->second, ModularMatrix::reduce(it->second)});
  }
}

const ChannelRealization::Entry* ChannelRealization::find(int rx, int tx) const {
  if (rx < 1 || rx > topology_.K()) return nullptr;
  for (const auto& e : rows_[rx - 1])
    if (e.tx == tx) return &e;
  return nullptr;
}

Rational ChannelRealization::coefficient(int rx, int tx) const {
  const Entry* e = find(rx, tx);
  return e ? e->value : Rational(0);
}

std::uint64_t ChannelRealization::residue(int rx, int tx) const {
  const Entry* e = find(rx, tx);
  return e ? e->residue : 0;
}

ChannelRealization sample_realization(const NetworkTopology& topology, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::map<std::pair<int, int>, Rational> coeffs;
  for (const auto& p : topology.support_pairs()) {
    std::uint64_t v = 0;
    while (v == 0) v = gen() >> 33;
    coeffs.emplace(p, Rational(static_cast<unsigned long>(v)));
  }
  return ChannelRealization(topology, coeffs, seed);
}

}  // namespace flexbh
