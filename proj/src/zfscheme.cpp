#include "flexbh/zfscheme.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "flexbh/errors.hpp"
#include "flexbh/linalg.hpp"

namespace flexbh {

namespace {

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void check_index_list(const std::vector<int>& v, int K, const std::string& what) {
  if (!std::is_sorted(v.begin(), v.end()) || std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument(what + " must be sorted and duplicate-free");
  for (int x : v)
    if (x < 1 || x > K)
      throw std::invalid_argument(what + " holds " + std::to_string(x) + " outside [1," +
                                  std::to_string(K) + "]");
}

}  // namespace

bool ZFScheme::is_served(int user) const { return contains(served, user); }
bool ZFScheme::is_deactivated(int tx) const { return contains(deactivated_tx, tx); }

void ZFScheme::validate() const {
  const int K = assignment.K();
  check_index_list(served, K, "served set");
  check_index_list(deactivated_tx, K, "deactivated transmitter set");
  for (const auto& [i, c] : cancellation_sets) {
    if (!is_served(i))
      throw std::invalid_argument("cancellation set given for unserved user " + std::to_string(i));
    check_index_list(c, K, "C_" + std::to_string(i));
    if (contains(c, i))
      throw std::invalid_argument("C_" + std::to_string(i) + " contains its own receiver");
  }
  for (const auto& [i, beam] : beams) {
    if (!is_served(i))
      throw std::invalid_argument("beam given for unserved user " + std::to_string(i));
    const auto& t = assignment.transmit_set(i);
    for (const auto& [j, x] : beam) {
      if (!contains(t, j))
        throw std::invalid_argument("beam of W_" + std::to_string(i) + " uses transmitter " +
                                    std::to_string(j) + " outside T_" + std::to_string(i));
      if (is_deactivated(j) && x != 0)
        throw std::invalid_argument("beam of W_" + std::to_string(i) +
                                    " drives deactivated transmitter " + std::to_string(j));
    }
  }
}

ZFScheme canonical_scheme(int K, int B) {
  ZFScheme s{canonical_flexible_assignment(K, B), {}, {}, {}, {}};
  const int block = 4 * B;
  for (int o = 0; o + block <= K; o += block) {
    for (int l = 1; l <= block; ++l) {
      if (l == 2 * B + 1) continue;
      const int user = o + l;
      s.served.push_back(user);
      std::vector<int> c;
      if (l <= 2 * B)
        for (int r = l + 1; r <= 2 * B; ++r) c.push_back(o + r);
      else
        for (int r = 2 * B + 2; r <= l - 1; ++r) c.push_back(o + r);
      s.cancellation_sets.emplace(user, std::move(c));
    }
    s.deactivated_tx.push_back(o + block);
  }
  return s;
}

ZFScheme design_beams(ZFScheme scheme, const ChannelRealization& h) {
  scheme.validate();
  if (!scheme.beams.empty()) throw std::invalid_argument("design_beams expects a scheme without beams");
  const auto& topo = h.topology();
  if (topo.K() != scheme.K()) throw std::invalid_argument("realization and scheme disagree on K");

  for (int i : scheme.served) {
    std::vector<int> free;
    for (int j : scheme.assignment.transmit_set(i))
      if (!scheme.is_deactivated(j)) free.push_back(j);
    const bool heard = std::any_of(free.begin(), free.end(), [&](int j) { return topo.support(i, j); });
    if (!heard)
      throw SchemeInfeasible(i, "user " + std::to_string(i) + " hears none of its active transmitters");

    std::vector<int> rows;
    auto c = scheme.cancellation_sets.find(i);
    if (c != scheme.cancellation_sets.end())
      for (int r : c->second)
        if (std::any_of(free.begin(), free.end(), [&](int j) { return topo.support(r, j); }))
          rows.push_back(r);

    RationalMatrix g(rows.size(), free.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < free.size(); ++b) g(a, b) = h.coefficient(rows[a], free[b]);
    const auto basis = nullspace(g);
    if (basis.empty())
      throw SchemeInfeasible(i, "cancellation system of user " + std::to_string(i) +
                                    " has only the zero solution");

    const std::vector<Rational>* chosen = nullptr;
    for (const auto& v : basis) {
      Rational gain = 0;
      for (std::size_t b = 0; b < free.size(); ++b) gain += h.coefficient(i, free[b]) * v[b];
      if (gain != 0) {
        chosen = &v;
        break;
      }
    }
    if (!chosen)
      throw GenericityFailure(i, "desired gain of user " + std::to_string(i) +
                                     " vanishes on this realization");

    Rational scale = 0;
    for (const auto& x : *chosen)
      if (x != 0) {
        scale = x;
        break;
      }
    auto& beam = scheme.beams[i];
    for (int j : scheme.assignment.transmit_set(i)) beam[j] = 0;
    for (std::size_t b = 0; b < free.size(); ++b) beam[free[b]] = (*chosen)[b] / scale;
  }
  return scheme;
}

namespace {

// Effective gain of every transmitted message at every receiver it reaches.
std::map<std::pair<int, int>, Rational> effective_gains(const ZFScheme& scheme,
                                                        const ChannelRealization& h) {
  std::map<std::pair<int, int>, Rational> gains;
  const auto& topo = h.topology();
  for (const auto& [m, beam] : scheme.beams)
    for (const auto& [j, x] : beam) {
      if (x == 0 || scheme.is_deactivated(j)) continue;
      for (int r : topo.receivers_hearing(j)) gains[{m, r}] += h.coefficient(r, j) * x;
    }
  return gains;
}

}  // namespace

DoFResult verify_scheme(const ZFScheme& scheme, const ChannelRealization& h) {
  scheme.validate();
  if (h.topology().K() != scheme.K()) throw std::invalid_argument("realization and scheme disagree on K");
  const int K = scheme.K();
  const auto gains = effective_gains(scheme, h);

  std::vector<bool> desired_ok(K + 1, false), interfered(K + 1, false);
  for (const auto& [key, g] : gains) {
    if (g == 0) continue;
    const auto [m, r] = key;
    if (m == r)
      desired_ok[r] = true;
    else
      interfered[r] = true;
  }

  DoFResult out;
  out.per_user.assign(K, 0);
  for (int i : scheme.served)
    if (desired_ok[i] && !interfered[i]) out.per_user[i - 1] = 1;
  for (int d : out.per_user) out.sum_dof += d;
  out.fraction = Rational(out.sum_dof, K);
  out.fraction.canonicalize();
  return out;
}

DesignOutcome design_with_resampling(const ZFScheme& scheme, const NetworkTopology& topology,
                                     std::uint64_t seed, int max_attempts) {
  for (int attempt = 0;; ++attempt) {
    const ChannelRealization h = sample_realization(topology, seed + attempt);
    try {
      ZFScheme designed = design_beams(scheme, h);
      DoFResult result = verify_scheme(designed, h);
      return {std::move(designed), std::move(result), seed + attempt, attempt};
    } catch (const GenericityFailure&) {
      if (attempt + 1 >= max_attempts) throw;
    }
  }
}

std::map<std::pair<int, int>, Rational> cancellation_residuals(const ZFScheme& scheme,
                                                               const ChannelRealization& h) {
  const auto gains = effective_gains(scheme, h);
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [i, c] : scheme.cancellation_sets)
    for (int r : c) {
      auto it = gains.find({i, r});
      out[{i, r}] = it == gains.end() ? Rational(0) : it->second;
    }
  return out;
}

std::map<int, std::vector<int>> closure_cancellation_sets(const MessageAssignment& a,
                                                          std::span<const int> served,
                                                          std::span<const int> deactivated_tx,
                                                          const NetworkTopology& topology) {
  const std::set<int> served_set(served.begin(), served.end());
  const std::set<int> off(deactivated_tx.begin(), deactivated_tx.end());
  std::map<int, std::vector<int>> out;
  for (int i : served) {
    std::set<int> c;
    for (int j : a.transmit_set(i)) {
      if (off.count(j)) continue;
      for (int r : topology.receivers_hearing(j))
        if (r != i && served_set.count(r)) c.insert(r);
    }
    out.emplace(i, std::vector<int>(c.begin(), c.end()));
  }
  return out;
}

bool verify_reconstruction(const MessageAssignment& a, std::span<const int> observed,
                           const ChannelRealization& h) {
  const int K = a.K();
  if (h.topology().K() != K) throw std::invalid_argument("realization and assignment disagree on K");
  std::vector<bool> in_a(K + 1, false);
  for (int i : observed) {
    if (i < 1 || i > K) throw std::invalid_argument("observed receiver outside [1,K]");
    in_a[i] = true;
  }
  std::set<int> unknown;
  for (int i = 1; i <= K; ++i)
    if (!in_a[i])
      for (int j : a.transmit_set(i)) unknown.insert(j);
  if (unknown.empty()) return true;

  std::vector<int> rows;
  for (int i = 1; i <= K; ++i)
    if (in_a[i]) rows.push_back(i);
  const std::vector<int> cols(unknown.begin(), unknown.end());
  RationalMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = h.coefficient(rows[r], cols[c]);
  return rank(m) == cols.size();
}

}  // namespace flexbh
