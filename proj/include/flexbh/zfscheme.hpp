#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "flexbh/assignment.hpp"
#include "flexbh/rational.hpp"
#include "flexbh/topology.hpp"

namespace flexbh {

/// A one-shot zero-forcing scheme: which users are served, which
/// transmitters are switched off, where each message is nulled, and (once
/// designed) the per-transmitter beam coefficients of every served message.
struct ZFScheme {
  MessageAssignment assignment;
  std::vector<int> served;
  std::vector<int> deactivated_tx;
  std::map<int, std::vector<int>> cancellation_sets;
  /// beams[i][j] for j in T_i; empty until design_beams runs.
  std::map<int, std::map<int, Rational>> beams;

  int K() const noexcept { return assignment.K(); }
  bool is_served(int user) const;
  bool is_deactivated(int tx) const;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

struct DoFResult {
  int sum_dof = 0;
  std::vector<int> per_user;
  Rational fraction;
};

/// The 4B-block scheme: users 1..2B and 2B+2..4B of each block are served,
/// transmitter 4B of each block is off.
ZFScheme canonical_scheme(int K, int B);

/// Solves every served user's cancellation system exactly. The returned
/// beam is the nullspace basis vector (lowest free column first) with a
/// nonzero desired gain, scaled so its first nonzero coefficient is 1.
///
/// Throws SchemeInfeasible when a system has no nonzero solution or the
/// user hears none of its active transmitters, GenericityFailure when every
/// solution has zero desired gain on this realization.
ZFScheme design_beams(ZFScheme scheme, const ChannelRealization& h);

struct DesignOutcome {
  ZFScheme scheme;
  DoFResult result;
  std::uint64_t seed = 0;  // realization the beams were designed on
  int resamples = 0;       // genericity failures skipped before `seed`
};

/// design_beams + verify_scheme on sample_realization(topology, seed),
/// moving to seed+1, seed+2, ... after a GenericityFailure. Gives up with
/// the last GenericityFailure after max_attempts realizations.
DesignOutcome design_with_resampling(const ZFScheme& scheme, const NetworkTopology& topology,
                                     std::uint64_t seed, int max_attempts = 16);

/// Exact check: user i counts iff its desired gain is nonzero and every
/// other transmitted message has exactly zero effective gain at receiver i.
DoFResult verify_scheme(const ZFScheme& scheme, const ChannelRealization& h);

/// Effective gain of W_i at every r in C_i, keyed (i, r).
std::map<std::pair<int, int>, Rational> cancellation_residuals(const ZFScheme& scheme,
                                                               const ChannelRealization& h);

/// C_i = every served receiver other than i that hears an active
/// transmitter of T_i.
std::map<int, std::vector<int>> closure_cancellation_sets(const MessageAssignment& a,
                                                          std::span<const int> served,
                                                          std::span<const int> deactivated_tx,
                                                          const NetworkTopology& topology);

/// Noiseless reconstruction test: with Ubar = union of T_i over i not in
/// `observed`, true iff X_Ubar is uniquely determined by Y_observed and the
/// remaining transmit signals, i.e. H[observed, Ubar] has full column rank.
bool verify_reconstruction(const MessageAssignment& a, std::span<const int> observed,
                           const ChannelRealization& h);

}  // namespace flexbh
