#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flexbh/assignment.hpp"
#include "flexbh/rational.hpp"
#include "flexbh/topology.hpp"
#include "flexbh/zfscheme.hpp"

namespace flexbh {

struct SearchSpace {
  int K = 1;
  ModelDescriptor model;
  Rational backhaul_budget;
  std::optional<int> max_set_size;
  std::optional<int> period;
};

struct SearchOptions {
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = 10'000'000;  // feasibility solves
  int threads = 0;                       // 0: hardware concurrency
  int verify_realizations = 3;
};

struct SearchResult {
  DoFResult best;
  ZFScheme argmax;  // beams designed on verified_seeds.front()
  Rational backhaul;
  std::uint64_t nodes = 0;
  std::vector<std::uint64_t> verified_seeds;
};

/// How a period keeps its messages from reaching other periods.
enum class Isolation {
  /// Only transmitters whose whole (untruncated) reach lies inside the
  /// period may carry messages; edge transmitters stay dark.
  kSevered,
  /// Any transmitter of the period may be used; served receivers of the
  /// neighbouring periods join the cancellation sets.
  kZeroForced,
};

/// One period of a periodic scheme, in local 1-based coordinates.
struct PeriodicScheme {
  int period = 0;
  ModelDescriptor model;
  Isolation isolation = Isolation::kZeroForced;
  std::vector<int> served;                         // local users
  std::vector<std::vector<int>> transmit_sets;     // local transmitters, size = period
  Rational fraction;                               // |served| / period
  Rational backhaul;                               // sum |T_u| / period
};

struct PeriodicSearchResult {
  /// A verified scheme meeting the target, if one was found.
  std::optional<PeriodicScheme> scheme;
  /// The largest served fraction found at or below the target.
  std::optional<PeriodicScheme> best;
  int periods_checked = 0;  // length of the chain the winner was verified on
  std::vector<std::uint64_t> verified_seeds;
  std::uint64_t nodes = 0;
};

/// Thrown when a search runs out of node budget. Carries what was verified
/// before the budget ran out.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  SearchBudgetExceeded(std::uint64_t nodes, std::optional<SearchResult> partial)
      : std::runtime_error("search node budget exhausted after " + std::to_string(nodes) +
                           " solves"),
        nodes_(nodes),
        partial_(std::move(partial)) {}
  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::optional<SearchResult>& partial() const noexcept { return partial_; }

 private:
  std::uint64_t nodes_;
  std::optional<SearchResult> partial_;
};

class PeriodicBudgetExceeded : public std::runtime_error {
 public:
  PeriodicBudgetExceeded(std::uint64_t nodes, std::optional<PeriodicScheme> best)
      : std::runtime_error("periodic search node budget exhausted after " +
                           std::to_string(nodes) + " solves"),
        nodes_(nodes),
        best_(std::move(best)) {}
  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::optional<PeriodicScheme>& best() const noexcept { return best_; }

 private:
  std::uint64_t nodes_;
  std::optional<PeriodicScheme> best_;
};

/// Exhaustive search for the largest one-shot ZF sum DoF within the
/// backhaul budget. Served messages get inclusion-minimal feasible transmit
/// sets; cancellation sets are the closure over served receivers. In the
/// linear model transmit sets are restricted to the windows
/// {i-M, ..., i+M-1} with M the set-size cap.
///
/// Among schemes with the same DoF the winner uses the most backhaul, then
/// the lexicographically smallest transmit-set list. The winner is verified
/// exactly on `verify_realizations` realizations.
SearchResult brute_force_best_zf(const SearchSpace& space, const SearchOptions& options = {});

/// Searches served patterns of one period level by level, from one served
/// user up to ceil(target * p), taking the lexicographically first pattern
/// at each level. Candidates are verified exactly on a chain of at least
/// three periods, and every period of the chain must serve the same pattern.
/// Throws PeriodicBudgetExceeded (carrying the best level reached) when the
/// node budget runs out.
PeriodicSearchResult periodic_scheme_search(const SearchSpace& space, const Rational& target,
                                            const SearchOptions& options = {},
                                            Isolation isolation = Isolation::kZeroForced);

/// Lays `periods` copies of a periodic scheme end to end (beams not designed).
ZFScheme expand_periodic(const PeriodicScheme& p, int periods);

/// Number of periods needed so the middle period sees complete neighbours.
int chain_periods(const ModelDescriptor& model, int period);

struct FrontierPoint {
  Rational dof_fraction;
  Rational backhaul;
  std::string provenance;
};

struct FrontierValue {
  Rational value;
  std::vector<std::string> provenance;  // empty when nothing fits the budget
  Rational weight;                      // time share of provenance.front()
};

/// Best time-shared DoF fraction with average backhaul at most `budget`,
/// over single points and pairs of points. Throws std::invalid_argument on an
/// empty point list.
FrontierValue convex_frontier(std::span<const FrontierPoint> points, const Rational& budget);

struct TwoDimensionalResult {
  ZFScheme scheme;
  DoFResult result;
  Rational backhaul;
  PeriodicScheme row_scheme;
  int active_subnetworks = 0;
  std::uint64_t seed = 0;
  std::uint64_t nodes = 0;
};

/// Switches off every third transmitter row, pairs the remaining transmitter
/// rows with receiver rows into linear subnetworks and runs the period-6,
/// load-3/2 row scheme in each. Throws std::invalid_argument for side < 6.
TwoDimensionalResult two_dimensional_construction(int side, const SearchOptions& options = {});

}  // namespace flexbh
