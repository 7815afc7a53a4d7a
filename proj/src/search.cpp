#include "flexbh/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "flexbh/errors.hpp"
#include "flexbh/linalg.hpp"

namespace flexbh {

namespace {

struct NodeBudgetHit {};

// Solves charged by the calling thread, so work can be attributed to the
// candidate that caused it.
thread_local std::uint64_t t_charged = 0;

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t max) : max_(max) {}
  void charge() {
    ++t_charged;
    if (count_.fetch_add(1, std::memory_order_relaxed) + 1 > max_) throw NodeBudgetHit{};
  }
  std::uint64_t count() const { return std::min(count_.load(), max_); }

 private:
  std::atomic<std::uint64_t> count_{0};
  std::uint64_t max_;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs fn(begin, end) over contiguous chunks of [0, n) on worker threads and
// rethrows the first exception in chunk order.
void parallel_chunks(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (t <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  const std::size_t step = (n + t - 1) / t;
  for (std::size_t c = 0; c < t; ++c) {
    const std::size_t begin = c * step, end = std::min(n, begin + step);
    pool.emplace_back([&, c, begin, end] {
      try {
        if (begin < end) fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int floor_times(const Rational& q, int n) {
  mpz_class num = q.get_num() * n;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return static_cast<int>(out.get_si());
}

int ceil_times(const Rational& q, int n) {
  mpz_class num = q.get_num() * n;
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return static_cast<int>(out.get_si());
}

// Whether W_user can be delivered over `tx` while being nulled at every
// other served receiver that hears it: the user's channel row must leave the
// row space of the constraint rows.
bool screen_feasible(const ChannelRealization& h, int user, std::span<const int> tx,
                     const std::vector<char>& served, NodeCounter& nodes) {
  const auto& topo = h.topology();
  std::set<int> rows;
  for (int j : tx)
    for (int r : topo.receivers_hearing(j))
      if (r != user && served[r]) rows.insert(r);
  nodes.charge();
  ModularMatrix g(rows.size(), tx.size());
  ModularMatrix gh(rows.size() + 1, tx.size());
  std::size_t a = 0;
  for (int r : rows) {
    for (std::size_t b = 0; b < tx.size(); ++b) {
      const auto v = h.residue(r, tx[b]);
      g(a, b) = v;
      gh(a, b) = v;
    }
    ++a;
  }
  for (std::size_t b = 0; b < tx.size(); ++b) gh(a, b) = h.residue(user, tx[b]);
  return gh.rank() > g.rank();
}

// Transmit sets of exactly `size` candidates that are connected to the user:
// candidates are linked when they share a served receiver, and the user's
// own receiver links everything it hears. A feasible set with a piece not
// connected this way stays feasible without that piece, so only connected
// sets can be minimal. Returned in lexicographic order.
std::vector<std::vector<int>> connected_sets(const NetworkTopology& topo, int user,
                                             const std::vector<int>& candidates, int size,
                                             const std::vector<char>& served) {
  const std::size_t w = candidates.size();
  std::vector<std::vector<std::size_t>> adj(w);
  std::vector<std::size_t> roots;
  for (std::size_t a = 0; a < w; ++a) {
    if (topo.support(user, candidates[a])) roots.push_back(a);
    for (std::size_t b = a + 1; b < w; ++b)
      for (int r : topo.receivers_hearing(candidates[a]))
        if (r != user && served[r] && topo.support(r, candidates[b])) {
          adj[a].push_back(b);
          adj[b].push_back(a);
          break;
        }
  }
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> picked;
  std::vector<char> excluded(w, 0);
  // Each connected set is reached once: a branch adding v excludes the
  // frontier elements ordered before v.
  std::function<void(std::vector<std::size_t>)> grow = [&](std::vector<std::size_t> frontier) {
    if (static_cast<int>(picked.size()) == size) {
      std::vector<int> t;
      for (std::size_t k : picked) t.push_back(candidates[k]);
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
      return;
    }
    std::vector<std::size_t> marked;
    for (std::size_t v : frontier) {
      if (excluded[v]) continue;
      excluded[v] = 1;
      marked.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t u : frontier)
        if (!excluded[u]) next.push_back(u);
      for (std::size_t u : adj[v])
        if (!excluded[u] && std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
      picked.push_back(v);
      grow(std::move(next));
      picked.pop_back();
    }
    for (std::size_t v : marked) excluded[v] = 0;
  };
  grow(roots);
  std::sort(out.begin(), out.end());
  return out;
}

// Inclusion-minimal feasible transmit sets drawn from `candidates`, by size
// then lexicographically. With first_only the cheapest one is returned.
std::vector<std::vector<int>> minimal_feasible_sets(const ChannelRealization& h, int user,
                                                    const std::vector<int>& candidates, int max_size,
                                                    const std::vector<char>& served,
                                                    NodeCounter& nodes, bool first_only) {
  std::vector<std::vector<int>> found;
  const int w = static_cast<int>(candidates.size());
  for (int size = 1; size <= std::min(max_size, w); ++size) {
    const auto sets = connected_sets(h.topology(), user, candidates, size, served);
    if (sets.empty()) break;
    for (const auto& t : sets) {
      const bool dominated = std::any_of(found.begin(), found.end(), [&](const auto& f) {
        return std::includes(t.begin(), t.end(), f.begin(), f.end());
      });
      if (dominated) continue;
      if (screen_feasible(h, user, t, served, nodes)) {
        found.push_back(t);
        if (first_only) return found;
      }
    }
  }
  return found;
}

// Transmitters worth offering to `user`: heard by the user or by a served
// receiver. Anything else contributes a zero column.
std::vector<int> useful_transmitters(const NetworkTopology& topo, int user, std::span<const int> pool,
                                     const std::vector<char>& served) {
  std::vector<int> out;
  for (int j : pool) {
    const auto& rx = topo.receivers_hearing(j);
    if (std::any_of(rx.begin(), rx.end(), [&](int r) { return r == user || served[r]; }))
      out.push_back(j);
  }
  return out;
}

std::vector<int> unused_transmitters(const MessageAssignment& a) {
  std::vector<char> used(a.K() + 1, 0);
  for (const auto& t : a.transmit_sets())
    for (int j : t) used[j] = 1;
  std::vector<int> out;
  for (int j = 1; j <= a.K(); ++j)
    if (!used[j]) out.push_back(j);
  return out;
}

ZFScheme make_scheme(MessageAssignment a, std::vector<int> served, const NetworkTopology& topo) {
  std::vector<int> off = unused_transmitters(a);
  auto c = closure_cancellation_sets(a, served, off, topo);
  return ZFScheme{std::move(a), std::move(served), std::move(off), std::move(c), {}};
}

struct Verified {
  DesignOutcome first;
  std::vector<std::uint64_t> seeds;
};

// Exact design + verification on `count` distinct realizations; every user
// flagged in `expect` (1-based, size K+1) must be served and no one else.
std::optional<Verified> verify_exactly(const ZFScheme& scheme, const NetworkTopology& topo,
                                       std::uint64_t seed, int count, const std::vector<char>& expect) {
  std::optional<Verified> out;
  std::uint64_t next = seed;
  for (int n = 0; n < count; ++n) {
    try {
      DesignOutcome d = design_with_resampling(scheme, topo, next);
      for (int i = 1; i <= topo.K(); ++i)
        if (d.result.per_user[i - 1] != (expect[i] ? 1 : 0)) return std::nullopt;
      next = d.seed + 1;
      if (!out)
        out = Verified{std::move(d), {next - 1}};
      else
        out->seeds.push_back(next - 1);
    } catch (const SchemeInfeasible&) {
      return std::nullopt;
    } catch (const GenericityFailure&) {
      return std::nullopt;
    }
  }
  return out;
}

struct Candidate {
  int total = 0;
  std::vector<std::vector<int>> sets;
  std::vector<int> served;

  // More backhaul first, then lexicographically smaller transmit sets.
  bool operator<(const Candidate& o) const {
    if (total != o.total) return total > o.total;
    return sets < o.sets;
  }
};

// Picks one option per user maximizing total size within `limit`; among
// maximal totals, the first in lexicographic order.
std::optional<Candidate> pick_options(const std::vector<int>& users,
                                      const std::vector<std::vector<std::vector<int>>>& options,
                                      int K, int limit) {
  std::vector<int> max_rest(users.size() + 1, 0);
  for (std::size_t u = users.size(); u-- > 0;) {
    int m = 0;
    for (const auto& o : options[u]) m = std::max(m, static_cast<int>(o.size()));
    max_rest[u] = max_rest[u + 1] + m;
  }
  std::vector<std::size_t> choice(users.size()), best_choice;
  int best_total = -1;
  std::function<void(std::size_t, int)> dfs = [&](std::size_t u, int total) {
    if (total + max_rest[u] <= best_total) return;
    if (u == users.size()) {
      best_total = total;
      best_choice = choice;
      return;
    }
    for (std::size_t k = 0; k < options[u].size(); ++k) {
      const int size = static_cast<int>(options[u][k].size());
      if (total + size > limit) continue;
      choice[u] = k;
      dfs(u + 1, total + size);
    }
  };
  dfs(0, 0);
  if (best_total < 0) return std::nullopt;
  Candidate c;
  c.total = best_total;
  c.sets.assign(K, {});
  c.served = users;
  for (std::size_t u = 0; u < users.size(); ++u) c.sets[users[u] - 1] = options[u][best_choice[u]];
  return c;
}

}  // namespace

SearchResult brute_force_best_zf(const SearchSpace& space, const SearchOptions& options) {
  if (space.K < 1) throw std::invalid_argument("K must be positive");
  if (space.backhaul_budget < 0) throw std::invalid_argument("backhaul budget must be nonnegative");
  if (space.model.kind == ModelKind::kTwoDimensional)
    throw std::invalid_argument("brute-force search supports the linear and locally connected models");

  const NetworkTopology topo = build_topology(space.K, space.model);
  const ChannelRealization h = sample_realization(topo, options.seed);
  const int K = space.K;
  const int budget_total = floor_times(space.backhaul_budget, K);
  int cap = std::min(K, budget_total);
  if (space.max_set_size) cap = std::min(cap, *space.max_set_size);
  NodeCounter nodes(options.max_nodes);

  auto window = [&](int user) {
    std::vector<int> w;
    const bool linear = space.model.kind == ModelKind::kLinear;
    const int lo = linear ? std::max(1, user - cap) : 1;
    const int hi = linear ? std::min(K, user + cap - 1) : K;
    for (int j = lo; j <= hi; ++j) w.push_back(j);
    return w;
  };

  auto finish = [&](const Candidate& c) -> std::optional<SearchResult> {
    ZFScheme scheme = make_scheme(MessageAssignment(K, c.sets), c.served, topo);
    std::vector<char> expect(K + 1, 0);
    for (int i : c.served) expect[i] = 1;
    auto v = verify_exactly(scheme, topo, options.seed, options.verify_realizations, expect);
    if (!v) return std::nullopt;
    SearchResult r;
    r.backhaul = backhaul_load(v->first.scheme.assignment);
    r.best = v->first.result;
    r.argmax = std::move(v->first.scheme);
    r.verified_seeds = v->seeds;
    return r;
  };

  for (int k = std::min(K, std::min(budget_total, K)); k >= 1; --k) {
    const auto subsets = combinations(K, k);
    std::mutex mu;
    std::vector<Candidate> found;
    bool budget_hit = false;
    parallel_chunks(subsets.size(), options.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<Candidate> local;
      try {
        for (std::size_t s = begin; s < end; ++s) {
          const auto& users = subsets[s];
          std::vector<char> served(K + 2, 0);
          for (int i : users) served[i] = 1;
          const int limit = std::min(cap, budget_total - (k - 1));
          std::vector<std::vector<std::vector<int>>> opts;
          bool ok = true;
          for (int i : users) {
            auto cand = useful_transmitters(topo, i, window(i), served);
            opts.push_back(minimal_feasible_sets(h, i, cand, limit, served, nodes, false));
            if (opts.back().empty()) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          if (auto c = pick_options(users, opts, K, budget_total)) local.push_back(std::move(*c));
        }
      } catch (const NodeBudgetHit&) {
        std::lock_guard lock(mu);
        budget_hit = true;
      }
      std::lock_guard lock(mu);
      for (auto& c : local) found.push_back(std::move(c));
    });

    std::sort(found.begin(), found.end());
    for (const auto& c : found) {
      if (auto r = finish(c)) {
        r->nodes = nodes.count();
        if (budget_hit) throw SearchBudgetExceeded(nodes.count(), std::move(r));
        return *r;
      }
    }
    if (budget_hit) throw SearchBudgetExceeded(nodes.count(), std::nullopt);
  }

  SearchResult none;
  ZFScheme empty = make_scheme(MessageAssignment::empty(K), {}, topo);
  none.best = verify_scheme(empty, h);
  none.argmax = std::move(empty);
  none.backhaul = 0;
  none.nodes = nodes.count();
  none.verified_seeds = {options.seed};
  return none;
}

int chain_periods(const ModelDescriptor& model, int period) {
  if (period < 1) throw std::invalid_argument("period must be positive");
  int reach = 0;
  switch (model.kind) {
    case ModelKind::kLinear: reach = 1; break;
    case ModelKind::kLocallyConnected: reach = (model.L + 1) / 2; break;
    case ModelKind::kTwoDimensional:
      throw std::invalid_argument("periodic schemes are defined for one-dimensional models");
  }
  const int spill = (reach + period - 1) / period;
  return std::max(3, 2 * spill + 1);
}

ZFScheme expand_periodic(const PeriodicScheme& p, int periods) {
  const int K = p.period * periods;
  const NetworkTopology topo = build_topology(K, p.model);
  std::vector<std::vector<int>> sets(K);
  std::vector<int> served;
  for (int b = 0; b < periods; ++b) {
    const int o = b * p.period;
    for (int u : p.served) served.push_back(o + u);
    for (int u = 1; u <= p.period; ++u)
      for (int t : p.transmit_sets[u - 1]) sets[o + u - 1].push_back(o + t);
  }
  return make_scheme(MessageAssignment(K, std::move(sets)), std::move(served), topo);
}

PeriodicSearchResult periodic_scheme_search(const SearchSpace& space, const Rational& target,
                                            const SearchOptions& options, Isolation isolation) {
  if (!space.period || *space.period < 1) throw std::invalid_argument("periodic search needs a period");
  if (space.backhaul_budget < 0) throw std::invalid_argument("backhaul budget must be nonnegative");
  const int p = *space.period;
  const int periods = chain_periods(space.model, p);
  const int K = p * periods;
  const NetworkTopology topo = build_topology(K, space.model);
  const ChannelRealization h = sample_realization(topo, options.seed);
  const int budget_total = floor_times(space.backhaul_budget, p);
  int cap = std::min(p, budget_total);
  if (space.max_set_size) cap = std::min(cap, *space.max_set_size);
  const int mid = periods / 2;
  NodeCounter nodes(options.max_nodes);

  std::vector<int> usable;  // local transmitters allowed to carry messages
  for (int j = 1; j <= p; ++j) {
    if (isolation == Isolation::kSevered) {
      const auto [lo, hi] = topo.unclipped_reach(j);
      if (lo < 1 || hi > p) continue;
    }
    usable.push_back(j);
  }
  std::vector<int> pool;
  for (int j : usable) pool.push_back(mid * p + j);

  // Cheapest transmit sets for a served pattern in the middle period, or
  // nullopt when the pattern cannot fit the budget.
  auto evaluate = [&](const std::vector<int>& pattern) -> std::optional<std::vector<std::vector<int>>> {
    std::vector<char> served(K + 2, 0);
    for (int b = 0; b < periods; ++b)
      for (int u : pattern) served[b * p + u] = 1;
    std::vector<std::vector<int>> sets(p);
    int total = 0;
    const int n = static_cast<int>(pattern.size());
    for (int idx = 0; idx < n; ++idx) {
      const int u = pattern[idx];
      const int user = mid * p + u;
      const int limit = std::min(cap, budget_total - total - (n - idx - 1));
      if (limit < 1) return std::nullopt;
      auto cand = useful_transmitters(topo, user, pool, served);
      auto sets_u = minimal_feasible_sets(h, user, cand, limit, served, nodes, true);
      if (sets_u.empty()) return std::nullopt;
      for (int j : sets_u.front()) sets[u - 1].push_back(j - mid * p);
      total += static_cast<int>(sets_u.front().size());
    }
    return sets;
  };

  auto make_periodic = [&](const std::vector<int>& pattern, std::vector<std::vector<int>> sets) {
    PeriodicScheme ps;
    ps.period = p;
    ps.model = space.model;
    ps.isolation = isolation;
    ps.served = pattern;
    ps.transmit_sets = std::move(sets);
    int total = 0;
    for (const auto& t : ps.transmit_sets) total += static_cast<int>(t.size());
    ps.fraction = Rational(static_cast<long>(pattern.size()), p);
    ps.fraction.canonicalize();
    ps.backhaul = Rational(total, p);
    ps.backhaul.canonicalize();
    return ps;
  };

  PeriodicSearchResult result;
  std::optional<PeriodicScheme> best_so_far;
  // Solves a sequential scan would have made; unlike the shared counter this
  // does not depend on how far other threads ran ahead.
  std::uint64_t reported = 0;

  struct LevelHit {
    PeriodicScheme scheme;
    std::vector<std::uint64_t> seeds;
  };

  // The lexicographically first pattern of size k that passes the screen
  // and exact verification.
  auto search_level = [&](int k) -> std::optional<LevelHit> {
    if (k > budget_total) return std::nullopt;
    const auto patterns = combinations(p, k);
    std::size_t from = 0;
    while (from < patterns.size()) {
      constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
      std::atomic<std::size_t> first_hit{kNone};
      std::mutex mu;
      std::map<std::size_t, std::vector<std::vector<int>>> hits;
      std::vector<std::uint64_t> used(patterns.size(), 0);
      bool budget_hit = false;
      parallel_chunks(patterns.size() - from, options.threads, [&](std::size_t begin, std::size_t end) {
        try {
          for (std::size_t s = from + begin; s < from + end && s < first_hit.load(); ++s) {
            const std::uint64_t before = t_charged;
            auto sets = evaluate(patterns[s]);
            used[s] = t_charged - before;
            if (sets) {
              std::lock_guard lock(mu);
              hits.emplace(s, std::move(*sets));
              std::size_t cur = first_hit.load();
              while (s < cur && !first_hit.compare_exchange_weak(cur, s)) {
              }
              return;
            }
          }
        } catch (const NodeBudgetHit&) {
          std::lock_guard lock(mu);
          budget_hit = true;
        }
      });
      if (hits.empty()) {
        if (budget_hit) throw PeriodicBudgetExceeded(nodes.count(), best_so_far);
        for (std::size_t k = from; k < patterns.size(); ++k) reported += used[k];
        return std::nullopt;
      }
      auto& [s, sets] = *hits.begin();
      for (std::size_t k = from; k <= s; ++k) reported += used[k];
      PeriodicScheme ps = make_periodic(patterns[s], sets);
      const ZFScheme chain = expand_periodic(ps, periods);
      std::vector<char> expect(K + 1, 0);
      for (int i : chain.served) expect[i] = 1;
      if (auto v = verify_exactly(chain, topo, options.seed, options.verify_realizations, expect))
        return LevelHit{std::move(ps), v->seeds};
      from = s + 1;
    }
    return std::nullopt;
  };

  // Levels go upward so a budget stop still reports the best found so far.
  const int target_k = std::clamp(ceil_times(target, p), 0, p);
  best_so_far = make_periodic({}, std::vector<std::vector<int>>(p));
  result.periods_checked = periods;
  for (int k = 1; k <= target_k; ++k) {
    if (auto hit = search_level(k)) {
      best_so_far = hit->scheme;
      result.verified_seeds = hit->seeds;
      if (k == target_k) result.scheme = hit->scheme;
    }
  }
  if (target_k == 0) result.scheme = best_so_far;
  result.best = best_so_far;
  result.nodes = reported;
  return result;
}

FrontierValue convex_frontier(std::span<const FrontierPoint> points, const Rational& budget) {
  if (points.empty()) throw std::invalid_argument("convex_frontier needs at least one point");
  for (const auto& pt : points)
    if (pt.dof_fraction < 0 || pt.dof_fraction > 1 || pt.backhaul < 0)
      throw std::invalid_argument("frontier point out of range: " + pt.provenance);

  FrontierValue best{Rational(0), {}, Rational(0)};
  bool have = false;
  auto offer = [&](const Rational& v, std::vector<std::string> prov, const Rational& w) {
    if (!have || v > best.value) {
      best = {v, std::move(prov), w};
      have = true;
    }
  };
  for (const auto& pt : points)
    if (pt.backhaul <= budget) offer(pt.dof_fraction, {pt.provenance}, Rational(1));
  for (const auto& lo : points)
    for (const auto& hi : points) {
      if (!(lo.backhaul < budget && budget < hi.backhaul)) continue;
      Rational w = (hi.backhaul - budget) / (hi.backhaul - lo.backhaul);
      offer(w * lo.dof_fraction + (1 - w) * hi.dof_fraction, {lo.provenance, hi.provenance}, w);
    }
  return best;
}

TwoDimensionalResult two_dimensional_construction(int side, const SearchOptions& options) {
  constexpr int kRowPeriod = 6;
  if (side < kRowPeriod)
    throw std::invalid_argument("side " + std::to_string(side) +
                                " is too small to hold one period-6 row block");

  SearchSpace row_space;
  row_space.model = ModelDescriptor::linear();
  row_space.backhaul_budget = Rational(3, 2);
  row_space.period = kRowPeriod;
  row_space.K = kRowPeriod;
  const auto row = periodic_scheme_search(row_space, Rational(5, 6), options, Isolation::kSevered);
  if (!row.scheme) throw std::runtime_error("no period-6 row scheme with fraction 5/6 at load 3/2");
  const PeriodicScheme& rs = *row.scheme;

  const int K = side * side;
  const NetworkTopology topo = build_topology(K, ModelDescriptor::two_dimensional());
  std::vector<std::vector<int>> sets(K);
  std::vector<int> served;
  std::vector<int> subnet_of_rx(K + 1, -1);
  int subnets = 0;
  // Transmitter row a feeds receiver row b; rows 0-based, users 1-based.
  auto add_subnetwork = [&](int a, int b) {
    for (int blk = 0; (blk + 1) * kRowPeriod <= side; ++blk) {
      for (int u : rs.served) {
        const int user = b * side + blk * kRowPeriod + u;
        served.push_back(user);
        for (int t : rs.transmit_sets[u - 1]) sets[user - 1].push_back(a * side + blk * kRowPeriod + t);
      }
    }
    for (int c = 1; c <= side; ++c) subnet_of_rx[b * side + c] = subnets;
    ++subnets;
  };
  for (int g = 0; 3 * g < side; ++g) {
    add_subnetwork(3 * g, 3 * g);
    if (3 * g + 2 < side) add_subnetwork(3 * g + 1, 3 * g + 2);
  }
  std::sort(served.begin(), served.end());

  ZFScheme scheme = make_scheme(MessageAssignment(K, std::move(sets)), served, topo);
  for (const auto& [i, c] : scheme.cancellation_sets)
    for (int r : c)
      if (subnet_of_rx[r] != subnet_of_rx[i])
        throw std::logic_error("message " + std::to_string(i) + " reaches receiver " +
                               std::to_string(r) + " of another subnetwork");

  DesignOutcome d = design_with_resampling(scheme, topo, options.seed);
  TwoDimensionalResult out;
  out.backhaul = backhaul_load(d.scheme.assignment);
  out.scheme = std::move(d.scheme);
  out.result = std::move(d.result);
  out.row_scheme = rs;
  out.active_subnetworks = subnets;
  out.seed = d.seed;
  out.nodes = row.nodes;
  return out;
}

}  // namespace flexbh
