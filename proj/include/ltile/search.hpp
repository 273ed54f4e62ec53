#pragma once

// Exhaustive backtracking search for splitter sets.
//
// Splitter elements are chosen in strictly increasing index order. Each
// extension inserts every new combination into a flat occupancy set and is
// rejected on the first collision, so every node of the tree is a verified
// partial splitting. With Symmetry::units the smallest element s_1 must be
// the least element of its orbit under multiplication by units of Z_exp(G),
// and every later element must have orbit minimum >= s_1; any splitter set
// can be moved into that form by a group automorphism.
//
// The tree is cut into work units by the first two choices. Workers pull
// units in increasing order and keep private state; results are merged by
// unit index, so the outcome does not depend on the number of threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ltile/ball.hpp"
#include "ltile/group.hpp"
#include "ltile/indexed_group.hpp"
#include "ltile/splitting.hpp"
#include "ltile/structural.hpp"

namespace ltile {

enum class SearchMode { first, all };
enum class Symmetry { none, units };
enum class SearchStatus { found, none_exhausted, inconclusive, interrupted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_exhausted: return "none-exhausted";
    case SearchStatus::inconclusive: return "inconclusive";
    case SearchStatus::interrupted: return "interrupted";
  }
  return "?";
}

struct SearchOptions {
  SearchMode mode = SearchMode::first;
  Symmetry symmetry = Symmetry::units;
  unsigned threads = 1;
  std::uint64_t cap_nodes = 0;  // 0: unlimited
  // Skip groups failing d2_profile_check / q2_projection_check (only for the
  // (m, m-1) family with t = 2 when |G| equals the ball size).
  bool structural_prune = true;
  // Stop after this many units have been completed in this call; used to
  // exercise checkpoint/resume.
  std::optional<std::uint64_t> stop_after_units;
};

using IndexSet = std::vector<IndexedGroup::Index>;

// Resumable state: which units are finished and what they produced.
struct SearchProgress {
  std::uint64_t units_total = 0;
  std::vector<std::uint8_t> done;
  std::map<std::uint64_t, std::vector<IndexSet>> solutions;
  std::vector<std::uint64_t> unit_nodes;  // nodes spent on each finished unit
  std::uint64_t nodes = 0;                // all work, including abandoned units

  std::uint64_t units_done() const {
    return static_cast<std::uint64_t>(std::count(done.begin(), done.end(), std::uint8_t{1}));
  }
};

struct SearchStats {
  std::uint64_t nodes = 0;       // over the units that decide the result; thread-independent
  std::uint64_t work_nodes = 0;  // everything explored, including abandoned units
  std::uint64_t units_total = 0;
  std::uint64_t units_done = 0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::vector<SplitterSet> certificates;
  SearchStats stats;
  std::string note;  // e.g. the structural reason for skipping the tree
};

namespace detail {

class SearchSpace {
 public:
  using Index = IndexedGroup::Index;

  SearchSpace(const AbelianGroup& G, const MagnitudeSet& M, int t, int n, Symmetry sym)
      : ig_(G), mags_(M.values()), t_(t), n_(n), symmetry_(sym) {
    const Index N = ig_.order();
    mult_.assign(mags_.size(), std::vector<Index>(N));
    for (std::size_t a = 0; a < mags_.size(); ++a)
      for (Index x = 0; x < N; ++x) mult_[a][x] = ig_.mul(mags_[a], x);
    if (!ig_.group().is_cyclic() || ig_.group().rank() > 1) {
      if (N <= kAddTableLimit) {
        add_table_.resize(static_cast<std::size_t>(N) * N);
        for (Index x = 0; x < N; ++x)
          for (Index y = 0; y < N; ++y) add_table_[static_cast<std::size_t>(x) * N + y] = ig_.add(x, y);
      }
    }
    // a*x must be non-zero and distinct over a in M
    single_ok_.assign(N, 1);
    for (Index x = 0; x < N; ++x) {
      std::vector<Index> v;
      for (std::size_t a = 0; a < mags_.size(); ++a) v.push_back(mult_[a][x]);
      std::sort(v.begin(), v.end());
      if (v.front() == 0 || std::adjacent_find(v.begin(), v.end()) != v.end()) single_ok_[x] = 0;
    }
    orbit_min_.assign(N, 0);
    if (symmetry_ == Symmetry::units) {
      const std::uint64_t ex = G.exponent();
      std::vector<std::uint64_t> units;
      for (std::uint64_t u = 1; u < std::max<std::uint64_t>(ex, 2); ++u)
        if (std::gcd(u, ex) == 1) units.push_back(u);
      std::vector<std::uint8_t> seen(N, 0);
      std::vector<Index> orbit;
      for (Index x = 0; x < N; ++x) {
        if (seen[x]) continue;
        orbit.clear();
        Index mn = x;
        for (auto u : units) {
          Index y = ig_.mul(static_cast<std::int64_t>(u), x);
          if (!seen[y]) {
            seen[y] = 1;
            orbit.push_back(y);
          }
          mn = std::min(mn, y);
        }
        for (Index y : orbit) orbit_min_[y] = mn;
      }
    } else {
      for (Index x = 0; x < N; ++x) orbit_min_[x] = 0;
    }
  }

  const IndexedGroup& ig() const { return ig_; }
  Index order() const { return ig_.order(); }
  Index add(Index x, Index y) const {
    return add_table_.empty() ? ig_.add(x, y) : add_table_[static_cast<std::size_t>(x) * ig_.order() + y];
  }
  int t() const { return t_; }
  int n() const { return n_; }
  std::size_t mag_count() const { return mags_.size(); }
  Index mult(std::size_t a, Index x) const { return mult_[a][x]; }
  bool single_ok(Index x) const { return single_ok_[x] != 0; }

  bool admissible_first(Index x) const {
    return x != 0 && single_ok_[x] && (symmetry_ == Symmetry::none || orbit_min_[x] == x);
  }
  bool admissible_later(Index first, Index x) const {
    return single_ok_[x] && (symmetry_ == Symmetry::none || orbit_min_[x] >= first);
  }

 private:
  IndexedGroup ig_;
  std::vector<int> mags_;
  int t_;
  int n_;
  Symmetry symmetry_;
  static constexpr Index kAddTableLimit = 2048;
  std::vector<std::vector<Index>> mult_;
  std::vector<Index> add_table_;
  std::vector<std::uint8_t> single_ok_;
  std::vector<Index> orbit_min_;
};

// Incremental partial-splitting state: chosen elements, occupancy of all
// combinations so far, and the combinations of weight < t that new elements
// get added onto.
class PartialState {
 public:
  using Index = IndexedGroup::Index;

  explicit PartialState(const SearchSpace& sp)
      : sp_(sp), occupied_(sp.order(), 0), levels_(static_cast<std::size_t>(sp.t())) {
    occupied_[0] = 1;
    levels_[0].push_back(0);
  }

  std::size_t depth() const { return chosen_.size(); }
  const IndexSet& chosen() const { return chosen_; }

  bool push(Index c) {
    const std::size_t mark = undo_.size();
    const int t = sp_.t();
    // low weights first: a*c alone collides most often
    for (int w = 0; w < t; ++w) {
      const auto& level = levels_[static_cast<std::size_t>(w)];
      for (std::size_t a = 0; a < sp_.mag_count(); ++a) {
        const Index ac = sp_.mult(a, c);
        for (Index v : level) {
          const Index x = sp_.add(ac, v);
          if (occupied_[x]) {
            rollback(mark);
            return false;
          }
          occupied_[x] = 1;
          undo_.push_back(x);
        }
      }
    }
    frames_.push_back({mark, {}});
    auto& sizes = frames_.back().level_sizes;
    for (const auto& l : levels_) sizes.push_back(l.size());
    for (int w = t - 2; w >= 0; --w) {
      const std::size_t old = sizes[static_cast<std::size_t>(w)];
      for (std::size_t i = 0; i < old; ++i) {
        const Index v = levels_[static_cast<std::size_t>(w)][i];
        for (std::size_t a = 0; a < sp_.mag_count(); ++a)
          levels_[static_cast<std::size_t>(w) + 1].push_back(sp_.add(sp_.mult(a, c), v));
      }
    }
    chosen_.push_back(c);
    return true;
  }

  void pop() {
    auto& f = frames_.back();
    for (std::size_t w = 0; w < levels_.size(); ++w) levels_[w].resize(f.level_sizes[w]);
    rollback(f.undo_mark);
    frames_.pop_back();
    chosen_.pop_back();
  }

 private:
  struct Frame {
    std::size_t undo_mark;
    std::vector<std::size_t> level_sizes;
  };

  void rollback(std::size_t mark) {
    while (undo_.size() > mark) {
      occupied_[undo_.back()] = 0;
      undo_.pop_back();
    }
  }

  const SearchSpace& sp_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::vector<Index>> levels_;
  std::vector<Index> undo_;
  std::vector<Frame> frames_;
  IndexSet chosen_;
};

struct WorkUnit {
  IndexedGroup::Index first;
  IndexedGroup::Index second;  // == first when n == 1
};

inline std::vector<WorkUnit> make_units(const SearchSpace& sp) {
  std::vector<WorkUnit> units;
  const auto N = sp.order();
  PartialState st(sp);
  for (IndexedGroup::Index a = 1; a < N; ++a) {
    if (!sp.admissible_first(a) || !st.push(a)) continue;
    if (sp.n() == 1) {
      units.push_back({a, a});
    } else {
      for (IndexedGroup::Index b = a + 1; b < N; ++b) {
        if (!sp.admissible_later(a, b) || !st.push(b)) continue;
        units.push_back({a, b});
        st.pop();
      }
    }
    st.pop();
  }
  return units;
}

}  // namespace detail

class Searcher {
 public:
  using Index = IndexedGroup::Index;
  using UnitCallback = std::function<void(const SearchProgress&)>;

  Searcher(AbelianGroup G, MagnitudeSet M, int t, int n, SearchOptions opts = {})
      : group_(std::move(G)), mags_(M), t_(t), n_(n), opts_(opts) {
    if (n_ < 1) throw std::invalid_argument("search: n must be >= 1");
    if (t_ < 1 || t_ > n_) throw std::invalid_argument("search: need 1 <= t <= n");
  }

  // Decides, without searching, whether the instance is trivially empty.
  // Returns the reason when it is.
  std::optional<std::string> precheck() const {
    const BigInt bsize = ball_size(ErrorBall(n_, t_, mags_.kplus, mags_.kminus));
    if (BigInt(group_.order()) < bsize) return "group smaller than the ball";
    const bool full = BigInt(group_.order()) == bsize;
    if (opts_.structural_prune && full && t_ == 2) {
      if (auto m = mags_.family_m(); m && *m >= 2) {
        if (!screen::d2_profile_check(group_, *m)) return "group violates the d_{2^i} profile bound";
        if (!screen::q2_projection_check(group_, *m, n_)) return "q=2 projection leaves too small a group";
      }
    }
    return std::nullopt;
  }

  // Work-unit count (built lazily; identical for identical inputs).
  std::uint64_t unit_count() {
    ensure_space();
    return units_.size();
  }

  SearchResult run(SearchProgress* progress = nullptr, const UnitCallback& on_unit = {}) {
    SearchResult result;
    if (auto reason = precheck()) {
      result.status = SearchStatus::none_exhausted;
      result.note = *reason;
      if (progress) progress->units_total = 0;
      return result;
    }
    ensure_space();
    SearchProgress local;
    SearchProgress& prog = progress ? *progress : local;
    if (prog.done.empty() && prog.units_total == 0) {
      prog.units_total = units_.size();
      prog.done.assign(units_.size(), 0);
    }
    if (prog.unit_nodes.size() != prog.done.size()) prog.unit_nodes.assign(prog.done.size(), 0);
    if (prog.units_total != units_.size() || prog.done.size() != units_.size())
      throw std::invalid_argument("search: progress record does not match this search");

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> nodes{prog.nodes};
    std::atomic<bool> cap_hit{false};
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> best_unit{std::numeric_limits<std::uint64_t>::max()};
    std::atomic<std::uint64_t> completed_now{0};
    std::mutex mu;

    for (const auto& [u, sols] : prog.solutions)
      if (!sols.empty()) best_unit = std::min<std::uint64_t>(best_unit, u);

    auto worker = [&]() {
      detail::PartialState st(*space_);
      std::vector<IndexSet> pools(static_cast<std::size_t>(n_) + 1);
      std::uint64_t local_nodes = 0;
      auto flush = [&]() {
        if (local_nodes) {
          const auto total = nodes.fetch_add(local_nodes) + local_nodes;
          local_nodes = 0;
          if (opts_.cap_nodes && total > opts_.cap_nodes) cap_hit = true;
        }
      };
      while (!stop && !cap_hit) {
        const std::uint64_t u = next.fetch_add(1);
        if (u >= units_.size()) break;
        if (prog.done[u]) continue;
        if (opts_.mode == SearchMode::first && u > best_unit) continue;
        std::vector<IndexSet> sols;
        bool aborted = false;
        std::uint64_t unit_nodes = 1;
        const auto& wu = units_[u];
        st.push(wu.first);
        if (n_ > 1) st.push(wu.second);
        ++local_nodes;
        // Forward checking: `pool` holds the elements above the last choice
        // that still extend the current state. Extendability only shrinks as
        // elements are added, so children test only the remainder of the pool.
        auto dfs = [&](auto&& self, const IndexSet& pool) -> bool {  // false: abort unit
          const auto depth = st.depth();
          if (static_cast<int>(depth) == n_) {
            sols.push_back(st.chosen());
            return opts_.mode == SearchMode::all;
          }
          if ((local_nodes & 0xfff) == 0) {
            flush();
            if (cap_hit || stop || (opts_.mode == SearchMode::first && best_unit < u)) {
              aborted = true;
              return false;
            }
          }
          const std::size_t need = static_cast<std::size_t>(n_) - depth;
          auto& next = pools[depth];
          for (std::size_t i = 0; i + need <= pool.size(); ++i) {
            if (!st.push(pool[i])) throw std::logic_error("search: pool element no longer extends");
            ++local_nodes;
            ++unit_nodes;
            next.clear();
            for (std::size_t j = i + 1; j < pool.size(); ++j)
              if (st.push(pool[j])) {
                next.push_back(pool[j]);
                st.pop();
              }
            const bool go_on = next.size() + 1 < need || self(self, next);
            st.pop();
            if (!go_on) return false;
          }
          return true;
        };
        IndexSet root;
        const Index first = st.chosen().front();
        for (Index c = st.chosen().back() + 1; c < space_->order(); ++c)
          if (space_->admissible_later(first, c) && st.push(c)) {
            root.push_back(c);
            st.pop();
          }
        dfs(dfs, root);
        if (n_ > 1) st.pop();
        st.pop();
        flush();
        // In first mode a solution ends the unit early, which still settles it.
        if (aborted && sols.empty()) continue;
        std::lock_guard<std::mutex> lock(mu);
        prog.done[u] = 1;
        prog.unit_nodes[u] = unit_nodes;
        if (!sols.empty()) {
          prog.solutions[u] = sols;
          if (u < best_unit) best_unit = u;
        }
        prog.nodes = nodes;
        if (on_unit) on_unit(prog);
        const auto c = ++completed_now;
        if (opts_.stop_after_units && c >= *opts_.stop_after_units) stop = true;
      }
      flush();
    };

    const unsigned threads = std::max(1u, opts_.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    prog.nodes = nodes;

    result.stats.work_nodes = prog.nodes;
    result.stats.units_total = prog.units_total;
    result.stats.units_done = prog.units_done();
    finalize(prog, result, cap_hit.load(), stop.load());
    return result;
  }

  SplitterSet to_certificate(const IndexSet& s) const {
    std::vector<GroupElement> elems;
    for (auto i : s) elems.push_back(group_.element_at(i));
    SplitterSet S(group_, mags_, t_, std::move(elems));
    S.certify();
    return S;
  }

 private:
  void ensure_space() {
    if (!space_) {
      space_ = std::make_unique<detail::SearchSpace>(group_, mags_, t_, n_, opts_.symmetry);
      units_ = detail::make_units(*space_);
    }
  }

  void finalize(const SearchProgress& prog, SearchResult& result, bool cap_hit, bool stopped) const {
    const auto& done = prog.done;
    if (opts_.mode == SearchMode::first) {
      for (std::uint64_t u = 0; u < done.size(); ++u) {
        auto it = prog.solutions.find(u);
        if (it != prog.solutions.end() && !it->second.empty()) {
          result.certificates.push_back(to_certificate(it->second.front()));
          result.status = SearchStatus::found;
          for (std::uint64_t v = 0; v <= u; ++v) result.stats.nodes += prog.unit_nodes[v];
          return;
        }
        if (!done[u]) break;
      }
    } else {
      for (const auto& [u, sols] : prog.solutions)
        for (const auto& s : sols) result.certificates.push_back(to_certificate(s));
    }
    for (std::uint64_t v = 0; v < done.size(); ++v)
      if (done[v]) result.stats.nodes += prog.unit_nodes[v];
    const bool all_done = prog.units_done() == prog.units_total;
    if (all_done)
      result.status = result.certificates.empty() ? SearchStatus::none_exhausted : SearchStatus::found;
    else if (cap_hit)
      result.status = SearchStatus::inconclusive;
    else if (stopped)
      result.status = SearchStatus::interrupted;
    else
      result.status = SearchStatus::inconclusive;
    if (result.status == SearchStatus::found) {
      for (const auto& c : result.certificates)
        if (c.status() != SplitStatus::partial && c.status() != SplitStatus::full)
          throw std::logic_error("search produced a certificate that does not verify");
    }
  }

  AbelianGroup group_;
  MagnitudeSet mags_;
  int t_;
  int n_;
  SearchOptions opts_;
  std::unique_ptr<detail::SearchSpace> space_;
  std::vector<detail::WorkUnit> units_;
};

inline SearchResult search(const AbelianGroup& G, const MagnitudeSet& M, int t, int n, const SearchOptions& opts = {}) {
  Searcher s(G, M, t, n, opts);
  return s.run();
}

// Runs the search on every group of the given order.
struct GroupSearchOutcome {
  AbelianGroup group;
  SearchResult result;
};

inline std::vector<GroupSearchOutcome> search_all_groups(std::uint64_t order, const MagnitudeSet& M, int t, int n,
                                                        const SearchOptions& opts = {}) {
  std::vector<GroupSearchOutcome> out;
  for (const auto& G : enumerate_groups(order)) {
    out.push_back({G, search(G, M, t, n, opts)});
  }
  return out;
}

}  // namespace ltile
