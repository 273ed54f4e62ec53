#pragma once

// t-splittings G = M <>_t S and their verification.
//
// M partially t-splits G with splitter set S = {s_1..s_n} when every
// combination e.(s_1..s_n) with e in (M u {0})^n and 1 <= wt(e) <= t is
// non-zero and all of them are distinct; it completely t-splits G when
// every g in G is such a combination (weight 0 included). Both together is
// a t-splitting, which is the same thing as a lattice tiling of Z^n by
// B(n, t, k+, k-).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltile/ball.hpp"
#include "ltile/group.hpp"
#include "ltile/indexed_group.hpp"

namespace ltile {

enum class SplitStatus { unverified, none, partial, complete, full };

inline const char* to_string(SplitStatus s) {
  switch (s) {
    case SplitStatus::unverified: return "unverified";
    case SplitStatus::none: return "none";
    case SplitStatus::partial: return "partial";
    case SplitStatus::complete: return "complete";
    case SplitStatus::full: return "full";
  }
  return "?";
}

class SplitterSet {
 public:
  SplitterSet(AbelianGroup group, MagnitudeSet magnitudes, int t, std::vector<GroupElement> elements)
      : group_(std::move(group)), magnitudes_(magnitudes), t_(t), elements_(std::move(elements)) {
    if (t_ < 1) throw std::invalid_argument("SplitterSet: t must be >= 1");
    if (elements_.empty()) throw std::invalid_argument("SplitterSet: empty splitter set");
    if (static_cast<std::size_t>(t_) > elements_.size())
      throw std::invalid_argument("SplitterSet: t exceeds the number of splitter elements");
    for (const auto& e : elements_) group_.require(e);
    auto sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("SplitterSet: splitter elements must be pairwise distinct");
  }

  const AbelianGroup& group() const { return group_; }
  const MagnitudeSet& magnitudes() const { return magnitudes_; }
  int t() const { return t_; }
  int n() const { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  SplitStatus status() const { return status_; }
  ErrorBall ball() const { return {n(), t_, magnitudes_.kplus, magnitudes_.kminus}; }

  // Runs the verifiers and records the outcome.
  SplitStatus certify();

 private:
  AbelianGroup group_;
  MagnitudeSet magnitudes_;
  int t_;
  std::vector<GroupElement> elements_;
  SplitStatus status_ = SplitStatus::unverified;
};

// One term a * s_index of a combination.
struct Term {
  int index = 0;
  int coeff = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Collision {
  std::vector<Term> first;
  std::vector<Term> second;  // empty: `first` evaluates to zero
  GroupElement value;
};

namespace detail {

// Visits every combination of weight 1..t (weight 0 when include_zero) in
// order of weight, support, coefficients. Stops early when visit returns false.
template <typename Visit>
void for_each_combination(const IndexedGroup& ig, const std::vector<IndexedGroup::Index>& s, const MagnitudeSet& mags,
                          int t, bool include_zero, Visit&& visit) {
  const auto values = mags.values();
  const int n = static_cast<int>(s.size());
  // multiples[i][j] = values[j] * s_i
  std::vector<std::vector<IndexedGroup::Index>> multiples(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (int a : values) multiples[i].push_back(ig.mul(a, s[i]));

  std::vector<Term> terms;
  bool stop = false;
  if (include_zero) stop = !visit(IndexedGroup::Index{0}, terms);
  auto rec = [&](auto&& self, int start, int remaining, IndexedGroup::Index acc) -> void {
    if (stop) return;
    if (remaining == 0) {
      stop = !visit(acc, terms);
      return;
    }
    for (int i = start; i <= n - remaining && !stop; ++i) {
      for (std::size_t j = 0; j < values.size() && !stop; ++j) {
        terms.push_back({i, values[j]});
        self(self, i + 1, remaining - 1, ig.add(acc, multiples[static_cast<std::size_t>(i)][j]));
        terms.pop_back();
      }
    }
  };
  for (int w = 1; w <= t && !stop; ++w) rec(rec, 0, w, 0);
}

inline std::vector<IndexedGroup::Index> indices(const IndexedGroup& ig, const SplitterSet& S) {
  std::vector<IndexedGroup::Index> s;
  for (const auto& e : S.elements()) s.push_back(ig.index_of(e));
  return s;
}

}  // namespace detail

inline std::optional<Collision> find_collision(const SplitterSet& S) {
  IndexedGroup ig(S.group());
  auto s = detail::indices(ig, S);
  // owner[v] = first combination that produced v
  std::vector<std::int64_t> owner(ig.order(), -1);
  std::vector<std::vector<Term>> seen;
  owner[0] = -2;  // zero is taken by the empty combination
  std::optional<Collision> out;
  detail::for_each_combination(ig, s, S.magnitudes(), S.t(), false,
                               [&](IndexedGroup::Index v, const std::vector<Term>& terms) {
                                 if (owner[v] != -1) {
                                   Collision c;
                                   c.first = terms;
                                   if (owner[v] >= 0) c.second = seen[static_cast<std::size_t>(owner[v])];
                                   c.value = ig.element_at(v);
                                   out = std::move(c);
                                   return false;
                                 }
                                 owner[v] = static_cast<std::int64_t>(seen.size());
                                 seen.push_back(terms);
                                 return true;
                               });
  return out;
}

inline bool verify_partial(const SplitterSet& S) {
  IndexedGroup ig(S.group());
  auto s = detail::indices(ig, S);
  std::vector<std::uint8_t> occupied(ig.order(), 0);
  occupied[0] = 1;
  bool ok = true;
  detail::for_each_combination(ig, s, S.magnitudes(), S.t(), false,
                               [&](IndexedGroup::Index v, const std::vector<Term>&) {
                                 if (occupied[v]) {
                                   ok = false;
                                   return false;
                                 }
                                 occupied[v] = 1;
                                 return true;
                               });
  return ok;
}

inline bool verify_complete(const SplitterSet& S) {
  IndexedGroup ig(S.group());
  auto s = detail::indices(ig, S);
  std::vector<std::uint8_t> covered(ig.order(), 0);
  std::uint64_t count = 0;
  detail::for_each_combination(ig, s, S.magnitudes(), S.t(), true,
                               [&](IndexedGroup::Index v, const std::vector<Term>&) {
                                 if (!covered[v]) {
                                   covered[v] = 1;
                                   ++count;
                                 }
                                 return count < ig.order();
                               });
  return count == ig.order();
}

inline bool verify_full(const SplitterSet& S) {
  const bool partial = verify_partial(S);
  if (!partial) return false;
  const bool complete = verify_complete(S);
  if (BigInt(S.group().order()) == ball_size(S.ball()) && !complete)
    throw std::logic_error("pigeonhole violated: partial splitting with |G| = |B| is not complete");
  return complete;
}

inline SplitStatus SplitterSet::certify() {
  const bool partial = verify_partial(*this);
  const bool complete = verify_complete(*this);
  if (partial && BigInt(group_.order()) == ball_size(ball()) && !complete)
    throw std::logic_error("pigeonhole violated: partial splitting with |G| = |B| is not complete");
  if (partial && complete)
    status_ = SplitStatus::full;
  else if (partial)
    status_ = SplitStatus::partial;
  else if (complete)
    status_ = SplitStatus::complete;
  else
    status_ = SplitStatus::none;
  return status_;
}

class DegenerateSplitting : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Given G >= [-k-, k+]* <>_t S and a prime power q, writes
// G = prod_{l | q} Z_l^{d_l} x G' and returns S' = proj_{G'}(q S), which
// partially t-splits G' with magnitudes [-floor(k-/q), floor(k+/q)]*.
inline SplitterSet induced_splitting(const SplitterSet& S, std::uint64_t q) {
  if (q < 1) throw std::invalid_argument("induced_splitting: q must be >= 1");
  std::uint64_t p = 0;
  int eq = 0;
  if (q > 1) {
    auto f = numtheory::factorize(q);
    if (f.size() != 1) throw std::invalid_argument("induced_splitting: q must be a prime power");
    p = f[0].prime;
    eq = f[0].exponent;
  }
  const auto& mags = S.magnitudes();
  const int kp = mags.kplus / static_cast<int>(q);
  const int km = mags.kminus / static_cast<int>(q);
  if (kp == 0)
    throw DegenerateSplitting("induced_splitting: floor(k+/q) = 0 leaves an empty magnitude set");
  if (!verify_partial(S)) throw std::invalid_argument("induced_splitting: input is not a partial splitting");

  const auto& G = S.group();
  std::vector<CyclicFactor> kept;
  std::vector<std::size_t> kept_pos;
  for (std::size_t i = 0; i < G.factors().size(); ++i) {
    const auto& f = G.factors()[i];
    if (q > 1 && f.prime == p && f.exponent <= eq) continue;
    kept.push_back(f);
    kept_pos.push_back(i);
  }
  AbelianGroup Gp(kept);
  std::vector<GroupElement> images;
  for (const auto& s : S.elements()) {
    auto qs = G.scalar_mul(static_cast<std::int64_t>(q), s);
    GroupElement g;
    for (auto pos : kept_pos) g.coords.push_back(qs.coords[pos]);
    images.push_back(std::move(g));
  }
  SplitterSet out(Gp, MagnitudeSet(kp, km), S.t(), std::move(images));
  if (out.certify() == SplitStatus::none || out.status() == SplitStatus::complete)
    throw std::logic_error("induced splitting failed to re-verify as a partial splitting");
  return out;
}

// Coincidence counts of the difference family built from S. Each class i
// holds the multiples a*s_i (a in M); an extra class holds 0. Delta is the
// set of ordered pairs drawn from different classes, and every unordered
// pair of distinct Delta-elements with equal difference is one equation,
// classified as M1 (one of i~l, k~j) or M2 (both).
struct CollisionStats {
  std::uint64_t delta_size = 0;
  std::uint64_t m1_count = 0;
  std::uint64_t m2_count = 0;
  std::uint64_t C = 0;  // |{i : 2 k+ s_i = 0}|
  std::optional<std::uint64_t> s1_size;
  std::optional<std::uint64_t> projection_order;
};

// `projection` lists factor positions of S.group() forming a direct factor
// G1; when absent, G1 is the part of G coprime to 2 k+.
inline CollisionStats collision_stats(const SplitterSet& S,
                                      std::optional<std::vector<std::size_t>> projection = std::nullopt) {
  if (!verify_partial(S)) throw std::invalid_argument("collision_stats: splitter set is not a verified partial splitting");
  const auto& G = S.group();
  IndexedGroup ig(G);
  auto s = detail::indices(ig, S);
  const auto values = S.magnitudes().values();
  const int n = S.n();
  const int m = S.magnitudes().kplus;

  struct Entry {
    int cls;
    IndexedGroup::Index value;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < n; ++i)
    for (int a : values) entries.push_back({i, ig.mul(a, s[static_cast<std::size_t>(i)])});
  entries.push_back({n, 0});  // the zero class

  CollisionStats st;
  std::unordered_map<IndexedGroup::Index, std::vector<std::pair<int, int>>> by_diff;
  for (const auto& x : entries) {
    for (const auto& y : entries) {
      if (x.cls == y.cls) continue;
      ++st.delta_size;
      by_diff[ig.add(x.value, ig.neg(y.value))].push_back({x.cls, y.cls});
    }
  }
  for (const auto& [diff, pairs] : by_diff) {
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      for (std::size_t v = u + 1; v < pairs.size(); ++v) {
        const auto [i, j] = pairs[u];
        const auto [k, l] = pairs[v];
        const bool il = i == l;
        const bool kj = k == j;
        if (il && kj)
          ++st.m2_count;
        else if (il || kj)
          ++st.m1_count;
        else
          throw std::logic_error("collision_stats: equation violates the partial splitting");
      }
    }
  }

  for (std::size_t i = 0; i < s.size(); ++i)
    if (ig.mul(2 * static_cast<std::int64_t>(m), s[i]) == 0) ++st.C;

  std::vector<std::size_t> proj;
  if (projection) {
    proj = *projection;
  } else {
    for (std::size_t i = 0; i < G.factors().size(); ++i)
      if (std::gcd(G.factors()[i].prime, 2 * static_cast<std::uint64_t>(m)) == 1) proj.push_back(i);
  }
  std::uint64_t g1 = 1;
  for (auto pos : proj) {
    if (pos >= G.factors().size()) throw std::out_of_range("collision_stats: projection factor out of range");
    g1 *= G.factors()[pos].order();
  }
  std::uint64_t s1 = 0;
  for (const auto& e : S.elements()) {
    bool nonzero = false;
    for (auto pos : proj) nonzero = nonzero || e.coords[pos] != 0;
    if (nonzero) ++s1;
  }
  st.s1_size = s1;
  st.projection_order = g1;

  // Proven bounds; a violation means a bug in this code.
  const bool full = verify_complete(S);
  const auto un = static_cast<std::uint64_t>(n);
  if (S.t() == 2 && S.magnitudes().family_m()) {
    if (st.m1_count > 2 * static_cast<std::uint64_t>(m) * m * un)
      throw std::logic_error("collision_stats: M1 exceeds 2 m^2 n");
    const auto m2 = G.count_order(2);
    const auto m2m = G.count_order(2 * static_cast<std::uint64_t>(m));
    if (st.C > std::min(m2, m2m)) throw std::logic_error("collision_stats: C exceeds min(m_2, m_2m)");
    if (full && std::gcd(g1, 2 * static_cast<std::uint64_t>(m)) == 1 && st.C >= 1) {
      // C < n / sqrt(|G1|) + 1  <=>  (C-1)^2 |G1| < n^2
      if (BigInt(st.C - 1) * (st.C - 1) * g1 >= BigInt(un) * un)
        throw std::logic_error("collision_stats: C >= n/sqrt(|G1|) + 1");
    }
  }
  if (S.t() == 2 && full) {
    // |S1| > n(1 - 1/sqrt|G1|) - 1  <=>  n/sqrt|G1| > n - 1 - |S1|
    const std::int64_t rhs = static_cast<std::int64_t>(un) - 1 - static_cast<std::int64_t>(s1);
    if (rhs >= 0 && BigInt(un) * un <= BigInt(rhs) * rhs * g1)
      throw std::logic_error("collision_stats: |S1| violates the projection lower bound");
  }
  return st;
}

// Certificate text format:
//   line 1: group literal        Z2xZ4
//   line 2: M=-kminus..kplus     M=-1..2
//   line 3: t=<int>              t=2
//   line 4+: one element tuple per line, (1,3)
inline std::string emit_certificate(const SplitterSet& S) {
  std::ostringstream os;
  os << S.group().to_string() << '\n';
  os << "M=" << S.magnitudes().to_string() << '\n';
  os << "t=" << S.t() << '\n';
  for (const auto& e : S.elements()) os << S.group().format(e) << '\n';
  return os.str();
}

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline SplitterSet parse_certificate(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 4) throw ParseError("certificate: need group, M, t and at least one element line");
  try {
    AbelianGroup G = AbelianGroup::parse(lines[0]);
    if (lines[1].rfind("M=", 0) != 0) throw ParseError("certificate line 2 must be M=-kminus..kplus");
    MagnitudeSet M = MagnitudeSet::parse(lines[1].substr(2));
    if (lines[2].rfind("t=", 0) != 0) throw ParseError("certificate line 3 must be t=<int>");
    std::size_t used = 0;
    int t = std::stoi(lines[2].substr(2), &used);
    if (used != lines[2].size() - 2) throw ParseError("certificate: malformed t line");
    std::vector<GroupElement> elems;
    for (std::size_t i = 3; i < lines.size(); ++i) elems.push_back(G.parse_element(lines[i]));
    return {G, M, t, std::move(elems)};
  } catch (const ParseError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

inline SplitterSet parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

}  // namespace ltile
