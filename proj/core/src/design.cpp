#include "bwslex/design.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <unordered_map>

#include "bwslex/error.hpp"
#include "bwslex/rng.hpp"

namespace bwslex {

namespace {

using Slot = std::array<std::uint32_t, 4>;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

struct SetKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const SetKey&, const SetKey&) = default;
};

struct SetKeyHash {
  std::size_t operator()(const SetKey& k) const noexcept { return static_cast<std::size_t>(mix64(k.hi ^ mix64(k.lo))); }
};

SetKey set_key(Slot s) {
  std::sort(s.begin(), s.end());
  return SetKey{(std::uint64_t{s[0]} << 32) | s[1], (std::uint64_t{s[2]} << 32) | s[3]};
}

std::size_t within_duplicates(const Slot& s) {
  std::size_t d = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d += s[i] == s[j];
  return d;
}

// Violation bookkeeping for the swap repair. Cost is the number of
// within-tuple repeats + surplus tuples per repeated set + pair counts above cap.
class RepairState {
 public:
  RepairState(std::vector<Slot>& slots, std::size_t cap) : slots_(slots), cap_(cap) {
    pairs_.reserve(slots.size() * 8);
    sets_.reserve(slots.size() * 2);
    for (std::size_t t = 0; t < slots.size(); ++t) cost_ += add(t);
  }

  long cost() const noexcept { return cost_; }

  bool violating(std::size_t t) const {
    const Slot& s = slots_[t];
    if (within_duplicates(s) > 0) return true;
    if (sets_.at(set_key(s)) > 1) return true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (pairs_.at(pair_key(s[i], s[j])) > cap_) return true;
    return false;
  }

  // Swaps slot (t1, p1) with (t2, p2); returns the change in cost.
  long swap_items(std::size_t t1, int p1, std::size_t t2, int p2) {
    long delta = remove(t1) + remove(t2);
    std::swap(slots_[t1][p1], slots_[t2][p2]);
    delta += add(t1) + add(t2);
    cost_ += delta;
    return delta;
  }

  std::size_t max_pair() const {
    std::size_t m = 0;
    for (const auto& [k, c] : pairs_) m = std::max(m, c);
    return m;
  }

 private:
  long surplus(std::size_t c) const { return c > cap_ ? static_cast<long>(c - cap_) : 0; }

  long add(std::size_t t) {
    const Slot& s = slots_[t];
    long delta = static_cast<long>(within_duplicates(s));
    std::size_t& sc = sets_[set_key(s)];
    if (sc >= 1) ++delta;
    ++sc;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (s[i] == s[j]) continue;
        std::size_t& c = pairs_[pair_key(s[i], s[j])];
        delta -= surplus(c);
        ++c;
        delta += surplus(c);
      }
    return delta;
  }

  long remove(std::size_t t) {
    const Slot& s = slots_[t];
    long delta = -static_cast<long>(within_duplicates(s));
    std::size_t& sc = sets_[set_key(s)];
    --sc;
    if (sc >= 1) --delta;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (s[i] == s[j]) continue;
        std::size_t& c = pairs_[pair_key(s[i], s[j])];
        delta -= surplus(c);
        --c;
        delta += surplus(c);
      }
    return delta;
  }

  std::vector<Slot>& slots_;
  std::size_t cap_;
  long cost_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> pairs_;
  std::unordered_map<SetKey, std::size_t, SetKeyHash> sets_;
};

// Random item swaps between a violating tuple and any other tuple. Improving
// moves are kept, sideways moves are kept with probability 1/2. Returns true
// once the cost reaches zero.
bool repair(std::vector<Slot>& slots, std::size_t cap, std::size_t max_passes, Rng& rng) {
  RepairState state(slots, cap);
  const std::size_t n = slots.size();
  constexpr int kTriesPerTuple = 8;
  for (std::size_t pass = 0; pass < max_passes && state.cost() > 0; ++pass) {
    for (std::size_t t = 0; t < n && state.cost() > 0; ++t) {
      for (int attempt = 0; attempt < kTriesPerTuple && state.violating(t); ++attempt) {
        const int p1 = static_cast<int>(rng.below(4));
        const std::size_t t2 = static_cast<std::size_t>(rng.below(n - 1));
        const std::size_t other = t2 >= t ? t2 + 1 : t2;
        const int p2 = static_cast<int>(rng.below(4));
        const long delta = state.swap_items(t, p1, other, p2);
        const bool keep = delta < 0 || (delta == 0 && (rng.next() & 1U));
        if (!keep) state.swap_items(t, p1, other, p2);
      }
    }
  }
  return state.cost() == 0;
}

std::size_t max_pair_count(const std::vector<Slot>& slots) {
  std::unordered_map<std::uint64_t, std::size_t> pairs;
  std::size_t m = 0;
  for (const auto& s : slots)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m = std::max(m, ++pairs[pair_key(s[i], s[j])]);
  return m;
}

// n choose 4 >= needed, without overflow.
bool enough_distinct_sets(std::size_t n, std::size_t needed) {
  if (n < 4) return false;
  long double c = 1.0L;
  for (std::size_t k = 0; k < 4; ++k) c = c * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
  return c + 0.5L >= static_cast<long double>(needed);
}

std::string tuple_id_for(std::size_t index, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(5, std::to_string(total).size());
  std::string digits = std::to_string(index + 1);
  return "t" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

std::size_t pair_cooccurrence_lower_bound(std::size_t n_terms, std::size_t factor) {
  if (n_terms < 2) return 0;
  const std::size_t slots = 12 * factor;
  return (slots + (n_terms - 2)) / (n_terms - 1);
}

std::vector<Tuple4> generate_design(const std::vector<Term>& terms, std::size_t factor, std::uint64_t seed,
                                    const DesignOptions& options) {
  if (factor == 0) throw DesignError("factor must be at least 1");
  const std::size_t n = terms.size();
  {
    std::set<std::string_view> distinct;
    for (const auto& t : terms) distinct.insert(t.surface);
    if (distinct.size() != n) throw DesignError("term list contains duplicate surfaces");
  }
  if (n < 4) {
    throw DesignInfeasible("no duplicates within a tuple: need at least 4 terms, got " + std::to_string(n));
  }
  const std::size_t n_tuples = factor * n;
  if (!enough_distinct_sets(n, n_tuples)) {
    throw DesignInfeasible("no two tuples with the same four terms: " + std::to_string(n) +
                           " terms do not yield " + std::to_string(n_tuples) + " distinct 4-term sets");
  }
  const std::size_t bound = pair_cooccurrence_lower_bound(n, factor);
  if (bound > options.pair_cap) {
    throw DesignInfeasible("pair co-occurrence cap " + std::to_string(options.pair_cap) +
                           " is below the minimum achievable " + std::to_string(bound) + " for " +
                           std::to_string(n) + " terms at factor " + std::to_string(factor));
  }

  Rng rng(seed);

  // 4 * factor shuffled passes over the terms, concatenated and cut into fours:
  // each term lands in exactly 4 * factor slots.
  std::vector<std::uint32_t> sequence;
  sequence.reserve(4 * n_tuples);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t round = 0; round < 4 * factor; ++round) {
    rng.shuffle(std::span(order));
    sequence.insert(sequence.end(), order.begin(), order.end());
  }
  std::vector<Slot> slots(n_tuples);
  for (std::size_t t = 0; t < n_tuples; ++t)
    for (int k = 0; k < 4; ++k) slots[t][k] = sequence[4 * t + k];

  if (!repair(slots, options.pair_cap, options.max_repair_passes, rng)) {
    throw DesignInfeasible("repair did not converge within " + std::to_string(options.max_repair_passes) +
                           " passes (pair cap " + std::to_string(options.pair_cap) + ")");
  }

  if (options.minimize_pairs) {
    constexpr std::size_t kTightenPasses = 200;
    std::size_t current = max_pair_count(slots);
    while (current > bound && current > 1) {
      std::vector<Slot> attempt = slots;
      if (!repair(attempt, current - 1, kTightenPasses, rng)) break;
      slots = std::move(attempt);
      current = max_pair_count(slots);
    }
  }

  std::vector<Tuple4> design;
  design.reserve(n_tuples);
  for (std::size_t t = 0; t < n_tuples; ++t) {
    rng.shuffle(std::span(slots[t]));
    Tuple4 tuple;
    tuple.tuple_id = tuple_id_for(t, n_tuples);
    for (int k = 0; k < 4; ++k) tuple.items[k] = terms[slots[t][k]].surface;
    design.push_back(std::move(tuple));
  }
  return design;
}

DesignReport validate_design(const std::vector<Tuple4>& tuples, const std::vector<Term>& terms, std::size_t pair_cap) {
  DesignReport report;
  report.n_terms = terms.size();
  report.n_tuples = tuples.size();
  report.pair_cap = pair_cap;

  std::unordered_map<std::string_view, std::uint32_t> ids;
  for (const auto& t : terms) {
    ids.emplace(t.surface, t.id.value);
    report.per_term_counts.emplace(t.surface, 0);
  }

  std::map<std::array<std::string, 4>, std::size_t> sets;
  std::map<std::pair<std::string, std::string>, std::size_t> pairs;
  for (const auto& tuple : tuples) {
    bool repeated = false;
    for (int i = 0; i < 4; ++i) {
      const std::string& item = tuple.items[i];
      auto it = report.per_term_counts.find(item);
      if (it == report.per_term_counts.end() || !ids.contains(item)) {
        ++report.unknown_items;
      } else {
        ++it->second;
      }
      for (int j = i + 1; j < 4; ++j) {
        if (item == tuple.items[j]) {
          repeated = true;
          continue;
        }
        auto key = std::minmax(item, tuple.items[j]);
        const std::size_t c = ++pairs[{key.first, key.second}];
        report.max_pair_cooccurrence = std::max(report.max_pair_cooccurrence, c);
      }
    }
    if (repeated) ++report.within_tuple_duplicates;
    auto sorted = tuple.items;
    std::sort(sorted.begin(), sorted.end());
    if (++sets[sorted] > 1) ++report.duplicate_tuple_sets;
  }
  for (const auto& [p, c] : pairs) report.pairs_over_cap += c > pair_cap;

  if (!report.per_term_counts.empty()) {
    report.min_term_count = report.per_term_counts.begin()->second;
    for (const auto& [s, c] : report.per_term_counts) {
      report.min_term_count = std::min(report.min_term_count, c);
      report.max_term_count = std::max(report.max_term_count, c);
    }
  }

  if (report.duplicate_tuple_sets > 0)
    report.violations.push_back(std::to_string(report.duplicate_tuple_sets) + " tuple(s) repeat another tuple's set of terms");
  if (report.within_tuple_duplicates > 0)
    report.violations.push_back(std::to_string(report.within_tuple_duplicates) + " tuple(s) contain a repeated term");
  if (report.unknown_items > 0)
    report.violations.push_back(std::to_string(report.unknown_items) + " item(s) not in the term list");
  if (report.max_term_count - report.min_term_count > 1)
    report.violations.push_back("per-term counts range from " + std::to_string(report.min_term_count) + " to " +
                                std::to_string(report.max_term_count));
  if (report.max_pair_cooccurrence > pair_cap)
    report.violations.push_back(std::to_string(report.pairs_over_cap) + " pair(s) co-occur more than " +
                                std::to_string(pair_cap) + " times (max " +
                                std::to_string(report.max_pair_cooccurrence) + ")");
  return report;
}

}  // namespace bwslex
