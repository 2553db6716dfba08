#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bwslex/lexicon.hpp"
#include "bwslex/tuples.hpp"

namespace bwslex {

struct DesignOptions {
  // Upper bound on how many tuples any pair of terms may share.
  std::size_t pair_cap = 2;
  // Repair passes over the whole design before giving up.
  std::size_t max_repair_passes = 2000;
  // After the cap is met, keep trying to lower the maximum pair count.
  bool minimize_pairs = true;
};

// Builds factor * |terms| tuples of four distinct terms such that
//  - no two tuples share the same set of four terms,
//  - every term appears in exactly 4 * factor tuples,
//  - no pair of terms shares more than `pair_cap` tuples.
// The result (ids, order, presentation order) is a pure function of
// (terms, factor, seed, options). Throws DesignInfeasible naming the criterion
// when the request cannot be met.
std::vector<Tuple4> generate_design(const std::vector<Term>& terms, std::size_t factor, std::uint64_t seed,
                                    const DesignOptions& options = {});

// Smallest possible maximum pair co-occurrence for the given size: every term
// has 3 * 4 * factor partner slots spread over |terms| - 1 partners.
std::size_t pair_cooccurrence_lower_bound(std::size_t n_terms, std::size_t factor);

struct DesignReport {
  std::size_t n_terms = 0;
  std::size_t n_tuples = 0;
  std::map<std::string, std::size_t> per_term_counts;
  std::size_t max_pair_cooccurrence = 0;
  std::size_t pairs_over_cap = 0;
  std::size_t duplicate_tuple_sets = 0;
  std::size_t within_tuple_duplicates = 0;  // tuples containing a repeated item
  std::size_t unknown_items = 0;            // items not in the term list
  std::size_t min_term_count = 0;
  std::size_t max_term_count = 0;
  std::size_t pair_cap = 0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

DesignReport validate_design(const std::vector<Tuple4>& tuples, const std::vector<Term>& terms, std::size_t pair_cap);

}  // namespace bwslex
