#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "primedec/dickson.hpp"
#include "primedec/numtheory.hpp"

namespace primedec {

// A requested primality pattern over an arithmetic progression of
// length n: position t must be prime exactly when t is in s.
struct PatternSpec {
  Int n;            // >= 1
  std::set<Int> s;  // subset of [0, n)
};

struct APResult {
  Int a;  // common difference, >= 1
  Int b;  // initial term
  std::vector<Int> terms;
};

struct ConstellationResult {
  std::vector<Int> values;
  bool budget_exhausted = false;
};

// Subsets of {0..k-1} are keyed by their binary encoding: bit j set
// means offset j belongs to the subset.
struct ShatterResult {
  Int k;
  std::vector<Int> offsets;
  std::map<std::uint64_t, Int> witnesses;
};

struct IPWitnesses {
  Int n;
  Int k;
  Int d;  // difference of the underlying progression
  APResult ap;
  std::vector<std::vector<Int>> offsets;   // offsets[i][j] = j*d*k^i
  std::map<std::uint64_t, Int> witnesses;  // subset of [0, k^n) -> b_s
};

// Ascending m from 0 with every prime map taking a (positive) prime
// value and every composite map a composite one; requires the star
// condition of the prime maps.  Stops at m > budget with the partial
// list flagged.
ConstellationResult find_constellation(const DicksonSystem& sys,
                                       const Int& count, const Int& budget);

// Least x >= 2 making x+b_0, ..., x+b_{n-1} consecutive primes, i.e.
// all prime with every skipped offset in between composite.  The
// offsets must be admissible (star condition of the maps x + b_i).
std::optional<Int> find_consecutive_tuple(const std::vector<Int>& b,
                                          const Int& budget);

// Least (a, b) in lexicographic order with a in [1, budget], b in
// [2, budget] realizing the pattern; nullopt when the grid is
// exhausted.
std::optional<APResult> find_ap_pattern(const PatternSpec& spec,
                                        const Int& budget);

// Replay of the existence argument with b fixed to n!+1 and the
// difference found as a prime/composite constellation of the maps
// t*x + b for 1 <= t < n.  The found progression is only constrained
// at positions t >= 1; t0_matches reports whether position 0 happens
// to agree with the requested pattern too.
struct APReplay {
  APResult ap;
  bool t0_matches;
};
std::optional<APReplay> find_ap_pattern_replay(const PatternSpec& spec,
                                               const Int& budget);

// Offsets used by find_shattering when none are given: the greedy
// admissible tuple 0, 2, 6, 8, ...
std::vector<Int> auto_offsets(const Int& k);

// For every subset s of {0..k-1}, the least-|b| integer (positive
// before negative on ties) with b + offset_j a signed prime exactly
// for j in s; nullopt when any subset search exhausts the budget.
std::optional<ShatterResult> find_shattering(const Int& k,
                                             const std::vector<Int>& offsets,
                                             const Int& budget);

// One arithmetic progression of length k^n * 2^(k^n) whose primality
// pattern lists, block by block in subset-encoding order, the
// indicator patterns of all subsets of [0, k^n), together with the
// offsets a_{i,j} = j*d*k^i and witnesses b_s read off from it.
std::optional<IPWitnesses> build_ip_witnesses(const Int& n, const Int& k,
                                              const Int& budget);

}  // namespace primedec
