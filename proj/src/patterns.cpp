#include "primedec/patterns.hpp"

#include <algorithm>
#include <stdexcept>

#include "primedec/errors.hpp"

namespace primedec {

namespace {

bool is_composite(const Int& z) {
  Int a = abs_int(z);
  return a > 1 && !is_prime_signed(a);
}

bool is_positive_prime(const Int& z) { return z > 0 && is_prime_signed(z); }

void require_star(const std::vector<AffineMap>& maps) {
  StarVerdict sv = star_check(maps);
  if (!sv.holds) throw StarFailureError(sv.witness_prime->get_str());
}

}  // namespace

ConstellationResult find_constellation(const DicksonSystem& sys,
                                       const Int& count, const Int& budget) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (sys.prime_maps.empty())
    throw std::invalid_argument("at least one prime map is required");
  require_star(sys.prime_maps);

  ConstellationResult out;
  for (Int m = 0; m <= budget; ++m) {
    bool ok = true;
    for (const auto& f : sys.prime_maps) {
      if (!is_positive_prime(f.a * m + f.b)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& g : sys.composite_maps) {
        if (!is_composite(g.a * m + g.b)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out.values.push_back(m);
      if (Int(static_cast<unsigned long>(out.values.size())) == count)
        return out;
    }
  }
  out.budget_exhausted = true;
  return out;
}

std::optional<Int> find_consecutive_tuple(const std::vector<Int>& b,
                                          const Int& budget) {
  if (b.empty()) throw std::invalid_argument("offset list must be nonempty");
  if (b.front() < 0)
    throw std::invalid_argument("offsets must be natural numbers");
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i] <= b[i - 1])
      throw std::invalid_argument("offsets must be strictly increasing");

  std::vector<AffineMap> maps;
  for (const Int& off : b) maps.push_back({1, off});
  require_star(maps);

  std::vector<Int> gaps;  // offsets strictly between that must stay composite
  for (Int c = b.front() + 1; c < b.back(); ++c)
    if (std::find(b.begin(), b.end(), c) == b.end()) gaps.push_back(c);

  for (Int x = 2; x <= budget; ++x) {
    bool ok = true;
    for (const Int& off : b) {
      if (!is_positive_prime(x + off)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const Int& c : gaps) {
      if (is_prime_signed(x + c)) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

namespace {

bool pattern_matches(const PatternSpec& spec, const Int& a, const Int& b) {
  for (Int t = 0; t < spec.n; ++t)
    if (is_prime_signed(a * t + b) != (spec.s.count(t) != 0)) return false;
  return true;
}

std::vector<Int> ap_terms(const Int& n, const Int& a, const Int& b) {
  std::vector<Int> terms;
  for (Int t = 0; t < n; ++t) terms.push_back(a * t + b);
  return terms;
}

void validate_spec(const PatternSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("pattern length must be >= 1");
  for (const Int& t : spec.s)
    if (t < 0 || t >= spec.n)
      throw std::invalid_argument("pattern positions must lie in [0, n)");
}

}  // namespace

namespace {

// A prime p <= n obstructs the difference a when every residue of b
// hits some prime-required position with p | a*t + b.  Such (a, p) only
// admit solutions where that term is p itself, forcing b <= p <= n.
bool small_prime_obstructed(const PatternSpec& spec, const Int& a) {
  for (const Int& p : primes_below(spec.n + 1)) {
    if (mod_floor(a, p) == 0) continue;
    std::vector<bool> covered(p.get_ui(), false);
    for (const Int& t : spec.s)
      covered[mod_floor(-a * t, p).get_ui()] = true;
    bool all = true;
    for (bool c : covered)
      if (!c) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::optional<APResult> find_ap_pattern(const PatternSpec& spec,
                                        const Int& budget) {
  validate_spec(spec);
  for (Int a = 1; a <= budget; ++a) {
    Int bmax = budget;
    if (small_prime_obstructed(spec, a)) bmax = std::min(budget, spec.n);
    for (Int b = 2; b <= bmax; ++b) {
      if (pattern_matches(spec, a, b))
        return APResult{a, b, ap_terms(spec.n, a, b)};
    }
  }
  return std::nullopt;
}

std::optional<APReplay> find_ap_pattern_replay(const PatternSpec& spec,
                                               const Int& budget) {
  validate_spec(spec);
  Int b = factorial(spec.n) + 1;
  std::vector<AffineMap> primes, comps;
  for (Int t = 1; t < spec.n; ++t) {
    if (spec.s.count(t))
      primes.push_back({t, b});
    else
      comps.push_back({t, b});
  }
  // The difference is a constellation value of the maps t*x + b; the
  // position t = 0 term is b itself and is not constrained by them.
  for (Int m = 1; m <= budget; ++m) {
    bool ok = true;
    for (const auto& f : primes) {
      if (!is_positive_prime(f.a * m + f.b)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& g : comps) {
        if (!is_composite(g.a * m + g.b)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      APResult ap{m, b, ap_terms(spec.n, m, b)};
      bool t0 = is_prime_signed(b) == (spec.s.count(0) != 0);
      return APReplay{ap, t0};
    }
  }
  return std::nullopt;
}

std::vector<Int> auto_offsets(const Int& k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<Int> offs{0};
  Int cand = 2;
  while (Int(static_cast<unsigned long>(offs.size())) < k) {
    std::vector<AffineMap> maps;
    for (const Int& o : offs) maps.push_back({1, o});
    maps.push_back({1, cand});
    if (star_check(maps).holds) offs.push_back(cand);
    cand += 2;
  }
  return offs;
}

std::optional<ShatterResult> find_shattering(const Int& k,
                                             const std::vector<Int>& offsets,
                                             const Int& budget) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > 20) throw ResourceLimitError("2^k witness subsets is too many");
  std::vector<Int> offs = offsets.empty() ? auto_offsets(k) : offsets;
  if (Int(static_cast<unsigned long>(offs.size())) != k)
    throw std::invalid_argument("offset count must equal k");
  for (std::size_t i = 0; i < offs.size(); ++i)
    for (std::size_t j = i + 1; j < offs.size(); ++j)
      if (offs[i] == offs[j])
        throw std::invalid_argument("offsets must be distinct");

  std::uint64_t kk = static_cast<std::uint64_t>(k.get_ui());
  ShatterResult out;
  out.k = k;
  out.offsets = offs;
  for (std::uint64_t mask = 0; mask < (1ULL << kk); ++mask) {
    auto matches = [&](const Int& b) {
      for (std::uint64_t j = 0; j < kk; ++j) {
        bool want = (mask >> j) & 1;
        if (is_prime_signed(b + offs[j]) != want) return false;
      }
      return true;
    };
    std::optional<Int> found;
    for (Int m = 0; m <= budget && !found; ++m) {
      if (matches(m)) {
        found = m;
        break;
      }
      if (m > 0 && matches(-m)) found = -m;
    }
    if (!found) return std::nullopt;
    out.witnesses[mask] = *found;
  }
  return out;
}

std::optional<IPWitnesses> build_ip_witnesses(const Int& n, const Int& k,
                                              const Int& budget) {
  if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");

  // k^n block positions; block patterns indexed by subset encoding
  Int kn = 1;
  for (Int i = 0; i < n; ++i) {
    kn *= k;
    if (kn > 62) return std::nullopt;  // subsets not enumerable at desk scale
  }
  std::uint64_t block = kn.get_ui();
  Int length = kn * (Int(1) << static_cast<unsigned long>(block));
  if (length > 100000) return std::nullopt;

  PatternSpec spec;
  spec.n = length;
  for (std::uint64_t s = 0; s < (1ULL << block); ++s)
    for (std::uint64_t l = 0; l < block; ++l)
      if ((s >> l) & 1)
        spec.s.insert(Int(static_cast<unsigned long>(s * block + l)));

  std::optional<APResult> ap = find_ap_pattern(spec, budget);
  if (!ap) return std::nullopt;

  IPWitnesses out;
  out.n = n;
  out.k = k;
  out.d = ap->a;
  out.ap = *ap;
  // a_{i,j} = j * d * k^i for i < n, j < k
  Int ki = 1;
  for (Int i = 0; i < n; ++i) {
    std::vector<Int> row;
    for (Int j = 0; j < k; ++j) row.push_back(j * ap->a * ki);
    out.offsets.push_back(std::move(row));
    ki *= k;
  }
  // b_s = first element of block s
  for (std::uint64_t s = 0; s < (1ULL << block); ++s)
    out.witnesses[s] =
        ap->b + ap->a * Int(static_cast<unsigned long>(s * block));
  return out;
}

}  // namespace primedec
