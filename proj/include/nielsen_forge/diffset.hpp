#pragma once
// Cyclic (n, k, lambda) difference sets in Z/n: k-subsets whose pairwise
// differences hit every nonzero residue exactly lambda times. Enumeration is
// plain backtracking over increasing residues with a running difference
// tally; translate classes are canonicalized to the lexicographically least
// translate, so "is a translate of" becomes equality of canonical forms.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace nielsen_forge {

struct DifferenceSet {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> elements;  // sorted distinct residues
  std::uint64_t lambda = 0;
  auto operator<=>(const DifferenceSet&) const = default;
};

struct MultiplierGroup {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> members;  // sorted units m with m*D = D + c
};

namespace detail {

inline void check_residues(const DifferenceSet& d) {
  if (d.modulus == 0) throw std::invalid_argument("modulus must be positive");
  for (std::size_t i = 0; i < d.elements.size(); ++i) {
    if (d.elements[i] >= d.modulus)
      throw std::invalid_argument("element out of range");
    if (i > 0 && d.elements[i - 1] >= d.elements[i])
      throw std::invalid_argument("elements must be strictly increasing");
  }
}

}  // namespace detail

inline bool is_difference_set(const DifferenceSet& d) {
  detail::check_residues(d);
  std::vector<std::uint64_t> tally(d.modulus, 0);
  for (auto a : d.elements)
    for (auto b : d.elements)
      if (a != b) ++tally[(a + d.modulus - b) % d.modulus];
  for (std::uint64_t r = 1; r < d.modulus; ++r)
    if (tally[r] != d.lambda) return false;
  return true;
}

inline std::vector<std::uint64_t> translate_set(
    const std::vector<std::uint64_t>& elements, std::uint64_t n,
    std::uint64_t c) {
  std::vector<std::uint64_t> out;
  out.reserve(elements.size());
  for (auto x : elements) out.push_back((x + c) % n);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> multiply_set(
    const std::vector<std::uint64_t>& elements, std::uint64_t n,
    std::uint64_t m) {
  std::set<std::uint64_t> img;
  for (auto x : elements) img.insert(x * m % n);
  return std::vector<std::uint64_t>(img.begin(), img.end());
}

inline DifferenceSet canonical_translate(const DifferenceSet& d) {
  detail::check_residues(d);
  auto best = translate_set(d.elements, d.modulus, 0);
  for (std::uint64_t c = 1; c < d.modulus; ++c)
    best = std::min(best, translate_set(d.elements, d.modulus, c));
  return DifferenceSet{d.modulus, std::move(best), d.lambda};
}

inline std::vector<std::uint64_t> unit_residues(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < n; ++m)
    if (std::gcd(m, n) == 1) out.push_back(m);
  if (n == 1) out.push_back(0);  // the unit group of the zero ring is trivial
  return out;
}

// one representative per translation class, lexicographically least translate
inline std::vector<DifferenceSet> find_all(std::uint64_t n, std::uint64_t k,
                                           std::uint64_t lambda) {
  if (n == 0 || k > n) throw std::invalid_argument("need 0 <= k <= n, n > 0");
  if (lambda * (n - 1) != k * (k - 1))
    throw std::invalid_argument("lambda (n - 1) = k (k - 1) fails");
  std::set<std::vector<std::uint64_t>> seen;
  if (k == 0) {
    seen.emplace();
  } else {
    // every translation class has a member containing 0
    std::vector<std::uint64_t> cur{0};
    std::vector<std::uint64_t> tally(n, 0);
    auto rec = [&](auto&& self, std::uint64_t next) -> void {
      if (cur.size() == k) {
        for (std::uint64_t r = 1; r < n; ++r)
          if (tally[r] != lambda) return;
        seen.insert(
            canonical_translate({n, cur, lambda}).elements);
        return;
      }
      for (std::uint64_t x = next; x + (k - cur.size()) <= n; ++x) {
        bool ok = true;
        for (auto y : cur) {
          if (++tally[(x + n - y) % n] > lambda) ok = false;
          if (++tally[(y + n - x) % n] > lambda) ok = false;
        }
        if (ok) {
          cur.push_back(x);
          self(self, x + 1);
          cur.pop_back();
        }
        for (auto y : cur) {
          --tally[(x + n - y) % n];
          --tally[(y + n - x) % n];
        }
      }
    };
    rec(rec, 1);
  }
  std::vector<DifferenceSet> out;
  for (const auto& e : seen) out.push_back(DifferenceSet{n, e, lambda});
  return out;
}

inline MultiplierGroup multiplier_group(const DifferenceSet& d) {
  DifferenceSet canon = canonical_translate(d);
  MultiplierGroup out{d.modulus, {}};
  for (auto m : unit_residues(d.modulus)) {
    auto img = multiply_set(d.elements, d.modulus, m);
    if (canonical_translate({d.modulus, std::move(img), d.lambda}) == canon)
      out.members.push_back(m);
  }
  return out;
}

// true when m * D is a translate of nothing in the class of D
inline bool verify_nonmultiplier(const DifferenceSet& d, std::int64_t m) {
  detail::check_residues(d);
  std::int64_t n = std::int64_t(d.modulus);
  std::uint64_t r = std::uint64_t(((m % n) + n) % n);
  auto img = multiply_set(d.elements, d.modulus, r);
  if (img.size() != d.elements.size()) return true;  // collapsed, not a unit
  return !(canonical_translate({d.modulus, std::move(img), d.lambda}) ==
           canonical_translate(d));
}

// orbits of the translation classes under unit multiplication; each orbit and
// the orbit list itself come out sorted
inline std::vector<std::vector<DifferenceSet>> unit_orbit_classes(
    std::uint64_t n, std::uint64_t k, std::uint64_t lambda) {
  auto reps = find_all(n, k, lambda);
  auto units = unit_residues(n);
  std::set<std::size_t> unplaced;
  for (std::size_t i = 0; i < reps.size(); ++i) unplaced.insert(i);
  auto index_of = [&](const DifferenceSet& d) {
    auto it = std::lower_bound(reps.begin(), reps.end(), d);
    return std::size_t(it - reps.begin());
  };
  std::vector<std::vector<DifferenceSet>> out;
  while (!unplaced.empty()) {
    std::set<std::size_t> orbit;
    std::vector<std::size_t> frontier{*unplaced.begin()};
    orbit.insert(frontier.front());
    while (!frontier.empty()) {
      std::size_t at = frontier.back();
      frontier.pop_back();
      for (auto m : units) {
        auto img = multiply_set(reps[at].elements, n, m);
        std::size_t j = index_of(canonical_translate({n, std::move(img), lambda}));
        if (orbit.insert(j).second) frontier.push_back(j);
      }
    }
    std::vector<DifferenceSet> members;
    for (std::size_t i : orbit) {
      members.push_back(reps[i]);
      unplaced.erase(i);
    }
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace nielsen_forge
