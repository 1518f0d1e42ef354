#pragma once
// Permutation-group services over generator sets: order/membership via an
// incremental stabilizer chain (deterministic base 1,2,3,...), bounded
// closures, transitivity/blocks/primitivity, conjugacy classes by explicit
// closure, centralizers and normalizers in S_n, and alternating/symmetric
// recognition.

#include "perm.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace nielsen_forge {

inline constexpr std::size_t kDefaultClosureBound = 2'000'000;

// decimal big integer, just enough for group orders (product of small ints)
class DecimalInt {
public:
  DecimalInt() : digits_{0} {}
  explicit DecimalInt(std::uint64_t v) {
    if (v == 0) digits_ = {0};
    while (v) { digits_.push_back(v % 10); v /= 10; }
  }
  void mul(std::uint64_t m) {
    std::uint64_t carry = 0;
    for (auto& d : digits_) {
      std::uint64_t v = d * m + carry;
      d = int(v % 10);
      carry = v / 10;
    }
    while (carry) { digits_.push_back(carry % 10); carry /= 10; }
    if (digits_.size() > 1 && digits_.back() == 0) normalize();
  }
  std::string str() const {
    std::string s;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) s += char('0' + *it);
    return s;
  }
  std::optional<std::uint64_t> to_u64() const {
    std::uint64_t v = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
      if (v > (UINT64_MAX - *it) / 10) return std::nullopt;
      v = v * 10 + *it;
    }
    return v;
  }
  bool operator==(const DecimalInt& o) const { return digits_ == o.digits_; }
  // does d divide this?
  bool divisible_by(std::uint64_t d) const {
    std::uint64_t rem = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it)
      rem = (rem * 10 + *it) % d;
    return rem == 0;
  }

private:
  void normalize() {
    while (digits_.size() > 1 && digits_.back() == 0) digits_.pop_back();
  }
  std::vector<int> digits_;  // little-endian
};

inline DecimalInt factorial_decimal(std::size_t n) {
  DecimalInt r(1);
  for (std::size_t k = 2; k <= n; ++k) r.mul(k);
  return r;
}

// breadth-first closure of <gens>; throws when the bound is exceeded
inline std::vector<Perm> closure(const std::vector<Perm>& gens,
                                 std::size_t bound = kDefaultClosureBound) {
  if (gens.empty()) throw std::invalid_argument("closure of empty generator set");
  std::size_t n = gens[0].degree();
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> out;
  out.push_back(identity(n));
  seen.insert(out[0]);
  for (std::size_t head = 0; head < out.size(); ++head) {
    Perm cur = out[head];  // copy: out may reallocate
    for (const Perm& g : gens) {
      Perm nxt = compose(cur, g);
      if (seen.insert(nxt).second) {
        if (out.size() >= bound)
          throw std::runtime_error("closure bound exceeded (" + std::to_string(bound) + ")");
        out.push_back(std::move(nxt));
      }
    }
  }
  return out;
}

// Incremental Schreier–Sims. Base points are chosen deterministically as the
// smallest point moved by the residue that forces a new level. levels_[i].gens
// generates the stabilizer of base_[0..i); completion runs bottom-up, so a
// strong generator discovered at depth l re-verifies only levels > i plus the
// new (orbit point, generator) pairs of the level in progress — shallower
// verified pairs stay verified because transversal entries are never replaced.
class StabilizerChain {
public:
  explicit StabilizerChain(std::size_t degree) : n_(degree) {}

  void add_generator(const Perm& g) {
    if (g.degree() != n_) throw std::invalid_argument("degree mismatch");
    std::vector<Pt> cur(g.images()), tmp(n_);
    std::size_t level = sift_images(cur, tmp, 0);
    if (trivial(cur)) return;
    std::size_t deepest = add_strong(Perm(std::move(cur)), 0, level);
    for (std::size_t i = deepest + 1; i-- > 0;) complete_level(i);
  }

  bool contains(const Perm& g) const {
    if (g.degree() != n_) throw std::invalid_argument("degree mismatch");
    std::vector<Pt> cur(g.images()), tmp(n_);
    sift_images(cur, tmp, 0);
    return trivial(cur);
  }

  DecimalInt order() const {
    DecimalInt o(1);
    for (const auto& lv : levels_) o.mul(lv.orbit.size());
    return o;
  }

  const std::vector<Pt>& base() const { return base_; }

private:
  struct Level {
    Pt point = 0;
    std::vector<Perm> gens;
    std::vector<Pt> orbit;                   // discovery order; orbit[0] == point
    std::vector<std::int32_t> slot;          // point -> orbit index, -1 outside
    std::vector<std::vector<Pt>> rep, inv;   // transversal images per orbit index
    std::size_t scanned_gens = 0;            // orbit closed under gens[0..scanned)
    std::size_t done_pts = 0, done_gens = 0; // Schreier pairs already verified
  };

  static bool trivial(const std::vector<Pt>& images) {
    for (std::size_t k = 0; k < images.size(); ++k)
      if (images[k] != k) return false;
    return true;
  }

  // divide the image table through transversals of levels >= from, in place;
  // returns the first level whose transversal misses the required point
  std::size_t sift_images(std::vector<Pt>& cur, std::vector<Pt>& tmp,
                          std::size_t from) const {
    std::size_t i = from;
    for (; i < levels_.size(); ++i) {
      const Level& lv = levels_[i];
      Pt x = cur[lv.point];
      if (x == lv.point) continue;
      std::int32_t s = lv.slot[x];
      if (s < 0) break;
      const std::vector<Pt>& vinv = lv.inv[std::size_t(s)];
      for (std::size_t k = 0; k < n_; ++k) tmp[k] = vinv[cur[k]];
      cur.swap(tmp);
    }
    return i;
  }

  // record h as a strong generator for levels lo..failing (creating one new
  // level when h survives every transversal); returns the deepest level fed
  std::size_t add_strong(Perm h, std::size_t lo, std::size_t failing) {
    if (failing == levels_.size()) {
      Pt b = 0;
      while (h[b] == b) ++b;
      Level lv;
      lv.point = b;
      lv.slot.assign(n_, -1);
      levels_.push_back(std::move(lv));
      base_.push_back(b);
    }
    std::size_t hi = std::min(failing, levels_.size() - 1);
    for (std::size_t j = lo; j < hi; ++j) levels_[j].gens.push_back(h);
    levels_[hi].gens.push_back(std::move(h));
    return hi;
  }

  // grow the orbit/transversal at level i to closure under the current gens
  void extend_orbit(std::size_t i) {
    Level& lv = levels_[i];
    if (lv.orbit.empty()) {
      lv.orbit.push_back(lv.point);
      lv.slot[lv.point] = 0;
      std::vector<Pt> id(n_);
      std::iota(id.begin(), id.end(), Pt{0});
      lv.rep.push_back(id);
      lv.inv.push_back(std::move(id));
    }
    if (lv.scanned_gens == lv.gens.size()) return;
    std::vector<std::pair<std::size_t, std::size_t>> work;  // orbit idx, first gen
    work.reserve(lv.orbit.size());
    for (std::size_t p = 0; p < lv.orbit.size(); ++p)
      work.emplace_back(p, lv.scanned_gens);
    lv.scanned_gens = lv.gens.size();
    while (!work.empty()) {
      auto [p, g0] = work.back();
      work.pop_back();
      for (std::size_t gi = g0; gi < lv.gens.size(); ++gi) {
        const Perm& s = lv.gens[gi];
        Pt y = s[lv.orbit[p]];
        if (lv.slot[y] >= 0) continue;
        const std::vector<Pt>& u = lv.rep[p];
        std::vector<Pt> r(n_), rinv(n_);
        for (std::size_t k = 0; k < n_; ++k) r[k] = s[u[k]];
        for (std::size_t k = 0; k < n_; ++k) rinv[r[k]] = Pt(k);
        lv.slot[y] = std::int32_t(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.rep.push_back(std::move(r));
        lv.inv.push_back(std::move(rinv));
        work.emplace_back(lv.orbit.size() - 1, 0);
      }
    }
  }

  // verify level i's Schreier generators sift to identity below, feeding
  // residues in as deeper strong generators (and completing those levels)
  void complete_level(std::size_t i) {
    extend_orbit(i);
    std::vector<Pt> us(n_), cur(n_), tmp(n_);
    for (std::size_t p = 0; p < levels_[i].orbit.size(); ++p) {
      std::size_t g0 = p < levels_[i].done_pts ? levels_[i].done_gens : 0;
      for (std::size_t gi = g0; gi < levels_[i].gens.size(); ++gi) {
        {
          const Level& lv = levels_[i];
          const std::vector<Pt>& u = lv.rep[p];
          const Perm& s = lv.gens[gi];
          for (std::size_t k = 0; k < n_; ++k) us[k] = s[u[k]];
          const std::vector<Pt>& winv = lv.inv[std::size_t(lv.slot[us[lv.point]])];
          for (std::size_t k = 0; k < n_; ++k) cur[k] = winv[us[k]];
        }
        std::size_t level = sift_images(cur, tmp, i + 1);
        if (trivial(cur)) continue;
        std::size_t deepest = add_strong(Perm(cur), i + 1, level);
        for (std::size_t j = deepest; j > i; --j) complete_level(j);
      }
    }
    levels_[i].done_pts = levels_[i].orbit.size();
    levels_[i].done_gens = levels_[i].gens.size();
  }

  std::size_t n_;
  std::vector<Pt> base_;
  std::vector<Level> levels_;
};

// A permutation group given by generators; chain built eagerly, element list
// computed on demand under an explicit bound.
class Group {
public:
  Group(std::size_t degree, std::vector<Perm> gens)
      : n_(degree), gens_(std::move(gens)), chain_(degree) {
    if (gens_.empty()) gens_.push_back(identity(degree));
    for (const Perm& g : gens_) {
      if (g.degree() != n_) throw std::invalid_argument("generator degree mismatch");
      chain_.add_generator(g);
    }
  }

  std::size_t degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const StabilizerChain& chain() const { return chain_; }

  DecimalInt order() const { return chain_.order(); }
  std::optional<std::uint64_t> order_u64() const { return chain_.order().to_u64(); }
  bool is_member(const Perm& g) const {
    return g.degree() == n_ && chain_.contains(g);
  }

  const std::vector<Perm>& elements(std::size_t bound = kDefaultClosureBound) const {
    if (elements_.empty()) elements_ = closure(gens_, bound);
    return elements_;
  }

private:
  std::size_t n_;
  std::vector<Perm> gens_;
  StabilizerChain chain_;
  mutable std::vector<Perm> elements_;
};

inline std::vector<std::vector<Pt>> orbits(const std::vector<Perm>& gens, std::size_t n) {
  std::vector<std::vector<Pt>> out;
  std::vector<bool> seen(n, false);
  for (Pt s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Pt> orb{s};
    seen[s] = true;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const Perm& g : gens) {
        Pt y = g[orb[head]];
        if (!seen[y]) { seen[y] = true; orb.push_back(y); }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

inline bool is_transitive(const std::vector<Perm>& gens, std::size_t n) {
  return orbits(gens, n).size() == 1;
}

// orbit partition as labels: each point maps to the least point of its orbit
inline std::vector<Pt> orbit_labels(const std::vector<Perm>& gens, std::size_t n) {
  auto os = orbits(gens, n);
  std::vector<Pt> lab(n);
  for (const auto& o : os)
    for (Pt x : o) lab[x] = o[0];
  return lab;
}

// minimal block system whose blocks contain {a,b}: classic union-find fusion.
// Returns block id per point (ids are the smallest point in each block).
inline std::vector<Pt> block_system(const std::vector<Perm>& gens, std::size_t n,
                                    Pt a, Pt b) {
  std::vector<Pt> parent(n);
  std::iota(parent.begin(), parent.end(), Pt{0});
  auto find = [&](Pt x) {
    while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
    return x;
  };
  std::vector<std::pair<Pt, Pt>> queue{{a, b}};
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    Pt rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (rx > ry) std::swap(rx, ry);
    parent[ry] = rx;
    for (const Perm& g : gens) queue.emplace_back(g[rx], g[ry]);
  }
  std::vector<Pt> id(n);
  for (Pt x = 0; x < n; ++x) id[x] = find(x);
  // normalize ids to smallest member
  std::vector<Pt> least(n, n);
  for (Pt x = 0; x < n; ++x) least[id[x]] = std::min(least[id[x]], x);
  for (Pt x = 0; x < n; ++x) id[x] = least[id[x]];
  return id;
}

inline bool is_primitive(const std::vector<Perm>& gens, std::size_t n) {
  if (!is_transitive(gens, n)) return false;
  if (n == 1) return true;
  for (Pt b = 1; b < n; ++b) {
    auto id = block_system(gens, n, 0, b);
    bool full = true;
    for (Pt x = 0; x < n; ++x)
      if (id[x] != 0) { full = false; break; }
    if (!full) return false;  // proper block through {0,b}
  }
  return true;
}

// all minimal block sizes (for structure reports); {n} when primitive
inline std::set<std::size_t> minimal_block_sizes(const std::vector<Perm>& gens,
                                                 std::size_t n) {
  std::set<std::size_t> sizes;
  for (Pt b = 1; b < n; ++b) {
    auto id = block_system(gens, n, 0, b);
    std::size_t sz = 0;
    for (Pt x = 0; x < n; ++x)
      if (id[x] == id[0]) ++sz;
    if (sz < n) sizes.insert(sz);
  }
  if (sizes.empty()) sizes.insert(n);
  return sizes;
}

// conjugacy class of rep under conjugation by <gens> (explicit closure);
// correct even where an S_n class splits in the subgroup
inline std::vector<Perm> conjugacy_class(const std::vector<Perm>& gens, const Perm& rep,
                                         std::size_t bound = kDefaultClosureBound) {
  std::unordered_set<Perm, PermHash> seen{rep};
  std::vector<Perm> out{rep};
  for (std::size_t head = 0; head < out.size(); ++head) {
    Perm cur = out[head];
    for (const Perm& g : gens) {
      Perm c = conjugate(cur, g);
      if (seen.insert(c).second) {
        if (out.size() >= bound)
          throw std::runtime_error("conjugacy class bound exceeded");
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

// centralizer of g in the full symmetric group: each cycle contributes the
// cyclic group it generates; equal-length cycles contribute swaps. Order is
// prod over lengths l: l^(m_l) * m_l!.
struct CentralizerInSym {
  std::vector<Perm> generators;
  DecimalInt order;
};

inline CentralizerInSym centralizer_in_sym(const Perm& g) {
  std::size_t n = g.degree();
  std::vector<std::vector<Pt>> cycles;
  std::vector<bool> seen(n, false);
  for (Pt x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<Pt> cyc;
    for (Pt y = x; !seen[y]; y = g[y]) { seen[y] = true; cyc.push_back(y); }
    cycles.push_back(std::move(cyc));
  }
  std::map<std::size_t, std::vector<std::size_t>> by_len;  // length -> cycle indices
  for (std::size_t i = 0; i < cycles.size(); ++i) by_len[cycles[i].size()].push_back(i);

  CentralizerInSym out;
  out.order = DecimalInt(1);
  for (const auto& [len, idxs] : by_len) {
    for (std::size_t k = 0; k < idxs.size(); ++k) out.order.mul(len);
    for (std::size_t k = 2; k <= idxs.size(); ++k) out.order.mul(k);
    if (len > 1) {
      for (std::size_t ci : idxs) {
        std::vector<Pt> img(n);
        std::iota(img.begin(), img.end(), Pt{0});
        const auto& cyc = cycles[ci];
        for (std::size_t k = 0; k < len; ++k) img[cyc[k]] = cyc[(k + 1) % len];
        out.generators.push_back(Perm(std::move(img)));
      }
    }
    for (std::size_t k = 0; k + 1 < idxs.size(); ++k) {
      // swap adjacent equal-length cycles pointwise
      std::vector<Pt> img(n);
      std::iota(img.begin(), img.end(), Pt{0});
      const auto& c1 = cycles[idxs[k]];
      const auto& c2 = cycles[idxs[k + 1]];
      for (std::size_t j = 0; j < len; ++j) { img[c1[j]] = c2[j]; img[c2[j]] = c1[j]; }
      out.generators.push_back(Perm(std::move(img)));
    }
  }
  if (out.generators.empty()) out.generators.push_back(identity(n));
  return out;
}

enum class AltSymRecognition { contains_alt, is_sym, neither };

inline const char* to_string(AltSymRecognition r) {
  switch (r) {
    case AltSymRecognition::contains_alt: return "contains_Alt";
    case AltSymRecognition::is_sym: return "is_Sym";
    default: return "neither";
  }
}

// primitive + prime-cycle witness => contains A_n (a 3-cycle unconditionally,
// a p-cycle for prime p <= n-3); generator parities then separate A_n from
// S_n. Witness search walks generator words in length-lex order
// (deterministic, <= word_budget words), taking h^(order/p) per prime p.
// Intransitive or imprimitive groups are 'neither' outright for n >= 3, since
// A_n is primitive there; the residual fallback is exact order comparison.
inline AltSymRecognition recognize_alt_sym(const std::vector<Perm>& gens, std::size_t n,
                                           std::size_t word_budget = 10'000) {
  bool all_even = true;
  for (const Perm& g : gens)
    if (parity(g) < 0) { all_even = false; break; }
  auto verdict = [&] { return all_even ? AltSymRecognition::contains_alt
                                       : AltSymRecognition::is_sym; };
  if (n >= 3) {
    if (!is_transitive(gens, n) || !is_primitive(gens, n))
      return AltSymRecognition::neither;
    std::vector<Perm> layer{identity(n)};
    std::size_t used = 0;
    while (used < word_budget && !layer.empty()) {
      std::vector<Perm> next;
      for (const Perm& w : layer) {
        for (const Perm& g : gens) {
          if (used >= word_budget) break;
          ++used;
          Perm h = compose(w, g);
          std::uint64_t o = order(h);
          std::uint64_t rest = o;
          for (std::uint64_t p = 2; rest > 1; ++p) {
            if (p > rest / p) p = rest;
            if (rest % p) continue;
            while (rest % p == 0) rest /= p;
            if (p != 3 && p + 3 > n) continue;
            Perm c = power(h, (long long)(o / p));
            auto ct = cycle_type(c);
            if (ct[0] == p && (ct.size() < 2 || ct[1] == 1)) return verdict();
          }
          next.push_back(std::move(h));
        }
      }
      layer = std::move(next);
    }
  }
  StabilizerChain chain(n);
  for (const Perm& g : gens) chain.add_generator(g);
  DecimalInt o = chain.order();
  DecimalInt full = factorial_decimal(n);
  if (o == full) return AltSymRecognition::is_sym;
  DecimalInt half(1);
  if (n >= 2) {
    half = DecimalInt(1);
    for (std::size_t k = 3; k <= n; ++k) half.mul(k);  // n!/2
  }
  if (o == half && all_even) return AltSymRecognition::contains_alt;
  return AltSymRecognition::neither;
}

// p'-group test: |G| not divisible by p
inline bool element_orders_coprime_to(const std::vector<Perm>& gens, std::size_t n,
                                      std::uint64_t p) {
  StabilizerChain chain(n);
  for (const Perm& g : gens) chain.add_generator(g);
  return !chain.order().divisible_by(p);
}

// h with h^-1 from[k] h == to[k] for all k, by point-propagation backtracking
inline std::optional<Perm> find_simultaneous_conjugator(const std::vector<Perm>& from,
                                                        const std::vector<Perm>& to) {
  if (from.size() != to.size() || from.empty()) return std::nullopt;
  std::size_t n = from[0].degree();
  std::vector<Pt> h(n, Pt(n));   // h[x] = image, n = unset
  std::vector<Pt> hinv(n, Pt(n));

  // propagate constraint h[from[k][x]] = to[k][h[x]]; returns assignments made
  auto assign = [&](Pt x, Pt y, std::vector<Pt>& trail) -> bool {
    std::vector<std::pair<Pt, Pt>> queue{{x, y}};
    while (!queue.empty()) {
      auto [a, b] = queue.back();
      queue.pop_back();
      if (h[a] != n) {
        if (h[a] != b) return false;
        continue;
      }
      if (hinv[b] != n) return false;
      h[a] = b;
      hinv[b] = a;
      trail.push_back(a);
      for (std::size_t k = 0; k < from.size(); ++k)
        queue.emplace_back(from[k][a], to[k][b]);
    }
    return true;
  };
  auto undo = [&](std::vector<Pt>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      Pt a = trail.back();
      trail.pop_back();
      hinv[h[a]] = Pt(n);
      h[a] = Pt(n);
    }
  };

  std::vector<Pt> trail;
  // depth-first over the first unassigned point's image
  auto rec = [&](auto&& self, Pt start) -> bool {
    Pt x = start;
    while (x < n && h[x] != n) ++x;
    if (x == n) return true;
    for (Pt y = 0; y < n; ++y) {
      if (hinv[y] != n) continue;
      std::size_t mark = trail.size();
      if (assign(x, y, trail) && self(self, x)) return true;
      undo(trail, mark);
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  std::vector<Pt> img(h.begin(), h.end());
  return Perm(std::move(img));
}

inline std::set<std::uint64_t> prime_divisors(std::uint64_t v) {
  std::set<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p)
    while (v % p == 0) {
      out.insert(p);
      v /= p;
    }
  if (v > 1) out.insert(v);
  return out;
}

// Every element of the normalizer of G inside the symmetric group on its
// points. A normalizing s sends a fixed anchor g in G to a same-cycle-type
// element h of G, and for fixed h the solutions of g^s = h form one coset
// z * s0 of the symmetric-group centralizer of g — so candidates number
// |centralizer| * #{same type in G}, and the anchor is chosen to minimize
// that product.
inline std::vector<Perm> normalizer_in_sym_elements(
    const Group& G, std::size_t bound = kDefaultClosureBound) {
  const auto& elems = G.elements(bound);

  std::map<std::vector<std::size_t>, std::vector<const Perm*>> by_type;
  for (const Perm& g : elems) by_type[cycle_type(g)].push_back(&g);
  const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
  const std::vector<const Perm*>* images = nullptr;
  const Perm* anchor = nullptr;
  std::uint64_t best = inf;
  for (const auto& [type, members] : by_type) {
    std::uint64_t cent =
        centralizer_in_sym(*members[0]).order.to_u64().value_or(inf);
    std::uint64_t score =
        cent > inf / members.size() ? inf : cent * members.size();
    if (score < best) {
      best = score;
      anchor = members[0];
      images = &members;
    }
  }

  auto cent_gens = centralizer_in_sym(*anchor).generators;
  auto cent_elems = cent_gens.empty() ? std::vector<Perm>{identity(G.degree())}
                                      : closure(cent_gens, bound);
  std::set<Perm> found;
  for (const Perm* h : *images) {
    auto s0 = find_simultaneous_conjugator({*anchor}, {*h});
    if (!s0) continue;
    for (const Perm& z : cent_elems) {
      Perm s = compose(z, *s0);
      bool ok = true;
      for (const Perm& g : G.generators())
        if (!G.is_member(conjugate(g, s))) {
          ok = false;
          break;
        }
      if (ok) found.insert(std::move(s));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace nielsen_forge
