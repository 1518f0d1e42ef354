#pragma once
// Nielsen-class enumeration: tuples (g_1,...,g_r) with product one (left to
// right), entries generating the group, and entries matching prescribed
// conjugacy classes either as an unordered multiset or slot-by-slot
// ("straight"). The last free coordinate is always solved from product-one.
// One oversized class is allowed in the leading slot; it is then streamed by
// cycle-type construction instead of being materialized, which is valid
// exactly when the group provably contains the alternating group and the
// class does not split there.

#include "group.hpp"

#include <future>

namespace nielsen_forge {

using NielsenTuple = std::vector<Perm>;

struct TupleHash {
  std::size_t operator()(const NielsenTuple& t) const {
    std::size_t h = t.size();
    PermHash ph;
    for (const Perm& p : t) h = h * 1000003u ^ ph(p);
    return h;
  }
};

enum class Matching { unordered, straight };

struct NielsenClassSpec {
  Group group;
  std::vector<Perm> class_reps;
  Matching matching = Matching::unordered;
  // pin the last slot (standard normalization; conjugation moves any last
  // entry onto its class representative). fixed_last overrides the default.
  bool pin_last = true;
  std::optional<Perm> fixed_last;
  std::size_t search_budget = 20'000'000;
  std::size_t class_budget = 200'000;
};

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (b > UINT64_MAX - a) ? UINT64_MAX : a + b;
}

// |S_n-class| = n! / prod_l l^(m_l) m_l!; saturates for degrees past 20
inline std::uint64_t cycle_type_class_size(std::size_t n,
                                           const std::vector<std::size_t>& type) {
  std::uint64_t num = 1;
  for (std::size_t k = 2; k <= n; ++k) num = sat_mul(num, k);
  if (num == UINT64_MAX) return UINT64_MAX;
  std::map<std::size_t, std::size_t> mult;
  for (auto l : type) ++mult[l];
  for (const auto& [l, m] : mult) {
    for (std::size_t k = 0; k < m; ++k) num /= l;
    for (std::size_t k = 2; k <= m; ++k) num /= k;
  }
  return num;
}

// S_n-class of an even element splits in A_n iff all cycle lengths are odd
// and pairwise distinct
inline bool splits_in_alternating(const std::vector<std::size_t>& type) {
  for (std::size_t k = 0; k < type.size(); ++k) {
    if (type[k] % 2 == 0) return false;
    if (k + 1 < type.size() && type[k] == type[k + 1]) return false;
  }
  return true;
}

// visit every permutation of the given cycle type exactly once (cycles are
// built starting from their minimum, in increasing order of minima)
template <class Fn>
class CycleTypeStreamer {
public:
  CycleTypeStreamer(std::size_t n, const std::vector<std::size_t>& type, Fn& fn)
      : n_(n), fn_(fn), counts_(n + 1, 0), img_(n), cyc_(n), used_(n, false) {
    std::size_t total = 0;
    for (auto l : type) {
      if (l == 0 || l > n) throw std::invalid_argument("bad cycle length");
      ++counts_[l];
      total += l;
    }
    if (total != n) throw std::invalid_argument("cycle type does not sum to degree");
  }
  void run() { rec(); }

private:
  // cycle members live in cyc_[base .. base+l): they are placed consecutively,
  // so deeper recursion only writes at offsets >= base+l and never clobbers us
  void rec() {
    if (placed_ == n_) {
      fn_(img_);
      return;
    }
    Pt s = 0;
    while (used_[s]) ++s;
    std::size_t base = placed_;
    used_[s] = true;
    ++placed_;
    cyc_[base] = s;
    for (std::size_t l = 1; l <= n_; ++l) {
      if (!counts_[l]) continue;
      --counts_[l];
      pick(base, l, 1);
      ++counts_[l];
    }
    used_[s] = false;
    --placed_;
  }
  void pick(std::size_t base, std::size_t l, std::size_t d) {
    if (d == l) {
      for (std::size_t k = 0; k < l; ++k)
        img_[cyc_[base + k]] = cyc_[base + (k + 1) % l];
      rec();
      return;
    }
    for (Pt p = cyc_[base] + 1; p < Pt(n_); ++p) {
      if (used_[p]) continue;
      used_[p] = true;
      ++placed_;
      cyc_[base + d] = p;
      pick(base, l, d + 1);
      used_[p] = false;
      --placed_;
    }
  }

  std::size_t n_;
  Fn& fn_;
  std::vector<std::size_t> counts_;
  std::vector<Pt> img_, cyc_;
  std::vector<bool> used_;
  std::size_t placed_ = 0;
};

template <class Fn>
inline void stream_cycle_type(std::size_t n, const std::vector<std::size_t>& type,
                              Fn fn) {
  CycleTypeStreamer<Fn>(n, type, fn).run();
}

// does img have the cycle type described by counts (counts[l] = #cycles)?
// `left` is caller scratch of the same size (avoids hot-loop allocation)
inline bool matches_type_counts(const std::vector<Pt>& img,
                                const std::vector<int>& counts,
                                std::vector<int>& left) {
  left = counts;
  std::size_t n = img.size();
  std::uint64_t small_seen = 0;  // degree <= 64 fast path
  std::vector<bool> seen;
  bool small = n <= 64;
  if (!small) seen.assign(n, false);
  for (Pt x = 0; x < Pt(n); ++x) {
    if (small ? ((small_seen >> x) & 1) : seen[x]) continue;
    std::size_t len = 0;
    Pt y = x;
    do {
      if (small)
        small_seen |= (std::uint64_t{1} << y);
      else
        seen[y] = true;
      y = img[y];
      ++len;
    } while (y != x);
    if (len >= counts.size() || --left[len] < 0) return false;
  }
  return true;
}

inline bool matches_type_counts(const std::vector<Pt>& img,
                                const std::vector<int>& counts) {
  std::vector<int> left;
  return matches_type_counts(img, counts, left);
}

struct ClassInfo {
  Perm rep;
  std::vector<std::size_t> type;
  std::vector<int> type_counts;  // type_counts[l] = multiplicity
  std::uint64_t size = 0;
  bool streamed = false;  // certified cycle-type class, not materialized
  bool need_even = false;
  std::vector<Perm> elements;
  std::unordered_set<Perm, PermHash> element_set;

  bool contains(const Perm& g) const {
    if (streamed)
      return matches_type_counts(g.images(), type_counts) &&
             (!need_even || parity(g) == 1);
    return element_set.count(g) != 0;
  }
};

}  // namespace detail

inline std::vector<NielsenTuple> enumerate_nielsen(const NielsenClassSpec& spec,
                                                   std::size_t workers = 1);

// canonical representative: lexicographic minimum of the tuple's orbit under
// conjugation by every element of H. Candidates are compared slot by slot in
// a scratch buffer so losers exit early without materializing a tuple.
inline NielsenTuple canonical_tuple(const NielsenTuple& t,
                                    const std::vector<Perm>& conj_elements) {
  NielsenTuple best = t;
  if (t.empty()) return best;
  std::vector<Pt> buf(t[0].degree());
  for (const Perm& h : conj_elements) {
    int cmp = 0;
    for (std::size_t k = 0; k < t.size() && cmp == 0; ++k) {
      const Perm& g = t[k];
      for (Pt x = 0; x < buf.size(); ++x) buf[h[x]] = h[g[x]];
      const std::vector<Pt>& b = best[k].images();
      for (std::size_t x = 0; x < buf.size(); ++x)
        if (buf[x] != b[x]) { cmp = buf[x] < b[x] ? -1 : 1; break; }
    }
    if (cmp < 0)
      for (std::size_t k = 0; k < t.size(); ++k) best[k] = conjugate(t[k], h);
  }
  return best;
}

inline std::vector<NielsenTuple> quotient_by_conjugation(
    const std::vector<NielsenTuple>& tuples, const Group& H) {
  const auto& elems = H.elements();
  std::set<NielsenTuple> reps;
  for (const auto& t : tuples) reps.insert(canonical_tuple(t, elems));
  return {reps.begin(), reps.end()};
}

namespace detail {

struct SearchPlan {
  std::size_t degree = 0;
  std::size_t r = 0;
  bool pinned = false;
  Perm last;      // valid when pinned
  Perm last_inv;  // valid when pinned
  std::size_t solved = 0;
  std::vector<ClassInfo> infos;            // one per spec class
  std::vector<std::vector<std::size_t>> sequences;  // class index per slot
  DecimalInt group_order;
  AltSymRecognition recognition = AltSymRecognition::neither;
  std::vector<Pt> group_orbits;  // orbit labels of the ambient group
};

// generation test, cheapest certificate first: orbit partition, then the
// alternating/symmetric recognizer when the ambient group is one of those
// (avoids building a factorial-order stabilizer chain per candidate), and an
// exact order comparison otherwise
inline bool tuple_generates(const NielsenTuple& t, const SearchPlan& plan) {
  std::size_t n = plan.degree;
  if (orbit_labels(t, n) != plan.group_orbits) return false;
  if (plan.recognition == AltSymRecognition::is_sym)
    return recognize_alt_sym(t, n) == AltSymRecognition::is_sym;
  if (plan.recognition == AltSymRecognition::contains_alt)
    return recognize_alt_sym(t, n) == AltSymRecognition::contains_alt;
  StabilizerChain chain(n);
  for (const Perm& g : t) chain.add_generator(g);
  return chain.order() == plan.group_order;
}

// walk searched slots [k, solved) over materialized classes; prefix holds the
// running left-to-right product of slots [0, k); scratch avoids per-candidate
// allocation on the solve step
inline void search_slots(const SearchPlan& plan, const std::vector<std::size_t>& seq,
                         std::size_t k, const std::vector<Pt>& prefix,
                         NielsenTuple& current, std::vector<Pt>& scratch,
                         std::vector<int>& type_scratch,
                         std::vector<NielsenTuple>& out) {
  std::size_t n = plan.degree;
  if (k == plan.solved) {
    // solve g_k from product-one, cheap type screen before set lookup
    const ClassInfo& cls = plan.infos[seq[k]];
    if (plan.pinned) {
      // g_k = prefix^-1 . last^-1 : x -> last_inv[prefix_inv[x]]
      for (Pt x = 0; x < Pt(n); ++x) scratch[prefix[x]] = x;  // prefix_inv
      for (Pt x = 0; x < Pt(n); ++x) scratch[x] = plan.last_inv[scratch[x]];
    } else {
      for (Pt x = 0; x < Pt(n); ++x) scratch[prefix[x]] = x;
    }
    if (!matches_type_counts(scratch, cls.type_counts, type_scratch)) return;
    Perm g{std::vector<Pt>(scratch)};
    if (!cls.contains(g)) return;
    current.push_back(std::move(g));
    if (plan.pinned) current.push_back(plan.last);
    if (tuple_generates(current, plan)) out.push_back(current);
    if (plan.pinned) current.pop_back();
    current.pop_back();
    return;
  }
  const ClassInfo& cls = plan.infos[seq[k]];
  std::vector<Pt> next(n);
  for (const Perm& g : cls.elements) {
    for (Pt x = 0; x < Pt(n); ++x) next[x] = g[prefix[x]];
    current.push_back(g);
    search_slots(plan, seq, k + 1, next, current, scratch, type_scratch, out);
    current.pop_back();
  }
}

}  // namespace detail

inline std::vector<NielsenTuple> enumerate_nielsen(const NielsenClassSpec& spec,
                                                   std::size_t workers) {
  using namespace detail;
  const Group& G = spec.group;
  std::size_t n = G.degree();
  std::size_t r = spec.class_reps.size();
  if (r < 3) throw std::invalid_argument("need at least three classes");
  for (const Perm& rep : spec.class_reps)
    if (rep.degree() != n) throw std::invalid_argument("class rep degree mismatch");

  SearchPlan plan;
  plan.degree = n;
  plan.r = r;
  plan.pinned = spec.pin_last;
  plan.solved = spec.pin_last ? r - 2 : r - 1;
  plan.group_order = G.order();

  // classes: reps outside the group mean an empty intersection
  for (const Perm& rep : spec.class_reps)
    if (!G.is_member(rep)) return {};

  plan.recognition = recognize_alt_sym(G.generators(), n);
  plan.group_orbits = orbit_labels(G.generators(), n);

  // a class is materialized when either the whole group or the ambient
  // cycle-type class fits the budget; otherwise it is kept as a certified
  // cycle-type description (valid only above the alternating group, where
  // class = type set unless the type splits)
  auto g_order = G.order_u64();
  bool small_group = g_order && *g_order <= spec.class_budget;
  for (const Perm& rep : spec.class_reps) {
    ClassInfo info;
    info.rep = rep;
    info.type = cycle_type(rep);
    info.type_counts.assign(n + 1, 0);
    for (auto l : info.type) ++info.type_counts[l];
    std::uint64_t type_size = cycle_type_class_size(n, info.type);
    bool certified = plan.recognition != AltSymRecognition::neither &&
                     !splits_in_alternating(info.type);
    if (!small_group && type_size > spec.class_budget && certified) {
      info.streamed = true;
      info.need_even = (plan.recognition == AltSymRecognition::contains_alt);
      if (info.need_even && parity(rep) != 1) return {};
      info.size = type_size;
    } else {
      try {
        info.elements =
            conjugacy_class(G.generators(), rep, spec.class_budget + 1);
      } catch (const std::runtime_error&) {
        throw std::runtime_error(
            splits_in_alternating(info.type)
                ? "class too large to materialize; it splits in the "
                  "alternating group, so membership cannot be certified by "
                  "cycle type"
                : "class too large to materialize and the group has no "
                  "alternating certificate");
      }
      info.element_set.insert(info.elements.begin(), info.elements.end());
      info.size = info.elements.size();
    }
    plan.infos.push_back(std::move(info));
  }

  // resolve the pinned entry and its class
  std::size_t last_class = r - 1;
  if (plan.pinned) {
    plan.last = spec.fixed_last.value_or(spec.class_reps.back());
    if (plan.last.degree() != n || !G.is_member(plan.last))
      throw std::invalid_argument("fixed_last is not a group element");
    plan.last_inv = inverse(plan.last);
    if (spec.matching == Matching::straight) {
      if (!plan.infos[r - 1].contains(plan.last))
        throw std::invalid_argument("fixed_last is not in the final class");
    } else {
      bool found = false;
      for (std::size_t i = 0; i < r && !found; ++i)
        if (plan.infos[i].contains(plan.last)) {
          last_class = i;
          found = true;
        }
      if (!found)
        throw std::invalid_argument("fixed_last is not in any spec class");
    }
  }

  // class sequences: slot -> class index
  if (spec.matching == Matching::straight) {
    std::vector<std::size_t> seq(r);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    plan.sequences.push_back(std::move(seq));
  } else {
    // canonical id per class (equal classes share the smallest index)
    std::vector<std::size_t> ids(r);
    for (std::size_t i = 0; i < r; ++i) {
      ids[i] = i;
      for (std::size_t j = 0; j < i; ++j)
        if (plan.infos[j].contains(spec.class_reps[i])) {
          ids[i] = ids[j];
          break;
        }
    }
    std::vector<std::size_t> pool;
    if (plan.pinned) {
      std::size_t drop = ids[last_class];
      bool dropped = false;
      for (std::size_t i = 0; i < r; ++i) {
        if (!dropped && ids[i] == drop) {
          dropped = true;
          continue;
        }
        pool.push_back(ids[i]);
      }
      std::sort(pool.begin(), pool.end());
      do {
        auto seq = pool;
        seq.push_back(ids[last_class]);
        plan.sequences.push_back(std::move(seq));
      } while (std::next_permutation(pool.begin(), pool.end()));
    } else {
      pool = ids;
      std::sort(pool.begin(), pool.end());
      do {
        plan.sequences.push_back(pool);
      } while (std::next_permutation(pool.begin(), pool.end()));
    }
  }

  // budget + placement rules: a streamed class may only sit in slot 0 (the
  // solved slot may also be streamed — its membership test is certified)
  std::uint64_t total = 0;
  for (const auto& seq : plan.sequences) {
    std::uint64_t prod = 1;
    for (std::size_t k = 0; k < plan.solved; ++k) {
      const ClassInfo& cls = plan.infos[seq[k]];
      if (cls.streamed && k != 0)
        throw std::runtime_error(
            "oversized class must occupy the leading search slot");
      prod = sat_mul(prod, cls.size);
    }
    total = sat_add(total, prod);
  }
  if (total > spec.search_budget)
    throw std::runtime_error("enumeration budget exceeded: " +
                             std::to_string(total) + " > " +
                             std::to_string(spec.search_budget));

  std::vector<NielsenTuple> out;
  for (const auto& seq : plan.sequences) {
    const ClassInfo& first = plan.infos[seq[0]];
    if (first.streamed) {
      // hot path for the big-class sweep: defer all allocation until the
      // solved entry passes its cycle-type screen
      NielsenTuple current;
      std::vector<Pt> scratch(n);
      std::vector<int> type_scratch;
      if (plan.solved == 1) {
        const ClassInfo& cls = plan.infos[seq[1]];
        stream_cycle_type(n, first.type, [&](const std::vector<Pt>& img) {
          if (plan.pinned) {
            for (Pt x = 0; x < Pt(n); ++x) scratch[img[x]] = x;
            for (Pt x = 0; x < Pt(n); ++x) scratch[x] = plan.last_inv[scratch[x]];
          } else {
            for (Pt x = 0; x < Pt(n); ++x) scratch[img[x]] = x;
          }
          if (!matches_type_counts(scratch, cls.type_counts, type_scratch))
            return;
          Perm g{std::vector<Pt>(scratch)};
          if (!cls.contains(g)) return;
          current.assign(1, Perm(std::vector<Pt>(img)));
          current.push_back(std::move(g));
          if (plan.pinned) current.push_back(plan.last);
          if (tuple_generates(current, plan)) out.push_back(current);
        });
      } else {
        std::vector<Pt> prefix(n);
        stream_cycle_type(n, first.type, [&](const std::vector<Pt>& img) {
          for (Pt x = 0; x < Pt(n); ++x) prefix[x] = img[x];
          current.assign(1, Perm(std::vector<Pt>(img)));
          search_slots(plan, seq, 1, prefix, current, scratch, type_scratch,
                       out);
        });
      }
    } else if (workers > 1 && first.elements.size() >= 2 * workers) {
      std::size_t m = first.elements.size();
      std::size_t chunk = (m + workers - 1) / workers;
      std::vector<std::future<std::vector<NielsenTuple>>> futs;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(m, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&plan, &seq, &first, n, lo, hi] {
          std::vector<NielsenTuple> local;
          NielsenTuple current;
          std::vector<Pt> prefix(n), scratch(n);
          std::vector<int> type_scratch;
          for (std::size_t idx = lo; idx < hi; ++idx) {
            const Perm& g = first.elements[idx];
            for (Pt x = 0; x < Pt(n); ++x) prefix[x] = g[x];
            current.assign(1, g);
            search_slots(plan, seq, 1, prefix, current, scratch, type_scratch,
                         local);
          }
          return local;
        }));
      }
      for (auto& f : futs) {
        auto local = f.get();
        out.insert(out.end(), local.begin(), local.end());
      }
    } else {
      NielsenTuple current;
      std::vector<Pt> prefix(n), scratch(n);
      std::vector<int> type_scratch;
      for (const Perm& g : first.elements) {
        for (Pt x = 0; x < Pt(n); ++x) prefix[x] = g[x];
        current.assign(1, g);
        search_slots(plan, seq, 1, prefix, current, scratch, type_scratch, out);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// straight-class count: enumerate with slot-by-slot matching, then identify
// tuples conjugate under the symmetric-group centralizer of the pinned entry
inline std::size_t count_straight_class(const NielsenClassSpec& spec,
                                        std::size_t workers = 1) {
  NielsenClassSpec s = spec;
  s.matching = Matching::straight;
  s.pin_last = true;
  auto tuples = enumerate_nielsen(s, workers);
  Perm last = s.fixed_last.value_or(s.class_reps.back());
  auto cen = centralizer_in_sym(last);
  Group H(s.group.degree(), cen.generators);
  return quotient_by_conjugation(tuples, H).size();
}

}  // namespace nielsen_forge
