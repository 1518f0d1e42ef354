#pragma once
// Braid moves on Nielsen tuples and their quotients. q_i twists a pair of
// adjacent entries; words in the q_i act left to right. For four branch
// cycles the words (q1 q2 q3)^2 and q1 q3^{-1} generate a Klein four-group
// modulo simultaneous conjugation, and reduced classes are the orbits of
// conjugation-classes under it. The induced permutations of reduced classes
// by q1 q2, q1 q2 q3 and q2 satisfy the triangle relations x^3 = y^2 = xyz = 1,
// giving cusps (z-cycles) with widths and inverse-pair/p' classification.

#include "nielsen.hpp"

#include <cstdint>

namespace nielsen_forge {

// q_i replaces (g_i, g_{i+1}) by (g_i g_{i+1} g_i^{-1}, g_i); i is 1-based
inline NielsenTuple braid_q(std::size_t i, const NielsenTuple& t) {
  if (i < 1 || i >= t.size())
    throw std::out_of_range("braid index out of range");
  NielsenTuple out = t;
  out[i - 1] = compose(compose(t[i - 1], t[i]), inverse(t[i - 1]));
  out[i] = t[i - 1];
  return out;
}

inline NielsenTuple braid_q_inverse(std::size_t i, const NielsenTuple& t) {
  if (i < 1 || i >= t.size())
    throw std::out_of_range("braid index out of range");
  NielsenTuple out = t;
  out[i - 1] = t[i];
  out[i] = compose(compose(inverse(t[i]), t[i - 1]), t[i]);
  return out;
}

// letters act left to right; +i means q_i and -i means q_i^{-1}
inline NielsenTuple apply_braid_word(NielsenTuple t, const std::vector<int>& word) {
  for (int w : word) {
    if (w == 0) throw std::invalid_argument("braid letter must be nonzero");
    t = w > 0 ? braid_q(std::size_t(w), t) : braid_q_inverse(std::size_t(-w), t);
  }
  return t;
}

// (g_1, ..., g_r) -> (g_2, ..., g_r, g_1); as a braid word, q_1 q_2 ... q_{r-1}
inline NielsenTuple shift(const NielsenTuple& t) {
  if (t.empty()) return t;
  NielsenTuple out(t.begin() + 1, t.end());
  out.push_back(t[0]);
  return out;
}

// inverse-pair tuple (h_1, h_1^{-1}, h_2, h_2^{-1}, ...)
inline bool is_hm(const NielsenTuple& t) {
  if (t.empty() || t.size() % 2 != 0) return false;
  for (std::size_t k = 0; k + 1 < t.size(); k += 2)
    if (!(t[k + 1] == inverse(t[k]))) return false;
  return true;
}

// the single left-rotation of an inverse-pair tuple
inline bool is_shifted_hm(const NielsenTuple& t) {
  if (t.empty()) return false;
  NielsenTuple back(t.size());
  back[0] = t.back();
  std::copy(t.begin(), t.end() - 1, back.begin() + 1);
  return is_hm(back);
}

namespace detail {

// generators of the Klein word group together with their inverses, so the
// breadth-first closure below is symmetric
inline const std::vector<std::vector<int>>& klein_words() {
  static const std::vector<std::vector<int>> w{
      {1, 2, 3, 1, 2, 3}, {-3, -2, -1, -3, -2, -1}, {1, -3}, {3, -1}};
  return w;
}

}  // namespace detail

// images of t under the four Klein group elements 1, (q1 q2 q3)^2, q1 q3^{-1}
// and their product; coincidences can shrink the set, so its size divides 4
// only after conjugation is factored out
inline std::set<NielsenTuple> q_double_prime_orbit(const NielsenTuple& t) {
  if (t.size() != 4)
    throw std::invalid_argument("the Klein quotient needs four entries");
  NielsenTuple sq = apply_braid_word(t, {1, 2, 3, 1, 2, 3});
  std::set<NielsenTuple> out{t, sq, apply_braid_word(t, {1, -3}),
                             apply_braid_word(sq, {1, -3})};
  return out;
}

enum class Equivalence { inner, absolute };

namespace detail {

// tuple classes modulo conjugation (inner: by the group; absolute: by its
// symmetric-group normalizer), linked by the given braid words. Nodes are
// canonical conjugation representatives; seeds come from the pinned
// enumeration, and every class is a word-translate of a seed because the
// word sets used here move the pinned slot across all positions.
struct ClassGraph {
  std::vector<Perm> conj;
  std::vector<NielsenTuple> nodes;
  std::unordered_map<NielsenTuple, std::size_t, TupleHash> id;
  std::vector<std::size_t> comp;
  std::size_t components = 0;
};

inline ClassGraph build_class_graph(const NielsenClassSpec& spec, Equivalence eq,
                                    const std::vector<std::vector<int>>& words,
                                    std::size_t workers) {
  NielsenClassSpec seed_spec = spec;
  seed_spec.matching = Matching::unordered;
  seed_spec.pin_last = true;
  auto seeds = enumerate_nielsen(seed_spec, workers);

  ClassGraph g;
  g.conj = eq == Equivalence::inner ? spec.group.elements()
                                    : normalizer_in_sym_elements(spec.group);

  auto canon_all = [&](const std::vector<NielsenTuple>& ts) {
    std::vector<NielsenTuple> out(ts.size());
    if (workers <= 1 || ts.size() < 64) {
      for (std::size_t k = 0; k < ts.size(); ++k)
        out[k] = canonical_tuple(ts[k], g.conj);
      return out;
    }
    std::size_t chunk = (ts.size() + workers - 1) / workers;
    std::vector<std::future<void>> futs;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t lo = w * chunk, hi = std::min(ts.size(), lo + chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t k = lo; k < hi; ++k)
          out[k] = canonical_tuple(ts[k], g.conj);
      }));
    }
    for (auto& f : futs) f.get();
    return out;
  };

  auto intern = [&](NielsenTuple key) {
    auto [it, fresh] = g.id.emplace(std::move(key), g.nodes.size());
    if (fresh) g.nodes.push_back(it->first);
    return it->second;
  };
  for (auto& key : canon_all(seeds)) intern(std::move(key));

  std::vector<std::vector<std::size_t>> adj;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    adj.resize(g.nodes.size());
    for (const auto& w : words)
      adj[k].push_back(
          intern(canonical_tuple(apply_braid_word(g.nodes[k], w), g.conj)));
  }
  adj.resize(g.nodes.size());

  g.comp.assign(g.nodes.size(), SIZE_MAX);
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    if (g.comp[s] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{s};
    g.comp[s] = g.components;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : adj[v])
        if (g.comp[u] == SIZE_MAX) {
          g.comp[u] = g.components;
          stack.push_back(u);
        }
    }
    ++g.components;
  }
  return g;
}

}  // namespace detail

class ReducedClassSet {
public:
  ReducedClassSet(NielsenClassSpec spec, Equivalence eq, std::vector<Perm> conj,
                  std::vector<NielsenTuple> classes,
                  std::vector<std::vector<NielsenTuple>> members,
                  bool one_normalized_rep)
      : spec_(std::move(spec)),
        equivalence_(eq),
        conj_(std::move(conj)),
        classes_(std::move(classes)),
        members_(std::move(members)),
        one_normalized_rep_(one_normalized_rep) {
    for (std::size_t k = 0; k < members_.size(); ++k)
      for (const auto& node : members_[k]) index_.emplace(node, k);
  }

  std::size_t size() const { return classes_.size(); }
  const NielsenClassSpec& spec() const { return spec_; }
  Equivalence equivalence() const { return equivalence_; }
  const std::vector<Perm>& conj_elements() const { return conj_; }
  // canonical representatives, one per reduced class, sorted
  const std::vector<NielsenTuple>& classes() const { return classes_; }
  // all conjugation-classes (as canonical tuples) inside each reduced class
  const std::vector<std::vector<NielsenTuple>>& members() const { return members_; }
  // each reduced class contains exactly one conjugation-class whose last
  // entry is in the designated class (and the designated class appears once)
  bool one_normalized_rep() const { return one_normalized_rep_; }

  std::size_t index_of(const NielsenTuple& t) const {
    auto it = index_.find(canonical_tuple(t, conj_));
    if (it == index_.end())
      throw std::invalid_argument("tuple lies in no reduced class");
    return it->second;
  }

private:
  NielsenClassSpec spec_;
  Equivalence equivalence_;
  std::vector<Perm> conj_;
  std::vector<NielsenTuple> classes_;
  std::vector<std::vector<NielsenTuple>> members_;
  std::unordered_map<NielsenTuple, std::size_t, TupleHash> index_;
  bool one_normalized_rep_;
};

inline ReducedClassSet reduce(const NielsenClassSpec& spec, Equivalence eq,
                              std::size_t workers = 1) {
  if (spec.class_reps.size() != 4)
    throw std::invalid_argument(
        "reduced equivalence is defined for exactly four branch cycles");
  auto g = detail::build_class_graph(spec, eq, detail::klein_words(), workers);

  std::vector<std::vector<NielsenTuple>> members(g.components);
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    members[g.comp[k]].push_back(g.nodes[k]);
  for (auto& m : members) std::sort(m.begin(), m.end());
  std::sort(members.begin(), members.end());
  std::vector<NielsenTuple> classes;
  classes.reserve(members.size());
  for (const auto& m : members) classes.push_back(m.front());

  // normalization bookkeeping: the designated class is the one pinned during
  // enumeration; the uniqueness claim only makes sense when it appears once
  const Perm& gstar =
      spec.fixed_last ? *spec.fixed_last : spec.class_reps.back();
  auto desig = conjugacy_class(spec.group.generators(), gstar,
                               std::max(spec.class_budget, std::size_t{1}));
  std::unordered_set<Perm, PermHash> desig_set(desig.begin(), desig.end());
  std::size_t rep_hits = 0;
  for (const Perm& rep : spec.class_reps) rep_hits += desig_set.count(rep);
  bool one_rep = rep_hits == 1;
  for (const auto& m : members) {
    std::size_t pinned_nodes = 0;
    for (const auto& node : m) pinned_nodes += desig_set.count(node.back());
    if (pinned_nodes != 1) one_rep = false;
  }

  return ReducedClassSet(spec, eq, std::move(g.conj), std::move(classes),
                         std::move(members), one_rep);
}

struct GammaAction {
  Perm gamma0, gamma1, gamma_inf;
};

// permutations of the reduced-class indices induced by q1 q2, q1 q2 q3 and
// q2; the triangle relations are verified, not assumed
inline GammaAction gamma_action(const ReducedClassSet& rcs) {
  std::size_t k = rcs.size();
  auto act = [&](const std::vector<int>& word) {
    std::vector<Pt> img(k);
    for (std::size_t c = 0; c < k; ++c)
      img[c] = Pt(rcs.index_of(apply_braid_word(rcs.classes()[c], word)));
    return Perm(std::move(img));
  };
  GammaAction ga{act({1, 2}), act({1, 2, 3}), act({2})};
  if (!(power(ga.gamma0, 3) == identity(k)) ||
      !(power(ga.gamma1, 2) == identity(k)) ||
      !(compose(compose(ga.gamma0, ga.gamma1), ga.gamma_inf) == identity(k)))
    throw std::logic_error("induced actions violate the triangle relations");
  return ga;
}

struct CuspRecord {
  std::size_t width = 0;
  // reduced-class indices along the cycle, starting from the smallest
  std::vector<std::size_t> members;
  bool is_hm = false;
  bool is_shifted_hm = false;
  // primes p dividing the group order such that some member class has both
  // edge subgroups <g_2, g_3> and <g_1, g_4> of order coprime to p
  std::set<std::uint64_t> gp_prime_for;
};

inline std::vector<CuspRecord> cusps(const ReducedClassSet& rcs) {
  GammaAction ga = gamma_action(rcs);

  std::set<std::uint64_t> primes;
  std::size_t bound = 0;
  if (auto o = rcs.spec().group.order_u64()) {
    primes = prime_divisors(*o);
    bound = std::size_t(*o);
  }
  // order of <g_2, g_3> and <g_1, g_4> per conjugation-class; both are
  // conjugation-invariant, so the canonical node representative suffices
  auto edge_orders = [&](const NielsenTuple& t) {
    return std::pair<std::uint64_t, std::uint64_t>(
        closure({t[1], t[2]}, bound).size(), closure({t[0], t[3]}, bound).size());
  };

  std::vector<CuspRecord> out;
  std::vector<bool> seen(rcs.size(), false);
  for (std::size_t s = 0; s < rcs.size(); ++s) {
    if (seen[s]) continue;
    CuspRecord rec;
    for (std::size_t v = s; !seen[v]; v = ga.gamma_inf[Pt(v)]) {
      seen[v] = true;
      rec.members.push_back(v);
    }
    rec.width = rec.members.size();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> orders;
    for (std::size_t idx : rec.members)
      for (const auto& node : rcs.members()[idx]) {
        if (is_hm(node)) rec.is_hm = true;
        if (is_shifted_hm(node)) rec.is_shifted_hm = true;
        if (!primes.empty() && node.size() == 4) orders.push_back(edge_orders(node));
      }
    for (std::uint64_t p : primes)
      for (const auto& [mid, outer] : orders)
        if (mid % p != 0 && outer % p != 0) {
          rec.gp_prime_for.insert(p);
          break;
        }
    out.push_back(std::move(rec));
  }
  return out;
}

// orbits of the full braid action q_1, ..., q_{r-1} on conjugation-classes
// of tuples (inner: conjugation by the group; absolute: by its normalizer).
// Each orbit lists the canonical class representatives it contains.
inline std::vector<std::vector<NielsenTuple>> full_braid_orbits(
    const NielsenClassSpec& spec, Equivalence eq, std::size_t workers = 1) {
  std::vector<std::vector<int>> words;
  for (int i = 1; i + 1 <= int(spec.class_reps.size()); ++i) {
    words.push_back({i});
    words.push_back({-i});
  }
  auto g = detail::build_class_graph(spec, eq, words, workers);
  std::vector<std::vector<NielsenTuple>> orbits(g.components);
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    orbits[g.comp[k]].push_back(g.nodes[k]);
  for (auto& o : orbits) std::sort(o.begin(), o.end());
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

}  // namespace nielsen_forge
