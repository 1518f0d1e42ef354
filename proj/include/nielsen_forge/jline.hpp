#pragma once
// From an induced triple x, y, z with x^3 = y^2 = xyz = 1 acting on reduced
// classes to cover data over the line parameterized by the classical modular
// invariant: genus via the Riemann-Hurwitz identity, monodromy recognition,
// cusp widths (z-cycles), a level-order modularity obstruction, and the
// combinatorial fine/b-fine moduli flags. Intransitive actions are reported
// component by component.

#include "braid.hpp"

namespace nielsen_forge {

// 2(degree + g - 1) = sum of indices; requires product-one and transitivity,
// and rejects any non-integral or negative genus outright
inline std::size_t genus_from_gamma(const Perm& g0, const Perm& g1,
                                    const Perm& gi, std::size_t degree) {
  if (g0.degree() != degree || g1.degree() != degree || gi.degree() != degree)
    throw std::invalid_argument("triple degree mismatch");
  if (!(compose(compose(g0, g1), gi) == identity(degree)))
    throw std::invalid_argument("triple does not have product one");
  if (!is_transitive({g0, g1, gi}, degree))
    throw std::invalid_argument("triple is not transitive");
  std::size_t total = index(g0) + index(g1) + index(gi);
  // solve 2(degree + g - 1) = total
  if (total % 2 != 0 || total + 2 < 2 * degree)
    throw std::domain_error("branch indices give no nonnegative integer genus");
  return (total + 2 - 2 * degree) / 2;
}

// |PSL_2(Z/n)| = n^3 prod_{p | n} (1 - 1/p^2), halved for n > 2; computed as
// prod over p^k || n of p^(3k-2) (p^2 - 1)
inline std::uint64_t psl2_order(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("level must be positive");
  unsigned __int128 acc = 1;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (p > rest / p) p = rest;  // what is left is prime
    if (rest % p != 0) continue;
    std::size_t k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    for (std::size_t e = 0; e + 2 < 3 * k; ++e) acc *= p;
    acc *= (unsigned __int128)(p) * p - 1;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("level order exceeds 64 bits");
  }
  if (n > 2) acc /= 2;
  return std::uint64_t(acc);
}

enum class ModularObstruction { possibly_modular, not_modular_by_order_test };

inline const char* to_string(ModularObstruction m) {
  switch (m) {
    case ModularObstruction::possibly_modular: return "possibly_modular";
    case ModularObstruction::not_modular_by_order_test:
      return "not_modular_by_order_test";
  }
  return "?";
}

// necessary condition only: a cover of the modular-invariant line with cusp
// widths of least common multiple N that comes from a congruence curve has
// monodromy a quotient of PSL_2(Z/N), so its order must divide that one
inline ModularObstruction modular_obstruction(const Perm& gamma_inf,
                                              const DecimalInt& monodromy_order) {
  std::uint64_t level = order(gamma_inf);
  std::uint64_t target = psl2_order(level);
  auto small = monodromy_order.to_u64();
  if (small && *small != 0 && target % *small == 0)
    return ModularObstruction::possibly_modular;
  return ModularObstruction::not_modular_by_order_test;
}

struct ModuliFlags {
  bool b_fine = false;
  bool fine = false;
};

// b-fine: the Klein word group acts faithfully on the conjugation-classes;
// fine additionally needs both x and y free of fixed points
inline ModuliFlags moduli_flags(const ReducedClassSet& rcs) {
  static const std::vector<std::vector<int>> nontrivial{
      {1, 2, 3, 1, 2, 3}, {1, -3}, {1, 2, 3, 1, 2, 3, 1, -3}};
  ModuliFlags out;
  out.b_fine = true;
  for (const auto& w : nontrivial) {
    bool moved = false;
    for (const auto& cls : rcs.members()) {
      for (const auto& node : cls)
        if (!(canonical_tuple(apply_braid_word(node, w), rcs.conj_elements()) ==
              node)) {
          moved = true;
          break;
        }
      if (moved) break;
    }
    if (!moved) {
      out.b_fine = false;
      break;
    }
  }
  if (out.b_fine) {
    GammaAction ga = gamma_action(rcs);
    out.fine = fixed_points(ga.gamma0).empty() && fixed_points(ga.gamma1).empty();
  }
  return out;
}

struct ComponentReport {
  std::vector<Pt> points;  // global class indices, sorted
  std::size_t degree = 0;
  std::size_t genus = 0;
  std::multiset<std::size_t> cusp_widths;
  AltSymRecognition monodromy = AltSymRecognition::neither;
  DecimalInt monodromy_order;
  ModularObstruction modular = ModularObstruction::possibly_modular;
};

struct JLineReport {
  std::size_t degree = 0;
  GammaAction gamma;
  bool transitive = false;
  std::optional<std::size_t> genus;  // of the whole cover, when transitive
  AltSymRecognition monodromy = AltSymRecognition::neither;
  DecimalInt monodromy_order;
  std::multiset<std::size_t> cusp_widths;
  ModularObstruction modular = ModularObstruction::possibly_modular;
  bool b_fine = false;
  bool fine = false;
  std::vector<ComponentReport> components;
};

namespace detail {

// the recognition verdict pins the group exactly (S_n, or A_n when every
// generator is even), so those orders need no stabilizer chain
inline DecimalInt monodromy_order_of(AltSymRecognition rec,
                                     const std::vector<Perm>& gens,
                                     std::size_t degree) {
  if (rec == AltSymRecognition::is_sym) return factorial_decimal(degree);
  if (rec == AltSymRecognition::contains_alt) {
    DecimalInt half(1);
    for (std::size_t k = 3; k <= degree; ++k) half.mul(k);
    return half;
  }
  return Group(degree, gens).order();
}

}  // namespace detail

// per-orbit cover data for a triple that need not be transitive
inline std::vector<ComponentReport> component_reports(const GammaAction& ga,
                                                      std::size_t degree) {
  std::vector<Perm> gens{ga.gamma0, ga.gamma1, ga.gamma_inf};
  std::vector<ComponentReport> out;
  for (const auto& orbit : orbits(gens, degree)) {
    ComponentReport rep;
    rep.points = orbit;
    rep.degree = orbit.size();
    std::vector<Pt> local(degree, Pt(degree));
    for (std::size_t k = 0; k < orbit.size(); ++k) local[orbit[k]] = Pt(k);
    auto restrict_to = [&](const Perm& g) {
      std::vector<Pt> img(orbit.size());
      for (Pt x : orbit) img[local[x]] = local[g[x]];
      return Perm(std::move(img));
    };
    Perm r0 = restrict_to(ga.gamma0), r1 = restrict_to(ga.gamma1),
         ri = restrict_to(ga.gamma_inf);
    rep.genus = genus_from_gamma(r0, r1, ri, orbit.size());
    auto type = cycle_type(ri);
    rep.cusp_widths = std::multiset<std::size_t>(type.begin(), type.end());
    rep.monodromy = recognize_alt_sym({r0, r1, ri}, orbit.size());
    rep.monodromy_order =
        detail::monodromy_order_of(rep.monodromy, {r0, r1, ri}, orbit.size());
    rep.modular = modular_obstruction(ri, rep.monodromy_order);
    out.push_back(std::move(rep));
  }
  return out;
}

inline JLineReport build_report(const ReducedClassSet& rcs) {
  if (rcs.size() == 0) throw std::invalid_argument("no reduced classes");
  JLineReport rep;
  rep.degree = rcs.size();
  rep.gamma = gamma_action(rcs);
  std::vector<Perm> gens{rep.gamma.gamma0, rep.gamma.gamma1, rep.gamma.gamma_inf};
  rep.transitive = is_transitive(gens, rep.degree);
  auto type = cycle_type(rep.gamma.gamma_inf);
  rep.cusp_widths = std::multiset<std::size_t>(type.begin(), type.end());
  rep.components = component_reports(rep.gamma, rep.degree);
  if (rep.transitive) {
    // the single component covers every point in order, so its data is the
    // whole cover's
    rep.genus = rep.components.front().genus;
    rep.monodromy = rep.components.front().monodromy;
    rep.monodromy_order = rep.components.front().monodromy_order;
    rep.modular = rep.components.front().modular;
  } else {
    rep.monodromy = recognize_alt_sym(gens, rep.degree);
    rep.monodromy_order =
        detail::monodromy_order_of(rep.monodromy, gens, rep.degree);
    rep.modular = modular_obstruction(rep.gamma.gamma_inf, rep.monodromy_order);
  }
  ModuliFlags flags = moduli_flags(rcs);
  rep.b_fine = flags.b_fine;
  rep.fine = flags.fine;
  return rep;
}

}  // namespace nielsen_forge
