#pragma once
// Affine permutation groups on the m^2 points of (Z/m)^2: the sign action
// v -> -v and the order-3 matrix action e1 -> -e2, e2 -> e1 - e2.  On top of
// the builders sit feasibility checks for the four-involution and the
// four-order-3 tuple families over these groups, and an exhaustive check
// that order-3 generator lifts from modulus p^k to p^(k+1) keep generating.

#include "nielsen.hpp"

#include <numeric>

namespace nielsen_forge {

namespace towers_detail {

// row-major 2x2 integer matrix acting on column vectors
struct Mat2 {
  long a, b, c, d;
};
inline constexpr Mat2 kOrder3Action{0, 1, -1, -1};  // (x,y) -> (y, -x-y)
inline constexpr Mat2 kSignAction{-1, 0, 0, -1};
inline constexpr Mat2 kIdentityAction{1, 0, 0, 1};

inline long mod(long v, long m) {
  v %= m;
  return v < 0 ? v + m : v;
}

// the map v -> Mv + t as a permutation of (Z/m)^2, points numbered x + m*y
inline Perm affine_perm(std::size_t m, const Mat2& M, long tx, long ty) {
  long lm = long(m);
  std::vector<Pt> img(m * m);
  for (long y = 0; y < lm; ++y)
    for (long x = 0; x < lm; ++x) {
      long ix = mod(M.a * x + M.b * y + tx, lm);
      long iy = mod(M.c * x + M.d * y + ty, lm);
      img[std::size_t(x + lm * y)] = Pt(ix + lm * iy);
    }
  return Perm(std::move(img));
}

inline std::vector<Perm> affine_generators(std::size_t m, const Mat2& action) {
  return {affine_perm(m, action, 0, 0), affine_perm(m, kIdentityAction, 1, 0),
          affine_perm(m, kIdentityAction, 0, 1)};
}

}  // namespace towers_detail

inline Group build_sign_group(std::size_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  return Group(m * m, towers_detail::affine_generators(m, towers_detail::kSignAction));
}

inline Group build_triangle_group(std::size_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  return Group(m * m, towers_detail::affine_generators(m, towers_detail::kOrder3Action));
}

// ---------------------------------------------------------------------------
// four involutions (-1; v_i) with product one over the sign group
// ---------------------------------------------------------------------------

struct H2Check {
  bool nonempty = false;
  // normalized witness: v1 = 0, v2 = (1,0), v3 = (0,1), v4 = v1 - v2 + v3
  NielsenTuple witness;
  // tuples modulo translation and sign: one per unit-determinant pair
  // (v2, v3), identified in opposite-sign pairs
  std::uint64_t count_inner_classes = 0;
};

inline H2Check check_h2_nielsen(std::size_t m) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument(
        "four-involution family needs an odd modulus >= 3");
  using towers_detail::affine_perm;
  using towers_detail::kSignAction;
  using towers_detail::mod;
  long lm = long(m);
  H2Check out;
  out.witness = {affine_perm(m, kSignAction, 0, 0),
                 affine_perm(m, kSignAction, 1, 0),
                 affine_perm(m, kSignAction, 0, 1),
                 affine_perm(m, kSignAction, lm - 1, 1)};
  Perm prod = out.witness[0];
  for (std::size_t k = 1; k < 4; ++k) prod = compose(prod, out.witness[k]);
  bool ok = prod == identity(m * m);
  for (const Perm& g : out.witness) ok = ok && order(g) == 2;
  auto got = Group(m * m, out.witness).order_u64();
  ok = ok && got && *got == std::uint64_t(2 * m * m);
  out.nonempty = ok;

  std::uint64_t pairs = 0;
  for (long x2 = 0; x2 < lm; ++x2)
    for (long y2 = 0; y2 < lm; ++y2)
      for (long x3 = 0; x3 < lm; ++x3)
        for (long y3 = 0; y3 < lm; ++y3)
          if (std::gcd(mod(x2 * y3 - y2 * x3, lm), lm) == 1) ++pairs;
  out.count_inner_classes = pairs / 2;
  return out;
}

// ---------------------------------------------------------------------------
// four order-3 elements (two mutually inverse class pairs) over the
// triangle group
// ---------------------------------------------------------------------------

struct H3Check {
  bool nonempty = false;
  // (g1, g1^-1, g2, g2^-1) with g1 = (alpha; 0), g2 = (alpha; (1,0))
  NielsenTuple hm_witness;
  // whether every nonzero translation part v2 yields a generating pair
  bool all_nonzero_v2_generate = false;
};

inline H3Check check_h3_nielsen(std::size_t m) {
  if (m < 2 || m % 3 == 0)
    throw std::invalid_argument(
        "four-order-3 family needs a modulus >= 2 prime to 3");
  using towers_detail::affine_perm;
  using towers_detail::kOrder3Action;
  long lm = long(m);
  std::uint64_t full = std::uint64_t(3 * m * m);
  H3Check out;
  Perm g1 = affine_perm(m, kOrder3Action, 0, 0);
  Perm g2 = affine_perm(m, kOrder3Action, 1, 0);
  out.hm_witness = {g1, inverse(g1), g2, inverse(g2)};
  Perm prod = out.hm_witness[0];
  for (std::size_t k = 1; k < 4; ++k) prod = compose(prod, out.hm_witness[k]);
  auto got = Group(m * m, {g1, g2}).order_u64();
  out.nonempty = prod == identity(m * m) && order(g1) == 3 &&
                 order(g2) == 3 && got && *got == full;

  out.all_nonzero_v2_generate = true;
  for (long x = 0; x < lm && out.all_nonzero_v2_generate; ++x)
    for (long y = 0; y < lm; ++y) {
      if (x == 0 && y == 0) continue;
      auto o = Group(m * m, {g1, affine_perm(m, kOrder3Action, x, y)}).order_u64();
      if (!o || *o != full) {
        out.all_nonzero_v2_generate = false;
        break;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// generator lifts between consecutive levels of the triangle-group tower
// ---------------------------------------------------------------------------

namespace towers_detail {

// elements (alpha^j; v) of the triangle group mod m, coded as j*m^2 + x*m + y;
// composition applies the left factor first
inline long affine_code_compose(long e, long f, long m) {
  long m2 = m * m;
  long je = e / m2, xe = (e % m2) / m, ye = e % m;
  long jf = f / m2, xf = (f % m2) / m, yf = f % m;
  long tx, ty;
  switch (jf) {
    case 0: tx = xe; ty = ye; break;
    case 1: tx = ye; ty = mod(-xe - ye, m); break;
    default: tx = mod(-xe - ye, m); ty = xe; break;
  }
  return ((je + jf) % 3) * m2 + ((tx + xf) % m) * m + (ty + yf) % m;
}

inline bool affine_codes_generate(long e, long f, long m) {
  long states = 3 * m * m;
  std::vector<char> seen(states, 0);
  std::vector<long> frontier{0};
  seen[0] = 1;
  long count = 1;
  while (!frontier.empty() && count < states) {
    std::vector<long> next;
    for (long a : frontier)
      for (long g : {e, f}) {
        long b = affine_code_compose(a, g, m);
        if (!seen[b]) {
          seen[b] = 1;
          next.push_back(b);
          ++count;
        }
      }
    frontier.swap(next);
  }
  return count == states;
}

}  // namespace towers_detail

// Exhaustively verifies, between moduli p^(from_level+1) and p^(to_level+1),
// that every order-3 lift of every generating pair (g1, g2) of order-3
// elements with normalized g1 in {(alpha; 0), (alpha^2; 0)} still generates.
// Every lift (alpha^j; v + p^k w) of an order-3 element keeps order 3,
// because alpha^2 + alpha + 1 = 0 already over the integers; conjugation
// commutes with reduction, so the normalized pairs cover all of them.
inline bool check_frattini_lift(std::size_t p, std::size_t from_level,
                                std::size_t to_level) {
  if (p < 2 || p % 3 == 0)
    throw std::invalid_argument("tower prime must be at least 2 and prime to 3");
  if (to_level == from_level) return true;  // nothing to lift
  if (to_level != from_level + 1)
    throw std::invalid_argument("lift check spans exactly one level");
  long ml = 1;
  for (std::size_t k = 0; k <= from_level; ++k) {
    ml *= long(p);
    if (ml > 32) throw std::invalid_argument("lift check level too large");
  }
  long mh = ml * long(p);
  if (mh > 32) throw std::invalid_argument("lift check level too large");
  using towers_detail::affine_code_compose;
  using towers_detail::affine_codes_generate;
  long ml2 = ml * ml, mh2 = mh * mh;
  long states = 3 * mh2;

  // right-multiplication tables for the order-3 upper elements (j != 0)
  std::vector<std::vector<std::int32_t>> table(std::size_t(2 * mh2));
  for (long g = mh2; g < 3 * mh2; ++g) {
    auto& t = table[std::size_t(g - mh2)];
    t.resize(std::size_t(states));
    for (long e = 0; e < states; ++e)
      t[std::size_t(e)] = std::int32_t(affine_code_compose(e, g, mh));
  }

  std::vector<std::int32_t> stamp(std::size_t(states), -1);
  std::vector<std::int32_t> frontier, next;
  std::int32_t run = 0;
  auto lifts_generate = [&](long l1, long l2) {
    const auto& t1 = table[std::size_t(l1 - mh2)];
    const auto& t2 = table[std::size_t(l2 - mh2)];
    ++run;
    stamp[0] = run;
    frontier.assign(1, 0);
    long count = 1;
    while (!frontier.empty() && count < states) {
      next.clear();
      for (std::int32_t a : frontier)
        for (const auto* t : {&t1, &t2}) {
          std::int32_t b = (*t)[std::size_t(a)];
          if (stamp[std::size_t(b)] != run) {
            stamp[std::size_t(b)] = run;
            next.push_back(b);
            ++count;
          }
        }
      frontier.swap(next);
    }
    return count == states;
  };

  long q = mh / ml;  // == p
  for (long j1 = 1; j1 <= 2; ++j1) {
    long g1 = j1 * ml2;
    for (long j2 = 1; j2 <= 2; ++j2)
      for (long x2 = 0; x2 < ml; ++x2)
        for (long y2 = 0; y2 < ml; ++y2) {
          long g2 = j2 * ml2 + x2 * ml + y2;
          if (!affine_codes_generate(g1, g2, ml)) continue;
          for (long w1x = 0; w1x < q; ++w1x)
            for (long w1y = 0; w1y < q; ++w1y) {
              long l1 = j1 * mh2 + (ml * w1x) * mh + ml * w1y;
              for (long w2x = 0; w2x < q; ++w2x)
                for (long w2y = 0; w2y < q; ++w2y) {
                  long l2 = j2 * mh2 + (x2 + ml * w2x) * mh + (y2 + ml * w2y);
                  if (!lifts_generate(l1, l2)) return false;
                }
            }
        }
  }
  return true;
}

}  // namespace nielsen_forge
