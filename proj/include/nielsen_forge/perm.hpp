#pragma once
// Exact permutation arithmetic on {1..n} (stored 0-based), with cycle-notation
// I/O matching the published tables. Composition is LEFT-TO-RIGHT throughout:
// compose(a,b) applies a first, then b. This is the unique convention under
// which the reference products (e.g. q1*.q2* = gamma0*) come out right.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nielsen_forge {

using Pt = std::uint32_t;

class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t n) : img_(n) {
    std::iota(img_.begin(), img_.end(), Pt{0});
  }
  explicit Perm(std::vector<Pt> images) : img_(std::move(images)) {
#ifndef NDEBUG
    std::vector<bool> seen(img_.size(), false);
    for (Pt x : img_) {
      if (x >= img_.size() || seen[x]) throw std::invalid_argument("not a bijection");
      seen[x] = true;
    }
#endif
  }

  Pt operator[](Pt x) const { return img_[x]; }
  std::size_t degree() const { return img_.size(); }
  const std::vector<Pt>& images() const { return img_; }
  auto operator<=>(const Perm&) const = default;

private:
  std::vector<Pt> img_;
};

inline Perm identity(std::size_t n) { return Perm(n); }

inline Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<Pt> r(a.degree());
  for (Pt x = 0; x < r.size(); ++x) r[x] = b[a[x]];
  return Perm(std::move(r));
}

inline Perm inverse(const Perm& a) {
  std::vector<Pt> r(a.degree());
  for (Pt x = 0; x < r.size(); ++x) r[a[x]] = x;
  return Perm(std::move(r));
}

// h^-1 g h; satisfies c[h[x]] = h[g[x]], i.e. relabels g's points through h.
inline Perm conjugate(const Perm& g, const Perm& h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<Pt> r(g.degree());
  for (Pt x = 0; x < r.size(); ++x) r[h[x]] = h[g[x]];
  return Perm(std::move(r));
}

template <typename... Ps>
Perm compose_all(const Perm& first, const Ps&... rest) {
  Perm acc = first;
  ((acc = compose(acc, rest)), ...);
  return acc;
}

inline Perm power(const Perm& g, long long e) {
  Perm base = e < 0 ? inverse(g) : g;
  unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  Perm acc = identity(g.degree());
  while (k) {
    if (k & 1) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1;
  }
  return acc;
}

// cycle lengths including fixed points, sorted descending
inline std::vector<std::size_t> cycle_type(const Perm& g) {
  std::vector<std::size_t> lens;
  std::vector<bool> seen(g.degree(), false);
  for (Pt x = 0; x < g.degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Pt y = x; !seen[y]; y = g[y]) { seen[y] = true; ++len; }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

inline std::size_t cycle_count(const Perm& g) {
  std::size_t cnt = 0;
  std::vector<bool> seen(g.degree(), false);
  for (Pt x = 0; x < g.degree(); ++x) {
    if (seen[x]) continue;
    ++cnt;
    for (Pt y = x; !seen[y]; y = g[y]) seen[y] = true;
  }
  return cnt;
}

inline std::size_t index(const Perm& g) { return g.degree() - cycle_count(g); }

inline int parity(const Perm& g) { return index(g) % 2 == 0 ? +1 : -1; }

inline std::uint64_t order(const Perm& g) {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_type(g)) o = std::lcm<std::uint64_t>(o, len);
  return o;
}

// 1-based fixed points, ascending
inline std::vector<Pt> fixed_points(const Perm& g) {
  std::vector<Pt> r;
  for (Pt x = 0; x < g.degree(); ++x)
    if (g[x] == x) r.push_back(x + 1);
  return r;
}

// --- cycle-notation text format ------------------------------------------
// "(1 2 3)(4 5)" with spaces or commas; "()" or "id" is the identity.
// Printer: cycles sorted by smallest moved point, each rotated to start at
// its smallest element, fixed points omitted.

inline Perm parse_perm(const std::string& text, std::size_t n) {
  std::vector<Pt> img(n);
  std::iota(img.begin(), img.end(), Pt{0});
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
  };
  skip_ws();
  if (text.compare(i, 2, "id") == 0) {
    i += 2;
    skip_ws();
    if (i != text.size()) throw std::invalid_argument("trailing text after 'id'");
    return Perm(std::move(img));
  }
  std::vector<bool> used(n, false);
  bool any = false;
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<Pt> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit((unsigned char)text[i]))
        throw std::invalid_argument("expected point in cycle notation: " + text);
      unsigned long v = 0;
      while (i < text.size() && std::isdigit((unsigned char)text[i]))
        v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > n) throw std::invalid_argument("point out of range 1.." + std::to_string(n));
      if (used[v - 1]) throw std::invalid_argument("repeated point " + std::to_string(v));
      used[v - 1] = true;
      cyc.push_back(Pt(v - 1));
      skip_ws();
    }
    if (i == text.size()) throw std::invalid_argument("unclosed cycle: " + text);
    ++i;  // ')'
    any = true;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  if (!any) throw std::invalid_argument("empty permutation text");
  return Perm(std::move(img));
}

inline std::string format_perm(const Perm& g) {
  std::string out;
  std::vector<bool> seen(g.degree(), false);
  for (Pt x = 0; x < g.degree(); ++x) {
    if (seen[x] || g[x] == x) { seen[x] = true; continue; }
    out += '(';
    for (Pt y = x;; y = g[y]) {
      if (seen[y]) break;
      seen[y] = true;
      if (y != x) out += ' ';
      out += std::to_string(y + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Pt x : p.images()) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace nielsen_forge
