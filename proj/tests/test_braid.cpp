#include <catch2/catch_amalgamated.hpp>

#include <nielsen_forge/braid.hpp>

using namespace nielsen_forge;

static Perm P(const std::string& s, std::size_t n) { return parse_perm(s, n); }

namespace {

const std::size_t N7 = 7;
const std::size_t N13 = 13;

Group dav7_group() {
  return Group(N7, {P("(3 5)(6 7)", N7), P("(4 5)(6 2)", N7),
                    P("(3 6)(1 2)", N7), P("(1 7 6 5 4 3 2)", N7)});
}

NielsenClassSpec dav7_spec() {
  return NielsenClassSpec{.group = dav7_group(),
                          .class_reps = {P("(3 5)(6 7)", N7), P("(3 5)(6 7)", N7),
                                         P("(3 5)(6 7)", N7),
                                         P("(1 7 6 5 4 3 2)", N7)}};
}

Group dav13_group() {
  return Group(N13, {P("(6 7)(8 11)(5 12)(3 13)", N13),
                     P("(2 3)(13 4)(6 8)(9 10)", N13),
                     P("(1 2)(13 5)(6 12)(9 11)", N13),
                     P("(1 13 12 11 10 9 8 7 6 5 4 3 2)", N13)});
}

NielsenClassSpec dav13_spec() {
  return NielsenClassSpec{
      .group = dav13_group(),
      .class_reps = {P("(6 7)(8 11)(5 12)(3 13)", N13),
                     P("(6 7)(8 11)(5 12)(3 13)", N13),
                     P("(6 7)(8 11)(5 12)(3 13)", N13),
                     P("(1 13 12 11 10 9 8 7 6 5 4 3 2)", N13)}};
}

bool product_is_one(const NielsenTuple& t) {
  Perm p = identity(t[0].degree());
  for (const Perm& g : t) p = compose(p, g);
  return p == identity(t[0].degree());
}

NielsenTuple conj_tuple(const NielsenTuple& t, const Perm& h) {
  NielsenTuple out;
  out.reserve(t.size());
  for (const Perm& g : t) out.push_back(conjugate(g, h));
  return out;
}

// the permutation of reduced-class indices induced by an arbitrary braid word
Perm induced(const ReducedClassSet& rcs, const std::vector<int>& word) {
  std::vector<Pt> img(rcs.size());
  for (std::size_t c = 0; c < rcs.size(); ++c)
    img[c] = Pt(rcs.index_of(apply_braid_word(rcs.classes()[c], word)));
  return Perm(std::move(img));
}

std::multiset<std::size_t> width_multiset(const std::vector<CuspRecord>& cs) {
  std::multiset<std::size_t> out;
  for (const auto& c : cs) out.insert(c.width);
  return out;
}

}  // namespace

TEST_CASE("elementary braid moves") {
  Perm a = P("(1 5 2)", 5), b = P("(1 2)", 5), c = P("(3 4)", 5), d = P("(2 5 3 4)", 5);
  NielsenTuple t{a, b, c, d};

  // commuting middle entries just swap
  CHECK(braid_q(2, t) == NielsenTuple{a, c, b, d});
  // the twist pattern at position 1
  auto q1 = braid_q(1, t);
  CHECK(q1[0] == compose(compose(a, b), inverse(a)));
  CHECK(q1[1] == a);
  CHECK(q1[2] == c);

  // a twist followed by its inverse is the identity, in both orders
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(braid_q_inverse(i, braid_q(i, t)) == t);
    CHECK(braid_q(i, braid_q_inverse(i, t)) == t);
  }

  CHECK_THROWS_AS(braid_q(0, t), std::out_of_range);
  CHECK_THROWS_AS(braid_q(4, t), std::out_of_range);
  CHECK_THROWS_AS(apply_braid_word(t, {1, 0}), std::invalid_argument);

  CHECK(shift(t) == NielsenTuple{b, c, d, a});
  CHECK(shift(shift(shift(shift(t)))) == t);
}

TEST_CASE("braid relations and preservation on the degree-7 tuples") {
  auto spec = dav7_spec();
  auto tuples = enumerate_nielsen(spec);
  REQUIRE(tuples.size() == 49);

  auto inv_class = conjugacy_class(spec.group.generators(), spec.class_reps[0]);
  auto cyc_class = conjugacy_class(spec.group.generators(), spec.class_reps[3]);
  std::unordered_set<Perm, PermHash> allowed(inv_class.begin(), inv_class.end());
  allowed.insert(cyc_class.begin(), cyc_class.end());
  REQUIRE(inv_class.size() == 21);
  REQUIRE(cyc_class.size() == 24);

  for (const auto& t : tuples) {
    // braid relations hold exactly on tuples
    CHECK(apply_braid_word(t, {1, 2, 1}) == apply_braid_word(t, {2, 1, 2}));
    CHECK(apply_braid_word(t, {2, 3, 2}) == apply_braid_word(t, {3, 2, 3}));
    CHECK(apply_braid_word(t, {1, 3}) == apply_braid_word(t, {3, 1}));

    // every twist preserves product-one, entry classes, and generation
    for (std::size_t i = 1; i < t.size(); ++i) {
      auto u = braid_q(i, t);
      CHECK(product_is_one(u));
      for (const Perm& g : u) CHECK(allowed.count(g) == 1);
      StabilizerChain ch(N7);
      for (const Perm& g : u) ch.add_generator(g);
      CHECK(ch.order() == spec.group.order());
    }

    // the composite word q1 q2 q3 is the rotation followed by simultaneous
    // conjugation with the leading entry, so it equals the shift exactly
    // after undoing that conjugation — and the inverse word is the shift
    CHECK(apply_braid_word(t, {1, 2, 3}) == conj_tuple(shift(t), inverse(t[0])));
    CHECK(apply_braid_word(t, {-1, -2, -3}) == shift(t));

    auto orb = q_double_prime_orbit(t);
    CHECK((orb.size() == 1 || orb.size() == 2 || orb.size() == 4));
  }
}

TEST_CASE("degree-7 reduced classes and induced actions") {
  auto spec = dav7_spec();
  for (auto eq : {Equivalence::inner, Equivalence::absolute}) {
    auto rcs = reduce(spec, eq);
    REQUIRE(rcs.size() == 7);
    CHECK(rcs.one_normalized_rep());
    for (const auto& m : rcs.members()) CHECK(m.size() == 4);

    auto ga = gamma_action(rcs);
    CHECK(cycle_type(ga.gamma0) == std::vector<std::size_t>{3, 3, 1});
    CHECK(cycle_type(ga.gamma1) == std::vector<std::size_t>{2, 2, 2, 1});
    CHECK(cycle_type(ga.gamma_inf) == std::vector<std::size_t>{4, 3});
    auto conj = find_simultaneous_conjugator(
        {ga.gamma0, ga.gamma1, ga.gamma_inf},
        {P("(3 7 5)(1 4 6)", N7), P("(3 6)(7 1)(4 2)", N7),
         P("(1 3 4 2)(5 7 6)", N7)});
    CHECK(conj.has_value());

    // the single twist q1 also induces a 4+3 permutation of the classes
    CHECK(cycle_type(induced(rcs, {1})) == std::vector<std::size_t>{4, 3});

    auto cs = cusps(rcs);
    CHECK(width_multiset(cs) == std::multiset<std::size_t>{3, 4});
    std::size_t total = 0;
    for (const auto& c : cs) total += c.width;
    CHECK(total == rcs.size());

    // shift and the word q1 q2 q3 agree on reduced classes
    for (const auto& rep : rcs.classes())
      CHECK(rcs.index_of(apply_braid_word(rep, {1, 2, 3})) ==
            rcs.index_of(shift(rep)));
  }
}

TEST_CASE("degree-13 reduced classes match the printed actions", "[sweep]") {
  auto spec = dav13_spec();
  auto rcs = reduce(spec, Equivalence::inner);
  REQUIRE(rcs.size() == 13);
  CHECK(rcs.one_normalized_rep());
  for (const auto& m : rcs.members()) CHECK(m.size() == 4);

  auto ga = gamma_action(rcs);
  auto conj = find_simultaneous_conjugator(
      {ga.gamma0, ga.gamma1, ga.gamma_inf},
      {P("(1 5 3)(6 9 13)(2 8 11)(4 7 10)", N13),
       P("(1 4)(2 5)(3 6)(7 9)(8 10)(11 12)", N13),
       P("(1 10 2)(3 13 9 4)(5 11 12 8 7 6)", N13)});
  CHECK(conj.has_value());

  auto cs = cusps(rcs);
  CHECK(width_multiset(cs) == std::multiset<std::size_t>{3, 4, 6});
}

TEST_CASE("reduced classes demand four entries and reject bad tuples") {
  Group c3(3, {P("(1 2 3)", 3)});
  NielsenClassSpec three{.group = c3,
                         .class_reps = {P("(1 2 3)", 3), P("(1 2 3)", 3),
                                        P("(1 2 3)", 3)}};
  CHECK_THROWS_AS(reduce(three, Equivalence::inner), std::invalid_argument);

  auto spec = dav7_spec();
  auto rcs = reduce(spec, Equivalence::inner);
  NielsenTuple outside{P("(1 2)", N7), P("(1 2)", N7), P("(1 2)", N7),
                       P("(1 2)", N7)};
  CHECK_THROWS_AS(rcs.index_of(outside), std::invalid_argument);
}

TEST_CASE("singleton class: all induced actions fix the lone index") {
  Group c5(5, {P("(1 2 3 4 5)", 5)});
  Perm g = P("(1 2 3 4 5)", 5);
  NielsenClassSpec spec{.group = c5,
                        .class_reps = {g, g, g, P("(1 3 5 2 4)", 5)}};
  auto rcs = reduce(spec, Equivalence::inner);
  REQUIRE(rcs.size() == 1);
  CHECK(rcs.one_normalized_rep());
  CHECK(rcs.members()[0].size() == 4);

  auto ga = gamma_action(rcs);
  CHECK(ga.gamma0 == identity(1));
  CHECK(ga.gamma1 == identity(1));
  CHECK(ga.gamma_inf == identity(1));

  auto cs = cusps(rcs);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].width == 1);

  auto orbits = full_braid_orbits(spec, Equivalence::inner);
  CHECK(orbits.size() == 1);
}

TEST_CASE("repeated designated class disables the normalization claim") {
  Group c3(3, {P("(1 2 3)", 3)});
  Perm g = P("(1 2 3)", 3), g2 = P("(1 3 2)", 3);
  NielsenClassSpec spec{.group = c3, .class_reps = {g, g, g2, g2}};
  auto rcs = reduce(spec, Equivalence::inner);
  CHECK(rcs.size() == 3);
  CHECK_FALSE(rcs.one_normalized_rep());
  std::size_t total = 0;
  for (const auto& c : cusps(rcs)) total += c.width;
  CHECK(total == rcs.size());
}

TEST_CASE("inverse-pair detection") {
  Perm h1 = P("(1 2 3)", 6), h2 = P("(4 5 6)", 6);
  NielsenTuple hm{h1, inverse(h1), h2, inverse(h2)};
  CHECK(is_hm(hm));
  CHECK_FALSE(is_shifted_hm(hm));
  CHECK(is_shifted_hm(shift(hm)));
  CHECK_FALSE(is_hm(shift(hm)));

  NielsenTuple interleaved{h1, h2, inverse(h1), inverse(h2)};
  CHECK_FALSE(is_hm(interleaved));

  NielsenTuple odd{h1, inverse(h1), h2};
  CHECK_FALSE(is_hm(odd));
}

TEST_CASE("full braid orbits: irreducibility and determinism") {
  auto spec = dav7_spec();
  auto orbits = full_braid_orbits(spec, Equivalence::absolute);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 28);  // 7 reduced classes x 4 Klein translates

  // a singleton Nielsen class has a single (singleton) orbit
  Group c3(3, {P("(1 2 3)", 3)});
  NielsenClassSpec tiny{.group = c3,
                        .class_reps = {P("(1 2 3)", 3), P("(1 2 3)", 3),
                                       P("(1 2 3)", 3)}};
  auto small = full_braid_orbits(tiny, Equivalence::inner);
  REQUIRE(small.size() == 1);
  CHECK(small[0].size() == 1);

  auto w4 = full_braid_orbits(spec, Equivalence::absolute, 4);
  auto w8 = full_braid_orbits(spec, Equivalence::absolute, 8);
  CHECK(orbits == w4);
  CHECK(orbits == w8);
  CHECK(reduce(spec, Equivalence::inner).classes() ==
        reduce(spec, Equivalence::inner, 8).classes());
}
