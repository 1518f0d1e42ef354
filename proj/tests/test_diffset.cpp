#include <catch2/catch_amalgamated.hpp>

#include <nielsen_forge/diffset.hpp>

#include <algorithm>
#include <random>

using namespace nielsen_forge;

namespace {

using Elems = std::vector<std::uint64_t>;

Elems elems_of(const std::vector<DifferenceSet>& v, std::size_t i) {
  return v[i].elements;
}

}  // namespace

TEST_CASE("catalog mod 7") {
  auto classes = find_all(7, 3, 1);
  REQUIRE(classes.size() == 2);
  CHECK(elems_of(classes, 0) == Elems{0, 1, 3});
  CHECK(elems_of(classes, 1) == Elems{0, 1, 5});
  for (const auto& d : classes) CHECK(is_difference_set(d));

  DifferenceSet d7{7, {1, 2, 4}, 1};
  CHECK(is_difference_set(d7));
  CHECK(canonical_translate(d7).elements == Elems{0, 1, 3});
  DifferenceSet neg{7, {3, 5, 6}, 1};
  CHECK(canonical_translate(neg).elements == Elems{0, 1, 5});

  auto m7 = multiplier_group(d7);
  CHECK(m7.members == Elems{1, 2, 4});
  CHECK(verify_nonmultiplier(d7, -1));
  CHECK_FALSE(verify_nonmultiplier(d7, 1));
  CHECK_FALSE(verify_nonmultiplier(d7, 2));

  auto orbits = unit_orbit_classes(7, 3, 1);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 2);
}

TEST_CASE("catalog mod 13") {
  auto classes = find_all(13, 4, 1);
  REQUIRE(classes.size() == 4);
  CHECK(elems_of(classes, 0) == Elems{0, 1, 3, 9});
  CHECK(elems_of(classes, 1) == Elems{0, 1, 4, 6});
  CHECK(elems_of(classes, 2) == Elems{0, 1, 5, 11});
  CHECK(elems_of(classes, 3) == Elems{0, 1, 8, 10});
  for (const auto& d : classes) CHECK(is_difference_set(d));

  // the four classes are exactly the images of {1,2,4,10} under powers of 6
  DifferenceSet d13{13, {1, 2, 4, 10}, 1};
  std::set<Elems> images;
  std::uint64_t scale = 1;
  for (int j = 0; j < 4; ++j) {
    auto img = multiply_set(d13.elements, 13, scale);
    images.insert(canonical_translate({13, std::move(img), 1}).elements);
    scale = scale * 6 % 13;
  }
  std::set<Elems> expected;
  for (const auto& d : classes) expected.insert(d.elements);
  CHECK(images == expected);

  CHECK(multiplier_group(d13).members == Elems{1, 3, 9});
  CHECK(verify_nonmultiplier(d13, 6));

  auto orbits = unit_orbit_classes(13, 4, 1);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 4);
}

TEST_CASE("catalog mod 15") {
  auto classes = find_all(15, 7, 3);
  REQUIRE(classes.size() == 2);
  CHECK(elems_of(classes, 0) == Elems{0, 1, 2, 4, 5, 8, 10});
  CHECK(elems_of(classes, 1) == Elems{0, 1, 2, 7, 9, 12, 13});
  for (const auto& d : classes) CHECK(is_difference_set(d));

  DifferenceSet d15{15, {0, 5, 7, 10, 11, 13, 14}, 3};
  CHECK(is_difference_set(d15));
  CHECK(canonical_translate(d15).elements == Elems{0, 1, 2, 7, 9, 12, 13});
  CHECK(multiplier_group(d15).members == Elems{1, 2, 4, 8});
  CHECK(verify_nonmultiplier(d15, -1));
  CHECK(verify_nonmultiplier(d15, 7));

  // the second class is the image of the first under the unit 7
  auto img = multiply_set(d15.elements, 15, 7);
  CHECK(canonical_translate({15, std::move(img), 3}).elements ==
        Elems{0, 1, 2, 4, 5, 8, 10});

  CHECK(unit_residues(15) == Elems{1, 2, 4, 7, 8, 11, 13, 14});
  auto orbits = unit_orbit_classes(15, 7, 3);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 2);  // the index of <2> in the units mod 15
}

TEST_CASE("biplane mod 11") {
  auto classes = find_all(11, 5, 2);
  REQUIRE(classes.size() == 2);
  CHECK(elems_of(classes, 0) == Elems{0, 1, 2, 4, 7});
  CHECK(elems_of(classes, 1) == Elems{0, 1, 2, 6, 9});
  DifferenceSet qr{11, {1, 3, 4, 5, 9}, 2};
  CHECK(is_difference_set(qr));
  CHECK(multiplier_group(qr).members == Elems{1, 3, 4, 5, 9});
  CHECK(verify_nonmultiplier(qr, -1));
  auto orbits = unit_orbit_classes(11, 5, 2);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].size() == 2);
}

TEST_CASE("degenerate sets and parameter checks") {
  DifferenceSet full{5, {0, 1, 2, 3, 4}, 5};
  CHECK(is_difference_set(full));
  CHECK(multiplier_group(full).members == Elems{1, 2, 3, 4});

  auto singletons = find_all(9, 1, 0);
  REQUIRE(singletons.size() == 1);
  CHECK(singletons[0].elements == Elems{0});
  auto empties = find_all(5, 0, 0);
  REQUIRE(empties.size() == 1);
  CHECK(empties[0].elements.empty());

  CHECK_THROWS_AS(find_all(7, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(find_all(7, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_all(0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(find_all(3, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(canonical_translate(DifferenceSet{7, {1, 9}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_translate(DifferenceSet{7, {4, 2}, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_translate(DifferenceSet{7, {2, 2}, 1}),
                  std::invalid_argument);
}

TEST_CASE("translation and unit multiplication commute") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t n = 2 + rng() % 14;
    std::size_t k = 1 + rng() % n;
    std::set<std::uint64_t> pick;
    while (pick.size() < k) pick.insert(rng() % n);
    Elems base(pick.begin(), pick.end());
    auto units = unit_residues(n);
    std::uint64_t m = units[rng() % units.size()];
    std::uint64_t c = rng() % n;
    // m * (D + c) == m * D + m c
    auto lhs = multiply_set(translate_set(base, n, c), n, m);
    auto rhs = translate_set(multiply_set(base, n, m), n, m * c % n);
    CHECK(lhs == rhs);
    // canonical form is translation invariant
    DifferenceSet d{n, base, 0};
    CHECK(canonical_translate(DifferenceSet{n, translate_set(base, n, c), 0}) ==
          canonical_translate(d));
    CHECK(canonical_translate(canonical_translate(d)) == canonical_translate(d));
  }
}

TEST_CASE("multiplier groups are groups and results are order independent") {
  for (auto [n, k, lam] : std::vector<std::array<std::uint64_t, 3>>{
           {7, 3, 1}, {13, 4, 1}, {15, 7, 3}, {11, 5, 2}}) {
    auto classes = find_all(n, k, lam);
    for (const auto& d : classes) {
      auto mg = multiplier_group(d);
      CHECK(std::find(mg.members.begin(), mg.members.end(), 1) !=
            mg.members.end());
      for (auto a : mg.members)
        for (auto b : mg.members) {
          auto prod = a * b % n;
          CHECK(std::find(mg.members.begin(), mg.members.end(), prod) !=
                mg.members.end());
        }
      // every multiplier fails verify_nonmultiplier and vice versa
      for (auto m : unit_residues(n)) {
        bool in = std::find(mg.members.begin(), mg.members.end(), m) !=
                  mg.members.end();
        CHECK(verify_nonmultiplier(d, std::int64_t(m)) == !in);
      }
    }

    // recanonicalizing every translate of every class, in shuffled order,
    // reproduces exactly the class list
    std::vector<DifferenceSet> all;
    for (const auto& d : classes)
      for (std::uint64_t c = 0; c < n; ++c)
        all.push_back(DifferenceSet{n, translate_set(d.elements, n, c), lam});
    std::mt19937 rng(n);
    std::shuffle(all.begin(), all.end(), rng);
    std::set<DifferenceSet> recanon;
    for (const auto& d : all) recanon.insert(canonical_translate(d));
    CHECK(recanon == std::set<DifferenceSet>(classes.begin(), classes.end()));
  }
}
