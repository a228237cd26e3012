#include <doctest.h>

#include "data.hpp"
#include "generators.hpp"

using namespace nerode;
using namespace nerode::testing;

namespace {

gset::GroupHom z4_to_z2() { return gset::GroupHom{z4(), z2(), {0, 1, 0, 1}}; }

gset::GroupHom identity_hom(const gset::FinGroup& g) {
  gset::GroupHom f{g, g, {}};
  for (Elem x = 0; x < g.order(); ++x) f.map.push_back(x);
  return f;
}

gset::GroupHom from_trivial(const gset::FinGroup& g) { return {gset::FinGroup::trivial(), g, {g.identity()}}; }

}  // namespace

TEST_CASE("groups are checked at construction") {
  CHECK_THROWS_AS(gset::FinGroup("bad", {"e", "s"}, {0, 1, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(gset::FinGroup("bad", {"e", "s"}, {0, 1, 1, 2}), InvalidInput);
  const auto s3 = gset::FinGroup::from_permutations("S3", 3, {"r", "f"}, {Perm{1, 2, 0}, Perm{1, 0, 2}});
  CHECK(s3.order() == 6);
  CHECK(s3.elements()[s3.identity()] == "e");
  CHECK(gset::subgroups(s3).size() == 6);
  CHECK(gset::subgroups(z4()).size() == 3);
  const auto z = z4();
  for (Elem g = 0; g < 4; ++g) CHECK(z.mult(g, z.inverse_of(g)) == z.identity());
}

TEST_CASE("G-sets must be actions") {
  CHECK_THROWS_AS(gset::make_gset(z2(), {"a", "b"}, {Perm{1, 0}, Perm{1, 0}}), InvalidInput);
  CHECK_THROWS_AS(gset::make_gset(z4(), {"a", "b", "c"},
                                  {identity_perm(3), Perm{1, 2, 0}, Perm{1, 2, 0}, Perm{2, 0, 1}}),
                  InvalidInput);
  const auto closed = gset::close_action(z4(), 4, {{1, Perm{1, 2, 3, 0}}});
  CHECK(closed[2] == Perm{2, 3, 0, 1});
  CHECK_THROWS_AS(gset::close_action(z4(), 2, {{1, Perm{1, 0}}, {2, Perm{1, 0}}}), InvalidInput);
}

TEST_CASE("orbits and fixed points") {
  const FiniteObject trivial = gset::make_gset(z2(), {"x", "y", "z"}, {identity_perm(3), identity_perm(3)});
  CHECK(gset::orbits(trivial).size() == 3);
  CHECK(gset::fixed_points(trivial).size() == 3);
  const FiniteObject swap = gset::make_gset(z2(), {"a", "ā"}, {identity_perm(2), Perm{1, 0}});
  CHECK(gset::orbits(swap).size() == 1);
  CHECK(gset::fixed_points(swap).empty());
  const Automaton m = minimize(load_data("first_last_z2.aut").automaton).min;
  const auto orbits = gset::orbits(m.states);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0] == std::vector<Elem>{m.init});
  CHECK(orbits[1].size() == 2);
  CHECK(orbits[2].size() == 2);
  CHECK(gset::fixed_points(m.states) == std::vector<Elem>{m.init});
}

TEST_CASE("restriction along homomorphisms") {
  const SpecFile spec = load_data("first_last_z2.aut");
  const Automaton& a = spec.automaton;
  const gset::FinGroup& es = *spec.group;
  CHECK(gset::restrict_automaton(identity_hom(es), a) == a);

  const Automaton classical = gset::restrict_automaton(from_trivial(es), a);
  CHECK(classical.states.symmetry().size() == 1);
  CHECK(accepts(classical, {0, 1}));

  const Automaton z4a = gset::restrict_automaton(gset::GroupHom{z4(), es, {0, 1, 0, 1}}, a);
  CHECK_FALSE(automaton_violation(z4a));
  for (Elem g = 0; g < 4; ++g) CHECK(z4a.states.symmetry()[g] == a.states.symmetry()[g % 2]);

  CHECK_THROWS_AS(gset::restrict_automaton(gset::GroupHom{z4(), es, {0, 1, 1, 0}}, a), InvalidInput);
}

TEST_CASE("forget") {
  const SpecFile spec = load_data("first_last_z2.aut");
  const Automaton& a = spec.automaton;
  const Automaton f = gset::forget(a);
  CHECK(f.states.backend() == Backend::set);
  CHECK(f.states.symmetry().empty());
  CHECK(gset::forget(gset::restrict_automaton(identity_hom(*spec.group), a)) == f);
  const Automaton fm = gset::forget(minimize(a).min);
  CHECK(fm.states.size() == 5);
  CHECK(residual_count(fm) == 5);
  CHECK(minimize(fm).min.states.size() == 5);
}

TEST_CASE("lifting preserves languages on random G-automata") {
  Rng rng(21);
  for (int round = 0; round < 50; ++round) {
    const bool four = round % 2 == 1;
    const Automaton a = random_gset_automaton(rng, four ? z4() : z2());
    const Automaton forgotten = gset::forget(a);
    const Automaton lifted = four ? gset::restrict_automaton(identity_hom(z4()), a)
                                  : gset::restrict_automaton(z4_to_z2(), a);
    const Automaton classical = gset::restrict_automaton(from_trivial(four ? z4() : z2()), a);
    CHECK_FALSE(automaton_violation(lifted));
    for (const Word& w : words_below(a.alphabet.size(), 7)) {
      const bool x = accepts(a, w);
      CHECK(accepts(forgotten, w) == x);
      CHECK(accepts(lifted, w) == x);
      CHECK(accepts(classical, w) == x);
    }
    CHECK(find_isomorphism(minimize(forgotten).min, gset::forget(minimize(a).min)).has_value());
    // every finite G-automaton forgets to a finite classical automaton
    CHECK(finiteness(forgotten.states).dk_finite);
  }
}
