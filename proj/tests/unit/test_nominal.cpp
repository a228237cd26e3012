#include <doctest.h>

#include "data.hpp"
#include "generators.hpp"

using namespace nerode;
using namespace nerode::nominal;
using namespace nerode::testing;

namespace {

NominalAutomaton first_repeats() { return load_data("first_repeats.aut").nominal; }

NominalObject pairs_object() {
  return NominalObject{"P", {make_orbit("D", 2), make_orbit("U", 2, {Perm{1, 0}})}};
}

std::vector<NomElement> word_of(std::initializer_list<Atom> atoms) {
  std::vector<NomElement> w;
  for (Atom a : atoms) w.push_back(NomElement{0, {a}});
  return w;
}

// Orbit counts, dimensions and stabilizer orders of the minimal automaton.
auto shape(const NominalAutomaton& a) { return std::tuple{orbit_signature(a.states), a.init, a.final, a.rules.size()}; }

}  // namespace

TEST_CASE("supports") {
  CHECK(support(NomElement{0, {}}).empty());
  CHECK(support(NomElement{0, {5}}) == std::vector<Atom>{5});
  CHECK(support(NomElement{0, {7, 3}}) == std::vector<Atom>{3, 7});
}

TEST_CASE("least support of a pair is its atom set") {
  const NominalObject p = pairs_object();
  const PoolInstance inst = instantiate(p, make_pool(4));
  const Elem x = static_cast<Elem>(std::find(inst.elements.begin(), inst.elements.end(), canonical(p, 0, {3, 1})) -
                                   inst.elements.begin());
  REQUIRE(x < inst.elements.size());
  // the transposition of the two other atoms fixes it, any transposition touching 1 or 3 moves it
  CHECK(swap_atoms(inst.object, 1, 3, x) == x);
  CHECK(swap_atoms(inst.object, 0, 3, x) != x);
  CHECK(swap_atoms(inst.object, 2, 3, x) != x);
}

TEST_CASE("canonical forms") {
  const NominalObject p = pairs_object();
  CHECK(canonical(p, 1, {7, 3}).atoms == std::vector<Atom>{3, 7});
  CHECK(canonical(p, 0, {7, 3}).atoms == std::vector<Atom>{7, 3});
  CHECK(element_name(p, canonical(p, 1, {7, 3})) == "U(3,7)");
}

TEST_CASE("canonical equality agrees with the stabilizer action") {
  const NominalObject x{"X", {make_orbit("C3", 3, {Perm{1, 2, 0}}), make_orbit("S3", 3, {Perm{1, 2, 0}, Perm{1, 0, 2}}),
                              make_orbit("T", 3, {Perm{1, 0, 2}}), make_orbit("F", 3)}};
  std::vector<std::vector<Atom>> tuples;
  for (Atom a = 1; a <= 4; ++a)
    for (Atom b = 1; b <= 4; ++b)
      for (Atom c = 1; c <= 4; ++c)
        if (a != b && b != c && a != c) tuples.push_back({a, b, c});
  for (std::uint32_t o = 0; o < x.orbits.size(); ++o)
    for (const auto& s : tuples)
      for (const auto& t : tuples) {
        bool related = false;
        for (const Perm& pi : x.orbits[o].stabilizer) {
          std::vector<Atom> moved(3);
          for (std::size_t i = 0; i < 3; ++i) moved[i] = s[pi[i]];
          related = related || moved == t;
        }
        CHECK((canonical(x, o, s) == canonical(x, o, t)) == related);
      }
}

TEST_CASE("pool instantiation") {
  const PoolInstance atoms = instantiate(atoms_object(), make_pool(3));
  CHECK(atoms.object.size() == 3);
  CHECK(gset::orbits(atoms.object).size() == 1);
  CHECK(instantiate(first_repeats().states, make_pool(3)).object.size() == 5);
  CHECK(instantiate(NominalObject{"D", {make_orbit("D", 2)}}, make_pool(3)).object.size() == 6);
  CHECK(instantiate(pairs_object(), make_pool(3)).object.size() == 9);
}

TEST_CASE("abstraction inverts instantiation") {
  const auto pool = make_pool(3);
  const PoolInstance q = instantiate(first_repeats().states, pool);
  const Abstraction back = abstract(q.object, pool, q.upper_support, "Q", "o");
  REQUIRE(back.object.orbits.size() == 3);
  CHECK(orbit_signature(back.object) == orbit_signature(first_repeats().states));

  const FiniteObject trivial(Backend::nominal, {"x", "y"}, q.object.symmetry_names(),
                             std::vector<Perm>(q.object.symmetry().size(), identity_perm(2)));
  const Abstraction flat = abstract(trivial, pool, {{}, {}}, "T", "t");
  CHECK(orbit_signature(flat.object) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 1}});

  // unordered pairs as a quotient of distinct pairs
  const auto pool4 = make_pool(4);
  const PoolInstance d = instantiate(NominalObject{"D", {make_orbit("D", 2)}}, pool4);
  std::vector<Elem> block(d.object.size());
  for (Elem e = 0; e < d.object.size(); ++e)
    for (Elem f = 0; f <= e; ++f)
      if (support(d.elements[f]) == support(d.elements[e])) {
        block[e] = f;
        break;
      }
  const Quotient u = quotient(d.object, Congruence(block));
  std::vector<std::vector<Atom>> upper;
  for (const auto& members : Congruence(block).blocks()) upper.push_back(support(d.elements[members.front()]));
  const Abstraction unordered = abstract(u.object, pool4, upper, "U", "u");
  CHECK(orbit_signature(unordered.object) == std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}});
}

TEST_CASE("abstraction needs a fresh atom") {
  const auto pool = make_pool(2);
  const PoolInstance d = instantiate(NominalObject{"D", {make_orbit("D", 2)}}, pool);
  CHECK_THROWS_AS(abstract(d.object, pool, d.upper_support, "D", "d"), ResourceLimit);
}

TEST_CASE("round trip on corpus objects") {
  Rng rng(31);
  std::vector<NominalObject> corpus{atoms_object(), pairs_object(), first_repeats().states};
  for (int i = 0; i < 20; ++i) corpus.push_back(random_nominal_automaton(rng).states);
  for (const auto& x : corpus) {
    const auto pool = make_pool(x.max_dim() + 1);
    const PoolInstance inst = instantiate(x, pool);
    CHECK(orbit_signature(abstract(inst.object, pool, inst.upper_support, x.name, "o").object) == orbit_signature(x));
  }
}

TEST_CASE("dK-finiteness") {
  CHECK_FALSE(is_dk_finite(atoms_object()));
  CHECK(is_dk_finite(NominalObject{"B", {make_orbit("0", 0), make_orbit("1", 0)}}));
  CHECK_FALSE(is_dk_finite(first_repeats().states));
}

TEST_CASE("product of atoms with atoms") {
  const NominalProduct p = product(atoms_object(), atoms_object());
  auto sig = orbit_signature(p.object);
  std::sort(sig.begin(), sig.end());
  CHECK(sig == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 1}});
  CHECK_FALSE(map_violation(p.first));
  CHECK_FALSE(map_violation(p.second));
}

TEST_CASE("accepting words whose first letter repeats") {
  const NominalAutomaton a = first_repeats();
  CHECK(accepts(a, word_of({5, 7, 5})));
  CHECK_FALSE(accepts(a, word_of({5, 7, 8})));
  CHECK_FALSE(accepts(a, {}));
  CHECK(accepts(a, word_of({1, 1})));
}

TEST_CASE("rule checks") {
  CHECK_THROWS_WITH_AS(load_data("overlapping.aut"), doctest::Contains("ambiguous"), InvalidInput);
  NominalAutomaton a = first_repeats();
  a.rules.pop_back();
  CHECK_THROWS_WITH_AS(validate(a), doctest::Contains("missing transition"), InvalidInput);
  NominalAutomaton b = first_repeats();
  b.rules[2].target = Pattern{1, {"y"}};
  CHECK_NOTHROW(validate(b));
  b.rules[2].target = Pattern{1, {"z"}};
  CHECK_THROWS_AS(validate(b), InvalidInput);
}

TEST_CASE("first-repeats automaton is its own minimization") {
  const NominalAutomaton a = first_repeats();
  const NominalMinimization m = minimize_nominal(a);
  CHECK(m.min.states.orbits.size() == 3);
  CHECK(m.min.states.orbits[m.min.init].dim == 0);
  std::vector<std::uint32_t> finals;
  for (std::uint32_t o = 0; o < m.min.final.size(); ++o)
    if (m.min.final[o]) finals.push_back(o);
  REQUIRE(finals.size() == 1);
  CHECK(m.min.states.orbits[finals[0]].dim == 0);
  CHECK(orbit_signature(m.min.states) == orbit_signature(a.states));
  CHECK(equivalent(a, m.min).equal);
  CHECK(shape(minimize_nominal(m.min).min) == shape(m.min));
  CHECK(m.pool_size == 3);
  CHECK(m.reachable_orbits == 3);
}

TEST_CASE("redundant and junk orbits are removed") {
  NominalAutomaton dup = first_repeats();
  dup.states.orbits.push_back(make_orbit("Oa2", 1));
  dup.final.push_back(false);
  dup.rules[0].target.orbit = 3;  // OL -> Oa2
  dup.rules.push_back({{3, {"x"}}, {0, {"x"}}, {2, {}}});
  dup.rules.push_back({{3, {"x"}}, {0, {"y"}}, {1, {"x"}}});
  validate(dup);
  for (const auto& w : nominal_words_below(6)) CHECK(accepts(dup, w) == accepts(first_repeats(), w));
  CHECK(minimize_nominal(dup).min.states.orbits.size() == 3);

  NominalAutomaton junk = first_repeats();
  junk.states.orbits.push_back(make_orbit("Junk", 1));
  junk.final.push_back(true);
  junk.rules.push_back({{3, {"x"}}, {0, {"x"}}, {3, {"x"}}});
  junk.rules.push_back({{3, {"x"}}, {0, {"y"}}, {3, {"y"}}});
  validate(junk);
  const auto m = minimize_nominal(junk);
  CHECK(m.reachable_orbits == 3);
  CHECK(m.min.states.orbits.size() == 3);
}

TEST_CASE("all words need one orbit") {
  NominalAutomaton a;
  a.alphabet = atoms_object();
  a.states = NominalObject{"Q", {make_orbit("top", 0)}};
  a.final = {true};
  a.rules = {{{0, {}}, {0, {"x"}}, {0, {}}}};
  validate(a);
  CHECK(minimize_nominal(a).min.states.orbits.size() == 1);
  const NominalMonoidSummary syn = nominal_syntactic_monoid(a);
  CHECK(syn.orbit_count == 1);
}

TEST_CASE("syntactic monoid of first-repeats is not orbit-finite") {
  CHECK_THROWS_WITH_AS(nominal_syntactic_monoid(first_repeats()),
                       doctest::Contains("7 orbits over 3 atoms but 9 over 4"), ResourceLimit);
}

TEST_CASE("equivariant maps do not grow supports") {
  Rng rng(33);
  for (int round = 0; round < 40; ++round) {
    const NominalAutomaton a = random_nominal_automaton(rng);
    const EquivariantMap d = delta_map(a);
    CHECK_FALSE(map_violation(d));
    const PoolInstance src = instantiate(d.source, make_pool(d.source.max_dim() + 1));
    for (const NomElement& x : src.elements) {
      const auto sx = support(x), sy = support(d.apply(x));
      CHECK(std::includes(sx.begin(), sx.end(), sy.begin(), sy.end()));
    }
  }
}

TEST_CASE("nominal minimization on random automata") {
  Rng rng(34);
  for (int round = 0; round < 200; ++round) {
    const NominalAutomaton a = random_nominal_automaton(rng);
    const NominalMinimization m = minimize_nominal(a);
    CHECK(m.min.states.orbits.size() <= a.states.orbits.size());
    CHECK(equivalent(a, m.min).equal);
    for (const auto& w : nominal_words_below(5)) CHECK(accepts(a, w) == accepts(m.min, w));
    CHECK(shape(minimize_nominal(m.min).min) == shape(m.min));
    CHECK(shape(minimize_nominal(a, 2).min) == shape(m.min));
    const NominalAutomaton big = nominal_blowup(a);
    CHECK(shape(minimize_nominal(big).min) == shape(m.min));
    CHECK(equivalent(big, a).equal);
  }
}

TEST_CASE("nominal equivalence finds witnesses") {
  NominalAutomaton a = first_repeats();
  NominalAutomaton b = a;
  b.final = {false, false, false};
  const NominalEquivalence e = equivalent(a, b);
  CHECK_FALSE(e.equal);
  REQUIRE(e.witness);
  CHECK(e.witness->size() == 2);
  CHECK(accepts(a, *e.witness));
}
