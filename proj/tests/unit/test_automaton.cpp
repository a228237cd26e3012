#include <doctest.h>

#include "data.hpp"
#include "generators.hpp"

using namespace nerode;
using namespace nerode::testing;

namespace {

Word word(const Automaton& a, std::initializer_list<const char*> letters) {
  Word w;
  for (const char* l : letters) w.push_back(*a.alphabet.find(l));
  return w;
}

// Membership oracle: length at least 2 and first letter differs from last.
bool first_differs_from_last(const Word& w) { return w.size() >= 2 && w.front() != w.back(); }

Automaton contains_aa(bool redundant) {
  Automaton a;
  a.alphabet = FiniteObject(Backend::set, {"a", "b"});
  if (!redundant) {
    a.states = FiniteObject(Backend::set, {"0", "1", "2"});
    a.final = {false, false, true};
    a.delta = {1, 0, 2, 0, 2, 2};
  } else {
    a.states = FiniteObject(Backend::set, {"0", "1", "2", "3"});
    a.final = {false, false, true, true};
    a.delta = {1, 0, 2, 0, 3, 2, 2, 3};
  }
  return a;
}

}  // namespace

TEST_CASE("run and accepts on the first/last automaton") {
  const Automaton a = load_data("first_last_z2.aut").automaton;
  CHECK(accepts(a, word(a, {"a", "ā"})));
  CHECK_FALSE(accepts(a, {}));
  CHECK(run(a, {}) == a.init);
  CHECK_FALSE(accepts(a, word(a, {"a", "ā", "a"})));
  const Automaton m = minimize(a).min;
  CHECK(m.states.name(run(m, word(a, {"a"}))) == "[a]");
  for (const Word& w : words_below(2, 6)) CHECK(accepts(a, w) == first_differs_from_last(w));
  CHECK_THROWS_AS(run(a, {7}), InvalidInput);
}

TEST_CASE("run folds over concatenation") {
  Rng rng(1);
  for (int round = 0; round < 100; ++round) {
    const Automaton a = random_set_automaton(rng);
    const auto words = words_below(a.alphabet.size(), 4);
    const Word& u = words[uniform(rng, 0, words.size() - 1)];
    const Word& v = words[uniform(rng, 0, words.size() - 1)];
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(run(a, uv) == run_from(a, run(a, u), v));
  }
}

TEST_CASE("validation reports equivariance failures") {
  Automaton a = load_data("first_last_z2.aut").automaton;
  a.final[*a.states.find("aā0")] = false;
  const auto v = automaton_violation(a);
  REQUIRE(v);
  CHECK(v->find("final") != std::string::npos);
  Automaton b = load_data("first_last_z2.aut").automaton;
  b.delta[0] = *b.states.find("aā0");
  CHECK(automaton_violation(b));
}

TEST_CASE("reachable drops unreachable states") {
  Automaton a = contains_aa(false);
  a.states = FiniteObject(Backend::set, {"0", "1", "2", "sink"});
  a.final.push_back(false);
  a.delta.insert(a.delta.end(), {3, 3});
  const Reachable r = reachable(a);
  CHECK(r.sub.states.size() == 3);
  CHECK(check_morphism(r.inclusion).ok());
  CHECK(equivalent(r.sub, a).equal);
  const Reachable again = reachable(r.sub);
  CHECK(again.sub == r.sub);
}

TEST_CASE("nerode quotient of an all-accepting automaton has one state") {
  Automaton a = contains_aa(false);
  a.final = {true, true, true};
  const NerodeQuotient q = nerode_quotient(a);
  CHECK(q.min.states.size() == 1);
  CHECK(q.min.final[0]);
}

TEST_CASE("redundant first/last automaton minimizes to five states") {
  const Automaton a = load_data("first_last_z2.aut").automaton;
  REQUIRE(a.states.size() == 9);
  const Minimization m = minimize(a);
  CHECK(m.min.states.size() == 5);
  CHECK(m.min.states.elements() == std::vector<std::string>{"[ε]", "[a]", "[ā]", "[aā]", "[āa]"});
  const auto fixed = gset::fixed_points(m.min.states);
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0] == m.min.init);
  CHECK(gset::orbits(m.min.states).size() == 3);
  CHECK(check_morphism(m.mono).ok());
  CHECK(check_morphism(m.epi).ok());
  CHECK(is_surjective(Morphism{m.epi.source.states, m.epi.target.states, m.epi.map}));
}

TEST_CASE("ends in a is minimal at two states") {
  const Automaton a = load_data("ends_in_a.aut").automaton;
  const Automaton m = minimize(a).min;
  CHECK(m.states.size() == 2);
  CHECK(residual_count(a) == 2);
  CHECK(minimize(m).min.states.size() == 2);
}

TEST_CASE("check_morphism") {
  const Automaton a = contains_aa(true);
  CHECK(check_morphism({a, a, {0, 1, 2, 3}}).ok());
  const Minimization m = minimize(a);
  CHECK(check_morphism(m.epi).ok());
  const MorphismVerdict bad = check_morphism({a, a, {0, 1, 0, 3}});
  REQUIRE_FALSE(bad.ok());
  bool names_state = false;
  for (const auto& f : bad.failures) names_state = names_state || f.find("'2'") != std::string::npos;
  CHECK(names_state);
}

TEST_CASE("equivalence with witnesses") {
  const Automaton a = load_data("first_last_z2.aut").automaton;
  CHECK(equivalent(a, minimize(a).min).equal);
  const Equivalence e = equivalent(a, complement(a));
  CHECK_FALSE(e.equal);
  REQUIRE(e.witness);
  CHECK(e.witness->empty());
  CHECK(equivalent(contains_aa(false), contains_aa(true)).equal);
  CHECK(agree_below(contains_aa(false), contains_aa(true), 3 + 4));
  Automaton shifted = contains_aa(false);
  shifted.final = {false, true, true};
  const Equivalence d = equivalent(contains_aa(false), shifted);
  CHECK_FALSE(d.equal);
  CHECK(*d.witness == Word{0});
}

TEST_CASE("minimization properties on random finite automata") {
  Rng rng(42);
  for (int round = 0; round < 300; ++round) {
    const Automaton a = random_set_automaton(rng, 9);
    const Minimization m = minimize(a);
    CHECK(m.min.states.size() == residual_count(a));
    CHECK(agree_below(a, m.min, reachable_count(a) + m.min.states.size()));
    CHECK(find_isomorphism(minimize(m.min).min, m.min).has_value());
    CHECK(minimize(m.min).min == m.min);
    CHECK(check_morphism(m.mono).ok());
    CHECK(check_morphism(m.epi).ok());
    const Automaton big = blowup(a, companion(rng, a, 4));
    CHECK(minimize(big).min.states.size() == m.min.states.size());
    CHECK(find_isomorphism(minimize(big).min, m.min).has_value());
  }
}

TEST_CASE("minimization properties on random G-automata") {
  Rng rng(43);
  for (int round = 0; round < 200; ++round) {
    const auto g = round % 2 ? z4() : z2();
    const Automaton a = random_gset_automaton(rng, g);
    const Minimization m = minimize(a);
    CHECK(m.min.states.size() == residual_count(gset::forget(a)));
    CHECK(gset::orbits(m.min.states).size() <= gset::orbits(reachable(a).sub.states).size());
    CHECK_FALSE(automaton_violation(m.min));
    CHECK(minimize(m.min).min == m.min);
    const Automaton forgotten_then_min = minimize(gset::forget(a)).min;
    CHECK(find_isomorphism(forgotten_then_min, gset::forget(m.min)).has_value());
    const Automaton big = blowup(a, companion(rng, a, 4));
    CHECK(equivalent(gset::forget(big), gset::forget(a)).equal);
    CHECK(find_isomorphism(minimize(big).min, m.min).has_value());
  }
}
