#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nerode/backend.hpp"

namespace nerode {

// A finite sequence of letters, as indices into an alphabet object.
using Word = std::vector<Elem>;

// "ε" for the empty word; letters concatenated when every letter name is a
// single character, joined with '.' otherwise.
std::string word_label(const FiniteObject& alphabet, const Word& w);

// Deterministic complete automaton over a backend. delta is stored row-major:
// delta[q * |alphabet| + s].
struct Automaton {
  FiniteObject alphabet;
  FiniteObject states;
  Elem init = 0;
  std::vector<bool> final;
  std::vector<Elem> delta;

  std::size_t letter_count() const noexcept { return alphabet.size(); }
  Elem step(Elem q, Elem s) const { return delta[q * alphabet.size() + s]; }
  bool is_final(Elem q) const { return final[q]; }

  friend bool operator==(const Automaton&, const Automaton&) = default;
};

// The first violated well-formedness condition: sizes, totality, shared
// symmetry, fixed initial state, equivariant final predicate and transitions.
std::optional<std::string> automaton_violation(const Automaton& a);
// Throws InvalidInput with automaton_violation's message.
void validate(const Automaton& a);

// The final predicate as a morphism Q -> {0,1} and the transition map as a
// morphism Q x Σ -> Q.
Morphism final_morphism(const Automaton& a);
Morphism delta_morphism(const Automaton& a);

Elem run(const Automaton& a, const Word& w);
Elem run_from(const Automaton& a, Elem q, const Word& w);
bool accepts(const Automaton& a, const Word& w);

struct AutomatonMorphism {
  Automaton source;
  Automaton target;
  std::vector<Elem> map;
};

struct MorphismVerdict {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

// Reports every violated condition with a concrete witness.
MorphismVerdict check_morphism(const AutomatonMorphism& m);

// Shortlex-least word reaching each state (nullopt for unreachable states).
std::vector<std::optional<Word>> access_words(const Automaton& a);

struct Reachable {
  Automaton sub;
  AutomatonMorphism inclusion;
};

// Restriction to states reachable from init, listed in shortlex order of
// their access words.
Reachable reachable(const Automaton& a);

struct NerodeQuotient {
  Automaton min;
  AutomatonMorphism projection;  // reachable(a) -> min
  Congruence partition;          // on the states of reachable(a)
  std::size_t rounds = 0;
};

// Moore partition refinement on reachable(a). Each block is named "[w]" with
// w the shortlex-least word reaching it, and blocks are ordered by w.
NerodeQuotient nerode_quotient(const Automaton& a);

struct Minimization {
  Automaton min;
  AutomatonMorphism mono;  // reachable(a) -> a
  AutomatonMorphism epi;   // reachable(a) -> min
};

// Both legs of the returned span are checked with check_morphism.
Minimization minimize(const Automaton& a);

struct Equivalence {
  bool equal = true;
  std::optional<Word> witness;  // shortlex-least word on which a and b disagree
};

// Synchronous product search. The alphabets must list the same letters in
// the same order.
Equivalence equivalent(const Automaton& a, const Automaton& b);

// A state bijection between the reachable automata a and b respecting init,
// finals, transitions and the symmetry.
std::optional<std::vector<Elem>> find_isomorphism(const Automaton& a, const Automaton& b);

// Copy of a with the final predicate negated.
Automaton complement(const Automaton& a);

}  // namespace nerode
