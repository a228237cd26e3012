#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nerode/automaton.hpp"
#include "nerode/backend.hpp"

namespace nerode {

inline constexpr std::size_t default_monoid_cap = 20000;

// A finite monoid object. The carrier's symmetry makes the multiplication
// equivariant; witness[x] is a word whose image is x (shortlex-least when the
// monoid was built by closure), empty when unknown.
struct Monoid {
  FiniteObject carrier;
  Elem unit = 0;
  std::vector<Elem> table;  // table[x * n + y] == x * y
  std::vector<Word> witness;

  std::size_t size() const noexcept { return carrier.size(); }
  Elem mult(Elem x, Elem y) const { return table[x * carrier.size() + y]; }
};

// First failure of associativity, the unit laws, or equivariance of mult.
std::optional<std::string> monoid_law_violation(const Monoid& m);

// A monoid together with letter images and an accepting predicate; it
// recognizes the language {w : accepting[eval(w)]}.
struct LMonoid {
  Monoid monoid;
  FiniteObject alphabet;
  std::vector<Elem> letter_image;
  std::vector<bool> accepting;

  Elem eval(const Word& w) const;
};

// Submonoid of state endofunctions generated by the letter actions,
// enumerated breadth first so that element order and witnesses are
// shortlex. mult(f, g) applies f first. Throws ResourceLimit above `cap`.
LMonoid transition_monoid(const Automaton& a, std::size_t cap = default_monoid_cap);

// transition_monoid(minimize(a)).
LMonoid syntactic_monoid(const Automaton& a, std::size_t cap = default_monoid_cap);

// States are monoid elements, init the unit, delta(m, s) = m * phi(s).
Automaton monoid_to_automaton(const LMonoid& lm);

bool recognizes(const LMonoid& lm, const Automaton& a);

// Restriction of an ambient L-monoid to the submonoid generated by the
// letter images.
LMonoid image_l_monoid(const Monoid& ambient, const FiniteObject& alphabet, const std::vector<Elem>& letter_image,
                       const std::vector<bool>& accepting);

// The map from a Σ-generated L-monoid sending x to the image of its witness
// word in `to`, if that is a monoid morphism preserving letter images.
std::optional<std::vector<Elem>> word_induced_morphism(const LMonoid& from, const LMonoid& to);

// A word-induced morphism that is bijective.
bool isomorphic_l_monoids(const LMonoid& a, const LMonoid& b);

struct DivisionWitness {
  std::vector<Elem> submonoid;  // elements of the dividend, sorted
  std::vector<Elem> morphism;   // submonoid[i] -> element of the divisor
};

// Does m divide n, i.e. is m a quotient of a submonoid of n? When both
// carriers have the same non-trivial symmetry the submonoid must be closed
// under it and the morphism equivariant. Exhaustive search; throws
// ResourceLimit when either carrier exceeds `cap`.
std::optional<DivisionWitness> monoid_divides(const Monoid& m, const Monoid& n, std::size_t cap = 12);

// Labels of the elements: word_label of each witness.
std::vector<std::string> element_labels(const LMonoid& lm);

// Aligned multiplication table, rows times columns.
std::string format_table(const LMonoid& lm);

}  // namespace nerode
