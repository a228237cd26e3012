#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nerode/automaton.hpp"
#include "nerode/backend.hpp"
#include "nerode/monoid.hpp"

namespace nerode::nominal {

using Atom = std::uint32_t;

inline constexpr std::size_t max_dim = 6;
inline constexpr std::size_t max_pool = 10;
inline constexpr std::size_t max_instance = 20000;

// A single orbit A^(n)/G: injective n-tuples of atoms modulo a subgroup G of
// the position permutations. Tuples t and t∘π (t∘π)[i] = t[π[i]] name the
// same element for every π in G.
struct OrbitDescriptor {
  std::string name;
  std::size_t dim = 0;
  std::vector<Perm> stabilizer;  // the whole subgroup, sorted, 0-based positions

  std::size_t stabilizer_order() const noexcept { return stabilizer.size(); }
};

// Throws InvalidInput for generators that are not permutations of the
// positions, ResourceLimit above max_dim.
OrbitDescriptor make_orbit(std::string name, std::size_t dim, const std::vector<Perm>& generators = {});

struct NominalObject {
  std::string name;
  std::vector<OrbitDescriptor> orbits;

  std::optional<std::uint32_t> find(const std::string& orbit_name) const;
  std::size_t max_dim() const;
};

// An element in canonical form: the lexicographically least tuple of its
// class.
struct NomElement {
  std::uint32_t orbit = 0;
  std::vector<Atom> atoms;

  friend auto operator<=>(const NomElement&, const NomElement&) = default;
};

NomElement canonical(const NominalObject& x, std::uint32_t orbit, std::vector<Atom> tuple);
// Sorted atoms of x; the least support.
std::vector<Atom> support(const NomElement& x);
std::string element_name(const NominalObject& x, const NomElement& e);

bool is_dk_finite(const NominalObject& x);
FinitenessReport finiteness(const NominalObject& x);

// Equivariant map given per source orbit: the image of the element with
// tuple t lies in target_orbit with tuple (t[positions[0]], ...).
struct OrbitMap {
  std::uint32_t target_orbit = 0;
  std::vector<std::uint32_t> positions;
};

struct EquivariantMap {
  NominalObject source;
  NominalObject target;
  std::vector<OrbitMap> per_orbit;

  NomElement apply(const NomElement& x) const;
};

// Arity or range errors, repeated positions, or dependence on the choice
// of tuple within a source class.
std::optional<std::string> map_violation(const EquivariantMap& f);

struct NominalProduct {
  NominalObject object;
  EquivariantMap first;
  EquivariantMap second;
};

// Orbit decomposition of x × y, computed over an atom pool of size
// d_x + d_y + margin and checked against one more atom.
NominalProduct product(const NominalObject& x, const NominalObject& y, std::size_t margin = 1);

// A transition rule under the distinct-names convention: equal variable
// names bind equal atoms, distinct names distinct atoms.
struct Pattern {
  std::uint32_t orbit = 0;
  std::vector<std::string> vars;
};

struct DeltaRule {
  Pattern state;
  Pattern letter;
  Pattern target;
};

struct NominalAutomaton {
  NominalObject alphabet;
  NominalObject states;
  std::uint32_t init = 0;   // a dimension-0 orbit
  std::vector<bool> final;  // per state orbit
  std::vector<DeltaRule> rules;

  // Transition on concrete elements. Throws InvalidInput when no rule
  // matches, when two rules match, or when a rule's result depends on the
  // tuple chosen for the state or letter.
  NomElement step(const NomElement& q, const NomElement& s) const;
  NomElement initial_element() const { return NomElement{init, {}}; }
  bool is_final(const NomElement& q) const { return final.at(q.orbit); }
};

// Checks patterns and, by instantiation over d_Q + d_Σ + 1 atoms, that the
// rules are total, unambiguous and well defined.
void validate(const NominalAutomaton& a);

NomElement run(const NominalAutomaton& a, const std::vector<NomElement>& w);
bool accepts(const NominalAutomaton& a, const std::vector<NomElement>& w);

// The transition map as an equivariant map (Q × Σ) -> Q.
EquivariantMap delta_map(const NominalAutomaton& a, std::size_t margin = 1);

std::vector<Atom> make_pool(std::size_t size);

// A nominal object instantiated over a finite pool of atoms: all its
// elements with atoms from the pool, acted on by the adjacent pool
// transpositions. upper_support[x] is a set of atoms known to support x.
struct PoolInstance {
  std::vector<Atom> pool;
  FiniteObject object;
  std::vector<NomElement> elements;
  std::vector<std::vector<Atom>> upper_support;
};

PoolInstance instantiate(const NominalObject& x, const std::vector<Atom>& pool);

struct PoolAutomaton {
  Automaton automaton;
  PoolInstance states;
  PoolInstance alphabet;
};

PoolAutomaton instantiate(const NominalAutomaton& a, const std::vector<Atom>& pool);

// Applies the atom transposition (pool[i] pool[j]) to x through the adjacent
// generators of a pool object.
Elem swap_atoms(const FiniteObject& x, std::size_t i, std::size_t j, Elem e);

struct Abstraction {
  NominalObject object;
  std::vector<NomElement> element_of;
};

// Orbits, least supports and position stabilizers of a finite
// Sym(pool)-set. Throws ResourceLimit when some upper support leaves no
// fresh pool atom.
Abstraction abstract(const FiniteObject& x, const std::vector<Atom>& pool,
                     const std::vector<std::vector<Atom>>& upper_support, const std::string& name,
                     const std::string& orbit_prefix);

// Dimension and stabilizer order per orbit.
std::vector<std::pair<std::size_t, std::size_t>> orbit_signature(const NominalObject& x);

struct NominalMinimization {
  NominalAutomaton min;
  std::size_t pool_size = 0;
  std::size_t reachable_orbits = 0;
  PoolAutomaton instance;  // the input over pool_size atoms
  Minimization span;       // automata-core span of instance.automaton
};

// Pool B = d_Q + d_Σ + margin; the result is recomputed over B + 1 atoms
// and must agree (stability gate, ResourceLimit otherwise). Minimized
// orbits are named q0, q1, ... in shortlex order of their access words.
NominalMinimization minimize_nominal(const NominalAutomaton& a, std::size_t margin = 1);

struct NominalEquivalence {
  bool equal = true;
  std::optional<std::vector<NomElement>> witness;
};

NominalEquivalence equivalent(const NominalAutomaton& a, const NominalAutomaton& b, std::size_t margin = 1);

struct NominalMonoidSummary {
  std::size_t pool_size = 0;
  std::size_t orbit_count = 0;
  Abstraction carrier;
  std::vector<std::string> representatives;  // witness label per orbit
  LMonoid pool_monoid;                        // over pool_size atoms
};

// Transition monoid of the minimal automaton, computed over pools of B and
// B + 1 atoms. A monoid that is not orbit-finite has orbit counts growing
// with the pool and fails the stability gate with ResourceLimit.
NominalMonoidSummary nominal_syntactic_monoid(const NominalAutomaton& a, std::size_t margin = 1,
                                              std::size_t cap = default_monoid_cap);

}  // namespace nerode::nominal
