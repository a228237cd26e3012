#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerode/automaton.hpp"
#include "nerode/backend.hpp"

namespace nerode::gset {

// A finite group given by its full Cayley table: table[g * n + h] == g h.
class FinGroup {
 public:
  FinGroup() = default;
  // Checks closure, associativity, identity and inverses.
  FinGroup(std::string name, std::vector<std::string> elements, std::vector<Elem> table);

  // The permutation group generated by `generators` (on `points` points).
  // Elements are named by their shortlex-least generator word, joined
  // with '.', the identity by `identity_name`.
  static FinGroup from_permutations(std::string name, std::size_t points, const std::vector<std::string>& generator_names,
                                    const std::vector<Perm>& generators, const std::string& identity_name = "e");

  static FinGroup trivial(std::string name = "1");
  static FinGroup cyclic(std::string name, std::size_t n);

  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::vector<Elem>& table() const noexcept { return table_; }
  std::optional<Elem> find(const std::string& element) const;
  Elem mult(Elem g, Elem h) const { return table_[g * elements_.size() + h]; }
  Elem identity() const noexcept { return identity_; }
  Elem inverse_of(Elem g) const { return inverse_[g]; }

  friend bool operator==(const FinGroup&, const FinGroup&) = default;

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<Elem> table_;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
};

// A G-set: one permutation per group element, checked to be a left action
// (e acts trivially, gh acts as g after h).
FiniteObject make_gset(const FinGroup& g, std::vector<std::string> elements, std::vector<Perm> actions);

// Completes an action given on some group elements (typically generators)
// by closing under products. Throws InvalidInput when the given actions are
// inconsistent or do not determine every element.
std::vector<Perm> close_action(const FinGroup& g, std::size_t carrier_size, const std::map<Elem, Perm>& given);

// The coset space G/H with G acting by left multiplication; cosets named
// prefix0, prefix1, ... in order of their least element.
FiniteObject coset_space(const FinGroup& g, const std::vector<Elem>& subgroup, const std::string& prefix);

// Every subgroup of g, each as a sorted element list.
std::vector<std::vector<Elem>> subgroups(const FinGroup& g);

struct GroupHom {
  FinGroup source;
  FinGroup target;
  std::vector<Elem> map;
};

std::optional<std::string> hom_violation(const GroupHom& f);

std::vector<std::vector<Elem>> orbits(const FiniteObject& x);
std::vector<Elem> fixed_points(const FiniteObject& x);

// Inverse image along f : G -> H: carriers unchanged, g acts as f(g).
// `a` must act through H's element names.
Automaton restrict_automaton(const GroupHom& f, const Automaton& a);

// Strips the action.
Automaton forget(const Automaton& a);

}  // namespace nerode::gset
