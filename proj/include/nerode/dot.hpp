#pragma once

#include <string>

#include "nerode/automaton.hpp"
#include "nerode/monoid.hpp"
#include "nerode/nominal.hpp"

namespace nerode {

// Graphviz descriptions. States are listed in their stored order; symmetric
// states are grouped into one cluster per orbit. The initial state is a
// diamond, final states have a double border, parallel edges share a label.
std::string to_dot(const Automaton& a, const std::string& name);

// Nodes are orbits, edges are the delta rules.
std::string to_dot(const nominal::NominalAutomaton& a, const std::string& name);

// Right Cayley graph: x -> x·φ(s) for every letter s.
std::string cayley_dot(const LMonoid& lm, const std::string& name);

}  // namespace nerode
