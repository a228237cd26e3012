#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nerode/automaton.hpp"
#include "nerode/gset.hpp"
#include "nerode/nominal.hpp"

namespace nerode {

// One self-contained automaton description: backend, optional group, the
// alphabet and state objects, and the automaton.
//
//   backend: set | gset | nominal
//   group NAME:                       (gset)
//     elements: e s
//     table:                          row g lists g h for every h
//       e s
//       s e
//     generators: r=(1 2 3) f=(1 2)   (alternative to elements/table)
//   object NAME:
//     elements: a b                   (set, gset)
//     action s: a->b b->a             (gset; unlisted elements are fixed)
//     orbit NAME: dim 2 stab: (1 2)   (nominal)
//   automaton NAME:
//     alphabet: OBJECT
//     states: OBJECT
//     init: q
//     final: q r
//     delta:
//       q, a -> r                     (nominal: Orb(x), A(y) -> Orb(x))
//
// '#' starts a comment.
struct SpecFile {
  Backend backend = Backend::set;
  std::optional<gset::FinGroup> group;
  std::string automaton_name;
  std::string alphabet_name;
  std::string states_name;
  Automaton automaton;                 // set and gset
  nominal::NominalAutomaton nominal;   // nominal
};

// Throws ParseError for syntax and unresolved names, InvalidInput for
// semantic violations (equivariance, totality, determinism).
SpecFile parse_spec(std::string_view text);
std::string write_spec(const SpecFile& spec);

// Homomorphism file: a source group and its map into `target`.
//
//   group Z4:
//     ...
//   map: 0->e 1->s 2->e 3->s
gset::GroupHom parse_hom(std::string_view text, const gset::FinGroup& target);

}  // namespace nerode
