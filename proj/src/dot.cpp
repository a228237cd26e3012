#include "nerode/dot.hpp"

#include <map>
#include <sstream>

#include "nerode/gset.hpp"

namespace nerode {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string node_style(bool initial, bool final) {
  if (initial) return final ? "shape=diamond, peripheries=2" : "shape=diamond";
  return final ? "shape=doublecircle" : "shape=circle";
}

void write_edges(std::ostringstream& out, const std::map<std::pair<std::string, std::string>, std::string>& edges,
                 const std::vector<std::pair<std::string, std::string>>& order) {
  for (const auto& key : order)
    out << "  " << quote(key.first) << " -> " << quote(key.second) << " [label=" << quote(edges.at(key)) << "];\n";
}

}  // namespace

std::string to_dot(const Automaton& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  auto node = [&](Elem q, const char* indent) {
    out << indent << quote(a.states.name(q)) << " [" << node_style(q == a.init, a.is_final(q)) << "];\n";
  };
  if (a.states.symmetry().empty()) {
    for (Elem q = 0; q < a.states.size(); ++q) node(q, "  ");
  } else {
    const auto orbits = gset::orbits(a.states);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      out << "  subgraph cluster_" << i << " {\n    label=" << quote("orbit " + std::to_string(i)) << ";\n";
      for (Elem q : orbits[i]) node(q, "    ");
      out << "  }\n";
    }
  }
  std::map<std::pair<std::string, std::string>, std::string> edges;
  std::vector<std::pair<std::string, std::string>> order;
  for (Elem q = 0; q < a.states.size(); ++q)
    for (Elem s = 0; s < a.alphabet.size(); ++s) {
      std::pair key{a.states.name(q), a.states.name(a.step(q, s))};
      auto [it, fresh] = edges.try_emplace(key, a.alphabet.name(s));
      if (fresh) order.push_back(key);
      else it->second += "," + a.alphabet.name(s);
    }
  write_edges(out, edges, order);
  out << "}\n";
  return out.str();
}

std::string to_dot(const nominal::NominalAutomaton& a, const std::string& name) {
  auto pattern = [](const nominal::NominalObject& obj, const nominal::Pattern& p) {
    std::string s = obj.orbits[p.orbit].name;
    if (p.vars.empty()) return s;
    s += '(';
    for (std::size_t i = 0; i < p.vars.size(); ++i) s += (i ? "," : "") + p.vars[i];
    return s + ')';
  };
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  for (std::uint32_t o = 0; o < a.states.orbits.size(); ++o) {
    const auto& orb = a.states.orbits[o];
    out << "  " << quote(orb.name) << " [" << node_style(o == a.init, a.final[o])
        << ", label=" << quote(orb.name + "\\ndim " + std::to_string(orb.dim)) << "];\n";
  }
  std::map<std::pair<std::string, std::string>, std::string> edges;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : a.rules) {
    std::pair key{a.states.orbits[r.state.orbit].name, a.states.orbits[r.target.orbit].name};
    const std::string text = pattern(a.states, r.state) + ", " + pattern(a.alphabet, r.letter) + " -> " +
                             pattern(a.states, r.target);
    auto [it, fresh] = edges.try_emplace(key, text);
    if (fresh) order.push_back(key);
    else it->second += "\\n" + text;
  }
  write_edges(out, edges, order);
  out << "}\n";
  return out.str();
}

std::string cayley_dot(const LMonoid& lm, const std::string& name) {
  Automaton a = monoid_to_automaton(lm);
  const auto labels = element_labels(lm);
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  for (Elem x = 0; x < lm.monoid.size(); ++x)
    out << "  " << quote(labels[x]) << " [" << node_style(x == lm.monoid.unit, lm.accepting[x]) << "];\n";
  std::map<std::pair<std::string, std::string>, std::string> edges;
  std::vector<std::pair<std::string, std::string>> order;
  for (Elem x = 0; x < lm.monoid.size(); ++x)
    for (Elem s = 0; s < lm.alphabet.size(); ++s) {
      std::pair key{labels[x], labels[a.step(x, s)]};
      auto [it, fresh] = edges.try_emplace(key, lm.alphabet.name(s));
      if (fresh) order.push_back(key);
      else it->second += "," + lm.alphabet.name(s);
    }
  write_edges(out, edges, order);
  out << "}\n";
  return out.str();
}

}  // namespace nerode
