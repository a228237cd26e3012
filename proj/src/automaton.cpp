#include "nerode/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "nerode/text.hpp"

namespace nerode {

std::string word_label(const FiniteObject& alphabet, const Word& w) {
  if (w.empty()) return "ε";
  const bool short_letters = std::all_of(w.begin(), w.end(), [&](Elem s) {
    return utf8_length(alphabet.name(s)) == 1;
  });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !short_letters) out += '.';
    out += alphabet.name(w[i]);
  }
  return out;
}

std::optional<std::string> automaton_violation(const Automaton& a) {
  const std::size_t nq = a.states.size(), ns = a.alphabet.size();
  if (nq == 0) return "automaton has no states";
  if (ns == 0) return "alphabet is empty";
  if (a.init >= nq) return "initial state out of range";
  if (a.final.size() != nq) return "final predicate is not total";
  if (a.delta.size() != nq * ns) return "transition map is not total";
  for (Elem q = 0; q < nq; ++q)
    for (Elem s = 0; s < ns; ++s)
      if (a.step(q, s) >= nq)
        return "transition (" + a.states.name(q) + ", " + a.alphabet.name(s) + ") leaves the states";
  if (!a.states.shares_symmetry_with(a.alphabet)) return "states and alphabet act through different symmetries";
  for (std::size_t k = 0; k < a.states.symmetry().size(); ++k) {
    const std::string& g = a.states.symmetry_names()[k];
    if (a.states.act(k, a.init) != a.init)
      return "initial state '" + a.states.name(a.init) + "' is not a fixed point: '" + g + "' moves it to '" +
             a.states.name(a.states.act(k, a.init)) + "'";
    for (Elem q = 0; q < nq; ++q) {
      if (a.final[q] != a.final[a.states.act(k, q)])
        return "final predicate is not equivariant: '" + g + "' maps '" + a.states.name(q) + "' to '" +
               a.states.name(a.states.act(k, q)) + "'";
      for (Elem s = 0; s < ns; ++s) {
        const Elem lhs = a.step(a.states.act(k, q), a.alphabet.act(k, s));
        const Elem rhs = a.states.act(k, a.step(q, s));
        if (lhs != rhs)
          return "transition map is not equivariant at (" + a.states.name(q) + ", " + a.alphabet.name(s) +
                 ") under '" + g + "'";
      }
    }
  }
  return std::nullopt;
}

void validate(const Automaton& a) {
  if (auto v = automaton_violation(a)) throw InvalidInput(*v);
}

Morphism final_morphism(const Automaton& a) {
  std::vector<Elem> map(a.states.size());
  for (Elem q = 0; q < map.size(); ++q) map[q] = a.final[q] ? truth_true : truth_false;
  return {a.states, truth_object(a.states), std::move(map)};
}

Morphism delta_morphism(const Automaton& a) {
  Product p = product(a.states, a.alphabet);
  return {p.object, a.states, a.delta};
}

Elem run_from(const Automaton& a, Elem q, const Word& w) {
  for (Elem s : w) {
    if (s >= a.alphabet.size()) throw InvalidInput("letter index " + std::to_string(s) + " is not in the alphabet");
    q = a.step(q, s);
  }
  return q;
}

Elem run(const Automaton& a, const Word& w) { return run_from(a, a.init, w); }

bool accepts(const Automaton& a, const Word& w) { return a.final[run(a, w)]; }

MorphismVerdict check_morphism(const AutomatonMorphism& m) {
  MorphismVerdict v;
  const Automaton& src = m.source;
  const Automaton& tgt = m.target;
  if (src.alphabet.elements() != tgt.alphabet.elements()) {
    v.failures.push_back("alphabets differ");
    return v;
  }
  if (m.map.size() != src.states.size()) {
    v.failures.push_back("state map is not total");
    return v;
  }
  for (Elem q = 0; q < src.states.size(); ++q) {
    if (m.map[q] >= tgt.states.size()) {
      v.failures.push_back("image of '" + src.states.name(q) + "' is not a target state");
      return v;
    }
  }
  if (m.map[src.init] != tgt.init)
    v.failures.push_back("init: '" + src.states.name(src.init) + "' maps to '" + tgt.states.name(m.map[src.init]) +
                         "', not the target initial state");
  for (Elem q = 0; q < src.states.size(); ++q) {
    if (src.final[q] != tgt.final[m.map[q]]) {
      v.failures.push_back("final: '" + src.states.name(q) + "' is " + (src.final[q] ? "final" : "not final") +
                           " but its image '" + tgt.states.name(m.map[q]) + "' is " +
                           (tgt.final[m.map[q]] ? "final" : "not final"));
      break;
    }
  }
  for (Elem q = 0; q < src.states.size(); ++q) {
    bool broken = false;
    for (Elem s = 0; s < src.alphabet.size() && !broken; ++s) {
      if (m.map[src.step(q, s)] != tgt.step(m.map[q], s)) {
        v.failures.push_back("delta: square fails at ('" + src.states.name(q) + "', '" + src.alphabet.name(s) + "')");
        broken = true;
      }
    }
    if (broken) break;
  }
  if (!src.states.shares_symmetry_with(tgt.states)) {
    v.failures.push_back("equivariance: source and target act through different symmetries");
  } else {
    for (std::size_t k = 0; k < src.states.symmetry().size(); ++k) {
      bool broken = false;
      for (Elem q = 0; q < src.states.size() && !broken; ++q) {
        if (m.map[src.states.act(k, q)] != tgt.states.act(k, m.map[q])) {
          v.failures.push_back("equivariance: fails at '" + src.states.name(q) + "' under '" +
                               src.states.symmetry_names()[k] + "'");
          broken = true;
        }
      }
      if (broken) break;
    }
  }
  return v;
}

std::vector<std::optional<Word>> access_words(const Automaton& a) {
  std::vector<std::optional<Word>> words(a.states.size());
  std::deque<Elem> queue{a.init};
  words[a.init] = Word{};
  while (!queue.empty()) {
    const Elem q = queue.front();
    queue.pop_front();
    for (Elem s = 0; s < a.alphabet.size(); ++s) {
      const Elem r = a.step(q, s);
      if (words[r]) continue;
      Word w = *words[q];
      w.push_back(s);
      words[r] = std::move(w);
      queue.push_back(r);
    }
  }
  return words;
}

namespace {

// States reachable from init in breadth-first (shortlex) discovery order.
std::vector<Elem> discovery_order(const Automaton& a) {
  std::vector<bool> seen(a.states.size(), false);
  std::vector<Elem> order{a.init};
  seen[a.init] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Elem s = 0; s < a.alphabet.size(); ++s) {
      const Elem r = a.step(order[i], s);
      if (!seen[r]) {
        seen[r] = true;
        order.push_back(r);
      }
    }
  }
  return order;
}

}  // namespace

Reachable reachable(const Automaton& a) {
  validate(a);
  const std::vector<Elem> order = discovery_order(a);
  std::vector<Elem> position(a.states.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<Elem>(i);

  Automaton sub;
  sub.alphabet = a.alphabet;
  sub.states = restrict_to(a.states, order);
  sub.init = 0;
  sub.final.resize(order.size());
  sub.delta.resize(order.size() * a.alphabet.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sub.final[i] = a.final[order[i]];
    for (Elem s = 0; s < a.alphabet.size(); ++s)
      sub.delta[i * a.alphabet.size() + s] = position[a.step(order[i], s)];
  }
  return {sub, AutomatonMorphism{sub, a, order}};
}

NerodeQuotient nerode_quotient(const Automaton& a) {
  Reachable r = reachable(a);
  const Automaton& sub = r.sub;
  const std::size_t nq = sub.states.size(), ns = sub.alphabet.size();

  std::vector<Elem> block(nq);
  for (Elem q = 0; q < nq; ++q) block[q] = sub.final[q] ? 1 : 0;
  Congruence partition(block);
  std::size_t rounds = 0;
  while (true) {
    ++rounds;
    // The Nerode partition is a kernel pair of an equivariant map; a breach
    // here means the refinement itself is wrong.
    if (auto breach = symmetry_breach(sub.states, partition))
      throw std::logic_error("Nerode refinement lost equivariance in round " + std::to_string(rounds) +
                             " at block " + std::to_string(breach->block) + " under '" + breach->generator + "'");
    std::map<std::vector<Elem>, Elem> signatures;
    std::vector<Elem> refined(nq);
    for (Elem q = 0; q < nq; ++q) {
      std::vector<Elem> sig{partition.block_of(q)};
      for (Elem s = 0; s < ns; ++s) sig.push_back(partition.block_of(sub.step(q, s)));
      auto [it, fresh] = signatures.emplace(std::move(sig), static_cast<Elem>(signatures.size()));
      refined[q] = it->second;
    }
    Congruence next(refined);
    if (next.block_count() == partition.block_count()) break;
    partition = std::move(next);
  }

  // Reachable states are in shortlex order, so the first member of each
  // block carries the block's least access word and blocks come out sorted.
  Quotient quot = quotient(sub.states, partition);
  const auto words = access_words(sub);
  const auto blocks = partition.blocks();
  std::vector<std::string> names;
  for (const auto& b : blocks) names.push_back("[" + word_label(sub.alphabet, *words[b.front()]) + "]");

  Automaton min;
  min.alphabet = sub.alphabet;
  min.states = FiniteObject(quot.object.backend(), std::move(names), quot.object.symmetry_names(),
                            quot.object.symmetry());
  min.init = partition.block_of(sub.init);
  min.final.resize(blocks.size());
  min.delta.resize(blocks.size() * ns);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Elem rep = blocks[b].front();
    min.final[b] = sub.final[rep];
    for (Elem s = 0; s < ns; ++s) min.delta[b * ns + s] = partition.block_of(sub.step(rep, s));
  }
  return {min, AutomatonMorphism{sub, min, partition.block_indices()}, partition, rounds};
}

Minimization minimize(const Automaton& a) {
  Reachable r = reachable(a);
  NerodeQuotient n = nerode_quotient(r.sub);
  Minimization m{n.min, r.inclusion, n.projection};
  for (const AutomatonMorphism* leg : {&m.mono, &m.epi}) {
    MorphismVerdict v = check_morphism(*leg);
    if (!v.ok()) throw std::logic_error("minimization span leg is not a morphism: " + v.failures.front());
  }
  return m;
}

Equivalence equivalent(const Automaton& a, const Automaton& b) {
  if (a.alphabet.elements() != b.alphabet.elements())
    throw InvalidInput("equivalence check over different alphabets");
  const std::size_t nb = b.states.size(), ns = a.alphabet.size();
  constexpr std::size_t none = ~std::size_t{0};
  std::vector<std::size_t> parent(a.states.size() * nb, none);
  std::vector<Elem> via(parent.size(), 0);
  auto key = [nb](Elem p, Elem q) { return p * nb + q; };

  const std::size_t start = key(a.init, b.init);
  parent[start] = start;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const Elem p = static_cast<Elem>(k / nb), q = static_cast<Elem>(k % nb);
    if (a.final[p] != b.final[q]) {
      Word w;
      for (std::size_t c = k; c != start; c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return {false, std::move(w)};
    }
    for (Elem s = 0; s < ns; ++s) {
      const std::size_t next = key(a.step(p, s), b.step(q, s));
      if (parent[next] != none) continue;
      parent[next] = k;
      via[next] = s;
      queue.push_back(next);
    }
  }
  return {};
}

std::optional<std::vector<Elem>> find_isomorphism(const Automaton& a, const Automaton& b) {
  if (a.alphabet.elements() != b.alphabet.elements()) return std::nullopt;
  if (a.states.size() != b.states.size()) return std::nullopt;
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> map(a.states.size(), unset), back(b.states.size(), unset);
  std::deque<Elem> queue{a.init};
  map[a.init] = b.init;
  back[b.init] = a.init;
  while (!queue.empty()) {
    const Elem p = queue.front();
    queue.pop_front();
    if (a.final[p] != b.final[map[p]]) return std::nullopt;
    for (Elem s = 0; s < a.alphabet.size(); ++s) {
      const Elem pa = a.step(p, s), pb = b.step(map[p], s);
      if (map[pa] == unset && back[pb] == unset) {
        map[pa] = pb;
        back[pb] = pa;
        queue.push_back(pa);
      } else if (map[pa] != pb || back[pb] != pa) {
        return std::nullopt;
      }
    }
  }
  if (std::find(map.begin(), map.end(), unset) != map.end()) return std::nullopt;
  if (a.states.symmetry_names() != b.states.symmetry_names()) return std::nullopt;
  for (std::size_t k = 0; k < a.states.symmetry().size(); ++k)
    for (Elem q = 0; q < a.states.size(); ++q)
      if (map[a.states.act(k, q)] != b.states.act(k, map[q])) return std::nullopt;
  return map;
}

Automaton complement(const Automaton& a) {
  Automaton c = a;
  c.final.flip();
  return c;
}

}  // namespace nerode
