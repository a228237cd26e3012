#include "nerode/monoid.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "nerode/text.hpp"

namespace nerode {

std::optional<std::string> monoid_law_violation(const Monoid& m) {
  const std::size_t n = m.size();
  if (m.table.size() != n * n) return "multiplication table is not total";
  if (m.unit >= n) return "unit out of range";
  for (Elem x = 0; x < n; ++x) {
    if (m.mult(m.unit, x) != x || m.mult(x, m.unit) != x)
      return "unit law fails at '" + m.carrier.name(x) + "'";
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (m.mult(m.mult(x, y), z) != m.mult(x, m.mult(y, z)))
          return "associativity fails at ('" + m.carrier.name(x) + "', '" + m.carrier.name(y) + "', '" +
                 m.carrier.name(z) + "')";
  for (std::size_t k = 0; k < m.carrier.symmetry().size(); ++k) {
    if (m.carrier.act(k, m.unit) != m.unit) return "unit is not a fixed point";
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (m.carrier.act(k, m.mult(x, y)) != m.mult(m.carrier.act(k, x), m.carrier.act(k, y)))
          return "multiplication is not equivariant under '" + m.carrier.symmetry_names()[k] + "'";
  }
  return std::nullopt;
}

Elem LMonoid::eval(const Word& w) const {
  Elem x = monoid.unit;
  for (Elem s : w) {
    if (s >= letter_image.size()) throw InvalidInput("letter index " + std::to_string(s) + " is not in the alphabet");
    x = monoid.mult(x, letter_image[s]);
  }
  return x;
}

namespace {

std::vector<std::string> labels_of(const FiniteObject& alphabet, const std::vector<Word>& witness) {
  std::vector<std::string> out;
  for (const Word& w : witness) out.push_back(word_label(alphabet, w));
  return out;
}

}  // namespace

LMonoid transition_monoid(const Automaton& a, std::size_t cap) {
  validate(a);
  const std::size_t nq = a.states.size(), ns = a.alphabet.size();
  using Fn = std::vector<Elem>;
  std::map<Fn, Elem> index;
  std::vector<Fn> fns{identity_perm(nq)};
  std::vector<Word> witness{Word{}};
  index.emplace(fns[0], 0);
  std::vector<Elem> letter_image(ns), right, parent{0}, last{0};
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (Elem s = 0; s < ns; ++s) {
      Fn g(nq);
      for (Elem q = 0; q < nq; ++q) g[q] = a.step(fns[i][q], s);
      auto [it, fresh] = index.emplace(g, static_cast<Elem>(fns.size()));
      if (fresh) {
        if (fns.size() >= cap)
          throw ResourceLimit("transition monoid exceeds cap of " + std::to_string(cap) + " elements");
        Word w = witness[i];
        w.push_back(s);
        fns.push_back(std::move(g));
        witness.push_back(std::move(w));
        parent.push_back(static_cast<Elem>(i));
        last.push_back(s);
      }
      right.push_back(it->second);
      if (i == 0) letter_image[s] = it->second;
    }
  }

  const std::size_t n = fns.size();
  std::vector<Elem> table(n * n);
  // y = parent(y) letter, so x y = (x parent(y)) letter; BFS order fills parents first
  for (std::size_t x = 0; x < n; ++x) {
    table[x * n] = static_cast<Elem>(x);
    for (std::size_t y = 1; y < n; ++y) table[x * n + y] = right[table[x * n + parent[y]] * ns + last[y]];
  }

  std::vector<Perm> symmetry;
  for (const Perm& sigma : a.states.symmetry()) {
    const Perm sigma_inv = inverse(sigma);
    Perm p(n);
    for (std::size_t x = 0; x < n; ++x) {
      Fn g(nq);
      for (Elem q = 0; q < nq; ++q) g[q] = sigma[fns[x][sigma_inv[q]]];
      auto it = index.find(g);
      if (it == index.end()) throw std::logic_error("transition monoid is not closed under the symmetry");
      p[x] = it->second;
    }
    symmetry.push_back(std::move(p));
  }

  std::vector<bool> accepting(n);
  for (std::size_t x = 0; x < n; ++x) accepting[x] = a.final[fns[x][a.init]];

  Monoid m{FiniteObject(a.states.backend(), labels_of(a.alphabet, witness), a.states.symmetry_names(),
                        std::move(symmetry)),
           0, std::move(table), std::move(witness)};
  return {std::move(m), a.alphabet, std::move(letter_image), std::move(accepting)};
}

LMonoid syntactic_monoid(const Automaton& a, std::size_t cap) { return transition_monoid(minimize(a).min, cap); }

Automaton monoid_to_automaton(const LMonoid& lm) {
  const std::size_t n = lm.monoid.size(), ns = lm.alphabet.size();
  Automaton a;
  a.alphabet = lm.alphabet;
  a.states = lm.monoid.carrier;
  a.init = lm.monoid.unit;
  a.final = lm.accepting;
  a.delta.resize(n * ns);
  for (Elem x = 0; x < n; ++x)
    for (Elem s = 0; s < ns; ++s) a.delta[x * ns + s] = lm.monoid.mult(x, lm.letter_image[s]);
  return a;
}

bool recognizes(const LMonoid& lm, const Automaton& a) { return equivalent(monoid_to_automaton(lm), a).equal; }

LMonoid image_l_monoid(const Monoid& ambient, const FiniteObject& alphabet, const std::vector<Elem>& letter_image,
                       const std::vector<bool>& accepting) {
  if (letter_image.size() != alphabet.size()) throw InvalidInput("letter images do not cover the alphabet");
  if (accepting.size() != ambient.size()) throw InvalidInput("accepting predicate is not total");
  constexpr Elem absent = ~Elem{0};
  std::vector<Elem> position(ambient.size(), absent);
  std::vector<Elem> members{ambient.unit};
  std::vector<Word> witness{Word{}};
  position[ambient.unit] = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s = 0; s < alphabet.size(); ++s) {
      const Elem y = ambient.mult(members[i], letter_image[s]);
      if (position[y] != absent) continue;
      position[y] = static_cast<Elem>(members.size());
      members.push_back(y);
      Word w = witness[i];
      w.push_back(s);
      witness.push_back(std::move(w));
    }
  }
  const std::size_t n = members.size();
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = position[ambient.mult(members[x], members[y])];
  FiniteObject sub = restrict_to(ambient.carrier, members);
  FiniteObject carrier(sub.backend(), labels_of(alphabet, witness), sub.symmetry_names(), sub.symmetry());

  std::vector<Elem> images(alphabet.size());
  for (Elem s = 0; s < alphabet.size(); ++s) images[s] = position[letter_image[s]];
  std::vector<bool> acc(n);
  for (std::size_t x = 0; x < n; ++x) acc[x] = accepting[members[x]];
  return {Monoid{std::move(carrier), 0, std::move(table), std::move(witness)}, alphabet, std::move(images),
          std::move(acc)};
}

std::optional<std::vector<Elem>> word_induced_morphism(const LMonoid& from, const LMonoid& to) {
  if (from.alphabet.elements() != to.alphabet.elements()) return std::nullopt;
  const std::size_t n = from.monoid.size();
  if (from.monoid.witness.size() != n) return std::nullopt;
  std::vector<Elem> h(n);
  for (Elem x = 0; x < n; ++x) h[x] = to.eval(from.monoid.witness[x]);
  if (h[from.monoid.unit] != to.monoid.unit) return std::nullopt;
  for (Elem s = 0; s < from.alphabet.size(); ++s)
    if (h[from.letter_image[s]] != to.letter_image[s]) return std::nullopt;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (h[from.monoid.mult(x, y)] != to.monoid.mult(h[x], h[y])) return std::nullopt;
  return h;
}

bool isomorphic_l_monoids(const LMonoid& a, const LMonoid& b) {
  if (a.monoid.size() != b.monoid.size()) return false;
  auto h = word_induced_morphism(a, b);
  if (!h) return false;
  std::vector<bool> hit(b.monoid.size(), false);
  for (Elem y : *h) hit[y] = true;
  if (!std::all_of(hit.begin(), hit.end(), [](bool v) { return v; })) return false;
  for (Elem x = 0; x < a.monoid.size(); ++x)
    if (a.accepting[x] != b.accepting[(*h)[x]]) return false;
  return true;
}

namespace {

using Mask = std::uint32_t;

Mask closure_of(const Monoid& n, Mask generators) {
  Mask closed = generators | (Mask{1} << n.unit);
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem x = 0; x < n.size(); ++x) {
      if (!(closed >> x & 1)) continue;
      for (Elem y = 0; y < n.size(); ++y) {
        if (!(closed >> y & 1)) continue;
        const Mask bit = Mask{1} << n.mult(x, y);
        if (!(closed & bit)) {
          closed |= bit;
          grew = true;
        }
      }
    }
  }
  return closed;
}

bool symmetry_closed(const Monoid& n, Mask z) {
  for (const Perm& p : n.carrier.symmetry())
    for (Elem x = 0; x < n.size(); ++x)
      if ((z >> x & 1) && !(z >> p[x] & 1)) return false;
  return true;
}

}  // namespace

std::optional<DivisionWitness> monoid_divides(const Monoid& m, const Monoid& n, std::size_t cap) {
  if (m.size() > cap || n.size() > cap)
    throw ResourceLimit("monoid_divides is limited to carriers of at most " + std::to_string(cap) + " elements");
  const bool symmetric = !m.carrier.symmetry().empty() && m.carrier.symmetry_names() == n.carrier.symmetry_names();

  std::set<Mask> distinct;
  for (Mask g = 0; g < (Mask{1} << n.size()); ++g) distinct.insert(closure_of(n, g));
  // smallest submonoids first, so witnesses are minimal
  std::vector<Mask> submonoids(distinct.begin(), distinct.end());
  std::stable_sort(submonoids.begin(), submonoids.end(),
                   [](Mask x, Mask y) { return std::popcount(x) < std::popcount(y); });

  for (const Mask z : submonoids) {
    if (static_cast<std::size_t>(std::popcount(z)) < m.size()) continue;
    if (symmetric && !symmetry_closed(n, z)) continue;

    // Irredundant generating set of z.
    Mask gens = z & ~(Mask{1} << n.unit);
    for (Elem x = 0; x < n.size(); ++x) {
      const Mask bit = Mask{1} << x;
      if ((gens & bit) && closure_of(n, gens & ~bit) == z) gens &= ~bit;
    }
    std::vector<Elem> gen_list, members;
    for (Elem x = 0; x < n.size(); ++x) {
      if (gens >> x & 1) gen_list.push_back(x);
      if (z >> x & 1) members.push_back(x);
    }

    constexpr Elem unset = ~Elem{0};
    std::vector<Elem> choice(gen_list.size(), 0);
    std::optional<DivisionWitness> found;
    std::vector<Elem> h;
    // h on the submonoid generated by the first k generators; false when
    // two words for one element get different images
    auto extend = [&](std::size_t k) {
      h.assign(n.size(), unset);
      h[n.unit] = m.unit;
      std::vector<Elem> queue{n.unit};
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (std::size_t g = 0; g < k; ++g) {
          const Elem y = n.mult(queue[q], gen_list[g]);
          const Elem hy = m.mult(h[queue[q]], choice[g]);
          if (h[y] == unset) {
            h[y] = hy;
            queue.push_back(y);
          } else if (h[y] != hy) {
            return false;
          }
        }
      }
      return true;
    };
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (found) return;
      if (i < gen_list.size()) {
        for (Elem v = 0; v < m.size() && !found; ++v) {
          choice[i] = v;
          if (extend(i + 1)) assign(i + 1);
        }
        return;
      }
      if (!extend(gen_list.size())) return;
      std::vector<bool> hit(m.size(), false);
      for (Elem x : members) {
        hit[h[x]] = true;
        for (Elem y : members)
          if (h[n.mult(x, y)] != m.mult(h[x], h[y])) return;
      }
      if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return;
      if (symmetric) {
        for (std::size_t k = 0; k < n.carrier.symmetry().size(); ++k)
          for (Elem x : members)
            if (h[n.carrier.act(k, x)] != m.carrier.act(k, h[x])) return;
      }
      DivisionWitness w{members, {}};
      for (Elem x : members) w.morphism.push_back(h[x]);
      found = std::move(w);
    };
    assign(0);
    if (found) return found;
  }
  return std::nullopt;
}

std::vector<std::string> element_labels(const LMonoid& lm) { return labels_of(lm.alphabet, lm.monoid.witness); }

std::string format_table(const LMonoid& lm) {
  const std::vector<std::string> labels = element_labels(lm);
  std::size_t width = 1;
  for (const auto& l : labels) width = std::max(width, utf8_length(l));
  const std::size_t n = lm.monoid.size();
  auto row = [&](const std::string& head, auto cell) {
    std::string line = pad_right(head, width) + " |";
    for (Elem y = 0; y < n; ++y) line += " " + pad_right(cell(y), width);
    line.erase(line.find_last_not_of(' ') + 1);
    return line + "\n";
  };
  std::string out = row("·", [&](Elem y) { return labels[y]; });
  out += std::string(width + 1, '-') + "+" + std::string(n * (width + 1), '-') + "\n";
  for (Elem x = 0; x < n; ++x) out += row(labels[x], [&](Elem y) { return labels[lm.monoid.mult(x, y)]; });
  return out;
}

}  // namespace nerode
