#include "nerode/nominal.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nerode::nominal {

OrbitDescriptor make_orbit(std::string name, std::size_t dim, const std::vector<Perm>& generators) {
  if (dim > max_dim)
    throw ResourceLimit("orbit '" + name + "' has dimension " + std::to_string(dim) + " (cap " +
                        std::to_string(max_dim) + ")");
  for (const Perm& g : generators)
    if (g.size() != dim || !is_permutation(g))
      throw InvalidInput("stabilizer generator " + to_cycles(g) + " of orbit '" + name +
                         "' is not a permutation of its " + std::to_string(dim) + " positions");
  return OrbitDescriptor{std::move(name), dim, generate_group(dim, generators)};
}

std::optional<std::uint32_t> NominalObject::find(const std::string& orbit_name) const {
  for (std::uint32_t i = 0; i < orbits.size(); ++i)
    if (orbits[i].name == orbit_name) return i;
  return std::nullopt;
}

std::size_t NominalObject::max_dim() const {
  std::size_t d = 0;
  for (const auto& o : orbits) d = std::max(d, o.dim);
  return d;
}

namespace {

std::vector<Atom> permute_tuple(const std::vector<Atom>& t, const Perm& pi) {
  std::vector<Atom> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[pi[i]];
  return out;
}

}  // namespace

NomElement canonical(const NominalObject& x, std::uint32_t orbit, std::vector<Atom> tuple) {
  if (orbit >= x.orbits.size()) throw InvalidInput("orbit index out of range in '" + x.name + "'");
  const OrbitDescriptor& o = x.orbits[orbit];
  if (tuple.size() != o.dim)
    throw InvalidInput("orbit '" + o.name + "' takes " + std::to_string(o.dim) + " atoms, got " +
                       std::to_string(tuple.size()));
  std::vector<Atom> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("atoms of an element of '" + o.name + "' must be pairwise distinct");
  std::vector<Atom> best = tuple;
  for (const Perm& pi : o.stabilizer) best = std::min(best, permute_tuple(tuple, pi));
  return NomElement{orbit, std::move(best)};
}

std::vector<Atom> support(const NomElement& x) {
  std::vector<Atom> s = x.atoms;
  std::sort(s.begin(), s.end());
  return s;
}

std::string element_name(const NominalObject& x, const NomElement& e) {
  std::string out = x.orbits.at(e.orbit).name;
  if (e.atoms.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < e.atoms.size(); ++i) out += (i ? "," : "") + std::to_string(e.atoms[i]);
  return out + ')';
}

bool is_dk_finite(const NominalObject& x) {
  return std::all_of(x.orbits.begin(), x.orbits.end(), [](const OrbitDescriptor& o) { return o.dim == 0; });
}

FinitenessReport finiteness(const NominalObject& x) { return {is_dk_finite(x), true, x.orbits.size()}; }

NomElement EquivariantMap::apply(const NomElement& x) const {
  const OrbitMap& m = per_orbit.at(x.orbit);
  std::vector<Atom> tuple;
  for (std::uint32_t p : m.positions) tuple.push_back(x.atoms.at(p));
  return canonical(target, m.target_orbit, std::move(tuple));
}

std::optional<std::string> map_violation(const EquivariantMap& f) {
  if (f.per_orbit.size() != f.source.orbits.size()) return "map does not cover every source orbit";
  for (std::size_t o = 0; o < f.per_orbit.size(); ++o) {
    const OrbitMap& m = f.per_orbit[o];
    const OrbitDescriptor& src = f.source.orbits[o];
    if (m.target_orbit >= f.target.orbits.size()) return "orbit '" + src.name + "' maps outside the target";
    if (m.positions.size() != f.target.orbits[m.target_orbit].dim)
      return "orbit '" + src.name + "' selects the wrong number of positions";
    std::set<std::uint32_t> distinct(m.positions.begin(), m.positions.end());
    if (distinct.size() != m.positions.size()) return "orbit '" + src.name + "' repeats a position";
    if (!m.positions.empty() && *distinct.rbegin() >= src.dim)
      return "orbit '" + src.name + "' selects a position beyond its dimension";
    std::vector<Atom> generic(src.dim);
    std::iota(generic.begin(), generic.end(), Atom{1});
    const NomElement base = f.apply(NomElement{static_cast<std::uint32_t>(o), generic});
    for (const Perm& pi : src.stabilizer) {
      if (f.apply(NomElement{static_cast<std::uint32_t>(o), permute_tuple(generic, pi)}) != base)
        return "orbit '" + src.name + "' is not mapped consistently under stabilizer element " + to_cycles(pi);
    }
  }
  return std::nullopt;
}

std::vector<Atom> make_pool(std::size_t size) {
  if (size > max_pool)
    throw ResourceLimit("atom pool of " + std::to_string(size) + " exceeds cap " + std::to_string(max_pool));
  std::vector<Atom> pool(size);
  std::iota(pool.begin(), pool.end(), Atom{1});
  return pool;
}

namespace {

std::size_t pool_index(const std::vector<Atom>& pool, Atom a) {
  auto it = std::lower_bound(pool.begin(), pool.end(), a);
  if (it == pool.end() || *it != a) throw std::logic_error("atom " + std::to_string(a) + " is not in the pool");
  return static_cast<std::size_t>(it - pool.begin());
}

std::vector<std::string> transposition_names(const std::vector<Atom>& pool) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 1 < pool.size(); ++i)
    names.push_back("(" + std::to_string(pool[i]) + " " + std::to_string(pool[i + 1]) + ")");
  return names;
}

void injective_tuples(const std::vector<Atom>& pool, std::size_t n, std::vector<Atom>& prefix,
                      std::vector<bool>& used, const std::function<void(const std::vector<Atom>&)>& emit) {
  if (prefix.size() == n) {
    emit(prefix);
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(pool[i]);
    injective_tuples(pool, n, prefix, used, emit);
    prefix.pop_back();
    used[i] = false;
  }
}

// Applies the pool permutation rho (on pool indices) to e.
Elem apply_pool_perm(const FiniteObject& x, const Perm& rho, Elem e) {
  std::vector<bool> done(rho.size(), false);
  for (std::size_t c = 0; c < rho.size(); ++c) {
    if (done[c] || rho[c] == c) continue;
    // The cycle c -> rho(c) -> ... is (c last) ... (c rho(rho(c))) (c rho(c)),
    // rightmost factor applied first.
    done[c] = true;
    for (std::size_t d = rho[c]; d != c; d = rho[d]) {
      done[d] = true;
      e = swap_atoms(x, c, d, e);
    }
  }
  return e;
}

}  // namespace

Elem swap_atoms(const FiniteObject& x, std::size_t i, std::size_t j, Elem e) {
  if (i == j) return e;
  if (i > j) std::swap(i, j);
  for (std::size_t k = i; k < j; ++k) e = x.act(k, e);
  for (std::size_t k = j - 1; k-- > i;) e = x.act(k, e);
  return e;
}

PoolInstance instantiate(const NominalObject& x, const std::vector<Atom>& pool) {
  if (pool.size() > max_pool)
    throw ResourceLimit("atom pool of " + std::to_string(pool.size()) + " exceeds cap " + std::to_string(max_pool));
  if (!std::is_sorted(pool.begin(), pool.end()) || std::adjacent_find(pool.begin(), pool.end()) != pool.end())
    throw InvalidInput("atom pool must be sorted and duplicate free");
  std::size_t expected = 0;
  for (const auto& o : x.orbits) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < o.dim; ++i) count *= pool.size() >= i ? pool.size() - i : 0;
    expected += count / o.stabilizer_order();
  }
  if (expected > max_instance)
    throw ResourceLimit("instantiating '" + x.name + "' over " + std::to_string(pool.size()) + " atoms needs " +
                        std::to_string(expected) + " elements (cap " + std::to_string(max_instance) + ")");

  PoolInstance inst;
  inst.pool = pool;
  std::map<NomElement, Elem> index;
  for (std::uint32_t o = 0; o < x.orbits.size(); ++o) {
    std::vector<Atom> prefix;
    std::vector<bool> used(pool.size(), false);
    injective_tuples(pool, x.orbits[o].dim, prefix, used, [&](const std::vector<Atom>& t) {
      NomElement e = canonical(x, o, t);
      if (e.atoms != t) return;
      index.emplace(e, static_cast<Elem>(inst.elements.size()));
      inst.upper_support.push_back(support(e));
      inst.elements.push_back(std::move(e));
    });
  }
  std::vector<std::string> names;
  for (const auto& e : inst.elements) names.push_back(element_name(x, e));
  std::vector<Perm> symmetry;
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    Perm p(inst.elements.size());
    for (std::size_t k = 0; k < inst.elements.size(); ++k) {
      std::vector<Atom> t = inst.elements[k].atoms;
      for (Atom& a : t) {
        if (a == pool[i]) a = pool[i + 1];
        else if (a == pool[i + 1]) a = pool[i];
      }
      p[k] = index.at(canonical(x, inst.elements[k].orbit, std::move(t)));
    }
    symmetry.push_back(std::move(p));
  }
  inst.object = FiniteObject(Backend::nominal, std::move(names), transposition_names(pool), std::move(symmetry));
  return inst;
}

Abstraction abstract(const FiniteObject& x, const std::vector<Atom>& pool,
                     const std::vector<std::vector<Atom>>& upper_support, const std::string& name,
                     const std::string& orbit_prefix) {
  if (upper_support.size() != x.size()) throw InvalidInput("upper supports do not cover the object");
  Abstraction out;
  out.object.name = name;
  out.element_of.resize(x.size());
  const auto orbit_list = orbits(x);
  for (std::size_t o = 0; o < orbit_list.size(); ++o) {
    const Elem rep = orbit_list[o].front();
    const std::vector<Atom>& upper = upper_support[rep];
    if (upper.size() >= pool.size())
      throw ResourceLimit("pool margin violated: an element of orbit " + std::to_string(o) + " of '" + name +
                          "' may be supported by all " + std::to_string(pool.size()) + " pool atoms");

    auto supports = [&](const std::vector<Atom>& candidate) {
      std::vector<std::size_t> outside;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (!std::binary_search(candidate.begin(), candidate.end(), pool[i])) outside.push_back(i);
      for (std::size_t a = 0; a < outside.size(); ++a)
        for (std::size_t b = a + 1; b < outside.size(); ++b)
          if (swap_atoms(x, outside[a], outside[b], rep) != rep) return false;
      return true;
    };
    std::optional<std::vector<Atom>> least;
    for (std::size_t k = 0; k <= upper.size() && !least; ++k) {
      for (std::uint32_t mask = 0; mask < (1u << upper.size()) && !least; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        std::vector<Atom> candidate;
        for (std::size_t i = 0; i < upper.size(); ++i)
          if (mask >> i & 1) candidate.push_back(upper[i]);
        if (supports(candidate)) least = std::move(candidate);
      }
    }
    if (!least) throw std::logic_error("upper support does not support its element");
    const std::vector<Atom>& tuple = *least;
    const std::size_t n = tuple.size();
    if (n > max_dim)
      throw ResourceLimit("orbit " + std::to_string(o) + " of '" + name + "' has support of size " +
                          std::to_string(n) + " (cap " + std::to_string(max_dim) + ")");

    // Position stabilizer: pi such that the tuple permuted by pi names rep.
    std::vector<Perm> stabilizer;
    Perm pi = identity_perm(n);
    do {
      Perm rho = identity_perm(pool.size());
      for (std::size_t i = 0; i < n; ++i) rho[pool_index(pool, tuple[i])] = static_cast<Elem>(pool_index(pool, tuple[pi[i]]));
      if (apply_pool_perm(x, rho, rep) == rep) stabilizer.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
    std::sort(stabilizer.begin(), stabilizer.end());
    out.object.orbits.push_back(OrbitDescriptor{orbit_prefix + std::to_string(o), n, std::move(stabilizer)});

    // Spread tuples over the orbit along the generators.
    std::map<Elem, std::vector<Atom>> tuples{{rep, tuple}};
    std::vector<Elem> queue{rep};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Elem e = queue[q];
      for (std::size_t k = 0; k < x.symmetry().size(); ++k) {
        const Elem f = x.act(k, e);
        if (tuples.count(f)) continue;
        std::vector<Atom> t = tuples.at(e);
        for (Atom& a : t) {
          if (a == pool[k]) a = pool[k + 1];
          else if (a == pool[k + 1]) a = pool[k];
        }
        tuples.emplace(f, std::move(t));
        queue.push_back(f);
      }
    }
    for (const auto& [e, t] : tuples) out.element_of[e] = canonical(out.object, static_cast<std::uint32_t>(o), t);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> orbit_signature(const NominalObject& x) {
  std::vector<std::pair<std::size_t, std::size_t>> sig;
  for (const auto& o : x.orbits) sig.emplace_back(o.dim, o.stabilizer_order());
  return sig;
}

namespace {

// Pairs (x, y) of two pool objects that head their orbit under the diagonal
// transposition action, in row-major order.
std::vector<std::pair<Elem, Elem>> pair_orbit_heads(const FiniteObject& x, const FiniteObject& y) {
  const std::size_t ny = y.size();
  std::vector<Elem> parent(x.size() * ny);
  std::iota(parent.begin(), parent.end(), Elem{0});
  auto root = [&](Elem e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  for (std::size_t k = 0; k < x.symmetry().size(); ++k)
    for (Elem a = 0; a < x.size(); ++a)
      for (Elem b = 0; b < ny; ++b) {
        Elem r1 = root(static_cast<Elem>(a * ny + b));
        Elem r2 = root(static_cast<Elem>(x.act(k, a) * ny + y.act(k, b)));
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
      }
  std::vector<std::pair<Elem, Elem>> heads;
  for (Elem i = 0; i < parent.size(); ++i)
    if (root(i) == i) heads.emplace_back(static_cast<Elem>(i / ny), static_cast<Elem>(i % ny));
  return heads;
}

NominalProduct product_over(const NominalObject& x, const NominalObject& y, const std::vector<Atom>& pool) {
  PoolInstance ix = instantiate(x, pool), iy = instantiate(y, pool);
  Product p = product(ix.object, iy.object);
  std::vector<std::vector<Atom>> upper;
  for (Elem a = 0; a < ix.elements.size(); ++a)
    for (Elem b = 0; b < iy.elements.size(); ++b) {
      std::vector<Atom> u = ix.upper_support[a];
      u.insert(u.end(), iy.upper_support[b].begin(), iy.upper_support[b].end());
      std::sort(u.begin(), u.end());
      upper.push_back(std::move(u));
    }
  Abstraction abs = abstract(p.object, pool, upper, x.name + "x" + y.name, "p");
  NominalProduct out{abs.object, {abs.object, x, {}}, {abs.object, y, {}}};
  const auto orbit_list = orbits(p.object);
  for (const auto& members : orbit_list) {
    const Elem rep = members.front();
    const std::vector<Atom>& tuple = abs.element_of[rep].atoms;
    auto positions_of = [&](const NomElement& e) {
      std::vector<std::uint32_t> pos;
      for (Atom a : e.atoms)
        pos.push_back(static_cast<std::uint32_t>(std::find(tuple.begin(), tuple.end(), a) - tuple.begin()));
      return pos;
    };
    const NomElement& ex = ix.elements[p.first(rep)];
    const NomElement& ey = iy.elements[p.second(rep)];
    out.first.per_orbit.push_back(OrbitMap{ex.orbit, positions_of(ex)});
    out.second.per_orbit.push_back(OrbitMap{ey.orbit, positions_of(ey)});
  }
  return out;
}

}  // namespace

NominalProduct product(const NominalObject& x, const NominalObject& y, std::size_t margin) {
  const std::size_t b = x.max_dim() + y.max_dim() + margin;
  NominalProduct p = product_over(x, y, make_pool(b));
  NominalProduct check = product_over(x, y, make_pool(b + 1));
  if (orbit_signature(p.object) != orbit_signature(check.object))
    throw ResourceLimit("stability gate failed: product " + x.name + " x " + y.name + " has " +
                        std::to_string(p.object.orbits.size()) + " orbits over " + std::to_string(b) + " atoms but " +
                        std::to_string(check.object.orbits.size()) + " over " + std::to_string(b + 1));
  return p;
}

NomElement NominalAutomaton::step(const NomElement& q, const NomElement& s) const {
  std::optional<NomElement> result;
  std::size_t used_rule = 0;
  const OrbitDescriptor& qo = states.orbits.at(q.orbit);
  const OrbitDescriptor& so = alphabet.orbits.at(s.orbit);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const DeltaRule& rule = rules[r];
    if (rule.state.orbit != q.orbit || rule.letter.orbit != s.orbit) continue;
    for (const Perm& pi : qo.stabilizer) {
      for (const Perm& sigma : so.stabilizer) {
        std::map<std::string, Atom> binding;
        std::map<Atom, std::string> owner;
        auto bind = [&](const std::vector<std::string>& vars, const std::vector<Atom>& atoms) {
          for (std::size_t i = 0; i < vars.size(); ++i) {
            auto [v, fresh_var] = binding.emplace(vars[i], atoms[i]);
            auto [a, fresh_atom] = owner.emplace(atoms[i], vars[i]);
            if (v->second != atoms[i] || a->second != vars[i]) return false;
          }
          return true;
        };
        if (!bind(rule.state.vars, permute_tuple(q.atoms, pi)) || !bind(rule.letter.vars, permute_tuple(s.atoms, sigma)))
          continue;
        std::vector<Atom> tuple;
        for (const auto& v : rule.target.vars) tuple.push_back(binding.at(v));
        NomElement t = canonical(states, rule.target.orbit, std::move(tuple));
        if (!result) {
          result = std::move(t);
          used_rule = r;
        } else if (used_rule != r) {
          throw InvalidInput("ambiguous transition: rules " + std::to_string(used_rule + 1) + " and " +
                             std::to_string(r + 1) + " both match (" + element_name(states, q) + ", " +
                             element_name(alphabet, s) + ")");
        } else if (*result != t) {
          throw InvalidInput("rule " + std::to_string(r + 1) + " is not well defined at (" + element_name(states, q) +
                             ", " + element_name(alphabet, s) + "): its result depends on the chosen tuple");
        }
      }
    }
  }
  if (!result)
    throw InvalidInput("missing transition for (" + element_name(states, q) + ", " + element_name(alphabet, s) + ")");
  return *result;
}

void validate(const NominalAutomaton& a) {
  if (a.alphabet.orbits.empty()) throw InvalidInput("alphabet is empty");
  if (a.init >= a.states.orbits.size()) throw InvalidInput("initial orbit out of range");
  if (a.states.orbits[a.init].dim != 0)
    throw InvalidInput("initial orbit '" + a.states.orbits[a.init].name + "' is not a fixed point (dimension " +
                       std::to_string(a.states.orbits[a.init].dim) + ")");
  if (a.final.size() != a.states.orbits.size()) throw InvalidInput("final predicate does not cover every orbit");
  for (std::size_t r = 0; r < a.rules.size(); ++r) {
    const DeltaRule& rule = a.rules[r];
    const std::string where = "rule " + std::to_string(r + 1) + ": ";
    auto check = [&](const Pattern& p, const NominalObject& obj) {
      if (p.orbit >= obj.orbits.size()) throw InvalidInput(where + "orbit out of range");
      if (p.vars.size() != obj.orbits[p.orbit].dim)
        throw InvalidInput(where + "orbit '" + obj.orbits[p.orbit].name + "' takes " +
                           std::to_string(obj.orbits[p.orbit].dim) + " variables");
      std::set<std::string> distinct(p.vars.begin(), p.vars.end());
      if (distinct.size() != p.vars.size())
        throw InvalidInput(where + "a variable repeats inside '" + obj.orbits[p.orbit].name + "'");
    };
    check(rule.state, a.states);
    check(rule.letter, a.alphabet);
    check(rule.target, a.states);
    for (const auto& v : rule.target.vars) {
      const bool bound = std::count(rule.state.vars.begin(), rule.state.vars.end(), v) +
                         std::count(rule.letter.vars.begin(), rule.letter.vars.end(), v);
      if (!bound) throw InvalidInput(where + "target variable '" + v + "' is not bound on the left");
    }
  }
  instantiate(a, make_pool(a.states.max_dim() + a.alphabet.max_dim() + 1));
}

NomElement run(const NominalAutomaton& a, const std::vector<NomElement>& w) {
  NomElement q = a.initial_element();
  for (const NomElement& s : w) q = a.step(q, canonical(a.alphabet, s.orbit, s.atoms));
  return q;
}

bool accepts(const NominalAutomaton& a, const std::vector<NomElement>& w) { return a.is_final(run(a, w)); }

EquivariantMap delta_map(const NominalAutomaton& a, std::size_t margin) {
  NominalProduct p = product(a.states, a.alphabet, margin);
  EquivariantMap f{p.object, a.states, {}};
  for (std::uint32_t o = 0; o < p.object.orbits.size(); ++o) {
    std::vector<Atom> generic(p.object.orbits[o].dim);
    std::iota(generic.begin(), generic.end(), Atom{1});
    const NomElement e = canonical(p.object, o, generic);
    const NomElement t = a.step(p.first.apply(e), p.second.apply(e));
    OrbitMap m{t.orbit, {}};
    for (Atom at : t.atoms)
      m.positions.push_back(static_cast<std::uint32_t>(std::find(e.atoms.begin(), e.atoms.end(), at) - e.atoms.begin()));
    f.per_orbit.push_back(std::move(m));
  }
  return f;
}

PoolAutomaton instantiate(const NominalAutomaton& a, const std::vector<Atom>& pool) {
  PoolAutomaton out{{}, instantiate(a.states, pool), instantiate(a.alphabet, pool)};
  std::map<NomElement, Elem> index;
  for (Elem i = 0; i < out.states.elements.size(); ++i) index.emplace(out.states.elements[i], i);
  Automaton& m = out.automaton;
  m.states = out.states.object;
  m.alphabet = out.alphabet.object;
  m.init = index.at(a.initial_element());
  const std::size_t ns = out.alphabet.elements.size();
  m.final.resize(out.states.elements.size());
  m.delta.resize(out.states.elements.size() * ns);
  for (Elem q = 0; q < out.states.elements.size(); ++q) {
    m.final[q] = a.is_final(out.states.elements[q]);
    for (Elem s = 0; s < ns; ++s) {
      auto it = index.find(a.step(out.states.elements[q], out.alphabet.elements[s]));
      if (it == index.end()) throw std::logic_error("transition leaves the atom pool");
      m.delta[q * ns + s] = it->second;
    }
  }
  return out;
}

namespace {

struct GatedMinimum {
  NominalAutomaton min;
  PoolAutomaton instance;
  Minimization span;
};

GatedMinimum minimize_over(const NominalAutomaton& a, const std::vector<Atom>& pool) {
  PoolAutomaton inst = instantiate(a, pool);
  Minimization span = minimize(inst.automaton);
  const Automaton& m = span.min;

  // Block b's upper support: the atoms of its shortlex-first member.
  std::vector<Elem> first_member(m.states.size());
  for (Elem i = span.epi.map.size(); i-- > 0;) first_member[span.epi.map[i]] = span.mono.map[i];
  std::vector<std::vector<Atom>> upper;
  for (Elem b = 0; b < m.states.size(); ++b) upper.push_back(inst.states.upper_support[first_member[b]]);
  Abstraction abs = abstract(m.states, pool, upper, a.states.name, "q");

  NominalAutomaton out;
  out.alphabet = a.alphabet;
  out.states = abs.object;
  out.init = abs.element_of[m.init].orbit;
  out.final.assign(out.states.orbits.size(), false);
  for (Elem q = 0; q < m.states.size(); ++q)
    if (m.final[q]) out.final[abs.element_of[q].orbit] = true;
  for (const auto& [q, s] : pair_orbit_heads(m.states, inst.alphabet.object)) {
    const NomElement& qe = abs.element_of[q];
    const NomElement& se = inst.alphabet.elements[s];
    const NomElement& te = abs.element_of[m.step(q, s)];
    std::map<Atom, std::string> var;
    auto name_of = [&](Atom at) {
      auto [it, fresh] = var.emplace(at, "x" + std::to_string(var.size() + 1));
      return it->second;
    };
    DeltaRule rule{{qe.orbit, {}}, {se.orbit, {}}, {te.orbit, {}}};
    for (Atom at : qe.atoms) rule.state.vars.push_back(name_of(at));
    for (Atom at : se.atoms) rule.letter.vars.push_back(name_of(at));
    for (Atom at : te.atoms) {
      if (!var.count(at)) throw std::logic_error("minimized transition grows the support");
      rule.target.vars.push_back(var.at(at));
    }
    out.rules.push_back(std::move(rule));
  }
  return {std::move(out), std::move(inst), std::move(span)};
}

std::string describe(const NominalAutomaton& a) {
  std::string s = std::to_string(a.states.orbits.size()) + " orbits [";
  for (std::size_t i = 0; i < a.states.orbits.size(); ++i)
    s += (i ? " " : "") + std::string("dim ") + std::to_string(a.states.orbits[i].dim) + "/stab " +
         std::to_string(a.states.orbits[i].stabilizer_order());
  return s + "]";
}

bool same_shape(const NominalAutomaton& a, const NominalAutomaton& b) {
  return orbit_signature(a.states) == orbit_signature(b.states) && a.init == b.init && a.final == b.final &&
         a.rules.size() == b.rules.size();
}

}  // namespace

NominalMinimization minimize_nominal(const NominalAutomaton& a, std::size_t margin) {
  validate(a);
  const std::size_t b = a.states.max_dim() + a.alphabet.max_dim() + margin;
  GatedMinimum lo = minimize_over(a, make_pool(b));
  GatedMinimum hi = minimize_over(a, make_pool(b + 1));
  if (!same_shape(lo.min, hi.min))
    throw ResourceLimit("stability gate failed: minimization gives " + describe(lo.min) + " over " + std::to_string(b) +
                        " atoms but " + describe(hi.min) + " over " + std::to_string(b + 1));
  validate(lo.min);
  const std::size_t reachable_orbits = orbits(lo.span.mono.source.states).size();
  return {std::move(lo.min), b, reachable_orbits, std::move(lo.instance), std::move(lo.span)};
}

NominalEquivalence equivalent(const NominalAutomaton& a, const NominalAutomaton& b, std::size_t margin) {
  if (orbit_signature(a.alphabet) != orbit_signature(b.alphabet)) throw InvalidInput("alphabets differ");
  for (std::size_t i = 0; i < a.alphabet.orbits.size(); ++i)
    if (a.alphabet.orbits[i].name != b.alphabet.orbits[i].name) throw InvalidInput("alphabets differ");
  const auto pool = make_pool(a.states.max_dim() + b.states.max_dim() + a.alphabet.max_dim() + margin);
  PoolAutomaton ia = instantiate(a, pool), ib = instantiate(b, pool);
  Equivalence e = nerode::equivalent(ia.automaton, ib.automaton);
  NominalEquivalence out{e.equal, std::nullopt};
  if (e.witness) {
    out.witness.emplace();
    for (Elem s : *e.witness) out.witness->push_back(ia.alphabet.elements[s]);
  }
  return out;
}

namespace {

struct PoolMonoid {
  LMonoid monoid;
  PoolAutomaton instance;
  std::vector<std::vector<Atom>> upper;
  std::size_t orbit_count = 0;
};

PoolMonoid monoid_over(const NominalAutomaton& min, const std::vector<Atom>& pool, std::size_t cap) {
  PoolAutomaton inst = instantiate(min, pool);
  LMonoid t = transition_monoid(inst.automaton, cap);
  std::vector<std::vector<Atom>> upper;
  for (const Word& w : t.monoid.witness) {
    std::set<Atom> atoms;
    for (Elem s : w) atoms.insert(inst.alphabet.elements[s].atoms.begin(), inst.alphabet.elements[s].atoms.end());
    upper.emplace_back(atoms.begin(), atoms.end());
  }
  const std::size_t count = orbits(t.monoid.carrier).size();
  return {std::move(t), std::move(inst), std::move(upper), count};
}

}  // namespace

NominalMonoidSummary nominal_syntactic_monoid(const NominalAutomaton& a, std::size_t margin, std::size_t cap) {
  NominalMinimization m = minimize_nominal(a, margin);
  const std::size_t b = m.min.states.max_dim() + m.min.alphabet.max_dim() + margin;
  PoolMonoid lo = monoid_over(m.min, make_pool(b), cap);
  PoolMonoid hi = monoid_over(m.min, make_pool(b + 1), cap);
  if (lo.orbit_count != hi.orbit_count)
    throw ResourceLimit("stability gate failed: syntactic monoid has " + std::to_string(lo.orbit_count) +
                        " orbits over " + std::to_string(b) + " atoms but " + std::to_string(hi.orbit_count) +
                        " over " + std::to_string(b + 1) + " (not orbit-finite at this margin)");
  Abstraction lo_abs = abstract(lo.monoid.monoid.carrier, lo.instance.states.pool, lo.upper, "Syn", "m");
  Abstraction hi_abs = abstract(hi.monoid.monoid.carrier, hi.instance.states.pool, hi.upper, "Syn", "m");
  if (orbit_signature(lo_abs.object) != orbit_signature(hi_abs.object))
    throw ResourceLimit("stability gate failed: syntactic monoid orbit descriptors differ between " +
                        std::to_string(b) + " and " + std::to_string(b + 1) + " atoms");
  NominalMonoidSummary out;
  out.pool_size = b;
  out.orbit_count = lo.orbit_count;
  for (const auto& members : orbits(lo.monoid.monoid.carrier))
    out.representatives.push_back(word_label(lo.monoid.alphabet, lo.monoid.monoid.witness[members.front()]));
  out.carrier = std::move(lo_abs);
  out.pool_monoid = std::move(lo.monoid);
  return out;
}

}  // namespace nerode::nominal
