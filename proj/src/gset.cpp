#include "nerode/gset.hpp"

#include <algorithm>
#include <set>

namespace nerode::gset {

FinGroup::FinGroup(std::string name, std::vector<std::string> elements, std::vector<Elem> table)
    : name_(std::move(name)), elements_(std::move(elements)), table_(std::move(table)) {
  const std::size_t n = elements_.size();
  if (n == 0) throw InvalidInput("group '" + name_ + "' has no elements");
  if (std::set<std::string>(elements_.begin(), elements_.end()).size() != n)
    throw InvalidInput("group '" + name_ + "' repeats an element name");
  if (table_.size() != n * n) throw InvalidInput("Cayley table of '" + name_ + "' is not " + std::to_string(n) + "x" + std::to_string(n));
  for (Elem v : table_)
    if (v >= n) throw InvalidInput("Cayley table of '" + name_ + "' leaves the group");

  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool neutral = true;
    for (Elem g = 0; g < n && neutral; ++g) neutral = mult(e, g) == g && mult(g, e) == g;
    if (neutral) identity = e;
  }
  if (!identity) throw InvalidInput("group '" + name_ + "' has no identity");
  identity_ = *identity;

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw InvalidInput("group '" + name_ + "' is not associative at (" + elements_[a] + ", " + elements_[b] +
                             ", " + elements_[c] + ")");

  inverse_.resize(n);
  for (Elem g = 0; g < n; ++g) {
    std::optional<Elem> inv;
    for (Elem h = 0; h < n && !inv; ++h)
      if (mult(g, h) == identity_ && mult(h, g) == identity_) inv = h;
    if (!inv) throw InvalidInput("element '" + elements_[g] + "' of '" + name_ + "' has no inverse");
    inverse_[g] = *inv;
  }
}

FinGroup FinGroup::from_permutations(std::string name, std::size_t points,
                                     const std::vector<std::string>& generator_names,
                                     const std::vector<Perm>& generators, const std::string& identity_name) {
  if (generator_names.size() != generators.size()) throw InvalidInput("generator names and permutations differ in number");
  for (const Perm& p : generators)
    if (p.size() != points || !is_permutation(p)) throw InvalidInput("generator is not a permutation of " + std::to_string(points) + " points");

  std::map<Perm, Elem> index{{identity_perm(points), 0}};
  std::vector<Perm> perms{identity_perm(points)};
  std::vector<std::string> names{identity_name};
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      // Words act left to right: the word u.g is the permutation g after u.
      Perm next = compose(generators[k], perms[i]);
      if (index.emplace(next, static_cast<Elem>(perms.size())).second) {
        if (perms.size() >= 5040) throw ResourceLimit("generated group exceeds 5040 elements");
        names.push_back(i == 0 ? generator_names[k] : names[i] + "." + generator_names[k]);
        perms.push_back(std::move(next));
      }
    }
  }
  const std::size_t n = perms.size();
  std::vector<Elem> table(n * n);
  // g h acts as g after h.
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) table[g * n + h] = index.at(compose(perms[g], perms[h]));
  return FinGroup(std::move(name), std::move(names), std::move(table));
}

FinGroup FinGroup::trivial(std::string name) { return FinGroup(std::move(name), {"e"}, {0}); }

FinGroup FinGroup::cyclic(std::string name, std::size_t n) {
  std::vector<std::string> names;
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Elem>((i + j) % n);
  }
  return FinGroup(std::move(name), std::move(names), std::move(table));
}

std::optional<Elem> FinGroup::find(const std::string& element) const {
  auto it = std::find(elements_.begin(), elements_.end(), element);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<Elem>(it - elements_.begin());
}

FiniteObject make_gset(const FinGroup& g, std::vector<std::string> elements, std::vector<Perm> actions) {
  if (actions.size() != g.order()) throw InvalidInput("action must list one permutation per group element");
  FiniteObject x(Backend::gset, std::move(elements), g.elements(), std::move(actions));
  if (!is_identity(x.symmetry()[g.identity()]))
    throw InvalidInput("identity '" + g.elements()[g.identity()] + "' does not act trivially");
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (x.symmetry()[g.mult(a, b)] != compose(x.symmetry()[a], x.symmetry()[b]))
        throw InvalidInput("not an action: '" + g.elements()[g.mult(a, b)] + "' does not act as '" + g.elements()[a] +
                           "' after '" + g.elements()[b] + "'");
  return x;
}

std::vector<Perm> close_action(const FinGroup& g, std::size_t carrier_size, const std::map<Elem, Perm>& given) {
  std::vector<std::optional<Perm>> act(g.order());
  act[g.identity()] = identity_perm(carrier_size);
  for (const auto& [elem, perm] : given) {
    if (perm.size() != carrier_size || !is_permutation(perm))
      throw InvalidInput("action of '" + g.elements()[elem] + "' is not a permutation");
    if (act[elem] && *act[elem] != perm)
      throw InvalidInput("identity '" + g.elements()[elem] + "' must act trivially");
    act[elem] = perm;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem a = 0; a < g.order(); ++a) {
      if (!act[a]) continue;
      for (Elem b = 0; b < g.order(); ++b) {
        if (!act[b]) continue;
        Perm ab = compose(*act[a], *act[b]);
        auto& slot = act[g.mult(a, b)];
        if (!slot) {
          slot = std::move(ab);
          grew = true;
        } else if (*slot != ab) {
          throw InvalidInput("not an action: '" + g.elements()[g.mult(a, b)] + "' does not act as '" +
                             g.elements()[a] + "' after '" + g.elements()[b] + "'");
        }
      }
    }
  }
  std::vector<Perm> out;
  for (Elem a = 0; a < g.order(); ++a) {
    if (!act[a]) throw InvalidInput("action of '" + g.elements()[a] + "' is not determined by the given generators");
    out.push_back(*act[a]);
  }
  return out;
}

FiniteObject coset_space(const FinGroup& g, const std::vector<Elem>& subgroup, const std::string& prefix) {
  // coset_of[x] = least element of x H
  std::vector<Elem> coset_of(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    Elem least = x;
    for (Elem h : subgroup) least = std::min(least, g.mult(x, h));
    coset_of[x] = least;
  }
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x)
    if (coset_of[x] == x) reps.push_back(x);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < reps.size(); ++i) names.push_back(prefix + std::to_string(i));
  std::vector<Perm> actions;
  for (Elem a = 0; a < g.order(); ++a) {
    Perm p(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const Elem target = coset_of[g.mult(a, reps[i])];
      p[i] = static_cast<Elem>(std::find(reps.begin(), reps.end(), target) - reps.begin());
    }
    actions.push_back(std::move(p));
  }
  return make_gset(g, std::move(names), std::move(actions));
}

std::vector<std::vector<Elem>> subgroups(const FinGroup& g) {
  auto generated = [&](std::vector<Elem> gens) {
    std::set<Elem> s{g.identity()};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Elem> current(s.begin(), s.end());
      for (Elem a : current)
        for (Elem b : gens)
          if (s.insert(g.mult(a, b)).second) grew = true;
    }
    return std::vector<Elem>(s.begin(), s.end());
  };
  std::set<std::vector<Elem>> found{generated({})};
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a; b < g.order(); ++b) found.insert(generated({a, b}));
  // close under joins
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Elem>> current(found.begin(), found.end());
    for (const auto& h : current)
      for (const auto& k : current) {
        std::vector<Elem> gens = h;
        gens.insert(gens.end(), k.begin(), k.end());
        if (found.insert(generated(gens)).second) grew = true;
      }
  }
  return {found.begin(), found.end()};
}

std::optional<std::string> hom_violation(const GroupHom& f) {
  if (f.map.size() != f.source.order()) return "homomorphism is not total";
  for (Elem v : f.map)
    if (v >= f.target.order()) return "homomorphism leaves the target group";
  if (f.map[f.source.identity()] != f.target.identity()) return "identity is not preserved";
  for (Elem a = 0; a < f.source.order(); ++a)
    for (Elem b = 0; b < f.source.order(); ++b)
      if (f.map[f.source.mult(a, b)] != f.target.mult(f.map[a], f.map[b]))
        return "f(" + f.source.elements()[a] + " " + f.source.elements()[b] + ") != f(" + f.source.elements()[a] +
               ") f(" + f.source.elements()[b] + ")";
  return std::nullopt;
}

std::vector<std::vector<Elem>> orbits(const FiniteObject& x) { return nerode::orbits(x); }

std::vector<Elem> fixed_points(const FiniteObject& x) { return nerode::fixed_points(x); }

namespace {

FiniteObject restrict_object(const GroupHom& f, const FiniteObject& x) {
  std::vector<Perm> actions;
  for (Elem g = 0; g < f.source.order(); ++g) {
    const std::string& image = f.target.elements()[f.map[g]];
    const auto& names = x.symmetry_names();
    auto it = std::find(names.begin(), names.end(), image);
    if (it == names.end()) throw InvalidInput("object does not act through '" + image + "'");
    actions.push_back(x.symmetry()[it - names.begin()]);
  }
  return make_gset(f.source, x.elements(), std::move(actions));
}

}  // namespace

Automaton restrict_automaton(const GroupHom& f, const Automaton& a) {
  if (auto v = hom_violation(f)) throw InvalidInput("invalid homomorphism: " + *v);
  Automaton r = a;
  r.alphabet = restrict_object(f, a.alphabet);
  r.states = restrict_object(f, a.states);
  validate(r);
  return r;
}

Automaton forget(const Automaton& a) {
  Automaton r = a;
  r.alphabet = a.alphabet.with_symmetry(Backend::set, {}, {});
  r.states = a.states.with_symmetry(Backend::set, {}, {});
  return r;
}

}  // namespace nerode::gset
