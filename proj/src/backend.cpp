#include "nerode/backend.hpp"

#include <algorithm>
#include <numeric>

namespace nerode {

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::set:
      return "set";
    case Backend::gset:
      return "gset";
    case Backend::nominal:
      return "nominal";
  }
  return "?";
}

FiniteObject::FiniteObject(Backend backend, std::vector<std::string> elements,
                           std::vector<std::string> symmetry_names, std::vector<Perm> symmetry)
    : backend_(backend),
      elements_(std::move(elements)),
      symmetry_names_(std::move(symmetry_names)),
      symmetry_(std::move(symmetry)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], static_cast<Elem>(i)).second)
      throw InvalidInput("duplicate element name '" + elements_[i] + "'");
  }
  if (symmetry_names_.size() != symmetry_.size())
    throw InvalidInput("symmetry generator names and actions differ in number");
  for (std::size_t k = 0; k < symmetry_.size(); ++k) {
    if (symmetry_[k].size() != elements_.size() || !is_permutation(symmetry_[k]))
      throw InvalidInput("action of '" + symmetry_names_[k] + "' is not a permutation");
  }
}

std::optional<Elem> FiniteObject::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteObject truth_object(const FiniteObject& like) {
  std::vector<Perm> trivial(like.symmetry_names().size(), identity_perm(2));
  return FiniteObject(like.backend(), {"0", "1"}, like.symmetry_names(), std::move(trivial));
}

std::optional<std::string> morphism_violation(const Morphism& f) {
  if (f.map.size() != f.source.size()) return "map is not total on its source";
  for (std::size_t x = 0; x < f.map.size(); ++x) {
    if (f.map[x] >= f.target.size())
      return "image of '" + f.source.name(static_cast<Elem>(x)) + "' is outside the target";
  }
  if (!f.source.shares_symmetry_with(f.target)) return "source and target symmetries differ";
  for (std::size_t k = 0; k < f.source.symmetry().size(); ++k) {
    for (Elem x = 0; x < f.source.size(); ++x) {
      if (f.map[f.source.act(k, x)] != f.target.act(k, f.map[x]))
        return "not equivariant at '" + f.source.name(x) + "' under '" +
               f.source.symmetry_names()[k] + "'";
    }
  }
  return std::nullopt;
}

Morphism identity_morphism(const FiniteObject& x) { return {x, x, identity_perm(x.size())}; }

Morphism then(const Morphism& f, const Morphism& g) {
  Morphism r{f.source, g.target, std::vector<Elem>(f.map.size())};
  for (std::size_t x = 0; x < f.map.size(); ++x) r.map[x] = g.map[f.map[x]];
  return r;
}

bool is_injective(const Morphism& f) {
  std::vector<bool> hit(f.target.size(), false);
  for (Elem y : f.map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool is_surjective(const Morphism& f) {
  std::vector<bool> hit(f.target.size(), false);
  for (Elem y : f.map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Congruence::Congruence(const std::vector<Elem>& block_of) : block_of_(block_of.size()) {
  std::map<Elem, Elem> renumber;
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    auto [it, fresh] = renumber.emplace(block_of[i], static_cast<Elem>(renumber.size()));
    block_of_[i] = it->second;
  }
  block_count_ = renumber.size();
}

Congruence Congruence::from_blocks(std::size_t n, const std::vector<std::vector<Elem>>& blocks) {
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> block_of(n, unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidInput("empty block in partition");
    for (Elem x : blocks[b]) {
      if (x >= n) throw InvalidInput("block element out of range");
      if (block_of[x] != unset) throw InvalidInput("blocks overlap");
      block_of[x] = static_cast<Elem>(b);
    }
  }
  if (std::find(block_of.begin(), block_of.end(), unset) != block_of.end())
    throw InvalidInput("partition does not cover every element");
  return Congruence(block_of);
}

Congruence Congruence::kernel(const Morphism& f) { return Congruence(f.map); }

std::vector<std::vector<Elem>> Congruence::blocks() const {
  std::vector<std::vector<Elem>> out(block_count_);
  for (std::size_t x = 0; x < block_of_.size(); ++x) out[block_of_[x]].push_back(static_cast<Elem>(x));
  return out;
}

std::optional<SymmetryBreach> symmetry_breach(const FiniteObject& x, const Congruence& c) {
  constexpr Elem unset = ~Elem{0};
  for (std::size_t k = 0; k < x.symmetry().size(); ++k) {
    std::vector<Elem> image_block(c.block_count(), unset);
    for (Elem e = 0; e < x.size(); ++e) {
      const Elem b = c.block_of(e);
      const Elem moved = c.block_of(x.act(k, e));
      if (image_block[b] == unset) image_block[b] = moved;
      if (image_block[b] != moved) return SymmetryBreach{b, x.symmetry_names()[k]};
    }
  }
  return std::nullopt;
}

Product product(const FiniteObject& x, const FiniteObject& y) {
  if (!x.shares_symmetry_with(y)) throw InvalidInput("product of objects from different backends");
  std::vector<std::string> names;
  names.reserve(x.size() * y.size());
  std::vector<Elem> first, second;
  for (Elem a = 0; a < x.size(); ++a) {
    for (Elem b = 0; b < y.size(); ++b) {
      names.push_back("(" + x.name(a) + "," + y.name(b) + ")");
      first.push_back(a);
      second.push_back(b);
    }
  }
  std::vector<Perm> symmetry;
  for (std::size_t k = 0; k < x.symmetry().size(); ++k) {
    Perm p(names.size());
    for (Elem a = 0; a < x.size(); ++a)
      for (Elem b = 0; b < y.size(); ++b)
        p[a * y.size() + b] = static_cast<Elem>(x.act(k, a) * y.size() + y.act(k, b));
    symmetry.push_back(std::move(p));
  }
  FiniteObject xy(x.backend(), std::move(names), x.symmetry_names(), std::move(symmetry));
  return Product{xy, Morphism{xy, x, std::move(first)}, Morphism{xy, y, std::move(second)}};
}

Morphism pairing(const Product& p, const Morphism& f, const Morphism& g) {
  if (f.source.size() != g.source.size()) throw InvalidInput("pairing of maps with different sources");
  Morphism r{f.source, p.object, std::vector<Elem>(f.map.size())};
  for (std::size_t z = 0; z < f.map.size(); ++z) r.map[z] = p.pair(f.map[z], g.map[z]);
  return r;
}

FiniteObject restrict_to(const FiniteObject& x, const std::vector<Elem>& members) {
  constexpr Elem absent = ~Elem{0};
  std::vector<Elem> position(x.size(), absent);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < members.size(); ++i) {
    position[members[i]] = static_cast<Elem>(i);
    names.push_back(x.name(members[i]));
  }
  std::vector<Perm> symmetry;
  for (std::size_t k = 0; k < x.symmetry().size(); ++k) {
    Perm p(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Elem moved = position[x.act(k, members[i])];
      if (moved == absent)
        throw SymmetryViolation("subset is not closed under '" + x.symmetry_names()[k] + "'",
                                SymmetryBreach{i, x.symmetry_names()[k]});
      p[i] = moved;
    }
    symmetry.push_back(std::move(p));
  }
  return FiniteObject(x.backend(), std::move(names), x.symmetry_names(), std::move(symmetry));
}

ImageFactorization image_factorization(const Morphism& f) {
  std::vector<bool> hit(f.target.size(), false);
  for (Elem y : f.map) hit[y] = true;
  std::vector<Elem> members;
  std::vector<Elem> position(f.target.size(), 0);
  for (Elem y = 0; y < f.target.size(); ++y) {
    if (!hit[y]) continue;
    position[y] = static_cast<Elem>(members.size());
    members.push_back(y);
  }
  FiniteObject mid = restrict_to(f.target, members);
  std::vector<Elem> epi(f.map.size());
  for (std::size_t x = 0; x < f.map.size(); ++x) epi[x] = position[f.map[x]];
  return {Morphism{f.source, mid, std::move(epi)}, mid, Morphism{mid, f.target, members}};
}

Quotient quotient(const FiniteObject& x, const Congruence& c) {
  if (c.size() != x.size()) throw InvalidInput("partition size does not match object");
  if (auto breach = symmetry_breach(x, c)) {
    throw SymmetryViolation("partition is not closed under '" + breach->generator + "' (block " +
                                std::to_string(breach->block) + ")",
                            *breach);
  }
  std::vector<std::string> names;
  for (const auto& block : c.blocks()) {
    std::string name = "{";
    for (std::size_t i = 0; i < block.size(); ++i) name += (i ? "," : "") + x.name(block[i]);
    names.push_back(name + "}");
  }
  std::vector<Perm> symmetry;
  for (std::size_t k = 0; k < x.symmetry().size(); ++k) {
    Perm p(c.block_count());
    for (Elem e = 0; e < x.size(); ++e) p[c.block_of(e)] = c.block_of(x.act(k, e));
    symmetry.push_back(std::move(p));
  }
  FiniteObject q(x.backend(), std::move(names), x.symmetry_names(), std::move(symmetry));
  return {q, Morphism{x, q, c.block_indices()}};
}

std::vector<std::vector<Elem>> orbits(const FiniteObject& x) {
  std::vector<Elem> parent(x.size());
  std::iota(parent.begin(), parent.end(), Elem{0});
  auto root = [&](Elem e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  for (const Perm& p : x.symmetry()) {
    for (Elem e = 0; e < x.size(); ++e) {
      Elem a = root(e), b = root(p[e]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<Elem, std::size_t> slot;
  std::vector<std::vector<Elem>> out;
  for (Elem e = 0; e < x.size(); ++e) {
    auto [it, fresh] = slot.emplace(root(e), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(e);
  }
  return out;
}

std::vector<Elem> fixed_points(const FiniteObject& x) {
  std::vector<Elem> out;
  for (Elem e = 0; e < x.size(); ++e) {
    bool fixed = std::all_of(x.symmetry().begin(), x.symmetry().end(),
                             [e](const Perm& p) { return p[e] == e; });
    if (fixed) out.push_back(e);
  }
  return out;
}

FinitenessReport finiteness(const FiniteObject& x) {
  switch (x.backend()) {
    case Backend::set:
      return {true, true, x.size()};
    case Backend::gset:
      return {true, true, orbits(x).size()};
    case Backend::nominal:
      break;
  }
  throw InvalidInput("finiteness of a nominal pool instance; use the orbit-descriptor object");
}

}  // namespace nerode
