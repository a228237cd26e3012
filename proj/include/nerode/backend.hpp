#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nerode/errors.hpp"
#include "nerode/perm.hpp"

namespace nerode {

enum class Backend { set, gset, nominal };

std::string_view backend_name(Backend backend);

// A finite carrier with a symmetry: a list of named generators, each acting
// as a permutation of the elements. The set backend has no generators; a
// G-set lists one permutation per group element; a nominal pool instance
// lists the adjacent transpositions of its pool.
//
// Objects that appear together (states and alphabet of one automaton, the
// factors of a product) act through the same generator names, generator k
// of one object and generator k of the other being the same group element.
class FiniteObject {
 public:
  FiniteObject() = default;
  FiniteObject(Backend backend, std::vector<std::string> elements,
               std::vector<std::string> symmetry_names = {}, std::vector<Perm> symmetry = {});

  Backend backend() const noexcept { return backend_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::string& name(Elem x) const { return elements_.at(x); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  std::optional<Elem> find(std::string_view name) const;

  const std::vector<std::string>& symmetry_names() const noexcept { return symmetry_names_; }
  const std::vector<Perm>& symmetry() const noexcept { return symmetry_; }
  Elem act(std::size_t generator, Elem x) const { return symmetry_[generator][x]; }

  bool shares_symmetry_with(const FiniteObject& other) const {
    return backend_ == other.backend_ && symmetry_names_ == other.symmetry_names_;
  }

  // Same elements and symmetry, under a different backend tag and
  // generator names (used to forget or relabel a symmetry).
  FiniteObject with_symmetry(Backend backend, std::vector<std::string> names,
                             std::vector<Perm> symmetry) const {
    return FiniteObject(backend, elements_, std::move(names), std::move(symmetry));
  }

  friend bool operator==(const FiniteObject&, const FiniteObject&) = default;

 private:
  Backend backend_ = Backend::set;
  std::vector<std::string> elements_;
  std::map<std::string, Elem, std::less<>> index_;
  std::vector<std::string> symmetry_names_;
  std::vector<Perm> symmetry_;
};

// The two-element truth object {0, 1} with trivial symmetry, shaped to act
// through the same generator names as `like`.
FiniteObject truth_object(const FiniteObject& like);
inline constexpr Elem truth_false = 0;
inline constexpr Elem truth_true = 1;

struct Morphism {
  FiniteObject source;
  FiniteObject target;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

// First violated condition (totality, symmetry mismatch, equivariance), if any.
std::optional<std::string> morphism_violation(const Morphism& f);
Morphism identity_morphism(const FiniteObject& x);
// then(f, g) is g after f.
Morphism then(const Morphism& f, const Morphism& g);
bool is_injective(const Morphism& f);
bool is_surjective(const Morphism& f);

// A partition stored as a block index per element, blocks numbered in
// order of first occurrence.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(const std::vector<Elem>& block_of);
  // Rejects overlapping, empty or non-exhaustive block lists.
  static Congruence from_blocks(std::size_t n, const std::vector<std::vector<Elem>>& blocks);
  // The kernel pair of f: x ~ y iff f(x) == f(y).
  static Congruence kernel(const Morphism& f);

  std::size_t size() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return block_count_; }
  Elem block_of(Elem x) const { return block_of_[x]; }
  const std::vector<Elem>& block_indices() const noexcept { return block_of_; }
  std::vector<std::vector<Elem>> blocks() const;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  std::vector<Elem> block_of_;
  std::size_t block_count_ = 0;
};

struct SymmetryBreach {
  std::size_t block;
  std::string generator;
};

// A block whose image under some generator is not a block.
std::optional<SymmetryBreach> symmetry_breach(const FiniteObject& x, const Congruence& c);

class SymmetryViolation : public InvalidInput {
 public:
  SymmetryViolation(const std::string& what, SymmetryBreach breach)
      : InvalidInput(what), breach_(std::move(breach)) {}
  const SymmetryBreach& breach() const noexcept { return breach_; }

 private:
  SymmetryBreach breach_;
};

struct Product {
  FiniteObject object;
  Morphism first;
  Morphism second;

  Elem pair(Elem x, Elem y) const { return static_cast<Elem>(x * second.target.size() + y); }
};

// Pairs (x, y) in row-major order with the diagonal symmetry.
Product product(const FiniteObject& x, const FiniteObject& y);
// The unique map z -> x*y whose projections are f and g.
Morphism pairing(const Product& p, const Morphism& f, const Morphism& g);

struct ImageFactorization {
  Morphism epi;
  FiniteObject mid;
  Morphism mono;
};

// The image is listed in target order and carries the restricted symmetry.
ImageFactorization image_factorization(const Morphism& f);

struct Quotient {
  FiniteObject object;
  Morphism projection;
};

// Blocks become elements named "{x,y,...}". Throws SymmetryViolation when c
// is not closed under the symmetry.
Quotient quotient(const FiniteObject& x, const Congruence& c);

// Restricts x to `members` (in the given order); the subset must be
// closed under the symmetry.
FiniteObject restrict_to(const FiniteObject& x, const std::vector<Elem>& members);

std::vector<std::vector<Elem>> orbits(const FiniteObject& x);
std::vector<Elem> fixed_points(const FiniteObject& x);

struct FinitenessReport {
  bool dk_finite = false;
  bool decomposition_finite = false;
  std::size_t orbit_count = 0;

  friend bool operator==(const FinitenessReport&, const FinitenessReport&) = default;
};

// For set and gset objects. Nominal objects are described by orbit
// descriptors (see nominal.hpp); their pool instances are rejected here.
FinitenessReport finiteness(const FiniteObject& x);

}  // namespace nerode
