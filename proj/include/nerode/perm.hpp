#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nerode {

using Elem = std::uint32_t;

// A permutation of {0, ..., n-1}, stored as its image vector.
using Perm = std::vector<Elem>;

Perm identity_perm(std::size_t n);
bool is_permutation(const Perm& p);
bool is_identity(const Perm& p);

// compose(p, q)(x) == p(q(x))
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);

// Every element of the group generated by `generators`, sorted. Throws
// ResourceLimit once more than `cap` elements are produced.
std::vector<Perm> generate_group(std::size_t n, const std::vector<Perm>& generators,
                                 std::size_t cap = 5040);

// A small generating set of `group` (sorted elements), picked greedily in
// order. Empty for the trivial group.
std::vector<Perm> generating_subset(const std::vector<Perm>& group);

// Cycle notation over 1-based points, "()" for the identity.
std::string to_cycles(const Perm& p);

}  // namespace nerode
