#pragma once

#include <span>
#include <vector>

#include "resolvent/poly.hpp"

namespace resolvent {

/// A reduced Groebner basis together with, for every basis element, its
/// expression in the input generators: basis[k] = sum_l cofactors[k][l] * gens[l].
struct TrackedBasis {
  std::vector<Poly> basis;
  std::vector<std::vector<Poly>> cofactors;
};

/// Reduced, monic basis under ring->order(), sorted ascending by leading monomial.
std::vector<Poly> groebner_basis(std::span<const Poly> generators, const RingPtr& ring);

TrackedBasis tracked_groebner_basis(std::span<const Poly> generators, const RingPtr& ring);

/// Full normal form of f with respect to a Groebner basis.
Poly normal_form(const Poly& f, std::span<const Poly> basis);

/// Division by a basis with quotient tracking: f = sum quotients[k]*basis[k] + remainder.
DivisionResult reduce_with_quotients(const Poly& f, std::span<const Poly> basis);

}  // namespace resolvent
