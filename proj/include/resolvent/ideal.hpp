#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resolvent/groebner.hpp"
#include "resolvent/poly.hpp"

namespace resolvent {

/// f = sum cofactors[l] * generators[l], exactly.
struct MembershipCertificate {
  std::vector<Poly> cofactors;
};

/// Generator list with a lazily computed, write-once reduced Groebner basis
/// under the ring's order. Values are immutable; copies share the cache.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Poly> generators);

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return generators_; }

  const std::vector<Poly>& basis() const;
  const TrackedBasis& tracked() const;

  bool contains(const Poly& f) const;
  bool contains(const Ideal& other) const;
  Poly normal_form(const Poly& f) const;
  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const;

  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;

  /// "(g1, g2, ...)" using the generators as given.
  std::string to_string() const;

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Poly> generators_;
  std::shared_ptr<Cache> cache_;
};

/// The same ideal with its reduced basis computed under `order`.
Ideal groebner(const Ideal& ideal, const MonomialOrder& order);

std::optional<MembershipCertificate> member(const Poly& f, const Ideal& ideal);

bool ideal_equal(const Ideal& a, const Ideal& b);

/// I intersected with the subring generated by the kept variables.
Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep);
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep);

/// I : g^infinity, computed by eliminating an inverse variable.
Ideal saturate(const Ideal& ideal, const Poly& g);

/// Principal generator in a polynomial ring (candidate: gcd of generators).
/// Returns the zero polynomial for the zero ideal.
std::optional<Poly> is_principal(const Ideal& ideal);

/// Principal generator modulo `relations` (a prime ideal of the same ring).
/// Without relations this is the polynomial-ring test. With relations the
/// candidates are the hints, the gcd of the reduced generators and each
/// generator; if none works, throws UndecidedPrincipality.
std::optional<Poly> is_principal(const Ideal& ideal, const Ideal& relations,
                                 std::span<const Poly> hints = {});

/// 1 in (u) + relations.
bool is_unit(const Poly& u, const Ideal& relations);

/// v with u*v = 1 modulo relations, reduced.
std::optional<Poly> inverse_modulo(const Poly& u, const Ideal& relations);

/// q with f = g*q modulo relations, reduced; nullopt if g does not divide f.
std::optional<Poly> divide_modulo(const Poly& f, const Poly& g, const Ideal& relations);

/// Repeated divide_modulo by one fixed g; the basis of (g) + relations is built once.
class ModularDivisor {
 public:
  ModularDivisor(const Poly& g, const Ideal& relations);

  const Poly& divisor() const { return g_; }
  std::optional<Poly> divide(const Poly& f) const;

 private:
  Poly g_;
  Ideal relations_;
  Ideal combined_;
};

}  // namespace resolvent
