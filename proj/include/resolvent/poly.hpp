#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resolvent/monomial.hpp"
#include "resolvent/rational.hpp"

namespace resolvent {

/// Ambient variable names plus the monomial order used for term sorting.
/// The variable count is fixed at construction.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex());

  static std::shared_ptr<const PolyRing> make(std::vector<std::string> names,
                                              MonomialOrder order = MonomialOrder::grevlex());

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const MonomialOrder& order() const { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same variables, different order.
  std::shared_ptr<const PolyRing> with_order(MonomialOrder order) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.names_ == b.names_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial with rational coefficients. Terms are kept sorted
/// descending in the ring's monomial order with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, Monomial m, const Rational& c = 1);
  /// Sorts and combines arbitrary terms.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->nvars() : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// The constant value; requires is_constant().
  Rational constant_value() const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coefficient() const { return terms_.front().coeff; }

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  /// Index of the variable if this is exactly a single variable.
  std::optional<std::size_t> as_variable() const;

  Poly monic() const;
  Poly pow(unsigned n) const;
  /// Re-sorts under another ring with identical variable count.
  Poly in_ring(const RingPtr& ring) const;

  Rational evaluate(std::span<const Rational> point) const;
  /// Substitutes images (one per variable, all in a common target ring).
  Poly substitute(std::span<const Poly> images, const RingPtr& target) const;

  std::string to_string() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// a - c*m*b, the elementary reduction step.
  void sub_mul_term(const Rational& c, const Monomial& m, const Poly& b);
  void pop_leading();

 private:
  Poly(RingPtr ring, std::vector<Term> sorted) : ring_(std::move(ring)), terms_(std::move(sorted)) {}
  void check_context(const Poly& other) const;
  Poly aligned(const Poly& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op);

struct DivisionResult {
  std::vector<Poly> quotients;
  Poly remainder;
};

/// Multivariate division: f = sum q_i d_i + r, no term of r divisible by any LT(d_i).
DivisionResult divide_multivariate(const Poly& f, std::span<const Poly> divisors,
                                   const MonomialOrder& order);

/// f / g when g divides f exactly in the polynomial ring.
std::optional<Poly> exact_divide(const Poly& f, const Poly& g);

/// Monic gcd over Q (zero only if both are zero).
Poly gcd(const Poly& a, const Poly& b);

/// Sentinel for variables that have no counterpart in an embedding.
inline constexpr std::size_t kNoVariable = static_cast<std::size_t>(-1);

/// Moves p into `target`, sending variable i to variable index_map[i].
/// Throws ContextMismatch if p uses a variable mapped to kNoVariable.
Poly embed(const Poly& p, const RingPtr& target, std::span<const std::size_t> index_map);

Poly parse_poly(std::string_view text, const RingPtr& ring);
Poly parse_poly(std::string_view text, const std::vector<std::string>& vars);

}  // namespace resolvent
