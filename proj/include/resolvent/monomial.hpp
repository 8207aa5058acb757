#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace resolvent {

/// Exponent vector over a fixed number of ambient variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);

class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, BlockElimination };

  MonomialOrder() = default;
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, 0); }
  /// Variables [0, split) form the eliminated block; each block is grevlex.
  static MonomialOrder block(std::size_t split) {
    return MonomialOrder(Kind::BlockElimination, split);
  }

  Kind kind() const { return kind_; }
  std::size_t split() const { return split_; }

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.split_ == b.split_;
  }

 private:
  MonomialOrder(Kind kind, std::size_t split) : kind_(kind), split_(split) {}

  Kind kind_ = Kind::GrevLex;
  std::size_t split_ = 0;
};

}  // namespace resolvent

template <>
struct std::hash<resolvent::Monomial> {
  std::size_t operator()(const resolvent::Monomial& m) const noexcept { return m.hash(); }
};
