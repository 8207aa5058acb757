#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resolvent/ideal.hpp"

namespace resolvent {

struct Exceptional {
  std::string label;
  Poly equation;
};

/// Affine chart Q[vars]/relations. The relations ideal is assumed prime; this
/// is a caller contract and is not checked.
class Chart {
 public:
  Chart(RingPtr ring, const std::vector<Poly>& relations, std::vector<Exceptional> exceptionals = {},
        std::string name = "0");

  static std::shared_ptr<const Chart> affine(std::vector<std::string> vars,
                                             MonomialOrder order = MonomialOrder::grevlex());

  const RingPtr& ring() const { return ring_; }
  const Ideal& relations() const { return relations_; }
  const std::vector<Exceptional>& exceptionals() const { return exceptionals_; }
  const std::string& name() const { return name_; }
  std::size_t nvars() const { return ring_->nvars(); }

  Poly reduce(const Poly& f) const { return relations_.normal_form(f); }
  bool is_zero(const Poly& f) const { return relations_.contains(f); }
  bool is_unit(const Poly& u) const;
  std::optional<Poly> inverse(const Poly& u) const;
  std::optional<Poly> divide(const Poly& f, const Poly& g) const;

  /// Principal generator of (gens) + relations, reduced; throws UndecidedPrincipality.
  std::optional<Poly> principal_generator(const std::vector<Poly>& gens) const;

  Poly parse(std::string_view text) const;
  Poly variable(const std::string& name) const;
  Poly constant(const Rational& c) const { return Poly::constant(ring_, c); }
  Poly zero() const { return Poly(ring_); }

  /// Same ring and relations (exceptional bookkeeping and names ignored).
  bool same_ring_as(const Chart& other) const;

 private:
  RingPtr ring_;
  Ideal relations_;
  std::vector<Exceptional> exceptionals_;
  std::string name_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// A ring homomorphism source -> target given by the images of the source
/// variables. Construction checks that source relations land in target relations.
class RingMap {
 public:
  RingMap() = default;
  RingMap(ChartPtr source, ChartPtr target, std::vector<Poly> images);

  static RingMap identity(const ChartPtr& chart);

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }

 private:
  struct Unchecked {};
  RingMap(ChartPtr source, ChartPtr target, std::vector<Poly> images, Unchecked);
  friend RingMap compose(const RingMap&, const RingMap&);

  ChartPtr source_;
  ChartPtr target_;
  std::vector<Poly> images_;
};

struct Atlas {
  std::vector<ChartPtr> charts;
};

/// Substitute the images, then reduce modulo the target relations.
Poly apply_map(const RingMap& m, const Poly& f);

/// outer after inner: apply_map(compose(outer, inner), f) = apply_map(outer, apply_map(inner, f)).
RingMap compose(const RingMap& outer, const RingMap& inner);

/// Images of the generators plus the target relations.
Ideal pull_ideal(const RingMap& m, const Ideal& ideal);

/// True iff the induced map of coordinate rings is injective.
bool is_dominant_heuristic(const RingMap& m);

}  // namespace resolvent
