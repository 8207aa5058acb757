#include "resolvent/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "resolvent/error.hpp"

namespace resolvent {

PolyRing::PolyRing(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(order) {}

RingPtr PolyRing::make(std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(names), order);
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RingPtr PolyRing::with_order(MonomialOrder order) const { return make(names_, order); }

namespace {

void sort_terms(const MonomialOrder& order, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.mono, b.mono) > 0;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = terms[i].coeff;
    while (j < terms.size() && terms[j].mono == terms[i].mono) c += terms[j++].coeff;
    if (c != 0) {
      if (out != i) terms[out].mono = std::move(terms[i].mono);
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  auto n = ring->nvars();
  return monomial(std::move(ring), Monomial::variable(n, index), 1);
}

Poly Poly::monomial(RingPtr ring, Monomial m, const Rational& c) {
  Poly p(std::move(ring));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  sort_terms(ring->order(), terms);
  return Poly(std::move(ring), std::move(terms));
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Poly::constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].coeff; }

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool Poly::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var] != 0) return true;
  return false;
}

std::optional<std::size_t> Poly::as_variable() const {
  if (terms_.size() != 1 || terms_[0].coeff != 1 || terms_[0].mono.degree() != 1)
    return std::nullopt;
  for (std::size_t i = 0; i < terms_[0].mono.size(); ++i)
    if (terms_[0].mono[i] == 1) return i;
  return std::nullopt;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly r = *this;
  Rational inv = 1 / leading_coefficient();
  for (auto& t : r.terms_) t.coeff *= inv;
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

Poly Poly::in_ring(const RingPtr& ring) const {
  if (ring_ == ring) return *this;
  if (!ring_) return Poly(ring);
  if (ring->nvars() != nvars())
    throw Error(ErrorCode::ContextMismatch, "variable count mismatch in ring conversion");
  std::vector<Term> t = terms_;
  return from_terms(ring, std::move(t));
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars())
    throw Error(ErrorCode::ContextMismatch, "evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> images, const RingPtr& target) const {
  if (images.size() != nvars())
    throw Error(ErrorCode::ContextMismatch, "substitution needs one image per variable");
  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i].in_ring(target));
    return cache[k];
  };
  Poly result(target);
  for (const auto& t : terms_) {
    Poly term = constant(target, t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i] != 0) term *= power(i, t.mono[i]);
    result += term;
  }
  return result;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    bool unit = (c == 1);
    bool need_star = false;
    if (!unit || t.mono.is_one()) {
      out += rational_text(c);
      need_star = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) out += "*";
      out += ring_->name(i);
      if (t.mono[i] > 1) out += "^" + std::to_string(t.mono[i]);
      need_star = true;
    }
  }
  return out;
}

void Poly::check_context(const Poly& other) const {
  if (!ring_ || !other.ring_ || ring_ == other.ring_) return;
  if (ring_->nvars() != other.ring_->nvars() || ring_->names() != other.ring_->names())
    throw Error(ErrorCode::ContextMismatch, "polynomials live in different rings");
}

Poly Poly::aligned(const Poly& other) const {
  check_context(other);
  if (!ring_ || !other.ring_ || ring_ == other.ring_ || ring_->order() == other.ring_->order())
    return other;
  return other.in_ring(ring_);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& raw) {
  if (raw.is_zero()) return *this;
  if (!ring_) ring_ = raw.ring_;
  Poly other = aligned(raw);
  const auto& order = ring_->order();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int c = order.compare(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      merged.push_back(other.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + other.terms_[j].coeff;
      if (s != 0) merged.push_back({std::move(terms_[i].mono), std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) merged.push_back(std::move(terms_[i]));
  for (; j < other.terms_.size(); ++j) merged.push_back(other.terms_[j]);
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& braw) {
  if (a.is_zero() || braw.is_zero()) return Poly(a.ring_ ? a.ring_ : braw.ring_);
  Poly b = a.aligned(braw);
  const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
  if (b.terms_.size() == 1) {
    Poly r(ring);
    r.terms_.reserve(a.terms_.size());
    const auto& bt = b.terms_[0];
    for (const auto& t : a.terms_) r.terms_.push_back({t.mono * bt.mono, t.coeff * bt.coeff});
    return r;  // multiplication by a monomial preserves order
  }
  std::unordered_map<Monomial, Rational> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, c});
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
    return ring->order().compare(x.mono, y.mono) > 0;
  });
  return Poly(ring, std::move(terms));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  a.check_context(b);
  if (a.ring_ && b.ring_ && a.ring_->order() != b.ring_->order()) {
    Poly c = b.in_ring(a.ring_);
    return a == c;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

void Poly::pop_leading() { terms_.erase(terms_.begin()); }

void Poly::sub_mul_term(const Rational& c, const Monomial& m, const Poly& b) {
  if (c == 0 || b.is_zero()) return;
  if (!ring_) ring_ = b.ring_;
  const auto& order = ring_->order();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have = false;
  while (i < terms_.size() || j < b.terms_.size()) {
    if (j < b.terms_.size() && !have) {
      bm = b.terms_[j].mono * m;
      have = true;
    }
    int cmp;
    if (i >= terms_.size()) cmp = -1;
    else if (j >= b.terms_.size()) cmp = 1;
    else cmp = order.compare(terms_[i].mono, bm);
    if (cmp > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      merged.push_back({std::move(bm), -c * b.terms_[j].coeff});
      ++j;
      have = false;
    } else {
      Rational s = terms_[i].coeff - c * b.terms_[j].coeff;
      if (s != 0) merged.push_back({std::move(terms_[i].mono), std::move(s)});
      ++i;
      ++j;
      have = false;
    }
  }
  terms_ = std::move(merged);
}

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op) {
  if (a.ring() && b.ring() && a.nvars() != b.nvars())
    throw Error(ErrorCode::ContextMismatch, "mismatched variable counts");
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return Poly();
}

DivisionResult divide_multivariate(const Poly& fraw, std::span<const Poly> divisors_raw,
                                   const MonomialOrder& order) {
  if (divisors_raw.empty()) throw Error(ErrorCode::InvalidArgument, "empty divisor list");
  RingPtr ring = fraw.ring() ? fraw.ring() : divisors_raw[0].ring();
  if (!(ring->order() == order)) ring = ring->with_order(order);
  std::vector<Poly> divisors;
  for (const auto& d : divisors_raw) {
    if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero divisor");
    if (d.nvars() != ring->nvars()) throw Error(ErrorCode::ContextMismatch, "divisor ring mismatch");
    divisors.push_back(d.in_ring(ring));
  }
  Poly p = fraw.in_ring(ring);
  DivisionResult out;
  out.quotients.assign(divisors.size(), Poly(ring));
  out.remainder = Poly(ring);
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    bool divided = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const auto& d = divisors[k];
      if (d.leading_monomial().divides(lt.mono)) {
        Monomial m = lt.mono / d.leading_monomial();
        Rational c = lt.coeff / d.leading_coefficient();
        out.quotients[k] += Poly::monomial(ring, m, c);
        p.sub_mul_term(c, m, d);
        divided = true;
        break;
      }
    }
    if (!divided) {
      rem.push_back(lt);
      p.pop_leading();
    }
  }
  out.remainder = Poly::from_terms(ring, std::move(rem));
  if (fraw.ring()) {
    for (auto& q : out.quotients) q = q.in_ring(fraw.ring());
    out.remainder = out.remainder.in_ring(fraw.ring());
  }
  return out;
}

Poly embed(const Poly& p, const RingPtr& target, std::span<const std::size_t> index_map) {
  if (index_map.size() != p.nvars())
    throw Error(ErrorCode::ContextMismatch, "embedding map has wrong length");
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<std::uint32_t> e(target->nvars(), 0);
    for (std::size_t i = 0; i < index_map.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (index_map[i] == kNoVariable)
        throw Error(ErrorCode::ContextMismatch,
                    "variable " + p.ring()->name(i) + " has no image in the target ring");
      e[index_map[i]] += t.mono[i];
    }
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Poly::from_terms(target, std::move(terms));
}

std::optional<Poly> exact_divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (f.is_zero()) return Poly(f.ring() ? f.ring() : g.ring());
  const Poly divisors[] = {g};
  auto r = divide_multivariate(f, divisors, f.ring()->order());
  if (!r.remainder.is_zero()) return std::nullopt;
  return r.quotients[0];
}

}  // namespace resolvent
