#include "resolvent/ideal.hpp"

#include <algorithm>
#include <mutex>

#include "resolvent/error.hpp"

namespace resolvent {

struct Ideal::Cache {
  std::once_flag basis_once;
  std::once_flag tracked_once;
  std::vector<Poly> basis;
  TrackedBasis tracked;
};

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (g.nvars() != ring_->nvars())
      throw Error(ErrorCode::ContextMismatch, "ideal generator from a different ring");
    generators_.push_back(g.in_ring(ring_));
  }
}

const std::vector<Poly>& Ideal::basis() const {
  static const std::vector<Poly> empty;
  if (generators_.empty()) return empty;
  std::call_once(cache_->basis_once, [&] { cache_->basis = groebner_basis(generators_, ring_); });
  return cache_->basis;
}

const TrackedBasis& Ideal::tracked() const {
  static const TrackedBasis empty;
  if (generators_.empty()) return empty;
  std::call_once(cache_->tracked_once,
                 [&] { cache_->tracked = tracked_groebner_basis(generators_, ring_); });
  return cache_->tracked;
}

bool Ideal::contains(const Poly& f) const {
  if (f.is_zero()) return true;
  if (generators_.empty()) return false;
  return normal_form(f).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

Poly Ideal::normal_form(const Poly& f) const {
  if (generators_.empty()) return f.in_ring(ring_);
  return resolvent::normal_form(f.in_ring(ring_), basis());
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b[0].is_constant() && !b[0].is_zero();
}

Ideal Ideal::operator+(const Ideal& other) const {
  std::vector<Poly> g = generators_;
  for (const auto& h : other.generators()) g.push_back(h);
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& other) const {
  std::vector<Poly> g;
  for (const auto& a : generators_)
    for (const auto& b : other.generators()) g.push_back(a * b);
  return Ideal(ring_, std::move(g));
}

std::string Ideal::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].to_string();
  }
  if (generators_.empty()) out += "0";
  return out + ")";
}

Ideal groebner(const Ideal& ideal, const MonomialOrder& order) {
  RingPtr ring = ideal.ring()->order() == order ? ideal.ring() : ideal.ring()->with_order(order);
  Ideal in_order(ring, ideal.generators());
  return Ideal(ring, in_order.basis());
}

std::optional<MembershipCertificate> member(const Poly& f, const Ideal& ideal) {
  const auto& gens = ideal.generators();
  MembershipCertificate cert;
  cert.cofactors.assign(gens.size(), Poly(ideal.ring()));
  if (f.is_zero()) return cert;
  if (gens.empty()) return std::nullopt;
  const TrackedBasis& tb = ideal.tracked();
  auto division = reduce_with_quotients(f.in_ring(ideal.ring()), tb.basis);
  if (!division.remainder.is_zero()) return std::nullopt;
  for (std::size_t k = 0; k < tb.basis.size(); ++k) {
    if (division.quotients[k].is_zero()) continue;
    for (std::size_t l = 0; l < gens.size(); ++l)
      cert.cofactors[l] += division.quotients[k] * tb.cofactors[k][l];
  }
  return cert;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (a.ring()->nvars() != b.ring()->nvars())
    throw Error(ErrorCode::ContextMismatch, "ideals live in different rings");
  return a.contains(b) && b.contains(a);
}

Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep) {
  const auto& ring = ideal.ring();
  const std::size_t n = ring->nvars();
  std::vector<bool> kept(n, false);
  for (auto k : keep) kept.at(k) = true;
  std::vector<std::size_t> order_of;  // position -> original index
  for (std::size_t i = 0; i < n; ++i)
    if (!kept[i]) order_of.push_back(i);
  const std::size_t split = order_of.size();
  for (std::size_t i = 0; i < n; ++i)
    if (kept[i]) order_of.push_back(i);
  std::vector<std::string> names;
  std::vector<std::size_t> to_new(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    names.push_back(ring->name(order_of[pos]));
    to_new[order_of[pos]] = pos;
  }
  if (split == 0) return ideal;
  auto elim_ring = PolyRing::make(names, MonomialOrder::block(split));
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, elim_ring, to_new));
  std::vector<std::size_t> back(n);
  for (std::size_t pos = 0; pos < n; ++pos) back[pos] = order_of[pos];
  std::vector<Poly> out;
  for (const auto& g : groebner_basis(gens, elim_ring)) {
    bool pure = true;
    for (std::size_t pos = 0; pos < split && pure; ++pos)
      if (g.involves(pos)) pure = false;
    if (pure) out.push_back(embed(g, ring, back));
  }
  return Ideal(ring, std::move(out));
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (const auto& name : keep) {
    auto i = ideal.ring()->index_of(name);
    if (!i) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
    idx.push_back(*i);
  }
  return eliminate(ideal, idx);
}

Ideal saturate(const Ideal& ideal, const Poly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "saturation by zero");
  const auto& ring = ideal.ring();
  const std::size_t n = ring->nvars();
  if (g.is_constant() || ideal.is_zero()) return ideal;
  std::vector<std::string> names{"__sat"};
  for (const auto& nm : ring->names()) names.push_back(nm);
  auto big = PolyRing::make(names, MonomialOrder::block(1));
  std::vector<std::size_t> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = i + 1;
  std::vector<Poly> gens;
  for (const auto& h : ideal.generators()) gens.push_back(embed(h, big, shift));
  Poly t = Poly::variable(big, 0);
  gens.push_back(Poly::constant(big, 1) - t * embed(g, big, shift));
  std::vector<std::size_t> back(n + 1, kNoVariable);
  for (std::size_t i = 0; i < n; ++i) back[i + 1] = i;
  std::vector<Poly> out;
  for (const auto& b : groebner_basis(gens, big))
    if (!b.involves(0)) out.push_back(embed(b, ring, back));
  return Ideal(ring, std::move(out));
}

std::optional<Poly> is_principal(const Ideal& ideal) {
  const auto& gens = ideal.generators();
  if (gens.empty()) return Poly(ideal.ring());
  Poly g(ideal.ring());
  for (const auto& h : gens) {
    g = gcd(g, h);
    if (g.is_one()) break;
  }
  if (ideal.contains(g)) return g;
  return std::nullopt;
}

std::optional<Poly> is_principal(const Ideal& ideal, const Ideal& relations,
                                 std::span<const Poly> hints) {
  if (relations.is_zero()) return is_principal(ideal);
  std::vector<Poly> reduced;
  for (const auto& g : ideal.generators()) {
    Poly r = relations.normal_form(g);
    if (!r.is_zero()) reduced.push_back(std::move(r));
  }
  if (reduced.empty()) return Poly(ideal.ring());
  Ideal full = Ideal(ideal.ring(), reduced) + relations;

  std::vector<Poly> candidates;
  for (const auto& h : hints) candidates.push_back(relations.normal_form(h));
  Poly g(ideal.ring());
  for (const auto& h : reduced) g = gcd(g, h);
  candidates.push_back(g);
  std::vector<Poly> sorted = reduced;
  std::sort(sorted.begin(), sorted.end(), [](const Poly& a, const Poly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_string() < b.to_string();
  });
  for (auto& h : sorted) candidates.push_back(h);

  for (const auto& c : candidates) {
    if (c.is_zero() || !full.contains(c)) continue;
    Ideal principal = Ideal(ideal.ring(), {c}) + relations;
    bool generates = true;
    for (const auto& h : reduced)
      if (!principal.contains(h)) {
        generates = false;
        break;
      }
    if (generates) return c;
  }
  throw Error(ErrorCode::UndecidedPrincipality,
              "could not certify principality of " + ideal.to_string() + " modulo " +
                  relations.to_string());
}

bool is_unit(const Poly& u, const Ideal& relations) {
  if (u.is_zero()) return false;
  if (u.is_constant()) return true;
  return (Ideal(relations.ring(), {u}) + relations).is_unit();
}

std::optional<Poly> inverse_modulo(const Poly& u, const Ideal& relations) {
  if (u.is_zero()) return std::nullopt;
  const auto& ring = relations.ring() ? relations.ring() : u.ring();
  if (u.is_constant()) return Poly::constant(ring, 1 / u.constant_value());
  std::vector<Poly> gens{u};
  for (const auto& r : relations.generators()) gens.push_back(r);
  Ideal I(ring, gens);
  auto cert = member(Poly::constant(ring, 1), I);
  if (!cert) return std::nullopt;
  return relations.normal_form(cert->cofactors[0]);
}

std::optional<Poly> divide_modulo(const Poly& f, const Poly& g, const Ideal& relations) {
  return ModularDivisor(g, relations).divide(f);
}

ModularDivisor::ModularDivisor(const Poly& g, const Ideal& relations)
    : g_(g), relations_(relations) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  const auto& ring = relations.ring() ? relations.ring() : g.ring();
  if (!relations_.ring()) relations_ = Ideal::zero(ring);
  g_ = g.in_ring(ring);
  if (!relations.is_zero() && !g.is_constant()) {
    std::vector<Poly> gens{g_};
    for (const auto& r : relations.generators()) gens.push_back(r);
    combined_ = Ideal(ring, gens);
  }
}

std::optional<Poly> ModularDivisor::divide(const Poly& f) const {
  const auto& ring = relations_.ring();
  if (f.is_zero()) return Poly(ring);
  if (relations_.is_zero()) return exact_divide(f.in_ring(ring), g_);
  if (g_.is_constant()) return relations_.normal_form(f * (1 / g_.constant_value()));
  auto cert = member(f, combined_);
  if (!cert) return std::nullopt;
  return relations_.normal_form(cert->cofactors[0]);
}

}  // namespace resolvent
