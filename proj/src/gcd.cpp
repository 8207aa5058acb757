#include <map>

#include "resolvent/error.hpp"
#include "resolvent/poly.hpp"

namespace resolvent {

namespace {

// Coefficients of p viewed as a polynomial in `var`, keyed by exponent.
std::map<std::uint32_t, Poly> coefficients_in(const Poly& p, std::size_t var) {
  std::map<std::uint32_t, std::vector<Term>> buckets;
  for (const auto& t : p.terms()) {
    auto e = t.mono.exponents();
    std::uint32_t k = e[var];
    e[var] = 0;
    buckets[k].push_back({Monomial(std::move(e)), t.coeff});
  }
  std::map<std::uint32_t, Poly> out;
  for (auto& [k, terms] : buckets) out.emplace(k, Poly::from_terms(p.ring(), std::move(terms)));
  return out;
}

Poly content_in(const Poly& p, std::size_t var) {
  Poly c(p.ring());
  for (const auto& [k, coeff] : coefficients_in(p, var)) {
    c = gcd(c, coeff);
    if (c.is_one()) break;
  }
  return c;
}

Poly primitive_part(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  Poly c = content_in(p, var);
  auto q = exact_divide(p, c);
  return q->monic();
}

// Lazy pseudo-remainder of a by b with respect to var.
Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const auto db = b.degree_in(var);
  const Poly lcb = coefficients_in(b, var).rbegin()->second;
  const auto nv = a.nvars();
  while (!a.is_zero() && a.degree_in(var) >= db) {
    auto da = a.degree_in(var);
    const Poly lca = coefficients_in(a, var).rbegin()->second;
    Poly shift = Poly::monomial(a.ring(), Monomial::variable(nv, var, da - db));
    a = lcb * a - lca * shift * b;
  }
  return a;
}

std::optional<std::size_t> main_variable(const Poly& a, const Poly& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.involves(v) || b.involves(v)) return v;
  return std::nullopt;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& braw) {
  if (a.is_zero()) return braw.monic();
  const Poly b = braw.in_ring(a.ring());
  if (b.is_zero()) return a.monic();
  const RingPtr& ring = a.ring();
  if (a.is_constant() || b.is_constant()) return Poly::constant(ring, 1);
  auto var = main_variable(a, b);
  if (!var) return Poly::constant(ring, 1);
  const std::size_t v = *var;

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly pa = *exact_divide(a, ca);
  Poly pb = *exact_divide(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  while (!pb.is_zero()) {
    if (pb.degree_in(v) == 0) {
      pa = Poly::constant(ring, 1);
      break;
    }
    Poly r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return (c * primitive_part(pa, v)).monic();
}

}  // namespace resolvent
