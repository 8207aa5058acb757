#include "resolvent/groebner.hpp"

#include <algorithm>
#include <optional>

namespace resolvent {

namespace {

struct Entry {
  Poly poly;
  std::vector<Poly> cofactors;
  std::uint32_t sugar = 0;
  bool active = true;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
};

// Buchberger with the sugar selection strategy and the Gebauer-Moeller
// installation of both criteria.
class Buchberger {
 public:
  Buchberger(const RingPtr& ring, std::size_t ngens, bool track)
      : ring_(ring), ngens_(ngens), track_(track) {}

  void run(std::span<const Poly> gens) {
    for (std::size_t l = 0; l < gens.size(); ++l) {
      Poly g = gens[l].in_ring(ring_);
      std::vector<Poly> cof;
      if (track_) {
        cof.assign(ngens_, Poly(ring_));
        cof[l] = Poly::constant(ring_, 1);
      }
      std::uint32_t sugar = g.total_degree();
      reduce_full(g, cof);
      if (!g.is_zero()) insert(std::move(g), std::move(cof), sugar);
      if (unit_) return;
    }
    while (!pairs_.empty() && !unit_) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (better(pairs_[k], pairs_[best])) best = k;
      Pair p = std::move(pairs_[best]);
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();

      auto [s, cof] = spoly(p);
      reduce_full(s, cof);
      if (!s.is_zero()) insert(std::move(s), std::move(cof), p.sugar);
    }
  }

  TrackedBasis finish() {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (entries_[k].active) act.push_back(k);
    if (unit_) {
      act = {unit_index_};
    }
    // Interreduce tails against the other minimal elements.
    for (std::size_t k : act) {
      Entry& e = entries_[k];
      Poly head = Poly::monomial(ring_, e.poly.leading_monomial(), e.poly.leading_coefficient());
      Poly tail = e.poly - head;
      std::vector<Poly> cof = e.cofactors;
      // tail = poly - head; reducing tail and adding head back keeps the cofactor identity
      reduce_full_against(tail, cof, act, k);
      e.poly = head + tail;
      e.cofactors = std::move(cof);
    }
    std::sort(act.begin(), act.end(), [&](std::size_t a, std::size_t b) {
      return ring_->order().compare(entries_[a].poly.leading_monomial(),
                                    entries_[b].poly.leading_monomial()) < 0;
    });
    TrackedBasis out;
    for (std::size_t k : act) {
      Entry& e = entries_[k];
      Rational inv = 1 / e.poly.leading_coefficient();
      out.basis.push_back(e.poly * inv);
      if (track_) {
        for (auto& c : e.cofactors) c *= inv;
        out.cofactors.push_back(std::move(e.cofactors));
      }
    }
    return out;
  }

 private:
  bool better(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ring_->order().compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  std::pair<Poly, std::vector<Poly>> spoly(const Pair& p) {
    const Entry& a = entries_[p.i];
    const Entry& b = entries_[p.j];
    Monomial ma = p.lcm / a.poly.leading_monomial();
    Monomial mb = p.lcm / b.poly.leading_monomial();
    Poly s = Poly::monomial(ring_, ma) * a.poly;
    s.sub_mul_term(1, mb, b.poly);
    std::vector<Poly> cof;
    if (track_) {
      cof.resize(ngens_);
      for (std::size_t l = 0; l < ngens_; ++l) {
        cof[l] = Poly::monomial(ring_, ma) * a.cofactors[l];
        cof[l].sub_mul_term(1, mb, b.cofactors[l]);
      }
    }
    return {std::move(s), std::move(cof)};
  }

  std::optional<std::size_t> find_reducer(const Monomial& m, const std::vector<std::size_t>* among,
                                          std::size_t skip) const {
    std::optional<std::size_t> best;
    auto consider = [&](std::size_t k) {
      if (k == skip) return;
      const Poly& g = entries_[k].poly;
      if (!g.leading_monomial().divides(m)) return;
      if (!best || g.size() < entries_[*best].poly.size()) best = k;
    };
    if (among) {
      for (std::size_t k : *among) consider(k);
    } else {
      for (std::size_t k : active_) consider(k);
    }
    return best;
  }

  void reduce_step(Poly& f, std::vector<Poly>& cof, const Term& lt, std::size_t k) {
    const Entry& g = entries_[k];
    Monomial m = lt.mono / g.poly.leading_monomial();
    Rational c = lt.coeff / g.poly.leading_coefficient();
    f.sub_mul_term(c, m, g.poly);
    if (track_)
      for (std::size_t l = 0; l < ngens_; ++l) cof[l].sub_mul_term(c, m, g.cofactors[l]);
  }

  void reduce_impl(Poly& f, std::vector<Poly>& cof, const std::vector<std::size_t>* among,
                   std::size_t skip) {
    std::vector<Term> rem;
    while (!f.is_zero()) {
      Term lt = f.leading_term();
      if (auto k = find_reducer(lt.mono, among, skip)) {
        reduce_step(f, cof, lt, *k);
      } else {
        rem.push_back(std::move(lt));
        f.pop_leading();
      }
    }
    f = Poly::from_terms(ring_, std::move(rem));
  }

  void reduce_full(Poly& f, std::vector<Poly>& cof) {
    reduce_impl(f, cof, nullptr, static_cast<std::size_t>(-1));
  }

  void reduce_full_against(Poly& f, std::vector<Poly>& cof, const std::vector<std::size_t>& among,
                           std::size_t skip) {
    reduce_impl(f, cof, &among, skip);
  }

  void insert(Poly h, std::vector<Poly> cof, std::uint32_t sugar) {
    Rational inv = 1 / h.leading_coefficient();
    h *= inv;
    if (track_)
      for (auto& c : cof) c *= inv;
    const std::size_t hi = entries_.size();
    entries_.push_back({std::move(h), std::move(cof), std::max(sugar, 0u), true});
    const Monomial& lh = entries_[hi].poly.leading_monomial();
    if (lh.is_one()) {
      unit_ = true;
      unit_index_ = hi;
      return;
    }

    // Gebauer-Moeller update.
    std::vector<Pair> candidates;
    for (std::size_t g : active_) {
      const Monomial& lg = entries_[g].poly.leading_monomial();
      Monomial l = lcm(lh, lg);
      std::uint32_t s = std::max(entries_[hi].sugar + (l.degree() - lh.degree()),
                                 entries_[g].sugar + (l.degree() - lg.degree()));
      candidates.push_back({g, hi, std::move(l), s});
    }
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool coprime = lh.coprime(entries_[p.i].poly.leading_monomial());
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = a + 1; b < candidates.size() && !dominated; ++b)
          if (candidates[b].lcm.divides(p.lcm)) dominated = true;
        for (const Pair& q : kept)
          if (!dominated && q.lcm.divides(p.lcm)) dominated = true;
      }
      if (coprime || !dominated) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (auto& p : kept)
      if (!lh.coprime(entries_[p.i].poly.leading_monomial())) fresh.push_back(std::move(p));

    std::vector<Pair> survivors;
    for (auto& p : pairs_) {
      const Monomial& l1 = entries_[p.i].poly.leading_monomial();
      const Monomial& l2 = entries_[p.j].poly.leading_monomial();
      bool drop = lh.divides(p.lcm) && !(lcm(l1, lh) == p.lcm) && !(lcm(lh, l2) == p.lcm);
      if (!drop) survivors.push_back(std::move(p));
    }
    for (auto& p : fresh) survivors.push_back(std::move(p));
    pairs_ = std::move(survivors);

    std::vector<std::size_t> still;
    for (std::size_t g : active_) {
      if (lh.divides(entries_[g].poly.leading_monomial())) entries_[g].active = false;
      else still.push_back(g);
    }
    still.push_back(hi);
    active_ = std::move(still);
  }

  RingPtr ring_;
  std::size_t ngens_;
  bool track_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
  std::size_t unit_index_ = 0;
};

}  // namespace

std::vector<Poly> groebner_basis(std::span<const Poly> generators, const RingPtr& ring) {
  Buchberger b(ring, generators.size(), false);
  b.run(generators);
  return b.finish().basis;
}

TrackedBasis tracked_groebner_basis(std::span<const Poly> generators, const RingPtr& ring) {
  Buchberger b(ring, generators.size(), true);
  b.run(generators);
  return b.finish();
}

DivisionResult reduce_with_quotients(const Poly& fraw, std::span<const Poly> basis) {
  DivisionResult out;
  if (basis.empty()) {
    out.remainder = fraw;
    return out;
  }
  const RingPtr& ring = basis[0].ring();
  Poly f = fraw.in_ring(ring);
  out.quotients.assign(basis.size(), Poly(ring));
  std::vector<Term> rem;
  while (!f.is_zero()) {
    Term lt = f.leading_term();
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].leading_monomial().divides(lt.mono)) {
        if (!pick || basis[k].size() < basis[*pick].size()) pick = k;
      }
    }
    if (pick) {
      const Poly& g = basis[*pick];
      Monomial m = lt.mono / g.leading_monomial();
      Rational c = lt.coeff / g.leading_coefficient();
      f.sub_mul_term(c, m, g);
      out.quotients[*pick] += Poly::monomial(ring, std::move(m), c);
    } else {
      rem.push_back(std::move(lt));
      f.pop_leading();
    }
  }
  out.remainder = Poly::from_terms(ring, std::move(rem));
  return out;
}

Poly normal_form(const Poly& fraw, std::span<const Poly> basis) {
  if (basis.empty()) return fraw;
  const RingPtr& ring = basis[0].ring();
  Poly f = fraw.in_ring(ring);
  std::vector<Term> rem;
  while (!f.is_zero()) {
    Term lt = f.leading_term();
    const Poly* pick = nullptr;
    for (const auto& g : basis) {
      if (g.leading_monomial().divides(lt.mono)) {
        if (!pick || g.size() < pick->size()) pick = &g;
      }
    }
    if (pick) {
      Monomial m = lt.mono / pick->leading_monomial();
      Rational c = lt.coeff / pick->leading_coefficient();
      f.sub_mul_term(c, m, *pick);
    } else {
      rem.push_back(std::move(lt));
      f.pop_leading();
    }
  }
  return Poly::from_terms(ring, std::move(rem));
}

}  // namespace resolvent
