#include <algorithm>
#include <random>
#include <set>

#include "resolvent/blowup.hpp"
#include "resolvent/error.hpp"

namespace resolvent {

namespace {

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_string() < b.to_string();
}

std::string base_name(const std::string& name) {
  auto pos = name.find('_');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

std::string label_number(const std::string& label) {
  std::string digits;
  for (char c : label)
    if (c >= '0' && c <= '9') digits += c;
  return digits.empty() ? "0" : digits;
}

std::string fresh_name(std::string candidate, const std::set<std::string>& taken) {
  if (!taken.count(candidate)) return candidate;
  for (int k = 2;; ++k) {
    std::string c = candidate + "_" + std::to_string(k);
    if (!taken.count(c)) return c;
  }
}

/// A variable occurring in g only as a single term c*v (c constant); g can be
/// solved for it.
std::optional<std::size_t> solvable_variable(const Poly& g) {
  const std::size_t n = g.nvars();
  for (std::size_t v = n; v-- > 0;) {
    if (!g.involves(v)) continue;
    std::size_t occurrences = 0;
    bool linear = true;
    for (const auto& t : g.terms()) {
      if (t.mono[v] == 0) continue;
      ++occurrences;
      if (t.mono[v] != 1 || t.mono.degree() != 1) linear = false;
    }
    if (occurrences == 1 && linear) return v;
  }
  return std::nullopt;
}

struct ReesChart {
  RingPtr ring;
  std::vector<Poly> relations;
  std::vector<Poly> images;  // parent variables -> ring
};

/// Substitute solvable variables away until none is left.
void simplify(ReesChart& c) {
  while (true) {
    std::optional<std::size_t> var;
    std::size_t which = 0;
    for (; which < c.relations.size(); ++which) {
      var = solvable_variable(c.relations[which]);
      if (var) break;
    }
    if (!var) return;
    const Poly solved = c.relations[which];
    const std::size_t v = *var;
    Rational coeff;
    Poly rest(c.ring);
    for (const auto& t : solved.terms()) {
      if (t.mono[v] != 0) coeff = t.coeff;
      else rest += Poly::monomial(c.ring, t.mono, t.coeff);
    }
    std::vector<std::string> names;
    std::vector<std::size_t> index_map(c.ring->nvars(), kNoVariable);
    for (std::size_t i = 0; i < c.ring->nvars(); ++i) {
      if (i == v) continue;
      index_map[i] = names.size();
      names.push_back(c.ring->name(i));
    }
    auto smaller = PolyRing::make(names, c.ring->order());
    Poly value = embed(rest * (Rational(-1) / coeff), smaller, index_map);
    std::vector<Poly> subst;
    for (std::size_t i = 0; i < c.ring->nvars(); ++i)
      subst.push_back(i == v ? value : Poly::variable(smaller, index_map[i]));
    std::vector<Poly> rels;
    for (std::size_t k = 0; k < c.relations.size(); ++k) {
      if (k == which) continue;
      Poly h = c.relations[k].substitute(subst, smaller);
      if (!h.is_zero()) rels.push_back(std::move(h));
    }
    for (auto& img : c.images) img = img.substitute(subst, smaller);
    c.ring = smaller;
    Ideal I(smaller, rels);
    c.relations = I.is_zero() ? std::vector<Poly>{} : I.basis();
  }
}

}  // namespace

std::vector<Poly> prune_generators(const ChartPtr& chart, const std::vector<Poly>& gens,
                                   std::optional<std::uint64_t> shuffle_seed) {
  std::vector<Poly> out;
  std::set<std::string> seen;
  for (const auto& g : gens) {
    Poly r = chart->reduce(g);
    if (r.is_zero()) continue;
    r = r.monic();
    if (seen.insert(r.to_string()).second) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng() % i]);
  }
  for (std::size_t k = out.size(); k-- > 0 && out.size() > 1;) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != k) others.push_back(out[j]);
    for (const auto& r : chart->relations().generators()) others.push_back(r);
    if (Ideal(chart->ring(), others).contains(out[k])) out.erase(out.begin() + static_cast<long>(k));
  }
  return out;
}

BlowupStep blowup(const ChartPtr& chart, const Ideal& center, const BlowupOptions& options) {
  BlowupStep step;
  step.parent = chart;
  step.center = center;
  step.label = options.label;
  step.generators = prune_generators(chart, center.generators(), options.shuffle_seed);
  if (step.generators.empty())
    throw Error(ErrorCode::ZeroCenter, "center " + center.to_string() + " vanishes on chart " + chart->name());

  const auto& ring = chart->ring();
  const std::size_t n = ring->nvars();

  std::optional<Poly> principal;
  if (step.generators.size() == 1) {
    principal = step.generators[0];
  } else if (!options.cover_principal) {
    try {
      principal = chart->principal_generator(step.generators);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndecidedPrincipality) throw;
    }
  }
  if (principal) {
    auto exceptionals = chart->exceptionals();
    exceptionals.push_back({options.label, *principal});
    auto child = std::make_shared<const Chart>(ring, chart->relations().generators(), exceptionals,
                                               chart->name() + ".1");
    std::vector<Poly> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::variable(ring, i));
    RingMap map(chart, child, images);
    step.children.push_back({child, map, child->reduce(*principal)});
    return step;
  }

  const std::string num = label_number(options.label);
  std::set<std::string> taken(ring->names().begin(), ring->names().end());
  std::vector<std::string> new_names;
  for (std::size_t j = 0; j < step.generators.size(); ++j) {
    auto v = step.generators[j].as_variable();
    std::string stem = v ? base_name(ring->name(*v)) : "u" + std::to_string(j + 1);
    std::string name = fresh_name(stem + "_" + num, taken);
    taken.insert(name);
    new_names.push_back(name);
  }

  std::size_t index = 0;
  for (std::size_t i = 0; i < step.generators.size(); ++i) {
    std::vector<std::string> names = ring->names();
    std::vector<std::size_t> slot(step.generators.size(), kNoVariable);
    for (std::size_t j = 0; j < step.generators.size(); ++j) {
      if (j == i) continue;
      slot[j] = names.size();
      names.push_back(new_names[j]);
    }
    auto big = PolyRing::make(names, ring->order());
    std::vector<std::size_t> lift(n);
    for (std::size_t k = 0; k < n; ++k) lift[k] = k;
    std::vector<Poly> gens;
    for (const auto& r : chart->relations().generators()) gens.push_back(embed(r, big, lift));
    const Poly gi = embed(step.generators[i], big, lift);
    for (std::size_t j = 0; j < step.generators.size(); ++j) {
      if (j == i) continue;
      gens.push_back(gi * Poly::variable(big, slot[j]) - embed(step.generators[j], big, lift));
    }
    Ideal saturated = saturate(Ideal(big, gens), gi);
    if (saturated.is_unit()) continue;

    ReesChart rc;
    rc.ring = big;
    rc.relations = saturated.is_zero() ? std::vector<Poly>{} : Ideal(big, saturated.generators()).basis();
    for (std::size_t k = 0; k < n; ++k) rc.images.push_back(Poly::variable(big, k));
    simplify(rc);

    std::vector<Exceptional> exceptionals;
    auto provisional = std::make_shared<const Chart>(rc.ring, rc.relations);
    for (const auto& e : chart->exceptionals())
      exceptionals.push_back({e.label, provisional->reduce(e.equation.substitute(rc.images, rc.ring))});
    Poly exc = provisional->reduce(step.generators[i].substitute(rc.images, rc.ring));
    exceptionals.push_back({options.label, exc});
    ++index;
    auto child = std::make_shared<const Chart>(rc.ring, rc.relations, exceptionals,
                                               chart->name() + "." + std::to_string(index));
    RingMap map(chart, child, rc.images);
    step.children.push_back({child, std::move(map), child->reduce(exc)});
  }
  return step;
}

}  // namespace resolvent
