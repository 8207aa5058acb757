#include "resolvent/chart.hpp"

#include "resolvent/error.hpp"

namespace resolvent {

Chart::Chart(RingPtr ring, const std::vector<Poly>& relations, std::vector<Exceptional> exceptionals,
             std::string name)
    : ring_(std::move(ring)), exceptionals_(std::move(exceptionals)), name_(std::move(name)) {
  Ideal given(ring_, relations);
  relations_ = given.is_zero() ? Ideal::zero(ring_) : Ideal(ring_, given.basis());
  if (relations_.is_unit())
    throw Error(ErrorCode::InvalidArgument, "chart " + name_ + " has unit relations ideal");
  for (auto& e : exceptionals_) {
    e.equation = reduce(e.equation);
    if (e.equation.is_zero())
      throw Error(ErrorCode::InvalidArgument,
                  "exceptional " + e.label + " vanishes on chart " + name_);
  }
}

ChartPtr Chart::affine(std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const Chart>(PolyRing::make(std::move(vars), order), std::vector<Poly>{});
}

bool Chart::is_unit(const Poly& u) const { return resolvent::is_unit(reduce(u), relations_); }

std::optional<Poly> Chart::inverse(const Poly& u) const {
  return inverse_modulo(reduce(u), relations_);
}

std::optional<Poly> Chart::divide(const Poly& f, const Poly& g) const {
  return divide_modulo(reduce(f), reduce(g), relations_);
}

std::optional<Poly> Chart::principal_generator(const std::vector<Poly>& gens) const {
  auto g = is_principal(Ideal(ring_, gens), relations_);
  if (g) return reduce(*g);
  return g;
}

Poly Chart::parse(std::string_view text) const { return reduce(parse_poly(text, ring_)); }

Poly Chart::variable(const std::string& name) const {
  auto i = ring_->index_of(name);
  if (!i) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  return Poly::variable(ring_, *i);
}

bool Chart::same_ring_as(const Chart& other) const {
  if (this == &other) return true;
  if (!(*ring_ == *other.ring_)) return false;
  const auto& a = relations_.generators();
  const auto& b = other.relations_.generators();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

RingMap::RingMap(ChartPtr source, ChartPtr target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->nvars())
    throw Error(ErrorCode::ContextMismatch, "ring map needs one image per source variable");
  for (auto& p : images_) {
    if (p.nvars() != target_->nvars())
      throw Error(ErrorCode::ContextMismatch, "ring map image outside the target ring");
    p = target_->reduce(p.in_ring(target_->ring()));
  }
  for (const auto& r : source_->relations().generators())
    if (!apply_map(*this, r).is_zero())
      throw Error(ErrorCode::InvalidArgument, "relation " + r.to_string() + " of chart " +
                                                  source_->name() + " does not map to zero");
}

RingMap::RingMap(ChartPtr source, ChartPtr target, std::vector<Poly> images, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

RingMap RingMap::identity(const ChartPtr& chart) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < chart->nvars(); ++i)
    images.push_back(Poly::variable(chart->ring(), i));
  return RingMap(chart, chart, std::move(images), Unchecked{});
}

Poly apply_map(const RingMap& m, const Poly& f) {
  if (f.is_zero()) return m.target()->zero();
  if (f.nvars() != m.source()->nvars())
    throw Error(ErrorCode::ContextMismatch, "polynomial is not in the source ring of the map");
  return m.target()->reduce(f.substitute(m.images(), m.target()->ring()));
}

RingMap compose(const RingMap& outer, const RingMap& inner) {
  if (!inner.target()->same_ring_as(*outer.source()))
    throw Error(ErrorCode::ChartMismatch, "maps do not compose");
  std::vector<Poly> images;
  for (const auto& p : inner.images()) images.push_back(apply_map(outer, p));
  return RingMap(inner.source(), outer.target(), std::move(images), RingMap::Unchecked{});
}

Ideal pull_ideal(const RingMap& m, const Ideal& ideal) {
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(apply_map(m, g));
  for (const auto& r : m.target()->relations().generators()) gens.push_back(r);
  return Ideal(m.target()->ring(), std::move(gens));
}

bool is_dominant_heuristic(const RingMap& m) {
  const auto& src = m.source();
  const auto& tgt = m.target();
  const std::size_t nt = tgt->nvars();
  const std::size_t ns = src->nvars();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nt; ++i) names.push_back("__t" + std::to_string(i));
  for (std::size_t i = 0; i < ns; ++i) names.push_back("__s" + std::to_string(i));
  auto big = PolyRing::make(names);
  std::vector<std::size_t> tmap(nt), smap(ns);
  for (std::size_t i = 0; i < nt; ++i) tmap[i] = i;
  for (std::size_t i = 0; i < ns; ++i) smap[i] = nt + i;
  std::vector<Poly> gens;
  for (const auto& r : tgt->relations().generators()) gens.push_back(embed(r, big, tmap));
  for (std::size_t i = 0; i < ns; ++i)
    gens.push_back(Poly::variable(big, nt + i) - embed(m.images()[i], big, tmap));
  std::vector<std::size_t> keep(smap);
  Ideal kernel = eliminate(Ideal(big, gens), keep);
  std::vector<std::size_t> back(nt + ns, kNoVariable);
  for (std::size_t i = 0; i < ns; ++i) back[nt + i] = i;
  for (const auto& k : kernel.generators())
    if (!src->is_zero(embed(k, src->ring(), back))) return false;
  return true;
}

}  // namespace resolvent
