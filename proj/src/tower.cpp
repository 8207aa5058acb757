#include <functional>

#include "resolvent/blowup.hpp"
#include "resolvent/error.hpp"

namespace resolvent {

BlowupTower::BlowupTower(ChartPtr root_chart) : root(std::move(root_chart)) {
  TowerNode node;
  node.chart = root;
  node.from_parent = RingMap::identity(root);
  node.from_root = node.from_parent;
  nodes.push_back(std::move(node));
}

std::vector<std::size_t> BlowupTower::leaves() const {
  std::vector<std::size_t> out;
  if (nodes.empty()) return out;
  std::function<void(std::size_t)> walk = [&](std::size_t n) {
    if (nodes[n].children.empty()) out.push_back(n);
    for (auto c : nodes[n].children) walk(c);
  };
  walk(0);
  return out;
}

bool BlowupTower::is_ancestor(std::size_t ancestor, std::size_t node) const {
  std::optional<std::size_t> cur = node;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = nodes[*cur].parent;
  }
  return false;
}

RingMap BlowupTower::map_between(std::size_t ancestor, std::size_t descendant) const {
  if (!is_ancestor(ancestor, descendant))
    throw Error(ErrorCode::InvalidArgument, "tower nodes are not on one branch");
  RingMap m = RingMap::identity(nodes[ancestor].chart);
  std::vector<std::size_t> path;
  for (std::size_t cur = descendant; cur != ancestor; cur = *nodes[cur].parent) path.push_back(cur);
  for (auto it = path.rbegin(); it != path.rend(); ++it) m = compose(nodes[*it].from_parent, m);
  return m;
}

std::size_t BlowupTower::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

namespace {

void grow(BlowupTower& tower, std::size_t node, StageReducer state, const TowerOptions& options,
          std::vector<LeafCert>& out) {
  auto outcome = state.run();
  if (outcome.finished) {
    out.push_back({node, state.certificate()});
    return;
  }
  const std::size_t depth = tower.nodes[node].depth + 1;
  if (depth > options.max_depth)
    throw Error(ErrorCode::DepthExceeded,
                "blowup depth " + std::to_string(depth) + " exceeds " + std::to_string(options.max_depth) +
                    " on chart " + tower.nodes[node].chart->name() + " at stage " +
                    std::to_string(outcome.stage));
  BlowupOptions bo;
  bo.label = "E" + std::to_string(tower.steps.size() + 1);
  bo.cover_principal = true;
  if (options.shuffle_seed) bo.shuffle_seed = *options.shuffle_seed + tower.steps.size();
  const ChartPtr chart = tower.nodes[node].chart;
  TowerStep record;
  record.blowup = blowup(chart, Ideal(chart->ring(), outcome.center), bo);
  record.node = node;
  record.level = options.level;
  record.stage = outcome.stage;
  const std::size_t step_index = tower.steps.size();
  std::vector<std::size_t> children;
  for (const auto& child : record.blowup.children) {
    TowerNode n;
    n.chart = child.chart;
    n.parent = node;
    n.step = step_index;
    n.from_parent = child.map;
    n.from_root = compose(child.map, tower.nodes[node].from_root);
    n.depth = depth;
    children.push_back(tower.nodes.size());
    tower.nodes.push_back(std::move(n));
  }
  tower.nodes[node].children = children;
  tower.steps.push_back(std::move(record));
  for (std::size_t k = 0; k < children.size(); ++k) {
    const std::size_t c = children[k];
    grow(tower, c, state.pulled_back(tower.nodes[c].from_parent), options, out);
  }
}

}  // namespace

std::vector<LeafCert> grow_tower(BlowupTower& tower, std::size_t node, const MatrixHom& phi,
                                 const TowerOptions& options) {
  if (!tower.nodes.at(node).children.empty())
    throw Error(ErrorCode::InvalidArgument, "tower node is not a leaf");
  if (!phi.chart()->same_ring_as(*tower.nodes[node].chart))
    throw Error(ErrorCode::ChartMismatch, "matrix does not live on the tower node");
  std::vector<LeafCert> out;
  grow(tower, node, StageReducer(phi, options.reduce), options, out);
  return out;
}

DeterminantalTower determinantal_tower(const MatrixHom& phi, const TowerOptions& options) {
  DeterminantalTower t{BlowupTower(phi.chart()), {}};
  t.certs = grow_tower(t.tower, 0, phi, options);
  return t;
}

std::vector<RingMap> tower_leaf_maps(const BlowupTower& tower) {
  std::vector<RingMap> out;
  for (auto leaf : tower.leaves()) out.push_back(tower.nodes[leaf].from_root);
  return out;
}

}  // namespace resolvent
