#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resolvent/diagonalizer.hpp"

namespace resolvent {

struct BlowupChild {
  ChartPtr chart;
  RingMap map;  // parent -> child
  Poly exceptional;
};

struct BlowupStep {
  ChartPtr parent;
  Ideal center;
  std::string label;
  std::vector<Poly> generators;  // pruned, in chart order
  std::vector<BlowupChild> children;
};

struct BlowupOptions {
  std::string label = "E1";
  /// Build Rees charts even when the center is principal (an open cover).
  bool cover_principal = false;
  /// Shuffle the center generators before pruning.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Nonzero generators modulo relations, made monic, deduplicated, sorted by
/// (degree, size, serialization), optionally shuffled, then stripped of any
/// generator lying in the ideal of the remaining ones.
std::vector<Poly> prune_generators(const ChartPtr& chart, const std::vector<Poly>& gens,
                                   std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// One Rees chart per pruned generator; a principal center yields one child
/// isomorphic to the parent. Throws ZeroCenter if the center vanishes.
BlowupStep blowup(const ChartPtr& chart, const Ideal& center, const BlowupOptions& options = {});

struct TowerNode {
  ChartPtr chart;
  std::optional<std::size_t> parent;
  std::optional<std::size_t> step;  // the step that created this node
  RingMap from_parent;
  RingMap from_root;
  std::size_t depth = 0;
  std::vector<std::size_t> children;
};

struct TowerStep {
  BlowupStep blowup;
  std::size_t node = 0;
  std::size_t level = 0;
  std::size_t stage = 0;
};

struct BlowupTower {
  ChartPtr root;
  std::vector<TowerNode> nodes;
  std::vector<TowerStep> steps;

  explicit BlowupTower(ChartPtr root_chart);
  BlowupTower() = default;

  /// Childless nodes in depth-first order.
  std::vector<std::size_t> leaves() const;
  /// Composite map from an ancestor node to a descendant node.
  RingMap map_between(std::size_t ancestor, std::size_t descendant) const;
  bool is_ancestor(std::size_t ancestor, std::size_t node) const;
  std::size_t depth() const;
};

struct TowerOptions {
  std::size_t max_depth = 8;
  ReduceOptions reduce;
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t level = 0;
};

struct LeafCert {
  std::size_t node;
  DiagCert cert;
};

/// Blow up below `node` until phi (a matrix on that node's chart) is
/// diagonalized on every new leaf; returns the certificates in leaf order.
std::vector<LeafCert> grow_tower(BlowupTower& tower, std::size_t node, const MatrixHom& phi,
                                 const TowerOptions& options);

struct DeterminantalTower {
  BlowupTower tower;
  std::vector<LeafCert> certs;
};

DeterminantalTower determinantal_tower(const MatrixHom& phi, const TowerOptions& options = {});

/// Root-to-leaf maps in leaf order.
std::vector<RingMap> tower_leaf_maps(const BlowupTower& tower);

}  // namespace resolvent
