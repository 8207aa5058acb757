#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resolvent/blowup.hpp"

namespace resolvent {

/// O^n --alpha--> O^m --> G --> 0, alpha an m x n matrix.
struct Presentation {
  MatrixHom alpha;
};

/// Ideal of (m - h)-minors of alpha plus the chart relations; the unit ideal
/// for h >= m.
Ideal fitting_ideal(const Presentation& p, std::size_t h);

/// Whether the Fitting ideals agree for h = 0 .. max(m_P, m_Q).
bool fitting_independence_check(const Presentation& p, const Presentation& q);

struct ResolveOptions {
  std::size_t max_depth = 8;
  ReduceOptions reduce;
  std::optional<std::uint64_t> shuffle_seed;
};

struct LeafResolution {
  std::size_t node = 0;
  ComplexOnChart complex;
  /// certs[i] diagonalizes the pulled-back psi_i.
  std::vector<DiagCert> certs;
  KernelBasis kernel;
  std::vector<std::size_t> cohomology;
};

struct ResolutionResult {
  ComplexOnChart input;
  BlowupTower tower;
  std::vector<LeafResolution> leaves;
  /// Generic ranks h^0 .. h^n, equal on every leaf.
  std::vector<std::size_t> cohomology;
};

/// Blow up level by level from the top map down until every map of the
/// pulled-back complex is diagonalized on every leaf.
ResolutionResult resolve_complex(const ComplexOnChart& complex, const ResolveOptions& options = {});

/// h^i == 0 for every i >= 1.
bool torsion_check(const ResolutionResult& r);

/// Re-check every leaf: certificates verify against the pulled-back complex
/// and the leaf maps match the tower. Returns an empty string on success.
std::string verify_resolution(const ResolutionResult& r);

/// Compares the kernel bases of `r` and `other` on the fiber products of
/// their leaves, where `other` resolves the pullback of r's complex along g.
/// Throws NoCommonLeaf when no pair of leaves overlaps.
bool base_change_verify(const ResolutionResult& r, const RingMap& g, const ResolutionResult& other);

}  // namespace resolvent
