#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "resolvent/resolver.hpp"

namespace resolvent {

/// phi: sum O(a_i) -> sum O(b_j) on projective space; entry (j, i) is a form
/// of degree b_j - a_i, or zero.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(RingPtr ring, std::vector<long> source_twists, std::vector<long> target_twists, PolyMatrix entries);

  const RingPtr& ring() const { return ring_; }
  const std::vector<long>& source_twists() const { return source_; }
  const std::vector<long>& target_twists() const { return target_; }
  const PolyMatrix& entries() const { return entries_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }

  /// Source basis reordered: column k of the result is column order[k] here.
  GradedMatrix permuted(const std::vector<std::size_t>& order) const;

 private:
  RingPtr ring_;
  std::vector<long> source_;
  std::vector<long> target_;
  PolyMatrix entries_;
};

/// Twists c_k with ker = sum O(c_k), ascending. Searches syzygy degrees up to
/// `degree_cap` above the first possible one.
std::vector<long> splitting_type_P1(const GradedMatrix& m, long degree_cap = 40);

struct DivisorClass {
  long h = 0;
  std::vector<long> e;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(long k, const DivisorClass& a);

using ProjectivePoint = std::array<Rational, 3>;

struct Geometry {
  enum class Kind { P1, P2, BlownP2 };
  Kind kind = Kind::P2;
  std::vector<ProjectivePoint> points;

  static Geometry p1() { return {Kind::P1, {}}; }
  static Geometry p2() { return {Kind::P2, {}}; }
  /// Throws InvalidArgument for repeated or zero points.
  static Geometry blown_p2(std::vector<ProjectivePoint> points);

  std::size_t dimension() const { return kind == Kind::P1 ? 1 : 2; }
  std::size_t exceptional_count() const { return points.size(); }
};

std::string to_string(Geometry::Kind kind);

/// H^2 = 1, E_i^2 = -1, all other products zero. Surfaces only.
long intersection_pairing(const Geometry& g, const DivisorClass& a, const DivisorClass& b);

/// c_0 = 1 implicit; c2 is a degree and is zero on curves.
struct ChernTotal {
  DivisorClass c1;
  long c2 = 0;
};

/// Total Chern class of a sum of line bundles.
ChernTotal chern_of_split(const Geometry& g, const std::vector<DivisorClass>& classes);

/// Formal difference of split bundles: c = prod(1 + plus) / prod(1 + minus),
/// truncated at the dimension. Rank is |plus| - |minus|.
struct VirtualSplit {
  std::vector<DivisorClass> plus;
  std::vector<DivisorClass> minus;

  long rank() const { return static_cast<long>(plus.size()) - static_cast<long>(minus.size()); }
};

ChernTotal chern_of_virtual(const Geometry& g, const VirtualSplit& v);

/// Kernel data: splitting twists on P1, or a virtual split class on surfaces.
using KernelClasses = std::variant<std::vector<long>, VirtualSplit>;

/// Degree of the top Chern class of the kernel when its rank equals the
/// dimension; 0 when the rank exceeds it. Throws NotTorsion without
/// torsion_ok, RankDimensionMismatch when the rank is below the dimension.
long euler_number(const Geometry& g, const KernelClasses& kernel, bool torsion_ok);

/// Order of vanishing of the row ideal along the exceptional divisor over
/// each listed point. Throws UnlistedBasePoint for base points not in the
/// geometry and InfinitelyNearPoint when one blowup does not free the system.
std::vector<long> exceptional_orders(const Geometry& g, const GradedMatrix& row);

/// Affine chart where the last homogeneous variable is 1.
MatrixHom dehomogenize(const GradedMatrix& m);

struct EulerOptions {
  long degree_cap = 40;
  std::size_t max_depth = 8;
  /// Permutes the source basis, the blown points and the blowup centers.
  std::uint64_t seed = 0;
};

struct EulerRun {
  Geometry geometry;
  std::vector<long> twists;
  std::vector<long> orders;
  ChernTotal chern;
  long kernel_rank = 0;
  long number = 0;
  bool torsion_ok = false;
  ResolutionResult resolution;
};

/// Resolves the dehomogenized complex for the torsion hypothesis, then computes
/// the Euler number: graded syzygies on P1, the kernel of a row map onto
/// dH - sum k_P E_P on surfaces.
EulerRun compute_euler(const Geometry& g, const GradedMatrix& m, const EulerOptions& options = {});

struct IndependenceReport {
  std::vector<std::uint64_t> seeds;
  std::vector<long> numbers;
  bool agree = true;
};

IndependenceReport independence_harness(const Geometry& g, const GradedMatrix& m,
                                        const std::vector<std::uint64_t>& seeds, const EulerOptions& options = {});

/// Fisher-Yates driven by mt19937_64(seed); seed 0 is the identity.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace resolvent
