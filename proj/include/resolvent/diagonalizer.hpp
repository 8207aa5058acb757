#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resolvent/matrix_hom.hpp"

namespace resolvent {

/// U * phi * V = diag(p_0, ..., p_{m-1}) padded with zeros; U and V invertible
/// over the chart, p_i | p_{i+1}. V_inverse is carried for kernel coordinates.
struct DiagCert {
  ChartPtr chart;
  PolyMatrix U;
  PolyMatrix V;
  PolyMatrix V_inverse;
  std::vector<Poly> diag;
  Poly U_det;
  Poly V_det;

  std::size_t rank() const { return diag.size(); }
};

enum class CertIssue {
  None,
  ShapeMismatch,
  ChartMismatch,
  DiagMismatch,
  ZeroDiag,
  NonUnitDet,
  ChainBroken,
  InverseMismatch,
};

std::string to_string(CertIssue issue);

struct CertCheck {
  CertIssue reason = CertIssue::None;
  std::string detail;

  bool ok() const { return reason == CertIssue::None; }
  explicit operator bool() const { return ok(); }
};

CertCheck verify_cert(const MatrixHom& phi, const DiagCert& cert);

struct ReduceOptions {
  std::uint64_t seed = 0;
  int mixing_tries = 3;
};

/// Stagewise factor-and-pivot reduction. Throws NotPrincipal or NoUnitPivot
/// (with the stage in the message) when the chart does not allow it.
DiagCert diagonalize_on_chart(const MatrixHom& phi, const ReduceOptions& options = {});

struct KernelBasis {
  std::vector<std::vector<Poly>> vectors;
  std::size_t rank = 0;
};

/// The last p - m columns of V.
KernelBasis kernel_basis(const DiagCert& cert, std::size_t p);

struct DiagVerdict {
  std::optional<DiagCert> cert;
  std::size_t stage = 0;
  Ideal ideal;

  bool diagonalizable() const { return cert.has_value(); }
};

/// Diagonalize without blowing up; a negative verdict names the first stuck
/// stage and the ideal of its (deflated) block.
DiagVerdict is_locally_diagonalizable(const MatrixHom& phi, const ReduceOptions& options = {});

/// Entrywise image of a certificate along a ring map.
DiagCert pullback_cert(const RingMap& m, const DiagCert& cert);

/// Internal engine shared with the blowup tower. Carries U, V and their
/// inverses, the emitted diagonal and the current block divided by the last
/// pivot, so that a partially reduced state can be pulled back along a blowup.
class StageReducer {
 public:
  enum class Stuck { NotPrincipal, NoUnitPivot, Undecided };

  struct Outcome {
    bool finished = false;
    std::size_t stage = 0;
    Stuck why = Stuck::NotPrincipal;
    /// Nonzero entries of the stuck block, i.e. the stage center.
    std::vector<Poly> center;
  };

  StageReducer(const MatrixHom& phi, const ReduceOptions& options);

  /// Run stages until the residual block vanishes or a stage gets stuck.
  Outcome run();

  StageReducer pulled_back(const RingMap& m) const;
  DiagCert certificate() const;

  const ChartPtr& chart() const { return chart_; }
  std::size_t stage() const { return r_; }

 private:
  StageReducer() = default;

  bool try_pivot();
  bool try_stage();
  bool try_pair_step();
  void mix(std::uint64_t attempt);
  void pivot_at(std::size_t i, std::size_t k, std::vector<Poly> quotients);

  void row_add(std::size_t dst, std::size_t src, const Poly& f);
  void col_add(std::size_t dst, std::size_t src, const Poly& f);
  void row_swap(std::size_t a, std::size_t b);
  void col_swap(std::size_t a, std::size_t b);

  std::vector<std::pair<std::size_t, std::size_t>> nonzero_positions() const;

  ChartPtr chart_;
  ReduceOptions options_;
  std::size_t q_ = 0;
  std::size_t p_ = 0;
  std::size_t r_ = 0;
  PolyMatrix U_, U_inv_, V_, V_inv_;
  std::vector<Poly> diag_;
  Poly last_;
  /// (q - r) x (p - r) residual block divided by last_.
  PolyMatrix block_;
};

}  // namespace resolvent
