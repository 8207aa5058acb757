#include "resolvent/diagonalizer.hpp"

#include "resolvent/error.hpp"

namespace resolvent {

std::string to_string(CertIssue issue) {
  switch (issue) {
    case CertIssue::None: return "None";
    case CertIssue::ShapeMismatch: return "ShapeMismatch";
    case CertIssue::ChartMismatch: return "ChartMismatch";
    case CertIssue::DiagMismatch: return "DiagMismatch";
    case CertIssue::ZeroDiag: return "ZeroDiag";
    case CertIssue::NonUnitDet: return "NonUnitDet";
    case CertIssue::ChainBroken: return "ChainBroken";
    case CertIssue::InverseMismatch: return "InverseMismatch";
  }
  return "Unknown";
}

namespace {

CertCheck fail(CertIssue reason, std::string detail) { return {reason, std::move(detail)}; }

bool square(const PolyMatrix& m, std::size_t n) { return m.rows() == n && m.cols() == n; }

}  // namespace

CertCheck verify_cert(const MatrixHom& phi, const DiagCert& cert) {
  const std::size_t q = phi.rows(), p = phi.cols();
  if (!cert.chart) return fail(CertIssue::ChartMismatch, "certificate has no chart");
  if (!cert.chart->same_ring_as(*phi.chart()))
    return fail(CertIssue::ChartMismatch, "certificate chart differs from the matrix chart");
  const auto& chart = phi.chart();
  if (!square(cert.U, q) || !square(cert.V, p) || !square(cert.V_inverse, p) ||
      cert.diag.size() > std::min(p, q))
    return fail(CertIssue::ShapeMismatch, "certificate matrices have the wrong shape");

  Poly du = chart->reduce(determinant(cert.U));
  if (!(du == chart->reduce(cert.U_det)) || !chart->is_unit(du))
    return fail(CertIssue::NonUnitDet, "det U = " + du.to_string());
  Poly dv = chart->reduce(determinant(cert.V));
  if (!(dv == chart->reduce(cert.V_det)) || !chart->is_unit(dv))
    return fail(CertIssue::NonUnitDet, "det V = " + dv.to_string());

  for (std::size_t i = 0; i < cert.diag.size(); ++i)
    if (chart->is_zero(cert.diag[i]))
      return fail(CertIssue::ZeroDiag, "diagonal entry " + std::to_string(i) + " is zero");

  PolyMatrix product = reduce(chart, cert.U * phi.matrix() * cert.V);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < p; ++c) {
      Poly expected = (r == c && r < cert.diag.size()) ? chart->reduce(cert.diag[r]) : chart->zero();
      if (!(product(r, c) == expected))
        return fail(CertIssue::DiagMismatch, "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                                 ") of U*phi*V is " + product(r, c).to_string());
    }

  for (std::size_t i = 0; i + 1 < cert.diag.size(); ++i)
    if (!chart->divide(cert.diag[i + 1], cert.diag[i]))
      return fail(CertIssue::ChainBroken, "entry " + std::to_string(i) + " does not divide entry " +
                                              std::to_string(i + 1));

  if (!(reduce(chart, cert.V * cert.V_inverse) == PolyMatrix::identity(chart->ring(), p)))
    return fail(CertIssue::InverseMismatch, "V * V_inverse is not the identity");
  return {};
}

DiagCert diagonalize_on_chart(const MatrixHom& phi, const ReduceOptions& options) {
  StageReducer reducer(phi, options);
  auto outcome = reducer.run();
  if (outcome.finished) return reducer.certificate();
  Ideal center(phi.chart()->ring(), outcome.center);
  const std::string where = "stage " + std::to_string(outcome.stage) + " on chart " + phi.chart()->name();
  switch (outcome.why) {
    case StageReducer::Stuck::NoUnitPivot:
      throw Error(ErrorCode::NoUnitPivot, "no unit pivot at " + where + " for " + center.to_string());
    case StageReducer::Stuck::Undecided:
      throw Error(ErrorCode::UndecidedPrincipality,
                  "principality of " + center.to_string() + " undecided at " + where);
    case StageReducer::Stuck::NotPrincipal:
      break;
  }
  throw Error(ErrorCode::NotPrincipal, center.to_string() + " is not principal at " + where);
}

KernelBasis kernel_basis(const DiagCert& cert, std::size_t p) {
  KernelBasis k;
  const std::size_t m = cert.rank();
  if (m > p) throw Error(ErrorCode::InvalidArgument, "certificate rank exceeds the source rank");
  k.rank = p - m;
  for (std::size_t c = m; c < p; ++c) {
    std::vector<Poly> v;
    for (std::size_t r = 0; r < p; ++r) v.push_back(cert.chart->reduce(cert.V(r, c)));
    k.vectors.push_back(std::move(v));
  }
  return k;
}

DiagVerdict is_locally_diagonalizable(const MatrixHom& phi, const ReduceOptions& options) {
  StageReducer reducer(phi, options);
  auto outcome = reducer.run();
  DiagVerdict v;
  v.stage = outcome.stage;
  if (outcome.finished) {
    v.cert = reducer.certificate();
    v.ideal = Ideal::zero(phi.chart()->ring());
  } else {
    v.ideal = Ideal(phi.chart()->ring(), outcome.center);
  }
  return v;
}

DiagCert pullback_cert(const RingMap& m, const DiagCert& cert) {
  if (!cert.chart->same_ring_as(*m.source()))
    throw Error(ErrorCode::ChartMismatch, "certificate does not live on the source of the map");
  DiagCert out;
  out.chart = m.target();
  out.U = map_matrix(m, cert.U);
  out.V = map_matrix(m, cert.V);
  out.V_inverse = map_matrix(m, cert.V_inverse);
  for (const auto& d : cert.diag) out.diag.push_back(apply_map(m, d));
  out.U_det = apply_map(m, cert.U_det);
  out.V_det = apply_map(m, cert.V_det);
  return out;
}

}  // namespace resolvent
