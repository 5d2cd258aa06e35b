#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "levlab/aharonov_bohm.hpp"
#include "levlab/winding.hpp"

namespace levlab::aharonov_bohm {

/// c0 + c1 alpha.
struct Affine {
  double c0 = 0.0;
  double c1 = 0.0;
  double at(double alpha) const { return c0 + c1 * alpha; }
};

std::string to_string(const Affine& a);

enum class Family { D_zero, C_zero, E_full_rank, E_det_zero, KerD_dim1 };
enum class AlphaRegime { Below, Half, Above };

std::string to_string(Family f);
std::string to_string(AlphaRegime r);
AlphaRegime regime_of(double alpha);

/// One row of the case tables: condition, bound-state count, (w1, w2, w3).
struct TableRow {
  int table = 0;  ///< 1..6
  int row = 0;    ///< 1-based within the table
  std::string condition;
  int count = 0;
  std::array<Affine, 3> w;
  std::string id() const { return "T" + std::to_string(table) + "." + std::to_string(row); }
};

const std::vector<TableRow>& table_rows();
const TableRow& table_row(int table, int row);

struct CaseDescriptor {
  Family family = Family::D_zero;
  AlphaRegime regime = AlphaRegime::Below;
  std::optional<double> e11, e22, trace_e, det_e;  ///< when det D != 0
  std::optional<double> ell;                       ///< when dim Ker D = 1
  std::optional<Complex> p1, p2;
  const TableRow* row = nullptr;
};

/// Finds the unique table row. Quantities within 1e-12 (relative) of a row
/// boundary count as exactly on it; those in (1e-12, 1e-10] are rejected with
/// DegenerateClassification.
CaseDescriptor classify_case(const AdmissiblePair& pair, double alpha);

struct ABLevinsonRow {
  const TableRow* row = nullptr;
  double alpha = 0.0;
  winding::WindingReport computed;
  int bound_states = 0;  ///< from CD*
  double w_residual = 0.0;
  double total_residual = 0.0;
  bool passed = false;
};

ABLevinsonRow levinson_verify(const AdmissiblePair& pair, double alpha, double tol,
                              const winding::PhaseOptions& opt = {});

/// Deterministic witness pair for a row, with the flux values it is checked at.
struct RowWitness {
  const TableRow* row;
  AdmissiblePair pair;
  std::vector<double> alphas;
};

std::vector<RowWitness> representative_pairs();

/// Pair with dim Ker D = 1 and Ker D spanned by p = (p1, p2) (normalized):
/// D = q q*, C = ell q q* + p p* with q orthogonal to p.
AdmissiblePair kernel_pair(double ell, double p1, double p2);

/// C = D0 E for a fixed invertible D0.
AdmissiblePair pair_from_e(const Mat2& E);

}  // namespace levlab::aharonov_bohm
