#pragma once

// Parameter sweeps and density dumps behind the CLI. Rows come out in curve order,
// then axis order, whatever order the worker pool finishes them in.
//
// Sweep CSV (schema v1):
//   axis_value,curve_id,closed_form,quadrature,mc_mean,mc_stderr,mc_exact_mean,mc_exact_stderr
// Cells of modes that were not run are empty; the mc_exact_* pair is only filled by SOP sweeps.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vlcsec/config.hpp"

namespace vlcsec {

struct SweepRow {
  double axis_value = 0.0;
  std::string curve_id;
  std::optional<double> closed_form;
  std::optional<double> quadrature;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<double> mc_exact_mean;
  std::optional<double> mc_exact_stderr;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// One parameter assignment per row of the sweep, in output order.
struct SweepPoint {
  double axis_value;
  std::string curve_id;
  ModelParams params;
};
std::vector<SweepPoint> expand_sweep(const RunConfig& cfg);

SweepTable run_asc_sweep(const RunConfig& cfg);
SweepTable run_sop_sweep(const RunConfig& cfg);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

void write_sweep_csv(const SweepTable& table, std::ostream& out);

struct PdfRow {
  std::string curve_id;
  double x = 0.0;
  double density = 0.0;
  double support_lo = 0.0;
  double support_hi = 0.0;
};

/// cfg.pdf.points geometric grid points over the support of the chosen density, for each curve.
std::vector<PdfRow> run_pdf_dump(const RunConfig& cfg);

/// columns: curve_id,x,density,support_lo,support_hi
void write_pdf_csv(const std::vector<PdfRow>& rows, std::ostream& out);

}  // namespace vlcsec
