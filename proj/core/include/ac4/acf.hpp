#pragma once

#include <iosfwd>
#include <string>

#include "ac4/continuation.hpp"
#include "ac4/solver.hpp"
#include "ac4/spectra.hpp"

namespace ac4 {

/// ACF v1: ASCII solution file.
///   acf 1
///   potential <id>
///   grid <L> <h> <n>
///   theta <val>
///   r <val>
///   residual <val>
///   classify <val> <val>
/// followed by n lines of n field values (row i fixed per line). All reals
/// are written with 17 significant digits, so load/save round-trips exactly.
struct AcfFile {
  std::string potential_id = "quartic";
  double L = 0, h = 0;
  double theta = 0, r = 0, residual = 0;
  double cls_theta = 0, cls_r = 0;
  Field field;

  AcfFile() : field(QuadrantGrid(1.0, 0.5)) {}
  explicit AcfFile(const Solution& sol);
};

void write_acf(std::ostream& out, const AcfFile& f);
void write_acf(const std::string& path, const AcfFile& f);
AcfFile read_acf(std::istream& in);        // throws ParseError
AcfFile read_acf(const std::string& path); // throws ParseError / DomainError

/// Curve CSV: theta_imposed,theta_extracted,r,residual,margin,index,file
void write_curve_csv(std::ostream& out, const ModuliCurve& curve);

/// Spectrum CSV rows: sector,R,lambda_1..lambda_k
void write_spectrum_csv_header(std::ostream& out, int k);
void write_spectrum_csv_row(std::ostream& out, const SpectrumReport& rep);

/// 17-significant-digit formatting used across all file output.
std::string format_real(double v);

}  // namespace ac4
