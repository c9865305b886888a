#include "ac4/acf.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ac4 {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

AcfFile::AcfFile(const Solution& sol) : field(sol.field) {
  potential_id = sol.potential_id;
  L = sol.grid.length();
  h = sol.grid.spacing();
  theta = sol.theta_imposed;
  r = sol.r;
  residual = sol.residual_sup;
  cls_theta = sol.cls.theta_minus_quarter_pi;
  cls_r = sol.cls.r;
}

void write_acf(std::ostream& out, const AcfFile& f) {
  const int n = f.field.n();
  out << "acf 1\n";
  out << "potential " << f.potential_id << "\n";
  out << "grid " << format_real(f.L) << " " << format_real(f.h) << " " << n
      << "\n";
  out << "theta " << format_real(f.theta) << "\n";
  out << "r " << format_real(f.r) << "\n";
  out << "residual " << format_real(f.residual) << "\n";
  out << "classify " << format_real(f.cls_theta) << " " << format_real(f.cls_r)
      << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_real(f.field(i, j));
    }
    out << '\n';
  }
}

void write_acf(const std::string& path, const AcfFile& f) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open for writing: " + path);
  write_acf(out, f);
}

namespace {

std::string expect_line(std::istream& in, int& lineno) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("acf: unexpected end of file", lineno + 1);
  ++lineno;
  return line;
}

}  // namespace

AcfFile read_acf(std::istream& in) {
  int lineno = 0;
  AcfFile f;

  if (expect_line(in, lineno) != "acf 1")
    throw ParseError("acf: bad magic, expected 'acf 1'", lineno);

  {
    std::istringstream ls(expect_line(in, lineno));
    std::string key;
    if (!(ls >> key >> f.potential_id) || key != "potential")
      throw ParseError("acf: expected 'potential <id>'", lineno);
  }
  int n = 0;
  {
    std::istringstream ls(expect_line(in, lineno));
    std::string key;
    if (!(ls >> key >> f.L >> f.h >> n) || key != "grid")
      throw ParseError("acf: expected 'grid <L> <h> <n>'", lineno);
    if (std::abs(f.L / f.h + 1.0 - n) > 1e-6)
      throw ParseError("acf: n inconsistent with L/h + 1", lineno);
  }
  auto read_keyed = [&](const char* key, double* a, double* b) {
    std::istringstream ls(expect_line(in, lineno));
    std::string k;
    ls >> k;
    if (k != key || !(ls >> *a) || (b && !(ls >> *b)))
      throw ParseError(std::string("acf: expected '") + key + "' line", lineno);
  };
  read_keyed("theta", &f.theta, nullptr);
  read_keyed("r", &f.r, nullptr);
  read_keyed("residual", &f.residual, nullptr);
  read_keyed("classify", &f.cls_theta, &f.cls_r);

  f.field = Field(QuadrantGrid(f.L, f.h));
  if (f.field.n() != n) throw ParseError("acf: grid shape mismatch", lineno);
  for (int i = 0; i < n; ++i) {
    std::istringstream ls(expect_line(in, lineno));
    for (int j = 0; j < n; ++j)
      if (!(ls >> f.field(i, j)))
        throw ParseError("acf: expected " + std::to_string(n) +
                             " values in field row " + std::to_string(i),
                         lineno);
    double extra;
    if (ls >> extra)
      throw ParseError("acf: trailing values in field row", lineno);
  }
  return f;
}

AcfFile read_acf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open for reading: " + path);
  return read_acf(in);
}

void write_curve_csv(std::ostream& out, const ModuliCurve& curve) {
  out << "theta_imposed,theta_extracted,r,residual,margin,index,file\n";
  for (const CurveSample& s : curve.samples) {
    out << format_real(s.theta_imposed) << ',' << format_real(s.theta_extracted)
        << ',' << format_real(s.r) << ',' << format_real(s.residual) << ',';
    if (std::isnan(s.margin))
      out << "";
    else
      out << format_real(s.margin);
    out << ',';
    if (s.morse_index) out << *s.morse_index;
    out << ',' << s.file << '\n';
  }
}

void write_spectrum_csv_header(std::ostream& out, int k) {
  out << "sector,R";
  for (int i = 1; i <= k; ++i) out << ",lambda" << i;
  out << '\n';
}

void write_spectrum_csv_row(std::ostream& out, const SpectrumReport& rep) {
  out << sector_code(rep.sector) << ',' << format_real(rep.R);
  for (double v : rep.eigenvalues) out << ',' << format_real(v);
  out << '\n';
}

}  // namespace ac4
