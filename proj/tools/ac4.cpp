// Command-line driver for the 4-ended Allen-Cahn toolbox.
//
// Exit codes: 0 success, 1 usage/file error, 2 solver or diagnostic failure.
// Failures print one machine-parsable line `error: <kind>: <detail>` on
// stderr. Identical invocations produce identical output bytes.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ac4/acf.hpp"
#include "ac4/continuation.hpp"
#include "ac4/nodal.hpp"
#include "ac4/solver.hpp"
#include "ac4/spectra.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RunConfig {
  double L = 30.0;
  double h = 0.1;
  std::string potential = "quartic";  // or path to a u,F,dF,ddF csv
  double newton_tol = 1e-9;
  int max_newton = 30;
  double r_tol = 1e-6;
  int max_r_iter = 20;
  int jobs = 1;
  double theta_guard = 0.15;
  bool unsafe_theta = false;
};

ac4::SolveOptions solve_options(const RunConfig& cfg) {
  ac4::SolveOptions o;
  o.newton_tol = cfg.newton_tol;
  o.max_newton = cfg.max_newton;
  o.r_tol = cfg.r_tol;
  o.max_r_iter = cfg.max_r_iter;
  return o;
}

ac4::Potential load_potential(const RunConfig& cfg) {
  if (cfg.potential == "quartic") return ac4::Potential::quartic();
  std::ifstream in(cfg.potential);
  if (!in) throw ac4::DomainError("cannot open potential csv: " + cfg.potential);
  return ac4::Potential::from_csv(in);
}

void check_theta(const RunConfig& cfg, double theta) {
  if (cfg.unsafe_theta) {
    if (!(theta > 0 && theta < kPi / 2))
      throw ac4::DomainError("theta must lie in (0, pi/2)");
    return;
  }
  if (!(theta >= cfg.theta_guard && theta <= kPi / 2 - cfg.theta_guard)) {
    std::ostringstream msg;
    msg << "theta must lie in [" << cfg.theta_guard << ", "
        << (kPi / 2 - cfg.theta_guard)
        << "]; pass --unsafe-theta to lift the guard";
    throw ac4::DomainError(msg.str());
  }
}

void add_grid_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->set_help_flag("--help", "print help");  // frees -h for the spacing flag
  cmd->add_option("--L", cfg.L, "half-width of the quadrant domain")
      ->envname("AC_L");
  cmd->add_option("--h", cfg.h, "grid spacing")->envname("AC_H");
  cmd->add_option("--potential", cfg.potential,
                  "potential id ('quartic') or csv path")
      ->envname("AC_POTENTIAL");
}

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--newton-tol", cfg.newton_tol,
                  "sup-norm residual tolerance")
      ->envname("AC_NEWTON_TOL");
  cmd->add_option("--max-newton", cfg.max_newton, "Newton iteration cap")
      ->envname("AC_MAX_NEWTON");
  cmd->add_option("--r-tol", cfg.r_tol, "offset fixed-point tolerance")
      ->envname("AC_R_TOL");
  cmd->add_option("--max-r-iter", cfg.max_r_iter, "offset iteration cap")
      ->envname("AC_MAX_R_ITER");
  cmd->add_flag("--unsafe-theta", cfg.unsafe_theta,
                "disable the default theta guard band");
}

ac4::QuadrantGrid make_grid(const RunConfig& cfg) {
  ac4::QuadrantGrid g(cfg.L, cfg.h);
  if (g.n() < 64)
    throw ac4::DomainError("grid too coarse for production runs (n < 64); "
                           "shrink h or enlarge L");
  return g;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

int cmd_solve(const RunConfig& cfg, double theta, double r0,
              const std::string& out) {
  check_theta(cfg, theta);
  const ac4::QuadrantGrid grid = make_grid(cfg);
  const ac4::Potential pot = load_potential(cfg);
  const ac4::HeteroclinicProfile prof = ac4::build_heteroclinic(pot);
  const ac4::Solution sol = ac4::newton_solve(grid, pot, prof, theta, r0,
                                              std::nullopt, solve_options(cfg));
  ac4::write_acf(out, ac4::AcfFile(sol));
  std::cout << "theta-pi/4 " << fmt("%.6f", sol.cls.theta_minus_quarter_pi)
            << " r " << fmt("%.6f", sol.cls.r) << "\n"
            << "residual " << fmt("%.3e", sol.residual_sup) << "\n"
            << "wrote " << out << "\n";
  return 0;
}

int cmd_ansatz(const RunConfig& cfg, double theta, double r,
               const std::string& out) {
  check_theta(cfg, theta);
  const ac4::QuadrantGrid grid = make_grid(cfg);
  const ac4::Potential pot = load_potential(cfg);
  const ac4::HeteroclinicProfile prof = ac4::build_heteroclinic(pot);
  const ac4::Ansatz an(ac4::EndConfiguration::symmetric(theta, r));
  const ac4::Field field = ac4::ansatz_samples(grid, an, prof);

  ac4::AcfFile f;
  f.potential_id = pot.id();
  f.L = cfg.L;
  f.h = cfg.h;
  f.theta = theta;
  f.r = r;
  f.field = field;
  f.residual = ac4::residual_stored_bc(field, pot).max_abs_inner();
  const double c0 = ac4::energy_constant(pot, prof);
  const ac4::Classification cls = ac4::classify(field, pot, c0);
  f.cls_theta = cls.theta_minus_quarter_pi;
  f.cls_r = cls.r;
  ac4::write_acf(out, f);
  std::cout << "theta-pi/4 " << fmt("%.6f", cls.theta_minus_quarter_pi) << " r "
            << fmt("%.6f", cls.r) << "\n"
            << "residual " << fmt("%.3e", f.residual) << "\n"
            << "wrote " << out << "\n";
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& path) {
  const ac4::AcfFile f = ac4::read_acf(path);
  const ac4::Potential pot =
      f.potential_id == "quartic" ? ac4::Potential::quartic() : load_potential(cfg);
  const ac4::HeteroclinicProfile prof = ac4::build_heteroclinic(pot);
  const double c0 = ac4::energy_constant(pot, prof);
  const ac4::Classification cls = ac4::classify(f.field, pot, c0);
  std::cout << "theta-pi/4 " << fmt("%.3f", cls.theta_minus_quarter_pi) << " r "
            << fmt("%.3f", cls.r) << "\n";
  if (cls.warning)
    std::cout << "warning: extraction defect " << fmt("%.3e", cls.defect)
              << " above 0.05, values unreliable\n";
  return 0;
}

int cmd_balance(const RunConfig& cfg, const std::string& path) {
  const ac4::AcfFile f = ac4::read_acf(path);
  const ac4::Potential pot =
      f.potential_id == "quartic" ? ac4::Potential::quartic() : load_potential(cfg);
  const int n = f.field.n();
  const double h = f.field.grid().spacing();

  auto square = [&](int a, int b) {
    ac4::Contour c;
    const double ax = a * h, bx = b * h;
    c.vertices = {{ax, ax}, {bx, ax}, {bx, bx}, {ax, bx}, {ax, ax}};
    return c;
  };
  const ac4::Contour c1 = square((n - 1) / 8, (n - 1) / 2);
  const ac4::Contour c2 = square((n - 1) / 6, (n - 1) * 2 / 3);

  for (int which = 0; which < 2; ++which) {
    const ac4::Contour& c = which ? c2 : c1;
    std::cout << "contour " << which + 1 << ":";
    for (auto kind : {ac4::KillingKind::TranslationX,
                      ac4::KillingKind::TranslationY, ac4::KillingKind::Rotation}) {
      const double flux = ac4::contour_flux(f.field, pot, c, ac4::KillingField{kind});
      const char* name = kind == ac4::KillingKind::TranslationX ? "translation-x"
                         : kind == ac4::KillingKind::TranslationY
                             ? "translation-y"
                             : "rotation";
      std::cout << " " << name << " " << fmt("%.6e", flux);
    }
    std::cout << "\n";
  }
  std::cout << "bound " << fmt("%.6e", 10.0 * h * h) << "\n";

  const ac4::HeteroclinicProfile prof = ac4::build_heteroclinic(pot);
  const double c0 = ac4::energy_constant(pot, prof);
  const ac4::Classification cls = ac4::classify(f.field, pot, c0);
  std::cout << "theta " << fmt("%.6f", cls.theta_minus_quarter_pi + kPi / 4)
            << " r " << fmt("%.6f", cls.r) << " defect " << fmt("%.3e", cls.defect)
            << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& path, double R, int k,
                 const std::string& sector, const std::string& out) {
  const ac4::AcfFile f = ac4::read_acf(path);
  const ac4::Potential pot =
      f.potential_id == "quartic" ? ac4::Potential::quartic() : load_potential(cfg);

  std::vector<ac4::SymmetrySector> sectors;
  if (sector == "all")
    for (auto s : ac4::all_sectors()) sectors.push_back(s);
  else
    sectors.push_back(ac4::sector_from_code(sector));

  std::ostringstream csv;
  ac4::write_spectrum_csv_header(csv, k);
  for (const auto& s : sectors) {
    const ac4::SpectrumReport rep = ac4::sector_eigenvalues(f.field, pot, s, R, k);
    ac4::write_spectrum_csv_row(csv, rep);
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(out);
    if (!os) throw ac4::DomainError("cannot open for writing: " + out);
    os << csv.str();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_continue(const RunConfig& cfg, double theta_min, double theta_max,
                 int steps, const std::string& out_dir,
                 const std::string& curve_path, bool with_index,
                 double margin_R, bool no_margin) {
  check_theta(cfg, theta_min);
  check_theta(cfg, theta_max);
  const ac4::QuadrantGrid grid = make_grid(cfg);
  const ac4::Potential pot = load_potential(cfg);
  const ac4::HeteroclinicProfile prof = ac4::build_heteroclinic(pot);

  const ac4::Solution seed = ac4::seed_saddle(grid, pot, prof, solve_options(cfg));

  ac4::ContinuationOptions copts;
  copts.solve = solve_options(cfg);
  copts.compute_margin = !no_margin;
  copts.margin_R = margin_R;
  copts.compute_index = with_index;
  copts.jobs = cfg.jobs;
  if (!out_dir.empty()) {
    copts.sink = [&out_dir](const ac4::Solution& sol) {
      char name[64];
      std::snprintf(name, sizeof(name), "th_%.6f.acf", sol.theta_imposed);
      const std::string file = out_dir + "/" + name;
      ac4::write_acf(file, ac4::AcfFile(sol));
      return file;
    };
  }

  const ac4::ModuliCurve curve =
      ac4::continue_curve(seed, pot, prof, theta_min, theta_max, steps, copts);

  std::ofstream os(curve_path);
  if (!os) throw ac4::DomainError("cannot open for writing: " + curve_path);
  ac4::write_curve_csv(os, curve);
  std::cout << "samples " << curve.samples.size() << "\n";
  for (const auto* rep : {&curve.down, &curve.up})
    if (!rep->completed)
      std::cout << "direction terminated at theta "
                << fmt("%.6f", rep->theta_failed) << ": " << rep->reason << "\n";
  std::cout << "wrote " << curve_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4-ended Allen-Cahn solutions: solve, classify, continue"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--jobs", cfg.jobs, "worker threads (continuation directions)")
      ->envname("AC_JOBS");

  double theta = 0, r0 = 0, r = 0;
  double theta_min = kPi / 4 - 0.5, theta_max = kPi / 4 + 0.5;
  int steps = 21, k = 6;
  double R = 15.0;
  std::string out = "solution.acf", out_dir, curve_path = "curve.csv";
  std::string file, sector = "all", spectrum_out;
  bool with_index = false, no_margin = false;

  CLI::App* solve = app.add_subcommand("solve", "Newton-solve at fixed theta");
  solve->add_option("--theta", theta, "end angle in (0, pi/2)")->required();
  solve->add_option("--r0", r0, "initial offset guess");
  solve->add_option("--out", out, "output ACF path");
  add_grid_flags(solve, cfg);
  add_solver_flags(solve, cfg);

  CLI::App* ansatz = app.add_subcommand("ansatz", "write the glued ansatz field");
  ansatz->add_option("--theta", theta, "end angle in (0, pi/2)")->required();
  ansatz->add_option("--r", r, "end offset");
  ansatz->add_option("--out", out, "output ACF path")->required();
  add_grid_flags(ansatz, cfg);
  add_solver_flags(ansatz, cfg);

  CLI::App* classify = app.add_subcommand("classify", "extract (theta-pi/4, r)");
  classify->add_option("file", file, "ACF solution file")->required();
  add_grid_flags(classify, cfg);

  CLI::App* balance = app.add_subcommand("balance", "contour flux conservation");
  balance->add_option("file", file, "ACF solution file")->required();
  add_grid_flags(balance, cfg);

  CLI::App* spectrum = app.add_subcommand("spectrum", "sector eigenvalues");
  spectrum->add_option("file", file, "ACF solution file")->required();
  spectrum->add_option("--R", R, "ball radius");
  spectrum->add_option("--k", k, "number of eigenvalues");
  spectrum->add_option("--sector", sector, "ee|eo|oe|oo|all");
  spectrum->add_option("--out", spectrum_out, "CSV path (stdout when empty)");
  add_grid_flags(spectrum, cfg);

  CLI::App* cont = app.add_subcommand("continue", "trace the moduli curve");
  cont->add_option("--theta-min", theta_min, "lower end of the range");
  cont->add_option("--theta-max", theta_max, "upper end of the range");
  cont->add_option("--steps", steps, "number of uniform samples");
  cont->add_option("--out-dir", out_dir, "directory for per-sample ACF files");
  cont->add_option("--curve", curve_path, "curve CSV path");
  cont->add_flag("--index", with_index, "compute the Morse index per sample");
  cont->add_flag("--no-margin", no_margin, "skip the nondegeneracy margin");
  cont->add_option("--margin-R", R, "ball radius for the margin");
  add_grid_flags(cont, cfg);
  add_solver_flags(cont, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg, theta, r0, out);
    if (ansatz->parsed()) return cmd_ansatz(cfg, theta, r, out);
    if (classify->parsed()) return cmd_classify(cfg, file);
    if (balance->parsed()) return cmd_balance(cfg, file);
    if (spectrum->parsed())
      return cmd_spectrum(cfg, file, R, k, sector, spectrum_out);
    if (cont->parsed())
      return cmd_continue(cfg, theta_min, theta_max, steps, out_dir, curve_path,
                          with_index, R, no_margin);
  } catch (const ac4::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 1;
  } catch (const ac4::NonConvergence& e) {
    std::cerr << "error: nonconvergence: " << e.what() << "\n";
    return 2;
  } catch (const ac4::AccuracyError& e) {
    std::cerr << "error: accuracy: " << e.what() << "\n";
    return 2;
  } catch (const ac4::DomainError& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 1;
  } catch (const ac4::Error& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
