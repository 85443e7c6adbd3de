#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dciga/assembly.hpp"
#include "dciga/closedform.hpp"
#include "dciga/eigensolve.hpp"
#include "dciga/errors.hpp"
#include "dciga/io.hpp"
#include "dciga/metrics.hpp"
#include "dciga/quadrature.hpp"
#include "dciga/splines.hpp"
#include "dciga/tensorize.hpp"

namespace dciga::cli {

namespace {

enum class DcMode { Off, On, Both, Infinite };

DcMode parse_dc(const std::string& s) {
  if (s == "off") return DcMode::Off;
  if (s == "on") return DcMode::On;
  if (s == "both") return DcMode::Both;
  if (s == "infinite") return DcMode::Infinite;
  throw ConfigError(fmt::format("unknown --dc value '{}'", s));
}

struct Options {
  std::string problem = "dirichlet";
  std::vector<int> degree{3};
  std::vector<std::size_t> elements{16};
  std::vector<std::string> mesh_files;
  int dim = 1;
  std::string dc;
  std::vector<double> eta_a;
  std::vector<double> eta_b;
  std::size_t modes = 0;
  std::string out;
  std::vector<double> omega_h;
  std::size_t samples = 32;
  std::string command_line;
};

// One emitted CSV; `tag` distinguishes files when a command writes several.
struct Document {
  std::string tag;
  std::string body;
};

template <typename T>
std::vector<T> per_axis(const std::vector<T>& v, int dim, const char* flag) {
  const auto d = static_cast<std::size_t>(dim);
  if (v.size() == 1) return std::vector<T>(d, v.front());
  if (v.size() == d) return v;
  throw ConfigError(fmt::format("{} takes 1 or {} values for --dim {} (got {})", flag, dim, dim, v.size()));
}

struct Axis {
  SplineSpace space;
  std::string mesh;  // "uniform" or the mesh file path
};

std::vector<Axis> build_axes(const Options& o) {
  const std::vector<int> degrees = per_axis(o.degree, o.dim, "--degree");
  std::vector<std::string> meshes;
  if (!o.mesh_files.empty()) meshes = per_axis(o.mesh_files, o.dim, "--mesh-file");
  const std::vector<std::size_t> elements = per_axis(o.elements, o.dim, "--elements");
  std::vector<Axis> axes;
  for (int a = 0; a < o.dim; ++a) {
    const int p = degrees[static_cast<std::size_t>(a)];
    if (p < 1 || p > 12) throw ConfigError(fmt::format("degree must lie in 1..12 (got {})", p));
    if (!meshes.empty()) {
      const std::string& path = meshes[static_cast<std::size_t>(a)];
      axes.push_back({SplineSpace(p, read_mesh_file(path)), path});
    } else {
      const std::size_t N = elements[static_cast<std::size_t>(a)];
      if (N < 1) throw ConfigError("element count must be at least 1");
      axes.push_back({SplineSpace(p, BreakpointGrid::uniform(N)), "uniform"});
    }
  }
  return axes;
}

std::vector<double> expand_etas(const std::vector<double>& given, int terms, const char* flag) {
  if (given.empty()) return std::vector<double>(static_cast<std::size_t>(terms), 1.0);
  if (given.size() == 1) return std::vector<double>(static_cast<std::size_t>(terms), given.front());
  if (given.size() == static_cast<std::size_t>(terms)) return given;
  throw ConfigError(fmt::format("{} takes 1 or {} values at this degree (got {})", flag, terms, given.size()));
}

PenaltyConfig penalties_for(const Options& o, ProblemKind kind, int degree) {
  PenaltyConfig cfg;
  cfg.kind = kind;
  const int terms = penalty_terms(kind, degree);
  cfg.eta_a = expand_etas(o.eta_a, terms, "--eta-a");
  cfg.eta_b = expand_etas(o.eta_b, terms, "--eta-b");
  for (double v : cfg.eta_a) {
    if (!(v >= 0.0)) throw ConfigError("--eta-a values must be non-negative");
  }
  for (double v : cfg.eta_b) {
    if (!(v >= 0.0)) throw ConfigError("--eta-b values must be non-negative");
  }
  return cfg;
}

enum class Variant { Standard, Weak, Infinite };

std::vector<Variant> variants_for(DcMode mode) {
  switch (mode) {
    case DcMode::Off: return {Variant::Standard};
    case DcMode::On: return {Variant::Weak};
    case DcMode::Both: return {Variant::Standard, Variant::Weak};
    case DcMode::Infinite: return {Variant::Infinite};
  }
  return {};
}

std::string tag_of(Variant v) {
  switch (v) {
    case Variant::Standard: return "standard";
    case Variant::Weak: return "dc";
    case Variant::Infinite: return "dc_infinite";
  }
  return "";
}

struct AxisPair {
  MatrixPair pair;
  std::vector<Constraint> constraints;  // non-empty for the infinite variant
  std::size_t full_dim = 0;
};

AxisPair build_pair(const Axis& axis, ProblemKind kind, Variant v, const Options& o) {
  const SplineSpace& s = axis.space;
  AxisPair out;
  switch (v) {
    case Variant::Standard:
      out.pair = assemble_standard(s, kind);
      break;
    case Variant::Weak:
      out.pair = assemble_dc(s, penalties_for(o, kind, s.degree()));
      break;
    case Variant::Infinite: {
      const bool supported = (kind == ProblemKind::Dirichlet && s.degree() == 3) ||
                             (kind == ProblemKind::Neumann && s.degree() == 2);
      if (!supported) {
        throw ConfigError(
            "--dc infinite is only available for cubic Dirichlet and quadratic Neumann; higher degrees would need "
            "a reconstructed boundary basis, which is not implemented");
      }
      if (!s.grid().is_uniform()) throw ConfigError("--dc infinite needs a uniform mesh");
      const MatrixPair base = assemble_standard(s, kind);
      out.constraints = infinite_penalty_constraints(kind, s.degree(), base.dim());
      out.full_dim = base.dim();
      out.pair = constraint_reduce(base, out.constraints);
      break;
    }
  }
  return out;
}

std::string join_axes(const std::vector<Axis>& axes, auto&& field, const char* sep = ",") {
  std::vector<std::string> parts;
  for (const Axis& a : axes) parts.push_back(fmt::format("{}", field(a)));
  return fmt::format("{}", fmt::join(parts, sep));
}

std::string penalty_text(const Options& o, ProblemKind kind, const std::vector<Axis>& axes, Variant v) {
  if (v == Variant::Standard) return "none";
  if (v == Variant::Infinite) return "infinite";
  std::vector<std::string> parts;
  for (const Axis& a : axes) {
    const PenaltyConfig cfg = penalties_for(o, kind, a.space.degree());
    parts.push_back(fmt::format("eta_a={};eta_b={}", fmt::join(cfg.eta_a, ";"), fmt::join(cfg.eta_b, ";")));
  }
  return fmt::format("{}", fmt::join(parts, ","));
}

void header(std::ostream& s, const Options& o, ProblemKind kind, const std::vector<Axis>& axes, Variant v) {
  s << "# command: dciga " << o.command_line << '\n';
  s << "# problem=" << to_string(kind) << " dim=" << o.dim
    << " degree=" << join_axes(axes, [](const Axis& a) { return a.space.degree(); })
    << " N=" << join_axes(axes, [](const Axis& a) { return a.space.elements(); })
    << " mesh=" << join_axes(axes, [](const Axis& a) { return a.mesh; })
    << " corrected=" << (v == Variant::Standard ? "false" : "true") << " penalties=" << penalty_text(o, kind, axes, v)
    << '\n';
}

QuadratureRule error_rule(const SplineSpace& s) { return gauss_legendre(std::min(kMaxGaussPoints, s.degree() + 4)); }

// 1D spectrum with eigenvectors mapped back to the retained standard basis.
Spectrum solve_1d_with_vectors(const AxisPair& ap) {
  Spectrum spec = gevp(ap.pair, true);
  if (!ap.constraints.empty()) spec.vectors = constraint_expand(*spec.vectors, ap.constraints, ap.full_dim);
  return spec;
}

std::filesystem::path tagged_path(const std::filesystem::path& p, const std::string& tag) {
  return p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string());
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot open '{}' for writing", path.string()));
  f << body;
  if (!f) throw ConfigError(fmt::format("failed writing '{}'", path.string()));
}

void emit(const Options& o, const std::vector<Document>& docs, std::ostream& out) {
  if (o.out.empty()) {
    for (const Document& d : docs) out << d.body;
    return;
  }
  if (docs.size() == 1) {
    write_file(o.out, docs.front().body);
    return;
  }
  for (const Document& d : docs) write_file(tagged_path(o.out, d.tag), d.body);
}

// ---------------------------------------------------------------- commands

void cmd_assemble(const Options& o, std::ostream& out) {
  const ProblemKind kind = parse_problem_kind(o.problem);
  const DcMode mode = parse_dc(o.dc.empty() ? "off" : o.dc);
  const std::vector<Axis> axes = build_axes(o);
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));

  for (Variant v : variants_for(mode)) {
    std::vector<MatrixPair> pairs;
    for (const Axis& a : axes) pairs.push_back(build_pair(a, kind, v, o).pair);
    const MatrixPair global = o.dim == 1 ? pairs.front() : kron_sum_matrices(TensorSystem(pairs));
    const std::string suffix = v == Variant::Standard ? "" : "_dc";
    for (const auto& [name, A] : {std::pair{"K", &global.K}, std::pair{"M", &global.M}}) {
      std::ostringstream s;
      write_matrix_csv(s, *A, global);
      const std::filesystem::path path = dir / (std::string(name) + suffix + ".csv");
      write_file(path, s.str());
      out << path.string() << '\n';
    }
  }
}

Spectrum combined_spectrum(const std::vector<AxisPair>& pairs, std::vector<Spectrum>& per_axis_spectra, bool vectors) {
  per_axis_spectra.clear();
  if (pairs.size() == 1) {
    per_axis_spectra.push_back(vectors ? solve_1d_with_vectors(pairs.front()) : gevp(pairs.front().pair, false));
    return per_axis_spectra.front();
  }
  std::vector<MatrixPair> mp;
  for (const AxisPair& p : pairs) {
    mp.push_back(p.pair);
    per_axis_spectra.push_back(gevp(p.pair, false));
  }
  return separable_spectrum(TensorSystem(mp), per_axis_spectra);
}

void write_error_rows(std::ostream& s, const ErrorReport& r, std::size_t rows, bool with_ef) {
  s << (with_ef ? "j,lambda_exact,lambda_h,rel_err,h1_err,l2_err\n" : "j,lambda_exact,lambda_h,rel_err\n");
  for (std::size_t j = 0; j < rows; ++j) {
    s << (j + 1) << ',' << format_number(r.lambda_exact[j]) << ',' << format_number(r.lambda_h[j]) << ','
      << format_number(r.rel_err[j]);
    if (with_ef) s << ',' << format_number(r.h1_err[j]) << ',' << format_number(r.l2_err[j]);
    s << '\n';
  }
}

void cmd_spectrum(const Options& o, std::ostream& out) {
  const ProblemKind kind = parse_problem_kind(o.problem);
  const DcMode mode = parse_dc(o.dc.empty() ? "both" : o.dc);
  const std::vector<Axis> axes = build_axes(o);
  const bool with_ef = o.dim == 1;

  std::vector<Document> docs;
  for (Variant v : variants_for(mode)) {
    std::vector<AxisPair> pairs;
    for (const Axis& a : axes) pairs.push_back(build_pair(a, kind, v, o));
    std::vector<Spectrum> per_axis_spectra;
    const Spectrum spec = combined_spectrum(pairs, per_axis_spectra, with_ef);
    const std::size_t rows = o.modes == 0 ? spec.size() : std::min(o.modes, spec.size());
    const ExactSpectrum exact = exact_spectrum(kind, o.dim, spec.size());
    const ErrorReport r = with_ef ? eigenfunction_errors(axes.front().space, spec, exact,
                                                         error_rule(axes.front().space), rows)
                                  : eigenvalue_errors(spec, exact);
    std::ostringstream s;
    header(s, o, kind, axes, v);
    s << "# modes=" << rows << " of " << spec.size() << '\n';
    if (!r.absolute_mode.empty() && r.absolute_mode.front()) {
      s << "# mode 1 has exact eigenvalue 0; its rel_err column holds lambda_h\n";
    }
    write_error_rows(s, r, rows, with_ef);
    docs.push_back({tag_of(v), s.str()});
  }
  emit(o, docs, out);
}

void cmd_convergence(const Options& o, std::ostream& out) {
  const ProblemKind kind = parse_problem_kind(o.problem);
  const DcMode mode = parse_dc(o.dc.empty() ? "on" : o.dc);
  if (o.dim != 1) throw ConfigError("convergence works in 1D only (eigenfunction errors are 1D)");
  if (!o.mesh_files.empty()) throw ConfigError("convergence uses uniform levels given by -N; --mesh-file is not accepted");
  if (o.degree.size() != 1) throw ConfigError("convergence takes a single degree");
  std::vector<std::size_t> levels = o.elements;
  std::sort(levels.begin(), levels.end());
  if (std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
    throw ConfigError("convergence levels must be distinct");
  }
  const std::size_t modes = o.modes == 0 ? 6 : o.modes;

  std::vector<Document> docs;
  for (Variant v : variants_for(mode)) {
    std::vector<std::vector<double>> rel(modes), h1(modes), l2(modes);
    std::ostringstream body;
    std::vector<Axis> last_axes;
    for (std::size_t N : levels) {
      Options level = o;
      level.elements = {N};
      const std::vector<Axis> axes = build_axes(level);
      const AxisPair ap = build_pair(axes.front(), kind, v, o);
      const Spectrum spec = solve_1d_with_vectors(ap);
      if (spec.size() < modes) {
        throw ConfigError(fmt::format("N={} gives only {} modes, fewer than --modes {}", N, spec.size(), modes));
      }
      const ExactSpectrum exact = exact_spectrum(kind, 1, spec.size());
      const ErrorReport r = eigenfunction_errors(axes.front().space, spec, exact, error_rule(axes.front().space), modes);
      for (std::size_t j = 0; j < modes; ++j) {
        body << N << ',' << (j + 1) << ',' << format_number(r.lambda_exact[j]) << ',' << format_number(r.lambda_h[j])
             << ',' << format_number(r.rel_err[j]) << ',' << format_number(r.h1_err[j]) << ','
             << format_number(r.l2_err[j]) << '\n';
        rel[j].push_back(std::abs(r.rel_err[j]));
        h1[j].push_back(r.h1_err[j]);
        l2[j].push_back(r.l2_err[j]);
      }
      last_axes = axes;
    }

    std::ostringstream s;
    header(s, o, kind, last_axes, v);
    s << "# levels=" << fmt::format("{}", fmt::join(levels, ",")) << '\n';
    s << "N,j,lambda_exact,lambda_h,rel_err,h1_err,l2_err\n" << body.str();
    if (levels.size() >= 2) {
      s << "# rate rows: least-squares slope of log(error) against log(1/N); eigenvalue rate uses |rel_err|\n";
      for (std::size_t j = 0; j < modes; ++j) {
        auto rate = [&](const std::vector<double>& e) -> std::string {
          try {
            const RateResult rr = convergence_rate(levels, e);
            return format_number(rr.rate);
          } catch (const ConfigError&) {
            return "nan";
          }
        };
        s << "rate," << (j + 1) << ",,," << rate(rel[j]) << ',' << rate(h1[j]) << ',' << rate(l2[j]) << '\n';
      }
    }
    docs.push_back({tag_of(v), s.str()});
  }
  emit(o, docs, out);
}

void cmd_condition(const Options& o, std::ostream& out) {
  const ProblemKind kind = parse_problem_kind(o.problem);
  if (kind != ProblemKind::Dirichlet) {
    throw ConfigError("condition numbers are reported for Dirichlet only; the Neumann spectrum has a zero eigenvalue");
  }
  const DcMode mode = parse_dc(o.dc.empty() ? "on" : o.dc);
  if (mode == DcMode::Off) throw ConfigError("condition compares standard and corrected spectra; use --dc on or infinite");
  const Variant corrected = mode == DcMode::Infinite ? Variant::Infinite : Variant::Weak;
  const std::vector<Axis> axes = build_axes(o);

  std::vector<AxisPair> std_pairs, dc_pairs;
  for (const Axis& a : axes) {
    std_pairs.push_back(build_pair(a, kind, Variant::Standard, o));
    dc_pairs.push_back(build_pair(a, kind, corrected, o));
  }
  std::vector<Spectrum> scratch;
  const Spectrum s_std = combined_spectrum(std_pairs, scratch, false);
  const Spectrum s_dc = combined_spectrum(dc_pairs, scratch, false);
  const ConditionReport c = condition_report(s_std, s_dc);

  std::ostringstream s;
  header(s, o, kind, axes, corrected);
  s << "dim,degree,elements,lambda_min,lambda_max,gamma,lambda_min_dc,lambda_max_dc,gamma_tilde,rho,varrho\n";
  s << o.dim << ',' << join_axes(axes, [](const Axis& a) { return a.space.degree(); }, ";") << ','
    << join_axes(axes, [](const Axis& a) { return a.space.elements(); }, ";") << ',' << format_number(c.lambda_min)
    << ',' << format_number(c.lambda_max) << ',' << format_number(c.gamma) << ',' << format_number(c.lambda_min_dc)
    << ',' << format_number(c.lambda_max_dc) << ',' << format_number(c.gamma_tilde) << ',' << format_number(c.rho)
    << ',' << format_number(c.varrho) << '\n';
  emit(o, {{"condition", s.str()}}, out);
}

void cmd_dispersion(const Options& o, std::ostream& out) {
  const ProblemKind kind = parse_problem_kind(o.problem);
  if (o.degree.size() != 1) throw ConfigError("dispersion takes a single degree");
  DispersionCase dcase;
  if (kind == ProblemKind::Dirichlet && o.degree.front() == 3) {
    dcase = DispersionCase::CubicDirichlet;
  } else if (kind == ProblemKind::Neumann && o.degree.front() == 2) {
    dcase = DispersionCase::QuadraticNeumann;
  } else {
    throw ConfigError("dispersion relations are available for cubic Dirichlet (-p 3) and quadratic Neumann (-p 2)");
  }

  std::vector<double> omegas = o.omega_h;
  if (omegas.empty()) {
    if (o.samples < 1) throw ConfigError("--samples must be at least 1");
    for (std::size_t k = 1; k <= o.samples; ++k) {
      omegas.push_back(std::numbers::pi * static_cast<double>(k) / static_cast<double>(o.samples));
    }
  }
  const std::size_t rows = boundary_row_count(dcase);

  std::ostringstream s;
  s << "# command: dciga " << o.command_line << '\n';
  s << "# case=" << to_string(dcase) << " boundary_rows=" << rows << '\n';
  const int interior_power = dcase == DispersionCase::CubicDirichlet ? 4 : 3;
  s << "# interior: (LambdaH - Lambda)/Lambda^" << interior_power << " -> "
    << format_number(dispersion_coefficient(dcase, 0, interior_power)) << '\n';
  for (std::size_t r = 1; r <= rows; ++r) {
    if (dcase == DispersionCase::CubicDirichlet) {
      s << "# boundary row " << r << ": LambdaH -> " << format_number(dispersion_coefficient(dcase, r, 0)) << '\n';
    } else {
      s << "# boundary row " << r << ": (LambdaH - Lambda)/Lambda^2 -> "
        << format_number(dispersion_coefficient(dcase, r, 2)) << '\n';
    }
  }
  s << "omega_h,Lambda,LambdaH_interior";
  for (std::size_t r = 1; r <= rows; ++r) s << ",LambdaH_boundary_row_" << r;
  s << '\n';
  for (double w : omegas) {
    const std::vector<DispersionSample> samples = dispersion_samples(dcase, w);
    s << format_number(w) << ',' << format_number(samples.front().Lambda);
    for (const DispersionSample& d : samples) s << ',' << format_number(d.LambdaH);
    s << '\n';
  }
  emit(o, {{"dispersion", s.str()}}, out);
}

void add_common(CLI::App* sub, Options& o, bool with_dc) {
  sub->add_option("--problem", o.problem, "Boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann"}))
      ->capture_default_str();
  sub->add_option("-p,--degree", o.degree, "Spline degree, one value or one per axis")->delimiter(',');
  sub->add_option("-N,--elements", o.elements, "Uniform element count, one value or one per axis")->delimiter(',');
  sub->add_option("--mesh-file", o.mesh_files, "Breakpoint file, one or one per axis (overrides -N)")->delimiter(',');
  sub->add_option("--dim", o.dim, "Spatial dimension")->check(CLI::Range(1, 3))->capture_default_str();
  if (with_dc) {
    sub->add_option("--dc", o.dc, "Boundary penalization: off, on, both or infinite")
        ->check(CLI::IsMember({"off", "on", "both", "infinite"}));
  }
  sub->add_option("--eta-a", o.eta_a, "Stiffness penalty coefficients (one value or one per term)")->delimiter(',');
  sub->add_option("--eta-b", o.eta_b, "Mass penalty coefficients (one value or one per term)")->delimiter(',');
  sub->add_option("-o,--out", o.out, "Output path (directory for assemble)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  {
    std::vector<std::string> quoted;
    for (const std::string& a : args) quoted.push_back(a.find(' ') == std::string::npos ? a : "'" + a + "'");
    o.command_line = fmt::format("{}", fmt::join(quoted, " "));
  }

  CLI::App app{"Isogeometric Laplace eigenproblems with boundary penalization", "dciga"};
  app.require_subcommand(1);
  CLI::App* assemble = app.add_subcommand("assemble", "Write stiffness and mass matrices as CSV");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalue (and 1D eigenfunction) errors per mode");
  CLI::App* convergence = app.add_subcommand("convergence", "Errors and rates over a sequence of uniform meshes");
  CLI::App* condition = app.add_subcommand("condition", "Condition numbers of standard and corrected pairs");
  CLI::App* dispersion = app.add_subcommand("dispersion", "Interior and boundary dispersion relations");
  for (CLI::App* sub : {assemble, spectrum, convergence, condition, dispersion}) add_common(sub, o, sub != dispersion);
  spectrum->add_option("--modes", o.modes, "Number of modes to report (0 = all)");
  convergence->add_option("--modes", o.modes, "Report modes 1..M (default 6)");
  dispersion->add_option("--omega-h", o.omega_h, "Sample points in (0, pi]")->delimiter(',');
  dispersion->add_option("--samples", o.samples, "Uniform samples k pi / S, k = 1..S, when --omega-h is absent")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (assemble->parsed()) cmd_assemble(o, out);
    else if (spectrum->parsed()) cmd_spectrum(o, out);
    else if (convergence->parsed()) cmd_convergence(o, out);
    else if (condition->parsed()) cmd_condition(o, out);
    else if (dispersion->parsed()) cmd_dispersion(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace dciga::cli
