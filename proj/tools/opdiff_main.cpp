// Command-line front end: truncated operator matrices, norms, spectra, norm
// bounds and the verification suite, with JSON/CSV artifacts.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "opdiff/io.hpp"

namespace {

using namespace opdiff;

struct Options {
  std::string spec_path;
  double alpha = -1.0;
  int trunc = 128;
  double tol = 1e-10;
  long lmax = -1;  // -1: automatic
  std::string out;
  std::string format = "json";
  std::string suite = "default";
  double b = -1.0;  // -1: automatic (rounded-up sampled sup)
  bool sweep = false;
  double bmin = 0.1, bmax = 0.9, bstep = 0.1;
  int nmin = 1, nmax = 3;
};

void emit(const Options& opt, const std::string& content) {
  if (opt.out.empty())
    std::cout << content;
  else
    write_text_file(opt.out, content);
}

void check_config(const Options& opt) {
  if (opt.trunc < 8 || opt.trunc > 2048) throw spec_error("--trunc must lie in [8, 2048]");
  if (opt.tol <= 0.0) throw spec_error("--tol must be positive");
  if (opt.format != "json" && opt.format != "csv") throw spec_error("--format must be json or csv");
}

int cmd_matrix(const Options& opt, bool format_given) {
  const OperatorSpec spec = load_spec_file(opt.spec_path);
  const OperatorMatrix M = build_matrix(spec, opt.alpha, opt.trunc);
  if (format_given && opt.format == "json") {
    emit(opt, matrix_json(M));
  } else {
    std::ostringstream os;
    write_matrix_csv(os, M);
    emit(opt, os.str());
  }
  return 0;
}

int cmd_norm(const Options& opt) {
  const OperatorSpec spec = load_spec_file(opt.spec_path);
  const NormReport rep = norm_report(spec, opt.alpha, opt.trunc, opt.tol);
  emit(opt, opt.format == "json" ? norm_report_json(rep) : norm_report_csv(rep));
  return 0;
}

int cmd_spectrum(const Options& opt) {
  const OperatorSpec spec = load_spec_file(opt.spec_path);
  const FixedPointInfo fp = common_fixed_point(spec);
  const long lmax = opt.lmax > 0 ? opt.lmax : default_lmax(spec, fp);
  SpectrumReport rep = closed_form_spectrum(spec, fp, lmax);
  rep.alpha = opt.alpha;
  rep.trunc_degree = opt.trunc;

  OperatorMatrix M = build_matrix(spec, opt.alpha, opt.trunc);
  if (std::abs(fp.w) > 1e-12) {
    const kernels::Matrix U = fixed_point_conjugation_matrix(fp.w, opt.alpha, opt.trunc);
    M.entries = kernels::matmul(U, kernels::matmul(M.entries, U));
    rep.conjugated = true;
  }
  rep.numeric = eigenvalues(M, opt.tol);
  if (spec.has_diff() && !spec.diff->phi.is_constant()) {
    const double r = std::abs(fp.phi_prime);
    if (r > 0.0) rep.tie = argmax_l(spec.diff->order, r).tie;
  }
  emit(opt, opt.format == "json" ? spectrum_report_json(rep) : spectrum_report_csv(rep));
  return 0;
}

int cmd_radius(const Options& opt) {
  const OperatorSpec spec = load_spec_file(opt.spec_path);
  const FixedPointInfo fp = common_fixed_point(spec);
  const auto [radius, l_star] = spectral_radius_closed(spec, fp);
  if (opt.format == "json") {
    emit(opt, "{\"radius\": " + double_str(radius) + ", \"l_star\": " + std::to_string(l_star) +
                  "}\n");
  } else {
    emit(opt, "radius,l_star\n" + double_str(radius) + "," + std::to_string(l_star) + "\n");
  }
  return 0;
}

int cmd_bounds(const Options& opt) {
  if (opt.sweep) {
    // Exact-norm family f -> f^(n) o (b z): lower bound, closed form and upper
    // bound coincide, tabulated over the (b, n) grid.
    std::ostringstream os;
    os << "b,n,lower,exact,upper\n";
    for (int n = opt.nmin; n <= opt.nmax; ++n) {
      for (double b = opt.bmin; b <= opt.bmax + 1e-12; b += opt.bstep) {
        OperatorSpec spec;
        spec.diff = OperatorSpec::DiffPart{TruncatedSeries::constant(cxd(1.0)),
                                           TruncatedSeries::monomial(1, cxd(b)), n};
        const FixedPointInfo fp = find_fixed_point(spec.diff->phi);
        const double lower = lower_bound_norm(spec, fp);
        const double exact = exact_norm_bz(cxd(b), n);
        const double upper = upper_bound_norm(spec, b);
        os << double_str(b) << "," << n << "," << double_str(lower) << "," << double_str(exact)
           << "," << double_str(upper) << "\n";
      }
    }
    emit(opt, os.str());
    return 0;
  }

  const OperatorSpec spec = load_spec_file(opt.spec_path);
  if (!spec.diff_only())
    throw hypothesis_error("bounds apply to derivative-part-only operators on the alpha = -1 space");
  const auto& d = *spec.diff;
  const FixedPointInfo fp = find_fixed_point(d.phi);
  const double lower = lower_bound_norm(spec, fp, opt.alpha);

  double b = opt.b;
  if (b < 0.0) b = std::ceil(sup_norm_estimate(d.phi, 4096) * 1e6) / 1e6;
  const double phi0 = std::abs(d.phi.evaluate(cxd(0.0)));
  if (b <= phi0) throw domain_error("upper bound needs b > |phi(0)|; pass a larger --b");
  const double upper = upper_bound_norm(spec, b, opt.alpha);

  std::optional<double> exact;
  const bool psi_is_one = d.psi.effective_degree() == 0 && d.psi.coeff(0) == cxd(1.0);
  if (psi_is_one) {
    if (const std::optional<cxd> blin = linear_map_coefficient(d.phi))
      exact = exact_norm_bz(*blin, d.order);
    else if (phi0 <= 1e-15 &&
             sup_norm_estimate(d.phi, 4096) <= 1.0 / static_cast<double>(d.order + 1) + 1e-12)
      exact = factorial(d.order);
  }

  if (opt.format == "json") {
    std::ostringstream os;
    os << "{\n  \"lower\": " << double_str(lower) << ",\n  \"upper\": " << double_str(upper)
       << ",\n  \"exact\": " << (exact ? double_str(*exact) : "null")
       << ",\n  \"b\": " << double_str(b) << "\n}\n";
    emit(opt, os.str());
  } else {
    emit(opt, "lower,upper,exact,b\n" + double_str(lower) + "," + double_str(upper) + "," +
                  (exact ? double_str(*exact) : "") + "," + double_str(b) + "\n");
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  const std::vector<VerificationCase> cases =
      opt.suite == "default" ? default_suite() : load_suite_manifest(opt.suite);
  const std::vector<VerificationReport> reports = run_suite(cases);

  bool all_pass = true;
  for (const VerificationReport& r : reports) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.case_id << " (" << r.theorem
              << ") residual=" << double_str(r.residual) << " tol=" << double_str(r.tolerance)
              << "\n";
  }

  const std::string out = opt.out.empty() ? "verify_report.json" : opt.out;
  write_text_file(out, verification_reports_json(reports));
  std::string csv_path = out;
  const size_t dot = csv_path.rfind('.');
  csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
  write_text_file(csv_path, verification_reports_csv(reports));
  std::cout << "report: " << out << " summary: " << csv_path << "\n";
  return all_pass ? 0 : 2;
}

int cmd_report(const Options& opt) {
  const OperatorSpec spec = load_spec_file(opt.spec_path);
  const NormReport nrep = norm_report(spec, opt.alpha, opt.trunc, opt.tol);

  const FixedPointInfo fp = common_fixed_point(spec);
  const long lmax = opt.lmax > 0 ? opt.lmax : default_lmax(spec, fp);
  SpectrumReport srep = closed_form_spectrum(spec, fp, lmax);
  srep.alpha = opt.alpha;
  srep.trunc_degree = opt.trunc;
  OperatorMatrix M = build_matrix(spec, opt.alpha, opt.trunc);
  if (std::abs(fp.w) > 1e-12) {
    const kernels::Matrix U = fixed_point_conjugation_matrix(fp.w, opt.alpha, opt.trunc);
    M.entries = kernels::matmul(U, kernels::matmul(M.entries, U));
    srep.conjugated = true;
  }
  srep.numeric = eigenvalues(M, opt.tol);

  const auto chomp = [](std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  };
  std::ostringstream os;
  os << "{\n\"spec\": " << spec_to_json(spec) << ",\n\"norm\": " << chomp(norm_report_json(nrep))
     << ",\n\"spectrum\": " << chomp(spectrum_report_json(srep)) << "\n}\n";
  emit(opt, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("OPDIFF_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }

  CLI::App app{"truncated-matrix calculator for weighted composition-differentiation operators"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* cmd, bool needs_spec) {
    if (needs_spec)
      cmd->add_option("--spec", opt.spec_path, "operator spec JSON file")->required();
    cmd->add_option("--alpha", opt.alpha, "space parameter (-1 or greater)");
    cmd->add_option("--trunc", opt.trunc, "truncation degree, 8..2048");
    cmd->add_option("--tol", opt.tol, "numeric tolerance");
    cmd->add_option("--lmax", opt.lmax, "largest closed-form index l (default: automatic)");
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
    cmd->add_option("--format", opt.format, "json or csv");
  };

  CLI::App* matrix = app.add_subcommand("matrix", "build and export the truncated matrix");
  add_common(matrix, true);
  CLI::App* norm = app.add_subcommand("norm", "numeric norm with closed-form bounds");
  add_common(norm, true);
  CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form and numeric spectrum");
  add_common(spectrum, true);
  CLI::App* radius = app.add_subcommand("radius", "closed-form spectral radius");
  add_common(radius, true);
  CLI::App* bounds = app.add_subcommand("bounds", "norm bounds without building a matrix");
  add_common(bounds, false);
  bounds->add_option("--spec", opt.spec_path, "operator spec JSON file");
  bounds->add_option("--b", opt.b, "sup-norm majorant b for the upper bound");
  bounds->add_flag("--sweep", opt.sweep, "tabulate the linear-map family over a (b, n) grid");
  bounds->add_option("--bmin", opt.bmin, "sweep: smallest b");
  bounds->add_option("--bmax", opt.bmax, "sweep: largest b");
  bounds->add_option("--bstep", opt.bstep, "sweep: b step");
  bounds->add_option("--nmin", opt.nmin, "sweep: smallest n");
  bounds->add_option("--nmax", opt.nmax, "sweep: largest n");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--suite", opt.suite, "'default' or a JSON manifest path");
  verify->add_option("--out", opt.out, "report JSON path (default verify_report.json)");
  CLI::App* report = app.add_subcommand("report", "norm + spectrum in one artifact");
  add_common(report, true);

  CLI11_PARSE(app, argc, argv);

  const auto fail = [](const char* type, const std::string& msg) {
    std::string esc;
    for (char c : msg) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c == '\n' ? ' ' : c;
    }
    std::cerr << "{\"error\": {\"type\": \"" << type << "\", \"message\": \"" << esc << "\"}}\n";
    return 1;
  };

  try {
    check_config(opt);
    if (matrix->parsed()) return cmd_matrix(opt, matrix->count("--format") > 0);
    if (norm->parsed()) return cmd_norm(opt);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (radius->parsed()) return cmd_radius(opt);
    if (bounds->parsed()) {
      if (!opt.sweep && opt.spec_path.empty())
        throw spec_error("bounds needs --spec (or --sweep)");
      return cmd_bounds(opt);
    }
    if (verify->parsed()) return cmd_verify(opt);
    if (report->parsed()) return cmd_report(opt);
  } catch (const spec_error& e) {
    return fail("spec", e.what());
  } catch (const domain_error& e) {
    return fail("domain", e.what());
  } catch (const hypothesis_error& e) {
    return fail("hypothesis", e.what());
  } catch (const truncation_error& e) {
    return fail("truncation", e.what());
  } catch (const convergence_error& e) {
    return fail("convergence", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
