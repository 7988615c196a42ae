#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "kirchhoff.h"

namespace {

struct Profile {
  kh_profile* h = nullptr;
  ~Profile() { kh_profile_free(h); }
};

struct Solutions {
  kh_solution_set* h = nullptr;
  ~Solutions() { kh_solution_set_free(h); }
};

struct CStr {
  char* s = nullptr;
  ~CStr() { kh_string_free(s); }
};

int exit_code(kh_status st) {
  switch (st) {
    case KH_OK: return 0;
    case KH_ERR_NO_CONVERGENCE: return 3;
    default: return 2;
  }
}

int complain(kh_status st) {
  std::fprintf(stderr, "error: %s\n", kh_last_error());
  return exit_code(st);
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream os(path);
  os << text;
  if (!os) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    return 2;
  }
  return 0;
}

kh_options make_options(double shoot_tol) {
  kh_options opts;
  kh_options_init(&opts);
  opts.shoot_tol = shoot_tol;
  return opts;
}

struct GroundStateArgs {
  int n_dim = 3;
  double p = 0.0, lambda = 1.0, tol = 1e-12;
  std::string out, format = "json";
};

int run_ground_state(const GroundStateArgs& args) {
  const kh_options opts = make_options(args.tol);
  Profile prof;
  if (const kh_status st = kh_ground_state(args.n_dim, args.p, args.lambda, &opts, &prof.h))
    return complain(st);
  if (!args.out.empty()) {
    if (const kh_status st = kh_profile_write_csv(prof.h, args.out.c_str())) return complain(st);
  }
  if (args.format == "csv") {
    if (args.out.empty()) {
      if (const kh_status st = kh_profile_write_csv(prof.h, "-")) return complain(st);
    }
    return 0;
  }
  CStr json;
  if (const kh_status st = kh_profile_report_json(prof.h, &json.s)) return complain(st);
  std::fputs(json.s, stdout);
  return 0;
}

struct SolveArgs {
  int n_dim = 3;
  double p = 0.0, a = 0.0, b = 0.0, lambda = 1.0, tol = 1e-12;
  std::string out, profiles_out;
};

int run_solve(const SolveArgs& args) {
  const kh_options opts = make_options(args.tol);
  Profile base;
  if (const kh_status st = kh_ground_state(args.n_dim, args.p, args.lambda, &opts, &base.h))
    return complain(st);
  Solutions set;
  const int with_profiles = args.profiles_out.empty() ? 0 : 1;
  if (const kh_status st =
          kh_build_solutions(base.h, args.a, args.b, args.lambda, with_profiles, &set.h))
    return complain(st);
  if (with_profiles) {
    const size_t count = kh_solution_count(set.h);
    for (size_t k = 0; k < count; ++k) {
      Profile sol;
      if (const kh_status st = kh_solution_profile(set.h, k, &sol.h)) return complain(st);
      const std::string path = args.profiles_out + "_" + std::to_string(k + 1) + ".csv";
      if (const kh_status st = kh_profile_write_csv(sol.h, path.c_str())) return complain(st);
    }
  }
  CStr json;
  if (const kh_status st = kh_solution_report_json(set.h, &json.s)) return complain(st);
  return emit(json.s, args.out);
}

struct ClassifyArgs {
  int n_dim = 0;
  double p = 0.0, a = 0.0, b = 0.0, lambda = -1.0, t = 1.0, tol = 1e-12;
  std::string in, out;
};

int run_classify(const ClassifyArgs& args) {
  Profile prof;
  double lambda = args.lambda;
  if (!args.in.empty()) {
    if (const kh_status st = kh_profile_read_csv(args.in.c_str(), &prof.h)) return complain(st);
    if (lambda <= 0.0) kh_profile_info(prof.h, nullptr, nullptr, &lambda, nullptr, nullptr, nullptr);
  } else {
    if (args.n_dim == 0 || args.p == 0.0) {
      std::fprintf(stderr, "error: classify needs either --in or both --N and --p\n");
      return 2;
    }
    if (lambda <= 0.0) lambda = 1.0;
    const kh_options opts = make_options(args.tol);
    if (const kh_status st = kh_ground_state(args.n_dim, args.p, lambda, &opts, &prof.h))
      return complain(st);
  }
  CStr json;
  if (const kh_status st =
          kh_classify_report_json(prof.h, args.a, args.b, lambda, args.t, &json.s))
    return complain(st);
  return emit(json.s, args.out);
}

struct SweepArgs {
  int n_dim = 3, steps = 0;
  double p = 0.0, a = 0.0, lambda = 1.0, b_min = 0.0, b_max = 0.0, tol = 1e-12;
  bool log = false;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  if (args.b_max < args.b_min) {
    std::fprintf(stderr, "error: --b-max must be >= --b-min\n");
    return 2;
  }
  const kh_options opts = make_options(args.tol);
  Profile base;
  if (const kh_status st = kh_ground_state(args.n_dim, args.p, args.lambda, &opts, &base.h))
    return complain(st);
  double grad_mass = 0.0;
  kh_profile_functionals(base.h, &grad_mass, nullptr, nullptr);

  std::string text;
  text += "# N=" + std::to_string(args.n_dim) + "\n";
  text += "# p=" + fmt(args.p) + "\n";
  text += "# a=" + fmt(args.a) + "\n";
  text += "# lambda=" + fmt(args.lambda) + "\n";
  if (args.n_dim >= 4) {
    double bcrit = 0.0;
    if (const kh_status st = kh_critical_b(args.n_dim, args.a, grad_mass, &bcrit))
      return complain(st);
    text += "# critical_b=" + fmt(bcrit) + "\n";
  } else {
    text += "# critical_b=none\n";
  }
  text += "b,count,threshold,gamma_1,gamma_2,A_1,A_2,E_1,E_2,class_1,class_2\n";

  for (int i = 0; i < args.steps; ++i) {
    double b = args.b_min;
    if (args.steps > 1) {
      const double w = double(i) / double(args.steps - 1);
      b = args.log ? args.b_min * std::pow(args.b_max / args.b_min, w)
                   : args.b_min + w * (args.b_max - args.b_min);
    }
    kh_gamma_roots roots;
    if (const kh_status st = kh_solve_gamma(args.n_dim, args.a, b, grad_mass, &roots))
      return complain(st);
    Solutions set;
    if (const kh_status st = kh_build_solutions(base.h, args.a, b, args.lambda, 0, &set.h))
      return complain(st);
    const size_t count = kh_solution_count(set.h);
    std::string cells[8];
    for (size_t k = 0; k < count && k < 2; ++k) {
      double gamma = 0.0, A = 0.0, energy = 0.0;
      const char* cls = nullptr;
      if (const kh_status st =
              kh_solution_info(set.h, k, &gamma, &A, nullptr, nullptr, &energy, &cls))
        return complain(st);
      cells[0 + k] = fmt(gamma);
      cells[2 + k] = fmt(A);
      cells[4 + k] = fmt(energy);
      cells[6 + k] = cls;
    }
    text += fmt(b) + "," + std::to_string(count) + "," +
            (args.n_dim >= 4 ? fmt(roots.h_min) : std::string());
    for (const auto& cell : cells) text += "," + cell;
    text += "\n";
  }
  return emit(text, args.out);
}

struct VerifyArgs {
  double a = 0.0, b = 0.0, lambda = -1.0;
  std::string in, out;
};

int run_verify(const VerifyArgs& args) {
  Profile prof;
  if (const kh_status st = kh_profile_read_csv(args.in.c_str(), &prof.h)) return complain(st);
  double lambda = args.lambda;
  if (lambda <= 0.0) kh_profile_info(prof.h, nullptr, nullptr, &lambda, nullptr, nullptr, nullptr);
  int pass = 0;
  CStr json;
  if (const kh_status st = kh_verify_report_json(prof.h, args.a, args.b, lambda, &pass, &json.s))
    return complain(st);
  if (const int rc = emit(json.s, args.out)) return rc;
  return pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive radial solutions of -(a + b||grad u||^2) Lap(u) + lambda u = |u|^{p-2} u"};
  app.require_subcommand(1);

  GroundStateArgs gs;
  CLI::App* gs_cmd =
      app.add_subcommand("ground-state", "solve the local (b = 0) ground state by shooting");
  gs_cmd->add_option("--N", gs.n_dim, "space dimension, N >= 3")->required();
  gs_cmd->add_option("--p", gs.p, "exponent, 2 < p < 2N/(N-2)")->required();
  gs_cmd->add_option("--lambda", gs.lambda, "frequency > 0")->capture_default_str();
  gs_cmd->add_option("--tol", gs.tol, "shooting bracket relative width target")
      ->capture_default_str();
  gs_cmd->add_option("--out", gs.out, "write the profile CSV here ('-' for stdout)");
  gs_cmd->add_option("--format", gs.format, "stdout payload when --out is absent")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  SolveArgs sv;
  CLI::App* sv_cmd = app.add_subcommand("solve", "construct all solutions of the full equation");
  sv_cmd->add_option("--N", sv.n_dim, "space dimension, N >= 3")->required();
  sv_cmd->add_option("--p", sv.p, "exponent, 2 < p < 2N/(N-2)")->required();
  sv_cmd->add_option("--a", sv.a, "base diffusion coefficient > 0")->required();
  sv_cmd->add_option("--b", sv.b, "nonlocal coefficient > 0")->required();
  sv_cmd->add_option("--lambda", sv.lambda, "frequency > 0")->capture_default_str();
  sv_cmd->add_option("--tol", sv.tol, "shooting bracket relative width target")
      ->capture_default_str();
  sv_cmd->add_option("--out", sv.out, "write the JSON report here instead of stdout");
  sv_cmd->add_option("--profiles-out", sv.profiles_out,
                     "prefix for per-solution CSVs (<prefix>_1.csv, ...)");

  ClassifyArgs cl;
  CLI::App* cl_cmd =
      app.add_subcommand("classify", "fibering analysis and manifold class of a profile");
  cl_cmd->add_option("--N", cl.n_dim, "space dimension (when solving fresh)");
  cl_cmd->add_option("--p", cl.p, "exponent (when solving fresh)");
  cl_cmd->add_option("--a", cl.a, "base diffusion coefficient > 0")->required();
  cl_cmd->add_option("--b", cl.b, "nonlocal coefficient > 0")->required();
  cl_cmd->add_option("--lambda", cl.lambda, "frequency (default: profile header, else 1)");
  cl_cmd->add_option("--t", cl.t, "dilation applied before classification")
      ->capture_default_str();
  cl_cmd->add_option("--tol", cl.tol, "shooting bracket relative width target")
      ->capture_default_str();
  cl_cmd->add_option("--in", cl.in, "classify this profile CSV instead of solving");
  cl_cmd->add_option("--out", cl.out, "write the JSON report here instead of stdout");

  SweepArgs sw;
  CLI::App* sw_cmd = app.add_subcommand("sweep", "root count and energies across a range of b");
  sw_cmd->add_option("--N", sw.n_dim, "space dimension, N >= 3")->required();
  sw_cmd->add_option("--p", sw.p, "exponent, 2 < p < 2N/(N-2)")->required();
  sw_cmd->add_option("--a", sw.a, "base diffusion coefficient > 0")->required();
  sw_cmd->add_option("--lambda", sw.lambda, "frequency > 0")->capture_default_str();
  sw_cmd->add_option("--b-min", sw.b_min, "first b value")->required();
  sw_cmd->add_option("--b-max", sw.b_max, "last b value")->required();
  sw_cmd->add_option("--steps", sw.steps, "number of rows")
      ->required()
      ->check(CLI::PositiveNumber);
  sw_cmd->add_flag("--log", sw.log, "space the b values geometrically");
  sw_cmd->add_option("--tol", sw.tol, "shooting bracket relative width target")
      ->capture_default_str();
  sw_cmd->add_option("--out", sw.out, "write the CSV here instead of stdout");

  VerifyArgs vf;
  CLI::App* vf_cmd =
      app.add_subcommand("verify", "run the certification battery on a stored profile");
  vf_cmd->add_option("--in", vf.in, "profile CSV to verify")->required();
  vf_cmd->add_option("--a", vf.a, "base diffusion coefficient > 0")->required();
  vf_cmd->add_option("--b", vf.b, "nonlocal coefficient > 0")->required();
  vf_cmd->add_option("--lambda", vf.lambda, "frequency (default: profile header)");
  vf_cmd->add_option("--out", vf.out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (gs_cmd->parsed()) return run_ground_state(gs);
  if (sv_cmd->parsed()) return run_solve(sv);
  if (cl_cmd->parsed()) return run_classify(cl);
  if (sw_cmd->parsed()) return run_sweep(sw);
  if (vf_cmd->parsed()) return run_verify(vf);
  return 2;
}
