#include "kirchhoff/profile_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "kirchhoff/ground_state.hpp"

namespace kirchhoff {
namespace {

double parse_double(std::string_view s, const char* what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(errc::parse_error, std::string("malformed numeric field for ") + what);
  return v;
}

long parse_long(std::string_view s, const char* what) {
  const double v = parse_double(s, what);
  const long n = std::lround(v);
  if (double(n) != v) fail(errc::parse_error, std::string("expected an integer for ") + what);
  return n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_profile_csv(const RadialProfile& prof, std::ostream& os) {
  prof.validate_structure();
  os << "# N=" << prof.n_dim << '\n';
  os << "# p=" << format_double(prof.p) << '\n';
  os << "# lambda=" << format_double(prof.lambda) << '\n';
  os << "# beta=" << format_double(prof.beta) << '\n';
  os << "# r_max=" << format_double(prof.r_max()) << '\n';
  os << "r,u,du\n";
  for (size_t i = 0; i < prof.size(); ++i)
    os << format_double(prof.r[i]) << ',' << format_double(prof.u[i]) << ','
       << format_double(prof.du[i]) << '\n';
  if (!os) fail(errc::io_error, "write failed while emitting profile rows");
}

void write_profile_csv(const RadialProfile& prof, const std::string& path) {
  if (path == "-") {
    write_profile_csv(prof, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path);
  if (!os) fail(errc::io_error, "cannot open '" + path + "' for writing");
  write_profile_csv(prof, os);
}

RadialProfile read_profile_csv(std::istream& is) {
  RadialProfile prof;
  bool have_n = false, have_p = false, have_lambda = false, have_beta = false;
  bool header_row = false;
  std::string line;
  while (std::getline(is, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      sv.remove_prefix(1);
      sv = trim(sv);
      const size_t eq = sv.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = trim(sv.substr(0, eq));
      const std::string_view val = trim(sv.substr(eq + 1));
      if (key == "N") {
        prof.n_dim = int(parse_long(val, "N"));
        have_n = true;
      } else if (key == "p") {
        prof.p = parse_double(val, "p");
        have_p = true;
      } else if (key == "lambda") {
        prof.lambda = parse_double(val, "lambda");
        have_lambda = true;
      } else if (key == "beta") {
        prof.beta = parse_double(val, "beta");
        have_beta = true;
      }
      continue;
    }
    if (!header_row) {
      if (sv != "r,u,du") fail(errc::parse_error, "expected the column header 'r,u,du'");
      header_row = true;
      continue;
    }
    const size_t c1 = sv.find(',');
    const size_t c2 = c1 == std::string_view::npos ? c1 : sv.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      fail(errc::parse_error, "profile row does not have three comma-separated fields");
    prof.r.push_back(parse_double(sv.substr(0, c1), "r"));
    prof.u.push_back(parse_double(sv.substr(c1 + 1, c2 - c1 - 1), "u"));
    prof.du.push_back(parse_double(sv.substr(c2 + 1), "du"));
  }
  if (!have_n || !have_p || !have_lambda || !have_beta)
    fail(errc::parse_error, "missing one of the required header keys N, p, lambda, beta");
  if (!header_row || prof.r.empty()) fail(errc::parse_error, "profile has no data rows");
  prof.validate_structure();
  prof.decay_floor = std::abs(prof.u.back());
  prof.functionals = compute_functionals(prof);
  prof.tail_bound = tail_bound_beyond(prof);
  const auto& f = prof.functionals;
  const double tail_rel =
      std::max({prof.tail_bound.A / f.A, prof.tail_bound.B / f.B, prof.tail_bound.C / f.C});
  prof.error_estimate = 1e-10 + tail_rel;
  return prof;
}

RadialProfile read_profile_csv(const std::string& path) {
  if (path == "-") return read_profile_csv(std::cin);
  std::ifstream is(path);
  if (!is) fail(errc::io_error, "cannot open '" + path + "' for reading");
  return read_profile_csv(is);
}

}  // namespace kirchhoff
