#include "kirchhoff/reports.hpp"

#include <json.hpp>

#include "kirchhoff/ground_state.hpp"

namespace kirchhoff {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json params_json(const KirchhoffParams& params) {
  ordered_json j;
  j["N"] = params.n_dim;
  j["p"] = params.p;
  j["a"] = params.a;
  j["b"] = params.b;
  j["lambda"] = params.lambda;
  return j;
}

ordered_json triple_json(const FunctionalTriple& f) {
  ordered_json j;
  j["A"] = f.A;
  j["B"] = f.B;
  j["C"] = f.C;
  return j;
}

ordered_json roots_json(const GammaRoots& roots, int n_dim) {
  ordered_json j;
  j["count"] = roots.count;
  j["tangent"] = roots.tangent;
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < roots.count; ++i) arr.push_back(roots.roots[i]);
  j["gamma"] = arr;
  if (n_dim >= 5) {
    j["gamma_star"] = roots.gamma_star;
    j["h_min"] = roots.h_min;
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string ground_state_report_json(const RadialProfile& prof) {
  ordered_json j;
  j["N"] = prof.n_dim;
  j["p"] = prof.p;
  j["lambda"] = prof.lambda;
  j["beta"] = prof.beta;
  j["r_max"] = prof.r_max();
  j["nodes"] = prof.size();
  j["functionals"] = triple_json(prof.functionals);
  const LocalIdentityReport ids = local_identity_report(prof);
  j["identities"]["nehari_rel"] = ids.nehari_rel;
  j["identities"]["pohozaev_rel"] = ids.pohozaev_rel;
  j["tail_bound"]["A"] = prof.tail_bound.A;
  j["tail_bound"]["B"] = prof.tail_bound.B;
  j["tail_bound"]["C"] = prof.tail_bound.C;
  j["error_estimate"] = prof.error_estimate;
  j["shooting"]["beta_lo"] = prof.diag.beta_lo;
  j["shooting"]["beta_hi"] = prof.diag.beta_hi;
  j["shooting"]["bracket_rel_width"] = prof.diag.bracket_rel_width;
  j["shooting"]["bisection_steps"] = prof.diag.bisection_steps;
  return dump(j);
}

std::string existence_report_json(const ExistenceReport& rep) {
  ordered_json j = params_json(rep.params);
  j["gradient_mass"] = rep.a_grad;
  j["regime"] = existence_regime_name(rep.regime);
  j["roots"] = roots_json(rep.roots, rep.params.n_dim);
  if (rep.params.n_dim >= 4) j["critical_b"] = rep.critical_b;
  return dump(j);
}

std::string solution_set_json(const SolutionSet& set) {
  ordered_json j = params_json(set.report.params);
  j["gradient_mass"] = set.report.a_grad;
  j["regime"] = existence_regime_name(set.report.regime);
  j["roots"] = roots_json(set.report.roots, set.report.params.n_dim);
  if (set.report.params.n_dim >= 4) j["critical_b"] = set.report.critical_b;
  ordered_json sols = ordered_json::array();
  for (const auto& sol : set.solutions) {
    ordered_json s;
    s["gamma"] = sol.gamma;
    s["functionals"] = triple_json(sol.functionals);
    s["energy"] = sol.energy;
    s["class"] = manifold_class_name(sol.cls);
    if (sol.has_threshold) s["threshold_ratio"] = sol.threshold_ratio;
    sols.push_back(s);
  }
  j["solutions"] = sols;
  return dump(j);
}

std::string classify_report_json(const KirchhoffParams& params, const FunctionalTriple& f) {
  const FiberingReport rep = analyze_triple(params, f);
  ordered_json j = params_json(params);
  j["functionals"] = triple_json(f);
  j["energy"] = rep.energy;
  j["nehari"] = rep.nehari;
  j["pohozaev"] = rep.pohozaev;
  j["dilation_d2"] = rep.dilation_d2;
  j["amplitude_d1"] = rep.amplitude_d1;
  j["amplitude_d2"] = rep.amplitude_d2;
  j["class"] = manifold_class_name(rep.cls);
  j["trichotomy"] = manifold_class_name(rep.trichotomy);

  try {
    const DilationCriticalPoints cp = dilation_critical_points(params, f);
    ordered_json d;
    d["count"] = cp.count;
    d["tangent"] = cp.tangent;
    d["t_ref"] = cp.t_ref;
    ordered_json ts = ordered_json::array(), cs = ordered_json::array();
    for (int i = 0; i < cp.count; ++i) {
      ts.push_back(cp.t[i]);
      cs.push_back(manifold_class_name(cp.cls[i]));
    }
    d["t"] = ts;
    d["classes"] = cs;
    j["dilation_critical_points"] = d;
  } catch (const error& e) {
    j["dilation_critical_points"]["error"] = errc_name(e.code());
  }

  try {
    const AmplitudeCriticalPoints ap = amplitude_critical_points(params, f);
    ordered_json d;
    d["count"] = ap.count;
    ordered_json ss = ordered_json::array();
    for (int i = 0; i < ap.count; ++i) ss.push_back(ap.s[i]);
    d["s"] = ss;
    d["s_center"] = ap.s_center;
    d["gap"] = ap.gap;
    j["amplitude_critical_points"] = d;
  } catch (const error& e) {
    j["amplitude_critical_points"]["error"] = errc_name(e.code());
  }
  return dump(j);
}

std::string verify_report_json(const KirchhoffParams& params,
                               const std::vector<IdentityCheck>& checks) {
  ordered_json j = params_json(params);
  ordered_json c;
  bool all = true;
  for (const auto& chk : checks) {
    ordered_json e;
    e["value"] = chk.value;
    e["tolerance"] = chk.tolerance;
    e["pass"] = chk.pass;
    c[chk.name] = e;
    all = all && chk.pass;
  }
  j["checks"] = c;
  j["pass"] = all;
  return dump(j);
}

}  // namespace kirchhoff
