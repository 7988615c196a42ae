#pragma once

// JSON presentation of the computation results.  All serializers return a
// pretty-printed document with a stable key order so repeated runs are
// byte-identical.

#include <string>
#include <vector>

#include "kirchhoff/scaling.hpp"
#include "kirchhoff/verification.hpp"

namespace kirchhoff {

std::string ground_state_report_json(const RadialProfile& profile);

std::string existence_report_json(const ExistenceReport& report);

std::string solution_set_json(const SolutionSet& set);

std::string classify_report_json(const KirchhoffParams& params, const FunctionalTriple& f);

std::string verify_report_json(const KirchhoffParams& params,
                               const std::vector<IdentityCheck>& checks);

}  // namespace kirchhoff
