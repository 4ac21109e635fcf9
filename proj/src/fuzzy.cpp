#include "helmfuzz/fuzzy.hpp"

#include <cmath>
#include <sstream>

namespace helmfuzz::fuzzy {

namespace {

constexpr std::array<std::string_view, kSetCount> kLabelNames = {"BN", "MN", "SN", "ZE", "SP", "MP", "BP"};

std::string describe(const LinguisticVariable& var, std::size_t k) {
  return var.name + "." + std::string(kLabelNames[k]);
}

}  // namespace

std::string_view to_string(Label l) noexcept { return kLabelNames[index_of(l)]; }

std::optional<Label> parse_label(std::string_view text) noexcept {
  for (std::size_t k = 0; k < kSetCount; ++k) {
    if (kLabelNames[k] == text) return kLabels[k];
  }
  return std::nullopt;
}

MembershipVector fuzzify_variable(const LinguisticVariable& var, double x_crisp) noexcept {
  const double x = var.clamp(x_crisp);
  MembershipVector mu{};
  for (std::size_t k = 0; k < kSetCount; ++k) mu[k] = eval_triangular_mf(var.sets[k], x);
  return mu;
}

std::vector<std::string> check_variable(const LinguisticVariable& var) {
  std::vector<std::string> issues;
  if (!(var.range_lo < var.range_hi)) {
    issues.push_back(var.name + ": range must satisfy lo < hi");
  }
  for (std::size_t k = 0; k < kSetCount; ++k) {
    const auto& s = var.sets[k];
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.c)) {
      issues.push_back(describe(var, k) + ": breakpoints must be finite");
    } else if (!(s.a <= s.b && s.b <= s.c) || s.a == s.c) {
      issues.push_back(describe(var, k) + ": breakpoints must satisfy a <= b <= c with a < c");
    }
  }
  for (std::size_t k = 0; k + 1 < kSetCount; ++k) {
    const auto& lhs = var.sets[k];
    const auto& rhs = var.sets[k + 1];
    if (!(lhs.b < rhs.b)) {
      issues.push_back(describe(var, k + 1) + ": core must exceed the core of " + describe(var, k));
    }
    // Adjacent sets must overlap, which also leaves no gap between neighbouring cores.
    if (!(lhs.c > rhs.a)) {
      issues.push_back(describe(var, k) + " and " + describe(var, k + 1) + " do not overlap");
    }
  }
  return issues;
}

std::vector<std::string> check_rules(const RuleMatrix& rules) {
  std::vector<std::string> issues;
  for (Label psi : kLabels) {
    for (Label r : kLabels) {
      const Label mirrored = rules.at(negate(psi), negate(r));
      if (negate(rules.at(psi, r)) != mirrored) {
        std::ostringstream os;
        os << "rule (" << to_string(psi) << ", " << to_string(r) << ") -> " << to_string(rules.at(psi, r))
           << " is not the negation of (" << to_string(negate(psi)) << ", " << to_string(negate(r)) << ") -> "
           << to_string(mirrored);
        issues.push_back(os.str());
      }
    }
  }
  return issues;
}

std::vector<std::string> check_fis(const FisDefinition& fis) {
  std::vector<std::string> issues;
  for (const auto* var : {&fis.psi_error, &fis.r_error, &fis.rudder}) {
    auto v = check_variable(*var);
    issues.insert(issues.end(), v.begin(), v.end());
  }
  auto r = check_rules(fis.rules);
  issues.insert(issues.end(), r.begin(), r.end());
  return issues;
}

Aggregate infer(const FisDefinition& fis, double psi_err, double r_err) noexcept {
  const MembershipVector mu_psi = fuzzify_variable(fis.psi_error, psi_err);
  const MembershipVector mu_r = fuzzify_variable(fis.r_error, r_err);
  Aggregate agg(fis.rudder);
  for (std::size_t i = 0; i < kSetCount; ++i) {
    if (mu_psi[i] == 0.0) continue;
    for (std::size_t j = 0; j < kSetCount; ++j) {
      const double strength = std::min(mu_psi[i], mu_r[j]);
      if (strength == 0.0) continue;
      agg.activate(fis.rules.out[i][j], strength);
    }
  }
  return agg;
}

double evaluate(const FisDefinition& fis, double psi_err, double r_err, std::size_t grid_points) {
  const Aggregate agg = infer(fis, psi_err, r_err);
  return defuzzify_centroid(agg, agg.support_lo(), agg.support_hi(), grid_points);
}

}  // namespace helmfuzz::fuzzy
