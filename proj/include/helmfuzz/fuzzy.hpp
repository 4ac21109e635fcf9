#pragma once

// Mamdani inference for the two-input heading autopilot: triangular
// fuzzification, min-AND / min-implication, max-aggregation and centroid
// defuzzification over a uniform trapezoidal grid.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "helmfuzz/errors.hpp"

namespace helmfuzz::fuzzy {

inline constexpr std::size_t kSetCount = 7;
inline constexpr std::size_t kDefaultGridPoints = 1001;
inline constexpr double kMinActivationArea = 1e-12;

enum class Label : std::uint8_t { BN = 0, MN, SN, ZE, SP, MP, BP };

inline constexpr std::array<Label, kSetCount> kLabels = {Label::BN, Label::MN, Label::SN, Label::ZE,
                                                         Label::SP, Label::MP, Label::BP};

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }

/// BN<->BP, MN<->MP, SN<->SP, ZE<->ZE.
constexpr Label negate(Label l) noexcept {
  return kLabels[kSetCount - 1 - index_of(l)];
}

std::string_view to_string(Label l) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

struct TriangularMf {
  double a = 0.0;  // left foot
  double b = 0.0;  // core
  double c = 0.0;  // right foot

  friend bool operator==(const TriangularMf&, const TriangularMf&) = default;
};

/// Triangular membership. A vertical edge (a == b or b == c) evaluates to 1 at the core.
inline double eval_triangular_mf(const TriangularMf& mf, double x) noexcept {
  if (x < mf.a || x > mf.c) return 0.0;
  if (x == mf.b) return 1.0;
  if (x < mf.b) return (x - mf.a) / (mf.b - mf.a);
  return (mf.c - x) / (mf.c - mf.b);
}

using MembershipVector = std::array<double, kSetCount>;

struct LinguisticVariable {
  std::string name;
  double range_lo = 0.0;
  double range_hi = 0.0;
  std::array<TriangularMf, kSetCount> sets{};

  const TriangularMf& operator[](Label l) const noexcept { return sets[index_of(l)]; }
  TriangularMf& operator[](Label l) noexcept { return sets[index_of(l)]; }

  /// Inputs saturate at the outermost cores so extreme errors fire BN/BP fully.
  double clamp(double x) const noexcept {
    return std::clamp(x, sets.front().b, sets.back().b);
  }

  double support_lo() const noexcept { return sets.front().a; }
  double support_hi() const noexcept { return sets.back().c; }

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;
};

MembershipVector fuzzify_variable(const LinguisticVariable& var, double x_crisp) noexcept;

/// Consequent label per (psi_error label, r_error label); rows are psi_error.
struct RuleMatrix {
  std::array<std::array<Label, kSetCount>, kSetCount> out{};

  Label at(Label psi, Label r) const noexcept { return out[index_of(psi)][index_of(r)]; }
  Label& at(Label psi, Label r) noexcept { return out[index_of(psi)][index_of(r)]; }

  friend bool operator==(const RuleMatrix&, const RuleMatrix&) = default;
};

struct FisDefinition {
  LinguisticVariable psi_error;  // rad
  LinguisticVariable r_error;    // rad/s
  LinguisticVariable rudder;     // rad
  RuleMatrix rules;

  friend bool operator==(const FisDefinition&, const FisDefinition&) = default;
};

/// Human-readable violations of the structural invariants (empty when valid).
std::vector<std::string> check_variable(const LinguisticVariable& var);
std::vector<std::string> check_rules(const RuleMatrix& rules);
std::vector<std::string> check_fis(const FisDefinition& fis);

/// Max-aggregated output set. Clipping heights are kept per consequent label, which
/// is equivalent to the pointwise max over all 49 clipped rule consequents.
class Aggregate {
 public:
  explicit Aggregate(const LinguisticVariable& output) : output_(&output) { clip_.fill(0.0); }

  void activate(Label consequent, double strength) noexcept {
    double& h = clip_[index_of(consequent)];
    h = std::max(h, strength);
  }

  double operator()(double z) const noexcept {
    double mu = 0.0;
    for (std::size_t k = 0; k < kSetCount; ++k) {
      if (clip_[k] > 0.0) mu = std::max(mu, std::min(clip_[k], eval_triangular_mf(output_->sets[k], z)));
    }
    return mu;
  }

  double clip_height(Label l) const noexcept { return clip_[index_of(l)]; }
  double support_lo() const noexcept { return output_->support_lo(); }
  double support_hi() const noexcept { return output_->support_hi(); }

 private:
  const LinguisticVariable* output_;
  MembershipVector clip_{};
};

/// Fires all 49 rules. The returned aggregate references fis.rudder and must not outlive fis.
Aggregate infer(const FisDefinition& fis, double psi_err, double r_err) noexcept;

/// Centre of area of `mu` over [lo, hi] with `points` uniform trapezoidal samples.
/// Nodes are placed symmetrically about the interval midpoint and summed in
/// mirrored pairs, so a mirrored aggregate yields exactly the negated centroid.
template <class Membership>
double defuzzify_centroid(const Membership& mu, double lo, double hi,
                          std::size_t points = kDefaultGridPoints) {
  if (points < 2 || !(hi > lo)) throw ZeroActivation("defuzzify_centroid: degenerate support grid");
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double last = static_cast<double>(points - 1);
  auto offset = [&](std::size_t k) { return half * ((2.0 * static_cast<double>(k) - last) / last); };

  double area = 0.0;
  double moment = 0.0;  // about the midpoint
  for (std::size_t k = 0, m = points - 1; k < m; ++k, --m) {
    const double w = k == 0 ? 0.5 : 1.0;
    const double dz = offset(k);
    const double mu_lo = mu(mid + dz);
    const double mu_hi = mu(mid - dz);
    area += w * (mu_lo + mu_hi);
    moment += w * (mu_hi - mu_lo) * -dz;
  }
  if (points % 2 == 1) area += mu(mid);

  const double step = (hi - lo) / last;
  if (area * step < kMinActivationArea) {
    throw ZeroActivation("defuzzify_centroid: aggregated output has zero area");
  }
  return mid + moment / area;
}

/// infer + defuzzify over the rudder support.
double evaluate(const FisDefinition& fis, double psi_err, double r_err,
                std::size_t grid_points = kDefaultGridPoints);

}  // namespace helmfuzz::fuzzy
