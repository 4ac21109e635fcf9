#include "helmfuzz/ruledsl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace helmfuzz::dsl {

using fuzzy::FisDefinition;
using fuzzy::kLabels;
using fuzzy::kSetCount;
using fuzzy::Label;
using fuzzy::LinguisticVariable;
using fuzzy::TriangularMf;

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::optional<double> parse_real(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Index 0 = psi_err, 1 = r_err, 2 = rudder.
std::optional<std::size_t> variable_slot(std::string_view name) {
  if (name == kPsiErrName) return 0;
  if (name == kRErrName) return 1;
  if (name == kRudderName) return 2;
  return std::nullopt;
}

constexpr std::array<std::string_view, 3> kVariableNames = {kPsiErrName, kRErrName, kRudderName};

struct VariableDraft {
  std::size_t declared_at = 0;  // 0 = not declared
  double lo = 0.0;
  double hi = 0.0;
  std::array<std::optional<TriangularMf>, kSetCount> sets{};
  std::array<std::size_t, kSetCount> set_lines{};
};

class Parser {
 public:
  FisDefinition run(std::string_view source) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < source.size()) {
      const std::size_t nl = source.find('\n', pos);
      std::string_view line = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      const auto tokens = tokenize(line);
      if (!tokens.empty()) parse_line(tokens, line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return finish(std::max<std::size_t>(line_no, 1));
  }

 private:
  [[noreturn]] static void fail(std::size_t line, const std::string& message) { throw ParseError(line, message); }

  void parse_line(const std::vector<std::string_view>& t, std::size_t line) {
    if (t[0] == "var") {
      parse_var(t, line);
    } else if (t[0] == "set") {
      parse_set(t, line);
    } else if (t[0] == "rule") {
      parse_rule(t, line);
    } else {
      fail(line, "unknown directive '" + std::string(t[0]) + "'");
    }
  }

  std::size_t slot_or_fail(std::string_view name, std::size_t line) {
    const auto slot = variable_slot(name);
    if (!slot) {
      fail(line, "unknown variable '" + std::string(name) + "' (expected psi_err, r_err or rudder)");
    }
    return *slot;
  }

  static Label label_or_fail(std::string_view text, std::size_t line) {
    const auto label = fuzzy::parse_label(text);
    if (!label) fail(line, "unknown label '" + std::string(text) + "' (expected BN, MN, SN, ZE, SP, MP or BP)");
    return *label;
  }

  static double real_or_fail(std::string_view text, std::size_t line) {
    const auto value = parse_real(text);
    if (!value) fail(line, "invalid number '" + std::string(text) + "'");
    return *value;
  }

  void parse_var(const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() != 5 || t[2] != "range") fail(line, "syntax error: expected 'var <name> range <lo> <hi>'");
    auto& var = vars_[slot_or_fail(t[1], line)];
    if (var.declared_at != 0) {
      fail(line, "duplicate variable '" + std::string(t[1]) + "' (first declared on line " +
                     std::to_string(var.declared_at) + ")");
    }
    var.lo = real_or_fail(t[3], line);
    var.hi = real_or_fail(t[4], line);
    if (!(var.lo < var.hi)) fail(line, "range of '" + std::string(t[1]) + "' must satisfy lo < hi");
    var.declared_at = line;
  }

  void parse_set(const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() != 7 || t[3] != "tri") fail(line, "syntax error: expected 'set <var> <LABEL> tri <a> <b> <c>'");
    auto& var = vars_[slot_or_fail(t[1], line)];
    if (var.declared_at == 0) fail(line, "set for undeclared variable '" + std::string(t[1]) + "'");
    const Label label = label_or_fail(t[2], line);
    const std::size_t k = fuzzy::index_of(label);
    if (var.sets[k]) {
      fail(line, "duplicate set " + std::string(t[1]) + " " + std::string(t[2]) + " (first defined on line " +
                     std::to_string(var.set_lines[k]) + ")");
    }
    const TriangularMf mf{real_or_fail(t[4], line), real_or_fail(t[5], line), real_or_fail(t[6], line)};
    if (!(mf.a <= mf.b && mf.b <= mf.c) || mf.a == mf.c) {
      fail(line, "non-monotone breakpoints for " + std::string(t[1]) + " " + std::string(t[2]) +
                     ": need a <= b <= c with a < c");
    }
    var.sets[k] = mf;
    var.set_lines[k] = line;
  }

  void parse_rule(const std::vector<std::string_view>& t, std::size_t line) {
    // rule if psi_err is L and r_err is L then rudder is L
    if (t.size() != 13 || t[1] != "if" || t[3] != "is" || t[5] != "and" || t[7] != "is" || t[9] != "then" ||
        t[11] != "is") {
      fail(line, "syntax error: expected 'rule if psi_err is <LABEL> and r_err is <LABEL> then rudder is <LABEL>'");
    }
    if (t[2] != kPsiErrName || t[6] != kRErrName || t[10] != kRudderName) {
      fail(line, "rule must read 'if psi_err is .. and r_err is .. then rudder is ..'");
    }
    const Label psi = label_or_fail(t[4], line);
    const Label r = label_or_fail(t[8], line);
    const Label out = label_or_fail(t[12], line);
    auto& cell = rule_lines_[fuzzy::index_of(psi)][fuzzy::index_of(r)];
    if (cell != 0) {
      fail(line, "conflicting rule: antecedent (psi_err " + std::string(t[4]) + ", r_err " + std::string(t[8]) +
                     ") already defined on line " + std::to_string(cell));
    }
    cell = line;
    rules_.at(psi, r) = out;
  }

  FisDefinition finish(std::size_t last_line) {
    FisDefinition fis;
    std::array<LinguisticVariable*, 3> targets = {&fis.psi_error, &fis.r_error, &fis.rudder};
    for (std::size_t v = 0; v < 3; ++v) {
      const auto& draft = vars_[v];
      const std::string name(kVariableNames[v]);
      if (draft.declared_at == 0) fail(last_line, "missing variable '" + name + "'");
      auto& var = *targets[v];
      var.name = name;
      var.range_lo = draft.lo;
      var.range_hi = draft.hi;
      for (std::size_t k = 0; k < kSetCount; ++k) {
        if (!draft.sets[k]) {
          fail(last_line, "missing set " + name + " " + std::string(fuzzy::to_string(kLabels[k])));
        }
        var.sets[k] = *draft.sets[k];
      }
      for (std::size_t k = 0; k + 1 < kSetCount; ++k) {
        const auto& lhs = var.sets[k];
        const auto& rhs = var.sets[k + 1];
        const std::size_t line = std::max(draft.set_lines[k], draft.set_lines[k + 1]);
        if (!(lhs.b < rhs.b)) {
          fail(line, "cores of " + name + " must be strictly increasing from BN to BP");
        }
        if (!(lhs.c > rhs.a)) {
          fail(line, name + " " + std::string(fuzzy::to_string(kLabels[k])) + " and " +
                         std::string(fuzzy::to_string(kLabels[k + 1])) + " do not overlap");
        }
      }
    }
    std::size_t count = 0;
    for (const auto& row : rule_lines_) {
      for (std::size_t l : row) count += l != 0 ? 1 : 0;
    }
    if (count != kSetCount * kSetCount) {
      std::ostringstream os;
      os << "incomplete rule matrix: " << count << " of " << kSetCount * kSetCount << " rules; missing";
      for (Label psi : kLabels) {
        for (Label r : kLabels) {
          if (rule_lines_[fuzzy::index_of(psi)][fuzzy::index_of(r)] == 0) {
            os << " (" << fuzzy::to_string(psi) << "," << fuzzy::to_string(r) << ")";
          }
        }
      }
      fail(last_line, os.str());
    }
    fis.rules = rules_;
    if (const auto issues = fuzzy::check_rules(fis.rules); !issues.empty()) {
      fail(last_line, "rule matrix is not antisymmetric: " + issues.front());
    }
    return fis;
  }

  std::array<VariableDraft, 3> vars_{};
  std::array<std::array<std::size_t, kSetCount>, kSetCount> rule_lines_{};
  fuzzy::RuleMatrix rules_{};
};

void write_variable(std::ostringstream& os, std::string_view name, const LinguisticVariable& var) {
  os << "var " << name << " range " << format_real(var.range_lo) << ' ' << format_real(var.range_hi) << '\n';
  for (std::size_t k = 0; k < kSetCount; ++k) {
    const auto& s = var.sets[k];
    os << "set " << name << ' ' << fuzzy::to_string(kLabels[k]) << " tri " << format_real(s.a) << ' '
       << format_real(s.b) << ' ' << format_real(s.c) << '\n';
  }
}

LinguisticVariable make_variable(std::string_view name, double lo, double hi,
                                 const std::array<TriangularMf, kSetCount>& sets) {
  LinguisticVariable v;
  v.name = std::string(name);
  v.range_lo = lo;
  v.range_hi = hi;
  v.sets = sets;
  return v;
}

FisDefinition make_builtin() {
  FisDefinition fis;
  fis.psi_error = make_variable(kPsiErrName, -0.4, 0.4,
                                {{{-0.530, -0.400, -0.266},
                                  {-0.400, -0.266, -0.133},
                                  {-0.266, -0.133, 0.000},
                                  {-0.133, 0.000, 0.133},
                                  {0.000, 0.133, 0.266},
                                  {0.133, 0.266, 0.400},
                                  {0.266, 0.400, 0.530}}});
  // SN core mirrors SP (0.003335); the printed -0.003330 would break odd symmetry.
  fis.r_error = make_variable(kRErrName, -0.01, 0.01,
                              {{{-0.133300, -0.010000, -0.006665},
                                {-0.010000, -0.006665, -0.003335},
                                {-0.006665, -0.003335, 0.000000},
                                {-0.003335, 0.000000, 0.003335},
                                {0.000000, 0.003335, 0.006665},
                                {0.003335, 0.006665, 0.010000},
                                {0.006665, 0.010000, 0.133300}}});
  fis.rudder = make_variable(kRudderName, -0.8, 0.8,
                             {{{-1.0670, -0.8000, -0.5333},
                               {-0.8000, -0.5333, -0.2667},
                               {-0.5333, -0.2667, 0.0000},
                               {-0.2667, 0.0000, 0.2667},
                               {0.0000, 0.2667, 0.5333},
                               {0.2667, 0.5333, 0.8000},
                               {0.5333, 0.8000, 1.0670}}});
  using enum Label;
  fis.rules.out = {{
      // r_err:  BN  MN  SN  ZE  SP  MP  BP       psi_err
      {BN, BN, MN, MN, SN, SN, ZE},  // BN
      {BN, MN, MN, SN, SN, ZE, SP},  // MN
      {MN, MN, SN, SN, ZE, SP, SP},  // SN
      {MN, SN, SN, ZE, SP, SP, MP},  // ZE
      {SN, SN, ZE, SP, SP, MP, MP},  // SP
      {SN, ZE, SP, SP, MP, MP, BP},  // MP
      {ZE, SP, SP, MP, MP, BP, BP},  // BP
  }};
  return fis;
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), res.ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

FisDefinition parse_fis(std::string_view source) { return Parser{}.run(source); }

std::string serialize_fis(const FisDefinition& fis) {
  std::ostringstream os;
  os << "# Mamdani heading autopilot: inputs psi_err [rad], r_err [rad/s]; output rudder [rad]\n";
  write_variable(os, kPsiErrName, fis.psi_error);
  os << '\n';
  write_variable(os, kRErrName, fis.r_error);
  os << '\n';
  write_variable(os, kRudderName, fis.rudder);
  os << '\n';
  for (Label psi : kLabels) {
    for (Label r : kLabels) {
      os << "rule if " << kPsiErrName << " is " << fuzzy::to_string(psi) << " and " << kRErrName << " is "
         << fuzzy::to_string(r) << " then " << kRudderName << " is " << fuzzy::to_string(fis.rules.at(psi, r))
         << '\n';
    }
  }
  return os.str();
}

const FisDefinition& builtin_paper_fis() {
  static const FisDefinition fis = make_builtin();
  return fis;
}

}  // namespace helmfuzz::dsl
