#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "decide.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "logics.hpp"
#include "syntax.hpp"

namespace paramodal {

// Axiom schemas are written over the metavariables phi, psi and gamma.
class Calculus {
 public:
  Calculus(LogicId logic, std::vector<Schema> schemas) : logic_(logic), schemas_(std::move(schemas)) {}

  LogicId logic() const { return logic_; }
  Signature signature() const { return logic_.signature(); }
  const std::vector<Schema>& schemas() const { return schemas_; }

  const Schema* find(std::string_view name) const {
    for (const auto& s : schemas_)
      if (s.name() == name) return &s;
    return nullptr;
  }

  const Schema& at(std::string_view name) const {
    if (const Schema* s = find(name)) return *s;
    throw UnknownName("no axiom " + std::string(name) + " in the calculus for " + logic_.display_name());
  }

 private:
  LogicId logic_;
  std::vector<Schema> schemas_;
};

namespace detail {

struct SchemaText {
  const char* name;
  const char* text;
};

inline constexpr SchemaText kIdm4Axioms[] = {
    {"Ax1", "phi -> (psi -> phi)"},
    {"Ax2", "(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))"},
    {"Ax3", "phi -> (psi -> phi & psi)"},
    {"Ax4", "phi & psi -> phi"},
    {"Ax5", "phi & psi -> psi"},
    {"Ax6", "phi -> phi | psi"},
    {"Ax7", "psi -> phi | psi"},
    {"Ax8", "(phi -> gamma) -> ((psi -> gamma) -> (phi | psi -> gamma))"},
    {"DN", "!!phi <-> phi"},
    {"DM1", "!(phi | psi) <-> !phi & !psi"},
    {"DM2", "!(phi & psi) <-> !phi | !psi"},
    {"DM3", "!(phi -> psi) <-> phi & !psi"},
    {"AxP", "phi | (phi -> psi)"},
};

// Written with & | <-> as primitives; the Tm calculi expand them.
inline constexpr SchemaText kTmAxioms[] = {
    {"Ax1", "phi -> (psi -> phi)"},
    {"Ax2", "(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))"},
    {"Ax9", "(~psi -> ~phi) -> ((~psi -> phi) -> psi)"},
    {"K", "[](phi -> psi) -> ([]phi -> []psi)"},
    {"K1", "[](phi -> psi) -> ([]~psi -> []~phi)"},
    {"K2", "[]~(phi -> psi) <-> []phi & []~psi"},
    {"M1", "[]~phi | []psi -> [](phi -> psi)"},
    {"T", "[]phi -> phi"},
    {"DN1", "[]phi <-> []~~phi"},
};

inline constexpr SchemaText kBridgeAxioms[] = {
    {"N1", "[](phi & psi) <-> []phi & []psi"},
    {"N2", "[]~(phi | psi) <-> [](~phi & ~psi)"},
    {"N3", "[]~phi | []~psi -> []~(phi & psi)"},
    {"N4", "[]phi | []psi -> [](phi | psi)"},
    {"N5", "[]phi <-> []~!phi"},
    {"N6", "[]~phi <-> []~!!phi"},
    {"N7", "[]~(phi & psi) -> ([]phi -> []~psi)"},
    {"N8", "[]~(phi & psi) -> ([]psi -> []~phi)"},
    {"N9", "[](phi | psi) -> ([]~phi -> []psi)"},
    {"N10", "[](phi | psi) -> ([]~psi -> []phi)"},
};

inline constexpr SchemaText kAxiom4 = {"4", "[]phi -> [][]phi"};
inline constexpr SchemaText kAxiom5 = {"5", "~[]~[]phi -> []phi"};
inline constexpr SchemaText kAxiomB = {"B", "~[]~[]phi -> phi"};

inline std::vector<SchemaText> extension_axioms(BoxVariant v) {
  switch (v) {
    case BoxVariant::T: return {};
    case BoxVariant::T4: return {kAxiom4};
    case BoxVariant::T45: return {kAxiom4, kAxiom5};
    case BoxVariant::TB: return {kAxiomB};
    case BoxVariant::T4B: return {kAxiom4, kAxiomB};
    case BoxVariant::T5: return {kAxiom5};
  }
  return {};
}

inline Calculus make_calculus(LogicId id) {
  if (id.unrestricted) throw Error("no Hilbert calculus is defined for " + id.display_name());
  std::vector<Schema> out;
  auto add = [&](const SchemaText& s, bool modal_reading) {
    for (const auto& e : out)
      if (e.name() == s.name) return;
    Formula f = parse(s.text);
    out.emplace_back(s.name, modal_reading ? expand_to_modal(f) : f);
  };
  switch (id.family) {
    case Family::Idm4:
      for (const auto& s : kIdm4Axioms) add(s, false);
      break;
    case Family::Modal:
      for (const auto& s : kTmAxioms) add(s, true);
      for (const auto& s : extension_axioms(id.box)) add(s, true);
      break;
    case Family::Combined:
      for (const auto& s : kIdm4Axioms) add(s, false);
      for (const auto& s : kTmAxioms) add(s, false);
      for (const auto& s : kBridgeAxioms) add(s, false);
      for (const auto& s : extension_axioms(id.box)) add(s, false);
      break;
  }
  return Calculus(id, std::move(out));
}

}  // namespace detail

inline const Calculus& calculus(LogicId id) {
  static const std::vector<Calculus> cache = [] {
    std::vector<Calculus> all;
    for (const LogicId& l : all_logics()) all.push_back(detail::make_calculus(l));
    return all;
  }();
  for (const auto& c : cache)
    if (c.logic() == id) return c;
  throw Error("no Hilbert calculus is defined for " + id.display_name());
}

namespace detail {

inline bool match_into(const Formula& pattern, const Formula& f, Substitution& s) {
  if (pattern.is_var()) {
    auto [it, fresh] = s.emplace(pattern.name(), f);
    return fresh || it->second == f;
  }
  if (pattern.op() != f.op()) return false;
  if (!match_into(pattern.left(), f.left(), s)) return false;
  return arity(f.op()) == 1 || match_into(pattern.right(), f.right(), s);
}

}  // namespace detail

// The substitution of the schema's metavariables that yields `f`, if any.
inline std::optional<Substitution> match_schema(const Schema& s, const Formula& f) {
  Substitution out;
  if (!detail::match_into(s.pattern(), f, out)) return std::nullopt;
  return out;
}

struct Hypothesis {};

struct AxiomUse {
  std::string schema;
  // Empty means the instance is recovered by matching.
  Substitution subst;
};

struct ModusPonens {
  // 1-based line numbers of phi and phi -> psi.
  std::size_t minor;
  std::size_t major;
};

using Justification = std::variant<Hypothesis, AxiomUse, ModusPonens>;

struct ProofLine {
  Formula formula;
  Justification why;
};

struct ProofCheck {
  bool ok = true;
  // 1-based; 0 when the failure is not tied to a line.
  std::size_t line = 0;
  std::string reason;
};

namespace detail {

inline std::optional<std::string> check_line(const Calculus& c, const std::vector<Formula>& hypotheses,
                                             const std::vector<ProofLine>& lines, std::size_t k) {
  const ProofLine& line = lines[k];
  if (!in_signature(line.formula, c.signature()))
    return "formula uses a connective outside " + std::string(to_string(c.signature()));
  if (std::holds_alternative<Hypothesis>(line.why)) {
    if (std::find(hypotheses.begin(), hypotheses.end(), line.formula) == hypotheses.end())
      return std::string("not among the hypotheses");
    return std::nullopt;
  }
  if (const auto* ax = std::get_if<AxiomUse>(&line.why)) {
    const Schema* s = c.find(ax->schema);
    if (!s) return "unknown axiom " + ax->schema;
    if (ax->subst.empty()) {
      if (!match_schema(*s, line.formula)) return "not an instance of " + ax->schema;
      return std::nullopt;
    }
    for (const auto& [name, _] : ax->subst)
      if (std::find(s->metavariables().begin(), s->metavariables().end(), name) == s->metavariables().end())
        return ax->schema + " has no metavariable " + name;
    for (const auto& m : s->metavariables())
      if (!ax->subst.count(m)) return "no binding for " + m + " in " + ax->schema;
    if (!(instantiate(*s, ax->subst) == line.formula))
      return "substitution does not yield this instance of " + ax->schema;
    return std::nullopt;
  }
  const auto& mp = std::get<ModusPonens>(line.why);
  auto earlier = [&](std::size_t i) { return i >= 1 && i <= k; };
  if (!earlier(mp.minor)) return "mp cites line " + std::to_string(mp.minor) + ", which is not an earlier line";
  if (!earlier(mp.major)) return "mp cites line " + std::to_string(mp.major) + ", which is not an earlier line";
  const Formula& major = lines[mp.major - 1].formula;
  if (!(major == Formula::imp(lines[mp.minor - 1].formula, line.formula)))
    return "line " + std::to_string(mp.major) + " is not line " + std::to_string(mp.minor) + " -> this line";
  return std::nullopt;
}

}  // namespace detail

// Checks every line; the proof proves its last line.
inline ProofCheck verify_proof(const Calculus& c, const std::vector<Formula>& hypotheses,
                               const std::vector<ProofLine>& lines) {
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (auto why = detail::check_line(c, hypotheses, lines, k)) return {false, k + 1, *why};
  return {};
}

// As above, and the last line must be `goal`. A proof with no lines proves
// exactly the hypotheses.
inline ProofCheck verify_proof(const Calculus& c, const std::vector<Formula>& hypotheses,
                               const std::vector<ProofLine>& lines, const Formula& goal) {
  ProofCheck r = verify_proof(c, hypotheses, lines);
  if (!r.ok) return r;
  if (lines.empty()) {
    if (std::find(hypotheses.begin(), hypotheses.end(), goal) != hypotheses.end()) return r;
    return {false, 0, "empty proof and the goal is not a hypothesis"};
  }
  if (!(lines.back().formula == goal)) return {false, lines.size(), "last line is not the goal"};
  return r;
}

struct Proof {
  std::optional<LogicId> logic;
  std::vector<Formula> hypotheses;
  std::optional<Formula> goal;
  std::vector<ProofLine> lines;
  // Free-form '#' lines, without the marker.
  std::vector<std::string> notes;
};

inline ProofCheck verify_proof(const Calculus& c, const Proof& p) {
  return p.goal ? verify_proof(c, p.hypotheses, p.lines, *p.goal) : verify_proof(c, p.hypotheses, p.lines);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == s.npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string metavariable_alias(std::string_view name) {
  if (name == "φ") return "phi";
  if (name == "ψ") return "psi";
  if (name == "γ") return "gamma";
  return std::string(name);
}

[[noreturn]] inline void proof_error(std::size_t line, const std::string& what) {
  throw Error("proof line " + std::to_string(line) + ": " + what);
}

inline Formula parse_at(std::string_view text, std::size_t line) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    proof_error(line, e.what());
  }
}

inline std::size_t parse_index(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.empty() || s.find_first_not_of("0123456789") != s.npos) proof_error(line, "bad line reference '" + std::string(s) + "'");
  return std::stoul(std::string(s));
}

inline Justification parse_justification(std::string_view j, std::size_t line) {
  j = trim(j);
  if (j == "hyp") return Hypothesis{};
  if (j.starts_with("mp(") && j.ends_with(")")) {
    std::string_view args = j.substr(3, j.size() - 4);
    auto comma = args.find(',');
    if (comma == args.npos) proof_error(line, "mp needs two line references");
    return ModusPonens{parse_index(args.substr(0, comma), line), parse_index(args.substr(comma + 1), line)};
  }
  if (j.starts_with("ax(")) {
    auto close = j.find(')');
    if (close == j.npos) proof_error(line, "unterminated ax(");
    AxiomUse ax{std::string(trim(j.substr(3, close - 3))), {}};
    std::string_view rest = trim(j.substr(close + 1));
    if (rest.empty()) return ax;
    if (!rest.starts_with("{") || !rest.ends_with("}")) proof_error(line, "expected {metavariable:=formula, ...}");
    rest = rest.substr(1, rest.size() - 2);
    while (!trim(rest).empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      auto bind = item.find(":=");
      if (bind == item.npos) proof_error(line, "expected ':=' in '" + std::string(trim(item)) + "'");
      std::string mv = metavariable_alias(trim(item.substr(0, bind)));
      if (ax.subst.count(mv)) proof_error(line, "metavariable " + mv + " bound twice");
      ax.subst.emplace(mv, parse_at(item.substr(bind + 2), line));
      if (comma == rest.npos) break;
      rest = rest.substr(comma + 1);
    }
    return ax;
  }
  proof_error(line, "expected hyp, ax(<name>) or mp(<i>,<j>), found '" + std::string(j) + "'");
}

}  // namespace detail

// Line format: "<n>. <formula> ; hyp | ax(<name>){phi:=..., psi:=...} | mp(<i>,<j>)".
// Directives: "# logic: <tag>", "# hypotheses: <f>, ...", "# goal: <f>".
inline Proof parse_proof(std::string_view text) {
  Proof out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == text.npos ? std::string_view{} : text.substr(nl + 1);
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      std::string_view body = detail::trim(line.substr(1));
      if (body.starts_with("logic:")) {
        out.logic = parse_logic(detail::trim(body.substr(6)));
      } else if (body.starts_with("hypotheses:")) {
        try {
          for (auto& f : parse_list(body.substr(11))) out.hypotheses.push_back(f);
        } catch (const ParseError& e) {
          detail::proof_error(line_no, e.what());
        }
      } else if (body.starts_with("goal:")) {
        out.goal = detail::parse_at(body.substr(5), line_no);
      } else {
        out.notes.emplace_back(body);
      }
      continue;
    }
    auto dot = line.find('.');
    if (dot == line.npos) detail::proof_error(line_no, "expected '<n>.'");
    std::size_t n = detail::parse_index(line.substr(0, dot), line_no);
    if (n != out.lines.size() + 1)
      detail::proof_error(line_no, "expected line number " + std::to_string(out.lines.size() + 1));
    std::string_view rest = line.substr(dot + 1);
    auto semi = rest.rfind(';');
    if (semi == rest.npos) detail::proof_error(line_no, "expected ';' before the justification");
    out.lines.push_back({detail::parse_at(rest.substr(0, semi), line_no),
                         detail::parse_justification(rest.substr(semi + 1), line_no)});
  }
  return out;
}

inline std::string print_justification(const Justification& j) {
  if (std::holds_alternative<Hypothesis>(j)) return "hyp";
  if (const auto* mp = std::get_if<ModusPonens>(&j))
    return "mp(" + std::to_string(mp->minor) + "," + std::to_string(mp->major) + ")";
  const auto& ax = std::get<AxiomUse>(j);
  std::string out = "ax(" + ax.schema + ")";
  if (ax.subst.empty()) return out;
  // phi, psi, gamma in that order, then anything else.
  std::vector<std::pair<std::string, Formula>> items(ax.subst.begin(), ax.subst.end());
  auto rank = [](const std::string& n) { return n == "phi" ? 0 : n == "psi" ? 1 : n == "gamma" ? 2 : 3; };
  std::stable_sort(items.begin(), items.end(), [&](const auto& a, const auto& b) { return rank(a.first) < rank(b.first); });
  out += "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i].first + ":=" + print(items[i].second);
  }
  return out + "}";
}

inline std::string print_proof(const Proof& p) {
  std::string out;
  for (const auto& n : p.notes) out += "# " + n + "\n";
  if (p.logic) out += "# logic: " + p.logic->tag() + "\n";
  if (!p.hypotheses.empty()) {
    out += "# hypotheses: ";
    for (std::size_t i = 0; i < p.hypotheses.size(); ++i) out += (i ? ", " : "") + print(p.hypotheses[i]);
    out += "\n";
  }
  if (p.goal) out += "# goal: " + print(*p.goal) + "\n";
  for (std::size_t i = 0; i < p.lines.size(); ++i)
    out += std::to_string(i + 1) + ". " + print(p.lines[i].formula) + " ; " + print_justification(p.lines[i].why) + "\n";
  return out;
}

struct SweepFailure {
  std::string schema;
  Formula instance;
  PartialValuation countermodel;
};

struct SweepReport {
  std::size_t instances = 0;
  std::vector<SweepFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Instantiates each schema with every tuple of pool formulas for its
// metavariables and checks validity in `m`.
inline SweepReport soundness_sweep(const std::vector<Schema>& schemas, const Nmatrix& m, const std::vector<Formula>& pool) {
  SweepReport report;
  for (const Schema& s : schemas) {
    const auto& mvs = s.metavariables();
    if (mvs.size() > 3) throw Error("schema " + s.name() + " has more than three metavariables");
    if (pool.empty() && !mvs.empty()) continue;
    std::vector<std::size_t> pick(mvs.size(), 0);
    while (true) {
      Substitution subst;
      for (std::size_t i = 0; i < mvs.size(); ++i) subst.emplace(mvs[i], pool[pick[i]]);
      Formula inst = instantiate(s, subst);
      ++report.instances;
      if (auto cm = find_countermodel(inst, m)) report.failures.push_back({s.name(), inst, std::move(*cm)});
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == pool.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return report;
}

// Six instantiation formulas in each signature.
inline std::vector<Formula> default_pool(Signature s) {
  switch (s) {
    case Signature::Sigma4: return parse_list("p, q, !p, p & q, p | q, p -> q");
    case Signature::SigmaM: return parse_list("p, q, ~p, []q, p -> q, []~p");
    case Signature::SigmaFull: break;
  }
  return parse_list("p, q, !p, []q, p -> q, ~(p & !q)");
}

inline SweepReport soundness_sweep(const Calculus& c, const std::vector<Formula>& pool) {
  return soundness_sweep(c.schemas(), nmatrix(c.logic()), pool);
}

// Appends Hilbert lines, reusing an earlier line whenever the same formula
// is already derived, and offers the usual derived rules on top of MP.
class ProofBuilder {
 public:
  explicit ProofBuilder(const Calculus& c) : c_(&c) {}

  const Calculus& calculus() const { return *c_; }
  const std::vector<ProofLine>& lines() const { return lines_; }
  const std::vector<Formula>& hypotheses() const { return hyps_; }
  const Formula& formula(std::size_t line) const { return lines_.at(line - 1).formula; }

  std::size_t hyp(const Formula& f) {
    if (std::find(hyps_.begin(), hyps_.end(), f) == hyps_.end()) hyps_.push_back(f);
    return push({f, Hypothesis{}});
  }

  std::size_t ax(std::string_view name, Substitution subst) {
    const Schema& s = c_->at(name);
    Formula f = instantiate(s, subst);
    return push({f, AxiomUse{s.name(), std::move(subst)}});
  }

  std::size_t mp(std::size_t minor, std::size_t major) {
    const Formula& imp = formula(major);
    if (imp.op() != Connective::Imp || !(imp.left() == formula(minor)))
      throw Error("mp: line " + std::to_string(major) + " is not line " + std::to_string(minor) + " -> _");
    return push({imp.right(), ModusPonens{minor, major}});
  }

  // A -> A
  std::size_t identity(const Formula& a) {
    Formula aa = Formula::imp(a, a);
    std::size_t l1 = ax("Ax2", {{"phi", a}, {"psi", aa}, {"gamma", a}});
    std::size_t l2 = ax("Ax1", {{"phi", a}, {"psi", aa}});
    std::size_t l3 = mp(l2, l1);
    std::size_t l4 = ax("Ax1", {{"phi", a}, {"psi", a}});
    return mp(l4, l3);
  }

  // From X derive B -> X.
  std::size_t weaken(std::size_t x, const Formula& b) {
    return mp(x, ax("Ax1", {{"phi", formula(x)}, {"psi", b}}));
  }

  // From A -> B and B -> C derive A -> C.
  std::size_t hs(std::size_t ab, std::size_t bc) {
    const Formula a = formula(ab).left();
    const Formula b = formula(ab).right();
    const Formula c = formula(bc).right();
    std::size_t a_bc = weaken(bc, a);
    std::size_t dist = ax("Ax2", {{"phi", a}, {"psi", b}, {"gamma", c}});
    return mp(ab, mp(a_bc, dist));
  }

  // From X and Y derive X & Y.
  std::size_t and_intro(std::size_t x, std::size_t y) {
    std::size_t l = ax("Ax3", {{"phi", formula(x)}, {"psi", formula(y)}});
    return mp(y, mp(x, l));
  }

  // From A <-> B derive A -> B, resp. B -> A.
  std::size_t iff_left(std::size_t ab) {
    const Formula& f = formula(ab);
    return mp(ab, ax("Ax4", {{"phi", f.left()}, {"psi", f.right()}}));
  }
  std::size_t iff_right(std::size_t ab) {
    const Formula& f = formula(ab);
    return mp(ab, ax("Ax5", {{"phi", f.left()}, {"psi", f.right()}}));
  }

  std::size_t iff_sym(std::size_t ab) {
    std::size_t ba = iff_right(ab);
    return and_intro(ba, iff_left(ab));
  }

  // From A <-> B and B <-> C derive A <-> C.
  std::size_t iff_trans(std::size_t ab, std::size_t bc) {
    std::size_t a_b = iff_left(ab);
    std::size_t fwd = hs(a_b, iff_left(bc));
    std::size_t c_b = iff_right(bc);
    std::size_t bwd = hs(c_b, iff_right(ab));
    return and_intro(fwd, bwd);
  }

  // From C -> X and C -> Y derive C -> X & Y.
  std::size_t imp_and(std::size_t cx, std::size_t cy) {
    const Formula c = formula(cx).left();
    const Formula x = formula(cx).right();
    const Formula y = formula(cy).right();
    std::size_t pair = ax("Ax3", {{"phi", x}, {"psi", y}});
    std::size_t c_y_xy = hs(cx, pair);
    std::size_t dist = ax("Ax2", {{"phi", c}, {"psi", y}, {"gamma", Formula::conj(x, y)}});
    return mp(cy, mp(c_y_xy, dist));
  }

  // From A -> A' and B -> B' derive A & B -> A' & B'.
  std::size_t and_mono(std::size_t aa, std::size_t bb) {
    const Formula a = formula(aa).left();
    const Formula b = formula(bb).left();
    std::size_t left = hs(ax("Ax4", {{"phi", a}, {"psi", b}}), aa);
    std::size_t right = hs(ax("Ax5", {{"phi", a}, {"psi", b}}), bb);
    return imp_and(left, right);
  }

  // From A -> A' and B -> B' derive A | B -> A' | B'.
  std::size_t or_mono(std::size_t aa, std::size_t bb) {
    const Formula a = formula(aa).left();
    const Formula b = formula(bb).left();
    const Formula a2 = formula(aa).right();
    const Formula b2 = formula(bb).right();
    const Formula goal = Formula::disj(a2, b2);
    std::size_t left = hs(aa, ax("Ax6", {{"phi", a2}, {"psi", b2}}));
    std::size_t right = hs(bb, ax("Ax7", {{"phi", a2}, {"psi", b2}}));
    std::size_t cases = ax("Ax8", {{"phi", a}, {"psi", b}, {"gamma", goal}});
    return mp(right, mp(left, cases));
  }

  // From A <-> A' and B <-> B' derive A & B <-> A' & B'.
  std::size_t and_cong(std::size_t aa, std::size_t bb) {
    std::size_t a_fwd = iff_left(aa);
    std::size_t fwd = and_mono(a_fwd, iff_left(bb));
    std::size_t a_bwd = iff_right(aa);
    std::size_t bwd = and_mono(a_bwd, iff_right(bb));
    return and_intro(fwd, bwd);
  }

  // ~~A -> A
  std::size_t dne(const Formula& a) {
    const Formula na = Formula::sneg(a);
    const Formula nna = Formula::sneg(na);
    ProofBuilder sub(*c_);
    std::size_t h = sub.hyp(nna);
    std::size_t na_nna = sub.weaken(h, na);
    std::size_t id = sub.identity(na);
    std::size_t ax9 = sub.ax("Ax9", {{"phi", na}, {"psi", a}});
    sub.mp(id, sub.mp(na_nna, ax9));
    return splice(discharge(sub, nna));
  }

  // (A -> ~B) -> (B -> ~A)
  std::size_t contraposition(const Formula& a, const Formula& b) {
    const Formula na = Formula::sneg(a);
    const Formula nna = Formula::sneg(na);
    const Formula a_nb = Formula::imp(a, Formula::sneg(b));
    ProofBuilder inner(*c_);
    std::size_t h1 = inner.hyp(a_nb);
    std::size_t h2 = inner.hyp(b);
    std::size_t nna_nb = inner.hs(inner.dne(a), h1);
    std::size_t ax9 = inner.ax("Ax9", {{"phi", b}, {"psi", na}});
    std::size_t nna_b = inner.weaken(h2, nna);
    inner.mp(nna_b, inner.mp(nna_nb, ax9));
    ProofBuilder outer(*c_);
    outer.splice(discharge(inner, b));
    return splice(discharge(outer, a_nb));
  }

  // Appends a proof, renumbering its references; returns the line of its
  // last formula.
  std::size_t splice(const ProofBuilder& other) {
    std::vector<std::size_t> at(other.lines_.size() + 1, 0);
    for (std::size_t i = 0; i < other.lines_.size(); ++i) {
      const ProofLine& l = other.lines_[i];
      if (const auto* m = std::get_if<ModusPonens>(&l.why))
        at[i + 1] = push({l.formula, ModusPonens{at[m->minor], at[m->major]}});
      else if (std::holds_alternative<Hypothesis>(l.why))
        at[i + 1] = hyp(l.formula);
      else
        at[i + 1] = push(l);
    }
    return at[other.lines_.size()];
  }

  // Deduction theorem: turns a proof of C from hypotheses including B into
  // a proof of B -> C without B. Lines that do not depend on B are kept.
  static ProofBuilder discharge(const ProofBuilder& from, const Formula& b) {
    ProofBuilder out(*from.c_);
    for (const auto& h : from.hyps_)
      if (!(h == b)) out.hyps_.push_back(h);
    const std::size_t n = from.lines_.size();
    std::vector<std::size_t> plain(n + 1, 0);
    std::vector<std::size_t> under(n + 1, 0);
    std::vector<char> depends(n + 1, 0);
    auto conditional = [&](std::size_t i) {
      if (!under[i]) under[i] = out.weaken(plain[i], b);
      return under[i];
    };
    for (std::size_t i = 1; i <= n; ++i) {
      const ProofLine& l = from.lines_[i - 1];
      const auto* m = std::get_if<ModusPonens>(&l.why);
      if (std::holds_alternative<Hypothesis>(l.why) && l.formula == b) {
        depends[i] = 1;
        under[i] = out.identity(b);
      } else if (m && (depends[m->minor] || depends[m->major])) {
        depends[i] = 1;
        const Formula& x = from.lines_[m->minor - 1].formula;
        std::size_t bx = conditional(m->minor);
        std::size_t bxy = conditional(m->major);
        std::size_t dist = out.ax("Ax2", {{"phi", b}, {"psi", x}, {"gamma", l.formula}});
        under[i] = out.mp(bx, out.mp(bxy, dist));
      } else if (m) {
        plain[i] = out.mp(plain[m->minor], plain[m->major]);
      } else if (std::holds_alternative<Hypothesis>(l.why)) {
        plain[i] = out.hyp(l.formula);
      } else {
        plain[i] = out.push(l);
      }
    }
    if (n) out.conclude(depends[n] ? under[n] : conditional(n));
    return out;
  }

  // Makes `line` the last line, repeating it if it was derived earlier.
  std::size_t conclude(std::size_t line) {
    if (line != lines_.size()) lines_.push_back(lines_.at(line - 1));
    return lines_.size();
  }

  Proof proof(std::optional<Formula> goal = std::nullopt) const {
    Proof p;
    p.logic = c_->logic();
    p.hypotheses = hyps_;
    p.goal = goal ? goal : (lines_.empty() ? std::nullopt : std::optional<Formula>(lines_.back().formula));
    p.lines = lines_;
    return p;
  }

 private:
  std::size_t push(ProofLine l) {
    for (std::size_t i = 0; i < lines_.size(); ++i)
      if (lines_[i].formula == l.formula) return i + 1;
    lines_.push_back(std::move(l));
    return lines_.size();
  }

  const Calculus* c_;
  std::vector<ProofLine> lines_;
  std::vector<Formula> hyps_;
};

}  // namespace paramodal
