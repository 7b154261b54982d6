#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "nmatrix.hpp"
#include "snapshot.hpp"

namespace paramodal {

enum class Family { Idm4, Modal, Combined };

// Which box multioperator a modal or combined logic uses.
enum class BoxVariant { T, T4, T45, TB, T4B, T5 };

inline constexpr std::array<BoxVariant, 6> kBoxVariants = {
    BoxVariant::T, BoxVariant::T4, BoxVariant::T45, BoxVariant::TB, BoxVariant::T4B, BoxVariant::T5};

struct LogicId {
  Family family = Family::Idm4;
  BoxVariant box = BoxVariant::T;
  // Combined logics only: use all eight quads instead of the six-valued domain.
  bool unrestricted = false;

  friend constexpr bool operator==(const LogicId&, const LogicId&) = default;

  Signature signature() const {
    switch (family) {
      case Family::Idm4: return Signature::Sigma4;
      case Family::Modal: return Signature::SigmaM;
      case Family::Combined: return Signature::SigmaFull;
    }
    return Signature::SigmaFull;
  }

  DomainKind domain() const {
    switch (family) {
      case Family::Idm4: return DomainKind::Pairs;
      case Family::Modal: return DomainKind::Triples;
      case Family::Combined: break;
    }
    return unrestricted ? DomainKind::QuadsUnrestricted : DomainKind::QuadsRestricted;
  }

  std::string tag() const {
    static constexpr std::array<std::string_view, 6> suffix = {"t", "t4", "t45", "tb", "t4b", "t5"};
    const auto s = std::string(suffix[static_cast<std::size_t>(box)]);
    switch (family) {
      case Family::Idm4: return "idm4";
      case Family::Modal: return s + "m";
      case Family::Combined: return "ivfde-" + s + (unrestricted ? "+unrestricted" : "");
    }
    return "?";
  }

  std::string display_name() const {
    static constexpr std::array<std::string_view, 6> suffix = {"T", "T4", "T45", "TB", "T4B", "T5"};
    const auto s = std::string(suffix[static_cast<std::size_t>(box)]);
    switch (family) {
      case Family::Idm4: return "IDM4";
      case Family::Modal: return s + "m";
      case Family::Combined: return "IvFDE_" + s + (unrestricted ? " (8-valued)" : "");
    }
    return "?";
  }

  // Component logics of a combined logic.
  LogicId modal_component() const { return LogicId{Family::Modal, box, false}; }
  LogicId combined(bool eight_valued = false) const { return LogicId{Family::Combined, box, eight_valued}; }
};

namespace logics {
inline constexpr LogicId idm4{Family::Idm4, BoxVariant::T, false};
inline constexpr LogicId tm{Family::Modal, BoxVariant::T, false};
inline constexpr LogicId t4m{Family::Modal, BoxVariant::T4, false};
inline constexpr LogicId t45m{Family::Modal, BoxVariant::T45, false};
inline constexpr LogicId tbm{Family::Modal, BoxVariant::TB, false};
inline constexpr LogicId t4bm{Family::Modal, BoxVariant::T4B, false};
inline constexpr LogicId t5m{Family::Modal, BoxVariant::T5, false};
inline constexpr LogicId ivfde_t{Family::Combined, BoxVariant::T, false};
inline constexpr LogicId ivfde_t4{Family::Combined, BoxVariant::T4, false};
inline constexpr LogicId ivfde_t45{Family::Combined, BoxVariant::T45, false};
inline constexpr LogicId ivfde_tb{Family::Combined, BoxVariant::TB, false};
inline constexpr LogicId ivfde_t4b{Family::Combined, BoxVariant::T4B, false};
inline constexpr LogicId ivfde_t5{Family::Combined, BoxVariant::T5, false};
}  // namespace logics

// The thirteen logics, in the order idm4, modal family, combined family.
inline const std::vector<LogicId>& all_logics() {
  static const std::vector<LogicId> all = [] {
    std::vector<LogicId> v{logics::idm4};
    for (BoxVariant b : kBoxVariants) v.push_back({Family::Modal, b, false});
    for (BoxVariant b : kBoxVariants) v.push_back({Family::Combined, b, false});
    return v;
  }();
  return all;
}

inline std::vector<LogicId> modal_logics() {
  std::vector<LogicId> v;
  for (BoxVariant b : kBoxVariants) v.push_back({Family::Modal, b, false});
  return v;
}

inline std::vector<LogicId> combined_logics(bool unrestricted = false) {
  std::vector<LogicId> v;
  for (BoxVariant b : kBoxVariants) v.push_back({Family::Combined, b, unrestricted});
  return v;
}

inline LogicId parse_logic(std::string_view tag, bool unrestricted = false) {
  for (const LogicId& id : all_logics()) {
    if (id.tag() != tag) continue;
    if (unrestricted && id.family != Family::Combined)
      throw UnknownName("--unrestricted applies only to the combined logics (ivfde-*), not " + std::string(tag));
    LogicId out = id;
    out.unrestricted = unrestricted;
    return out;
  }
  std::string msg = "unknown logic '" + std::string(tag) + "'; valid options:";
  for (const LogicId& id : all_logics()) msg += " " + id.tag();
  throw UnknownName(msg);
}

namespace specs {

namespace detail {
inline Term z(int i) { return Term::z(i); }
inline Term w(int i) { return Term::w(i); }
inline CoordSpec ex(Term t) { return CoordSpec::exact(std::move(t)); }
inline CoordSpec rng(Term lo, Term hi) { return CoordSpec::range(std::move(lo), std::move(hi)); }
inline CoordSpec any() { return CoordSpec::free(); }
inline void put(SpecSet& s, Connective c, std::vector<CoordSpec> coords) {
  s.ops.insert_or_assign(c, ConnectiveSpec{c, std::move(coords)});
}
}  // namespace detail

// Twist structure over pairs (value of the formula, value of its negation).
inline SpecSet idm4() {
  using namespace detail;
  SpecSet s{2, {}};
  put(s, Connective::And, {ex(z(1) & w(1)), ex(z(2) | w(2))});
  put(s, Connective::Or, {ex(z(1) | w(1)), ex(z(2) & w(2))});
  put(s, Connective::Imp, {ex(implies(z(1), w(1))), ex(z(1) & w(2))});
  put(s, Connective::Neg, {ex(z(2)), ex(z(1))});
  return s;
}

// Box over triples (formula, box of it, box of its classical negation).
inline std::vector<CoordSpec> box_triple(BoxVariant v) {
  using namespace detail;
  switch (v) {
    case BoxVariant::T: return {ex(z(2)), any(), any()};
    case BoxVariant::T4: return {ex(z(2)), ex(z(2)), any()};
    case BoxVariant::T45: return {ex(z(2)), ex(z(2)), ex(~z(2))};
    case BoxVariant::TB: return {ex(z(2)), any(), rng(~z(1), Term::constant(true))};
    case BoxVariant::T4B: return {ex(z(2)), ex(z(2)), rng(~z(1), Term::constant(true))};
    case BoxVariant::T5: return {ex(z(2)), any(), ex(~z(2))};
  }
  return {};
}

inline ConnectiveSpec and_triple() {
  using namespace detail;
  return {Connective::And,
          {ex(z(1) & w(1)), ex(z(2) & w(2)),
           rng(z(3) | w(3), implies(z(2), w(3)) & implies(w(2), z(3)))}};
}

inline ConnectiveSpec or_triple() {
  using namespace detail;
  return {Connective::Or,
          {ex(z(1) | w(1)), rng(z(2) | w(2), implies(z(3), w(2)) & implies(w(3), z(2))),
           ex(z(3) & w(3))}};
}

// Modal family over triples. With `with_derived`, also the conjunction and
// disjunction obtained from ~(a -> ~b) and ~a -> b.
inline SpecSet modal(BoxVariant v, bool with_derived = false) {
  using namespace detail;
  SpecSet s{3, {}};
  put(s, Connective::Imp,
      {ex(implies(z(1), w(1))), rng(z(3) | w(2), implies(z(2), w(2)) & implies(w(3), z(3))),
       ex(z(2) & w(3))});
  put(s, Connective::SNeg, {ex(~z(1)), ex(z(3)), ex(z(2))});
  put(s, Connective::Box, box_triple(v));
  if (with_derived) {
    s.ops.insert_or_assign(Connective::And, and_triple());
    s.ops.insert_or_assign(Connective::Or, or_triple());
  }
  return s;
}

// Combined logics over quads (formula, box, box of classical negation,
// paraconsistent negation).
inline SpecSet combined(BoxVariant v) {
  using namespace detail;
  SpecSet s{4, {}};
  put(s, Connective::And,
      {ex(z(1) & w(1)), ex(z(2) & w(2)),
       rng(z(3) | w(3), implies(z(2), w(3)) & implies(w(2), z(3))), ex(z(4) | w(4))});
  put(s, Connective::Or,
      {ex(z(1) | w(1)), rng(z(2) | w(2), implies(z(3), w(2)) & implies(w(3), z(2))),
       ex(z(3) & w(3)), ex(z(4) & w(4))});
  put(s, Connective::Imp,
      {ex(implies(z(1), w(1))), rng(z(3) | w(2), implies(z(2), w(2)) & implies(w(3), z(3))),
       ex(z(2) & w(3)), ex(z(1) & w(4))});
  put(s, Connective::SNeg, {ex(~z(1)), ex(z(3)), ex(z(2)), rng(z(2), ~z(3))});
  put(s, Connective::Neg, {ex(z(4)), ex(z(3)), ex(z(2)), ex(z(1))});
  auto box = box_triple(v);
  box.push_back(any());
  put(s, Connective::Box, std::move(box));
  return s;
}

// Fills the box coordinates of the paraconsistent negation left open by
// superposing the modal and twist specs: box(!a) follows box(~a), and
// box(~!a) follows box(a).
inline BridgeSpecs negation_bridge() {
  using namespace detail;
  return {{Connective::Neg, {{2, ex(z(3))}, {3, ex(z(2))}}}};
}

inline const std::set<Connective>& shared_connectives() {
  static const std::set<Connective> s{Connective::And, Connective::Or, Connective::Imp};
  return s;
}

}  // namespace specs

// Builds the (N)matrix of a logic from its coordinate specs. The eight-valued
// combined logics are the plain superposition of their components over all
// quads; the six-valued ones follow the combined specs directly.
inline Nmatrix build(LogicId id) {
  switch (id.family) {
    case Family::Idm4:
      return materialize(id.tag(), specs::idm4(), Domain(DomainKind::Pairs));
    case Family::Modal:
      return materialize(id.tag(), specs::modal(id.box), Domain(DomainKind::Triples));
    case Family::Combined:
      if (id.unrestricted)
        return superpose(specs::modal(id.box, true), specs::idm4(), specs::shared_connectives(),
                         DomainKind::QuadsUnrestricted, {}, id.tag());
      return materialize(id.tag(), specs::combined(id.box), Domain(DomainKind::QuadsRestricted));
  }
  throw Error("unknown logic family");
}

// Built once per logic and shared.
inline const Nmatrix& nmatrix(LogicId id) {
  static const std::vector<std::pair<LogicId, Nmatrix>> cache = [] {
    std::vector<std::pair<LogicId, Nmatrix>> v;
    for (const LogicId& l : all_logics()) v.emplace_back(l, build(l));
    for (const LogicId& l : combined_logics(true)) v.emplace_back(l, build(l));
    return v;
  }();
  for (const auto& [l, m] : cache)
    if (l == id) return m;
  throw UnknownName("no such logic: " + id.tag());
}

struct TableFile {
  std::string name;  // e.g. "imp.csv"
  std::string csv;
};

// CSV dumps of every interpreted connective. The modal family also gets the
// derived conjunction and disjunction tables.
inline std::vector<TableFile> connective_tables(LogicId id) {
  std::vector<TableFile> out;
  const Nmatrix& m = nmatrix(id);
  Nmatrix derived;
  if (id.family == Family::Modal)
    derived = materialize(id.tag(), specs::modal(id.box, true), m.domain());
  for (Connective c : kConnectives) {
    const std::string file = std::string(connective_name(c)) + ".csv";
    if (m.has(c))
      out.push_back({file, table_csv(m.op(c), m.domain())});
    else if (id.family == Family::Modal && derived.has(c))
      out.push_back({file, table_csv(derived.op(c), m.domain())});
  }
  return out;
}

}  // namespace paramodal
