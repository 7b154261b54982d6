#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "snapshot.hpp"

namespace paramodal {

// Boolean term over the coordinates of the input snapshots z (first argument)
// and w (second argument).
class Term {
 public:
  enum class Kind { Const, Z, W, Not, And, Or, Imp };

  static Term constant(bool b) { return Term(Kind::Const, b ? 1 : 0, {}, {}); }
  static Term z(int i) { return Term(Kind::Z, i, {}, {}); }
  static Term w(int i) { return Term(Kind::W, i, {}, {}); }
  friend Term operator~(const Term& a) { return Term(Kind::Not, 0, a.node_, {}); }
  friend Term operator&(const Term& a, const Term& b) { return Term(Kind::And, 0, a.node_, b.node_); }
  friend Term operator|(const Term& a, const Term& b) { return Term(Kind::Or, 0, a.node_, b.node_); }
  friend Term implies(const Term& a, const Term& b) { return Term(Kind::Imp, 0, a.node_, b.node_); }

  bool eval(Snapshot zs, Snapshot ws) const { return eval(*node_, zs, ws); }

  // Renames coordinate indices of both arguments.
  Term rename(const std::function<int(int)>& f) const { return Term(rename(node_, f)); }

  std::string to_string() const { return to_string(*node_, true); }

  friend bool operator==(const Term& a, const Term& b) { return same(a.node_, b.node_); }

 private:
  struct Node {
    Kind kind;
    int value;
    std::shared_ptr<const Node> a, b;
  };
  using Ptr = std::shared_ptr<const Node>;

  explicit Term(Ptr p) : node_(std::move(p)) {}
  Term(Kind k, int v, Ptr a, Ptr b) : node_(std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)})) {}

  static bool eval(const Node& n, Snapshot zs, Snapshot ws) {
    switch (n.kind) {
      case Kind::Const: return n.value != 0;
      case Kind::Z: return zs[n.value];
      case Kind::W: return ws[n.value];
      case Kind::Not: return bits::complement(eval(*n.a, zs, ws));
      case Kind::And: return bits::meet(eval(*n.a, zs, ws), eval(*n.b, zs, ws));
      case Kind::Or: return bits::join(eval(*n.a, zs, ws), eval(*n.b, zs, ws));
      case Kind::Imp: return bits::implies(eval(*n.a, zs, ws), eval(*n.b, zs, ws));
    }
    return false;
  }

  static Ptr rename(const Ptr& p, const std::function<int(int)>& f) {
    if (!p) return p;
    const Node& n = *p;
    if (n.kind == Kind::Z || n.kind == Kind::W)
      return std::make_shared<const Node>(Node{n.kind, f(n.value), nullptr, nullptr});
    return std::make_shared<const Node>(Node{n.kind, n.value, rename(n.a, f), rename(n.b, f)});
  }

  static bool same(const Ptr& x, const Ptr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    return x->kind == y->kind && x->value == y->value && same(x->a, y->a) && same(x->b, y->b);
  }

  static std::string to_string(const Node& n, bool top) {
    auto wrap = [top](std::string s) { return top ? s : "(" + s + ")"; };
    switch (n.kind) {
      case Kind::Const: return n.value ? "1" : "0";
      case Kind::Z: return "z" + std::to_string(n.value);
      case Kind::W: return "w" + std::to_string(n.value);
      case Kind::Not: return "~" + to_string(*n.a, false);
      case Kind::And: return wrap(to_string(*n.a, false) + " & " + to_string(*n.b, false));
      case Kind::Or: return wrap(to_string(*n.a, false) + " | " + to_string(*n.b, false));
      case Kind::Imp: return wrap(to_string(*n.a, false) + " => " + to_string(*n.b, false));
    }
    return "?";
  }

  Ptr node_;
};

// Constraint on one output coordinate.
class CoordSpec {
 public:
  enum class Kind { Exact, Range, Free };

  static CoordSpec exact(Term t) { return CoordSpec(Kind::Exact, t, t); }
  static CoordSpec range(Term lo, Term hi) { return CoordSpec(Kind::Range, std::move(lo), std::move(hi)); }
  static CoordSpec free() { return CoordSpec(Kind::Free, Term::constant(false), Term::constant(true)); }

  Kind kind() const { return kind_; }
  const Term& lower() const { return lo_; }
  const Term& upper() const { return hi_; }
  const Term& term() const { return lo_; }

  CoordSpec rename(const std::function<int(int)>& f) const {
    return CoordSpec(kind_, lo_.rename(f), hi_.rename(f));
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Exact: return lo_.to_string();
      case Kind::Range: return lo_.to_string() + " <= _ <= " + hi_.to_string();
      case Kind::Free: return "_";
    }
    return "?";
  }

  friend bool operator==(const CoordSpec& a, const CoordSpec& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::Free) return true;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  CoordSpec(Kind k, Term lo, Term hi) : kind_(k), lo_(std::move(lo)), hi_(std::move(hi)) {}

  Kind kind_;
  Term lo_;
  Term hi_;
};

// Per-coordinate constraints of one multioperator.
struct ConnectiveSpec {
  Connective connective;
  std::vector<CoordSpec> coords;
};

// Constraints for a family of multioperators over snapshots of one width.
struct SpecSet {
  int width = 0;
  std::map<Connective, ConnectiveSpec> ops;

  const ConnectiveSpec& at(Connective c) const {
    auto it = ops.find(c);
    if (it == ops.end())
      throw SignatureError("no coordinate specs for connective " + std::string(connective_name(c)));
    return it->second;
  }
  bool has(Connective c) const { return ops.count(c) != 0; }
};

// Materialized table of a multioperator over a domain.
class Multioperator {
 public:
  Multioperator() = default;
  Multioperator(Connective c, int domain_size, std::vector<ValueSet> table)
      : connective_(c), n_(domain_size), table_(std::move(table)) {}

  Connective connective() const { return connective_; }
  int arity() const { return paramodal::arity(connective_); }
  int domain_size() const { return n_; }
  ValueSet operator()(int a) const { return table_[static_cast<std::size_t>(a)]; }
  ValueSet operator()(int a, int b) const { return table_[static_cast<std::size_t>(a * n_ + b)]; }
  const std::vector<ValueSet>& table() const { return table_; }

  bool deterministic() const {
    for (ValueSet s : table_)
      if (s.size() != 1) return false;
    return true;
  }

  friend bool operator==(const Multioperator& a, const Multioperator& b) {
    return a.connective_ == b.connective_ && a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  Connective connective_ = Connective::Var;
  int n_ = 0;
  std::vector<ValueSet> table_;
};

// Evaluates a connective spec on every input tuple of the domain; each output
// set holds the domain members meeting all coordinate constraints.
inline Multioperator materialize(const ConnectiveSpec& spec, const Domain& domain) {
  const int n = domain.size();
  const int width = domain.width();
  if (static_cast<int>(spec.coords.size()) != width)
    throw ConsistencyError("spec for " + std::string(connective_name(spec.connective)) + " has " +
                           std::to_string(spec.coords.size()) + " coordinates, domain width is " +
                           std::to_string(width));
  const int k = arity(spec.connective);
  const int inputs = k == 1 ? n : n * n;
  std::vector<ValueSet> table(static_cast<std::size_t>(inputs));
  for (int idx = 0; idx < inputs; ++idx) {
    Snapshot zs = domain[k == 1 ? idx : idx / n];
    Snapshot ws = k == 1 ? zs : domain[idx % n];
    std::vector<std::pair<bool, bool>> bounds;
    for (const auto& c : spec.coords) {
      bool lo = c.lower().eval(zs, ws);
      bool hi = c.upper().eval(zs, ws);
      if (lo && !hi)
        throw ConsistencyError("range " + c.to_string() + " of " +
                               std::string(connective_name(spec.connective)) + " is empty at " +
                               zs.to_string() + (k == 2 ? ", " + ws.to_string() : std::string()));
      bounds.emplace_back(lo, hi);
    }
    ValueSet out;
    for (int u = 0; u < n; ++u) {
      Snapshot us = domain[u];
      bool ok = true;
      for (int i = 0; i < width && ok; ++i) {
        const auto [lo, hi] = bounds[static_cast<std::size_t>(i)];
        const bool b = us[i + 1];
        ok = lo <= b && b <= hi;
      }
      if (ok) out.insert(u);
    }
    if (out.empty())
      throw ConsistencyError("empty output for " + std::string(connective_name(spec.connective)) +
                             " at " + zs.to_string() + (k == 2 ? ", " + ws.to_string() : std::string()));
    table[static_cast<std::size_t>(idx)] = out;
  }
  return Multioperator(spec.connective, n, std::move(table));
}

class Nmatrix {
 public:
  Nmatrix() = default;
  Nmatrix(std::string tag, Domain domain, std::vector<Multioperator> ops)
      : tag_(std::move(tag)), domain_(std::move(domain)) {
    for (auto& m : ops) {
      auto i = static_cast<std::size_t>(m.connective());
      if (m.domain_size() != domain_.size()) throw ConsistencyError("multioperator over a different domain");
      for (ValueSet s : m.table())
        if (s.empty()) throw ConsistencyError("empty output set in " + std::string(connective_name(m.connective())));
      ops_[i] = std::move(m);
      present_[i] = true;
    }
    if (domain_.designated().empty() || domain_.designated() == domain_.all())
      throw ConsistencyError("designated set must be non-empty and proper");
  }

  const std::string& tag() const { return tag_; }
  const Domain& domain() const { return domain_; }
  int size() const { return domain_.size(); }
  ValueSet designated() const { return domain_.designated(); }
  bool is_designated(int v) const { return domain_.is_designated(v); }

  bool has(Connective c) const { return present_[static_cast<std::size_t>(c)]; }
  const Multioperator& op(Connective c) const {
    if (!has(c))
      throw SignatureError("connective " + std::string(token(c)) + " is not interpreted in " + tag_);
    return ops_[static_cast<std::size_t>(c)];
  }

  std::vector<Connective> connectives() const {
    std::vector<Connective> out;
    for (Connective c : kConnectives)
      if (has(c)) out.push_back(c);
    return out;
  }

  ValueSet apply(Connective c, int a) const { return op(c)(a); }
  ValueSet apply(Connective c, int a, int b) const { return op(c)(a, b); }
  ValueSet apply(Connective c, const std::vector<int>& args) const {
    const auto& m = op(c);
    if (static_cast<int>(args.size()) != m.arity()) throw Error("wrong number of arguments");
    return m.arity() == 1 ? m(args[0]) : m(args[0], args[1]);
  }

  // Keeps only the connectives of the signature.
  Nmatrix reduct(Signature s) const {
    std::vector<Multioperator> kept;
    for (Connective c : connectives())
      if (contains(s, c)) kept.push_back(op(c));
    return Nmatrix(tag_ + "|" + std::string(to_string(s)), domain_, std::move(kept));
  }

  void check_formula(const Formula& f) const {
    if (f.is_var()) return;
    op(f.op());
    check_formula(f.left());
    if (arity(f.op()) == 2) check_formula(f.right());
  }

 private:
  std::string tag_;
  Domain domain_;
  std::array<Multioperator, 7> ops_{};
  std::array<bool, 7> present_{};
};

inline Nmatrix materialize(std::string tag, const SpecSet& specs, const Domain& domain) {
  std::vector<Multioperator> ops;
  for (const auto& [c, spec] : specs.ops) ops.push_back(materialize(spec, domain));
  return Nmatrix(std::move(tag), domain, std::move(ops));
}

// Per-coordinate fill-ins for coordinates a superposition leaves free.
using BridgeSpecs = std::map<Connective, std::map<int, CoordSpec>>;

// Merges triple specs (coordinates 1,2,3) and pair specs (coordinates 1,4)
// into quad specs. Shared connectives must agree on the first coordinate;
// coordinates specified by neither side are free unless a bridge fills them.
inline SpecSet merge_specs(const SpecSet& left, const SpecSet& right,
                           const std::set<Connective>& shared, const BridgeSpecs& bridges = {}) {
  if (left.width != 3 || right.width != 2)
    throw CoherenceError("superposition expects triple specs on the left and pair specs on the right");
  auto from_left = [](int i) { return i; };
  auto from_right = [](int i) { return i == 2 ? 4 : i; };
  SpecSet out;
  out.width = 4;
  std::set<Connective> all;
  for (const auto& [c, s] : left.ops) all.insert(c);
  for (const auto& [c, s] : right.ops) all.insert(c);
  for (Connective c : all) {
    const bool in_l = left.has(c), in_r = right.has(c);
    const bool is_shared = shared.count(c) != 0;
    if (in_l && in_r && !is_shared)
      throw CoherenceError("connective " + std::string(token(c)) + " is specified on both sides but not shared");
    if (is_shared && !(in_l && in_r))
      throw CoherenceError("shared connective " + std::string(token(c)) + " is missing on one side");
    std::vector<CoordSpec> coords(4, CoordSpec::free());
    if (in_l) {
      const auto& s = left.at(c);
      for (int i = 0; i < 3; ++i) coords[static_cast<std::size_t>(i)] = s.coords[static_cast<std::size_t>(i)].rename(from_left);
    }
    if (in_r) {
      const auto& s = right.at(c);
      CoordSpec first = s.coords[0].rename(from_right);
      if (in_l && !(first == coords[0]))
        throw CoherenceError("first coordinates of " + std::string(token(c)) + " differ: " +
                             coords[0].to_string() + " vs " + first.to_string());
      coords[0] = first;
      coords[3] = s.coords[1].rename(from_right);
    }
    out.ops.emplace(c, ConnectiveSpec{c, std::move(coords)});
  }
  for (const auto& [c, fills] : bridges) {
    auto it = out.ops.find(c);
    if (it == out.ops.end())
      throw CoherenceError("bridge for unknown connective " + std::string(token(c)));
    for (const auto& [i, spec] : fills) {
      auto& slot = it->second.coords.at(static_cast<std::size_t>(i - 1));
      if (slot.kind() != CoordSpec::Kind::Free)
        throw CoherenceError("bridge overrides a specified coordinate " + std::to_string(i) + " of " +
                             std::string(token(c)));
      slot = spec;
    }
  }
  return out;
}

inline Nmatrix superpose(const SpecSet& left, const SpecSet& right, const std::set<Connective>& shared,
                         DomainKind domain, const BridgeSpecs& bridges = {},
                         std::string tag = "superposition") {
  if (width_of(domain) != 4) throw CoherenceError("superposition needs a quad domain");
  return materialize(std::move(tag), merge_specs(left, right, shared, bridges), Domain(domain));
}

// True iff `map` (indices of m1's domain into m2's) is injective, preserves and
// reflects designation, and every output set of m1 maps into the
// corresponding output set of m2, for every connective of the signature.
inline bool is_subnmatrix(const Nmatrix& m1, const Nmatrix& m2, Signature sig, const std::vector<int>& map) {
  const int n = m1.size();
  if (static_cast<int>(map.size()) != n) return false;
  std::set<int> image;
  for (int i = 0; i < n; ++i) {
    int j = map[static_cast<std::size_t>(i)];
    if (j < 0 || j >= m2.size() || !image.insert(j).second) return false;
    if (m1.is_designated(i) != m2.is_designated(j)) return false;
  }
  auto mapped = [&](ValueSet s) {
    ValueSet out;
    for (int i : s) out.insert(map[static_cast<std::size_t>(i)]);
    return out;
  };
  for (Connective c : connectives_of(sig)) {
    if (!m1.has(c) || !m2.has(c)) return false;
    const auto& o1 = m1.op(c);
    const auto& o2 = m2.op(c);
    for (int a = 0; a < n; ++a) {
      if (arity(c) == 1) {
        if (!mapped(o1(a)).subset_of(o2(map[static_cast<std::size_t>(a)]))) return false;
        continue;
      }
      for (int b = 0; b < n; ++b)
        if (!mapped(o1(a, b)).subset_of(o2(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)])))
          return false;
    }
  }
  return true;
}

// Same, with elements identified by equal snapshots.
inline bool is_subnmatrix(const Nmatrix& m1, const Nmatrix& m2, Signature sig) {
  std::vector<int> map;
  for (Snapshot s : m1.domain().elements()) {
    auto j = m2.domain().index_of(s);
    if (!j) return false;
    map.push_back(*j);
  }
  return is_subnmatrix(m1, m2, sig, map);
}

// Transports an Nmatrix along an injective map on snapshots.
inline Nmatrix image(const Nmatrix& m, const std::function<Snapshot(Snapshot)>& f, std::string tag) {
  std::vector<Snapshot> elems;
  for (Snapshot s : m.domain().elements()) elems.push_back(f(s));
  Domain d(elems);
  std::vector<Multioperator> ops;
  for (Connective c : m.connectives()) ops.push_back(m.op(c));
  return Nmatrix(std::move(tag), std::move(d), std::move(ops));
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

// One CSV table: unary operators as a two-column listing, binary operators as
// a matrix with the left argument on rows. Cells list output sets in
// canonical order.
inline std::string table_csv(const Multioperator& m, const Domain& d) {
  std::string out;
  const std::string tok(token(m.connective()));
  const int n = d.size();
  if (m.arity() == 1) {
    out += "x," + detail::csv_field(tok + "x") + "\n";
    for (int a = 0; a < n; ++a) out += d.name(a) + "," + detail::csv_field(d.set_to_string(m(a))) + "\n";
    return out;
  }
  out += detail::csv_field(tok);
  for (int b = 0; b < n; ++b) out += "," + d.name(b);
  out += "\n";
  for (int a = 0; a < n; ++a) {
    out += d.name(a);
    for (int b = 0; b < n; ++b) out += "," + detail::csv_field(d.set_to_string(m(a, b)));
    out += "\n";
  }
  return out;
}

}  // namespace paramodal
