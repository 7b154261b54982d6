#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "snapshot.hpp"

namespace paramodal {

enum class Connective : std::uint8_t { Var, Neg, SNeg, Box, And, Or, Imp };

inline constexpr std::array<Connective, 6> kConnectives = {
    Connective::And, Connective::Or,   Connective::Imp,
    Connective::Neg, Connective::SNeg, Connective::Box};

constexpr int arity(Connective c) {
  switch (c) {
    case Connective::Var: return 0;
    case Connective::Neg:
    case Connective::SNeg:
    case Connective::Box: return 1;
    default: return 2;
  }
}

// Concrete syntax token of a connective.
constexpr std::string_view token(Connective c) {
  switch (c) {
    case Connective::Neg: return "!";
    case Connective::SNeg: return "~";
    case Connective::Box: return "[]";
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Imp: return "->";
    case Connective::Var: break;
  }
  return "";
}

// Short lowercase name, used for file names and messages.
constexpr std::string_view connective_name(Connective c) {
  switch (c) {
    case Connective::Neg: return "neg";
    case Connective::SNeg: return "sneg";
    case Connective::Box: return "box";
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Imp: return "imp";
    case Connective::Var: break;
  }
  return "var";
}

enum class Signature { Sigma4, SigmaM, SigmaFull };

constexpr bool contains(Signature s, Connective c) {
  switch (s) {
    case Signature::Sigma4:
      return c == Connective::And || c == Connective::Or ||
             c == Connective::Imp || c == Connective::Neg;
    case Signature::SigmaM:
      return c == Connective::Imp || c == Connective::SNeg || c == Connective::Box;
    case Signature::SigmaFull:
      return c != Connective::Var;
  }
  return false;
}

inline std::vector<Connective> connectives_of(Signature s) {
  std::vector<Connective> out;
  for (Connective c : kConnectives)
    if (contains(s, c)) out.push_back(c);
  return out;
}

constexpr std::string_view to_string(Signature s) {
  switch (s) {
    case Signature::Sigma4: return "Sigma4";
    case Signature::SigmaM: return "SigmaM";
    case Signature::SigmaFull: return "SigmaFull";
  }
  return "?";
}

// Immutable formula tree. Copies share structure; equality is structural.
class Formula {
 public:
  Formula() = default;

  static Formula var(std::string name) {
    return Formula(Connective::Var, std::move(name), Formula(), Formula());
  }
  static Formula neg(Formula a) { return Formula(Connective::Neg, {}, std::move(a), Formula()); }
  static Formula sneg(Formula a) { return Formula(Connective::SNeg, {}, std::move(a), Formula()); }
  static Formula box(Formula a) { return Formula(Connective::Box, {}, std::move(a), Formula()); }
  static Formula conj(Formula a, Formula b) { return Formula(Connective::And, {}, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return Formula(Connective::Or, {}, std::move(a), std::move(b)); }
  static Formula imp(Formula a, Formula b) { return Formula(Connective::Imp, {}, std::move(a), std::move(b)); }

  static Formula unary(Connective c, Formula a) { return Formula(c, {}, std::move(a), Formula()); }
  static Formula binary(Connective c, Formula a, Formula b) {
    return Formula(c, {}, std::move(a), std::move(b));
  }

  bool null() const { return node_ == nullptr; }
  Connective op() const;
  bool is_var() const;
  const std::string& name() const;
  // Sole operand of a unary formula, left operand of a binary one.
  const Formula& left() const;
  const Formula& sub() const { return left(); }
  const Formula& right() const;
  std::size_t hash() const;
  // Number of nodes counting repeated occurrences.
  std::size_t size() const;
  int depth() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  // Total structural order, usable as a map key.
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  struct Node;

  Formula(Connective op, std::string name, Formula l, Formula r);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective op;
  std::string name;
  Formula left;
  Formula right;
  std::size_t hash;
  std::size_t size;
  int depth;
};

inline Connective Formula::op() const { return node_->op; }
inline bool Formula::is_var() const { return node_->op == Connective::Var; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }
inline std::size_t Formula::size() const { return node_->size; }
inline int Formula::depth() const { return node_->depth; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.size != y.size) return false;
  if (x.op == Connective::Var) return x.name == y.name;
  return x.left == y.left && x.right == y.right;
}

inline int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.node_) return -1;
  if (!b.node_) return 1;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return x.op < y.op ? -1 : 1;
  if (x.op == Connective::Var) {
    int c = x.name.compare(y.name);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (int c = compare(x.left, y.left)) return c;
  return compare(x.right, y.right);
}

inline Formula::Formula(Connective op, std::string name, Formula l, Formula r) {
  if (op != Connective::Var && (l.null() || (arity(op) == 2 && r.null())))
    throw Error("missing operand for connective " + std::string(connective_name(op)));
  std::size_t h = (static_cast<std::size_t>(op) + 1) * 0x9e3779b97f4a7c15ull;
  std::size_t size = 1;
  int depth = 0;
  if (op == Connective::Var) {
    h ^= std::hash<std::string>{}(name) + 0x9e3779b9 + (h << 6) + (h >> 2);
  } else {
    h ^= l.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
    size += l.size();
    depth = l.depth() + 1;
    if (!r.null()) {
      h ^= r.hash() * 31 + 0x7f4a7c15 + (h << 6) + (h >> 2);
      size += r.size();
      depth = std::max(depth, r.depth() + 1);
    }
  }
  node_ = std::make_shared<const Node>(
      Node{op, std::move(name), std::move(l), std::move(r), h, size, depth});
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Distinct subformulas in order of first completion of a left-to-right
// traversal, so children come before parents. Each entry records the
// positions of its operands.
class SubformulaIndex {
 public:
  int add(const Formula& f) {
    if (int i = find(f); i >= 0) return i;
    int l = -1, r = -1;
    if (!f.is_var()) {
      l = add(f.left());
      if (arity(f.op()) == 2) r = add(f.right());
    }
    formulas_.push_back(f);
    operands_.push_back({l, r});
    hashes_.push_back(f.hash());
    const int i = static_cast<int>(formulas_.size()) - 1;
    if (!map_.empty()) {
      map_.emplace(f, i);
    } else if (formulas_.size() > kLinearLimit) {
      for (std::size_t j = 0; j < formulas_.size(); ++j) map_.emplace(formulas_[j], static_cast<int>(j));
    }
    return i;
  }

  int find(const Formula& f) const {
    if (!map_.empty()) {
      auto it = map_.find(f);
      return it == map_.end() ? -1 : it->second;
    }
    const std::size_t h = f.hash();
    for (std::size_t i = 0; i < formulas_.size(); ++i)
      if (hashes_[i] == h && formulas_[i] == f) return static_cast<int>(i);
    return -1;
  }

  std::size_t size() const { return formulas_.size(); }
  const std::vector<Formula>& formulas() const { return formulas_; }
  const Formula& operator[](std::size_t i) const { return formulas_[i]; }
  int left(std::size_t i) const { return operands_[i][0]; }
  int right(std::size_t i) const { return operands_[i][1]; }

 private:
  static constexpr std::size_t kLinearLimit = 48;

  std::vector<Formula> formulas_;
  std::vector<std::array<int, 2>> operands_;
  std::vector<std::size_t> hashes_;
  std::unordered_map<Formula, int, FormulaHash> map_;
};

inline std::vector<Formula> subformulas(const std::vector<Formula>& roots) {
  SubformulaIndex index;
  for (const auto& r : roots) index.add(r);
  return index.formulas();
}

inline std::vector<Formula> subformulas(const Formula& f) {
  return subformulas(std::vector<Formula>{f});
}

// Distinct variable names in order of first (leftmost) occurrence.
inline std::vector<std::string> variables(const std::vector<Formula>& roots) {
  std::vector<std::string> out;
  for (const auto& f : subformulas(roots))
    if (f.is_var()) out.push_back(f.name());
  return out;
}

inline std::vector<std::string> variables(const Formula& f) {
  return variables(std::vector<Formula>{f});
}

inline bool in_signature(const Formula& f, Signature s) {
  if (f.is_var()) return true;
  if (!contains(s, f.op())) return false;
  if (!in_signature(f.left(), s)) return false;
  return arity(f.op()) == 1 || in_signature(f.right(), s);
}

// The connectives of the modal signature define conjunction and disjunction:
// a & b := ~(a -> ~b), a | b := ~a -> b.
inline Formula derived_and_m(const Formula& a, const Formula& b) {
  return Formula::sneg(Formula::imp(a, Formula::sneg(b)));
}

inline Formula derived_or_m(const Formula& a, const Formula& b) {
  return Formula::imp(Formula::sneg(a), b);
}

// Biconditional as (a -> b) & (b -> a); this is what `<->` parses to.
inline Formula iff(const Formula& a, const Formula& b) {
  return Formula::conj(Formula::imp(a, b), Formula::imp(b, a));
}

// Biconditional over the modal signature: ~((a -> b) -> ~(b -> a)).
inline Formula iff_m(const Formula& a, const Formula& b) {
  return derived_and_m(Formula::imp(a, b), Formula::imp(b, a));
}

// Rewrites every & and | into the modal-signature abbreviations.
inline Formula expand_to_modal(const Formula& f) {
  switch (f.op()) {
    case Connective::Var: return f;
    case Connective::And: return derived_and_m(expand_to_modal(f.left()), expand_to_modal(f.right()));
    case Connective::Or: return derived_or_m(expand_to_modal(f.left()), expand_to_modal(f.right()));
    case Connective::Imp: return Formula::imp(expand_to_modal(f.left()), expand_to_modal(f.right()));
    default: return Formula::unary(f.op(), expand_to_modal(f.left()));
  }
}

// Left-nested conjunction of a non-empty list.
inline Formula conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("empty conjunction");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

// Characteristic formula of a six-valued snapshot: the conjunction of
// f, []f, []~f, !f with each conjunct classically negated where the
// snapshot has a 0.
inline Formula theta(std::string_view value_name, const Formula& f) {
  const Snapshot a = snapshot_of(value_name, DomainKind::QuadsRestricted);
  const std::array<Formula, 4> gamma = {f, Formula::box(f), Formula::box(Formula::sneg(f)),
                                        Formula::neg(f)};
  std::vector<Formula> parts;
  for (int i = 0; i < 4; ++i)
    parts.push_back(a[i + 1] ? gamma[static_cast<std::size_t>(i)]
                             : Formula::sneg(gamma[static_cast<std::size_t>(i)]));
  return conjunction(parts);
}

// (f | !f) & ~(f & !f)
inline Formula classicality(const Formula& f) {
  Formula nf = Formula::neg(f);
  return Formula::conj(Formula::disj(f, nf), Formula::sneg(Formula::conj(f, nf)));
}

// Replaces every variable named in `subst`.
inline Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst) {
  if (f.is_var()) {
    auto it = subst.find(f.name());
    return it == subst.end() ? f : it->second;
  }
  Formula l = substitute(f.left(), subst);
  if (arity(f.op()) == 1) return Formula::unary(f.op(), l);
  return Formula::binary(f.op(), l, substitute(f.right(), subst));
}

using Substitution = std::map<std::string, Formula>;

// A formula whose variables are read as metavariables.
class Schema {
 public:
  Schema() = default;
  Schema(std::string name, Formula pattern)
      : name_(std::move(name)), pattern_(std::move(pattern)), metavariables_(variables(pattern_)) {}

  const std::string& name() const { return name_; }
  const Formula& pattern() const { return pattern_; }
  const std::vector<std::string>& metavariables() const { return metavariables_; }

 private:
  std::string name_;
  Formula pattern_;
  std::vector<std::string> metavariables_;
};

inline Formula instantiate(const Schema& s, const Substitution& subst) {
  for (const auto& m : s.metavariables())
    if (!subst.count(m))
      throw Error("schema " + s.name() + ": no binding for metavariable " + m);
  return substitute(s.pattern(), subst);
}

// Name of the placeholder variable in one-hole contexts.
inline const std::string& hole_name() {
  static const std::string name = "_";
  return name;
}

inline Formula hole() { return Formula::var(hole_name()); }

inline Formula plug(const Formula& context, const Formula& f) {
  return substitute(context, {{hole_name(), f}});
}

}  // namespace paramodal
