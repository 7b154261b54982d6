#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "logics.hpp"
#include "nmatrix.hpp"
#include "snapshot.hpp"
#include "syntax.hpp"

namespace paramodal {

// Values assigned to a subformula-closed list of formulas.
struct PartialValuation {
  std::string logic;
  Domain domain;
  std::vector<Formula> formulas;
  std::vector<std::uint8_t> values;

  std::optional<int> value(const Formula& f) const {
    for (std::size_t i = 0; i < formulas.size(); ++i)
      if (formulas[i] == f) return values[i];
    return std::nullopt;
  }

  int at(const Formula& f) const {
    auto v = value(f);
    if (!v) throw Error("formula not covered by valuation: " + print(f));
    return *v;
  }

  std::string name(const Formula& f) const { return domain.name(at(f)); }
  bool designates(const Formula& f) const { return domain.is_designated(at(f)); }

  // "v(p)=t1, v(p & !p)=t1"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      if (i) out += ", ";
      out += "v(" + print(formulas[i]) + ")=" + domain.name(values[i]);
    }
    return out;
  }
};

// Compiled query: the distinct subformulas of the targets, children first,
// with optional restrictions on the values some of them may take.
class Problem {
 public:
  Problem(const Nmatrix& m, const std::vector<Formula>& targets) : m_(&m) {
    SubformulaIndex index;
    for (const auto& t : targets) targets_.push_back(index.add(t));
    formulas_ = index.formulas();
    nodes_.resize(formulas_.size());
    for (std::size_t i = 0; i < formulas_.size(); ++i) {
      const Formula& f = formulas_[i];
      Node& n = nodes_[i];
      n.op = f.op();
      if (f.is_var()) continue;
      n.table = &m.op(f.op());
      n.l = index.left(i);
      n.r = index.right(i);
    }
    all_ = m.domain().all();
    allowed_.assign(formulas_.size(), all_);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].op == Connective::Var) order_.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].op != Connective::Var) order_.push_back(static_cast<int>(i));
  }

  const Nmatrix& nmatrix() const { return *m_; }
  const std::vector<Formula>& formulas() const { return formulas_; }
  const std::vector<int>& targets() const { return targets_; }
  int index_of(const Formula& f) const {
    for (std::size_t i = 0; i < formulas_.size(); ++i)
      if (formulas_[i] == f) return static_cast<int>(i);
    return -1;
  }

  // Restricts the values of one subformula (intersecting earlier restrictions).
  void restrict(int node, ValueSet allowed) { allowed_[static_cast<std::size_t>(node)] = allowed_[static_cast<std::size_t>(node)] & allowed; }
  void require_target(std::size_t target, bool designated) {
    ValueSet d = m_->designated();
    restrict(targets_.at(target), designated ? d : ValueSet(static_cast<std::uint8_t>(m_->domain().all().mask() & ~d.mask())));
  }
  void clear_restrictions() { allowed_.assign(formulas_.size(), all_); }
  void pin(const Formula& f, int value) {
    int i = index_of(f);
    if (i < 0) throw Error("pinned formula is not a subformula: " + print(f));
    restrict(i, ValueSet::single(value));
  }

  // Visits every valuation meeting the restrictions, in branch order:
  // variables first, then compound subformulas bottom-up, each over its
  // choices in canonical order. The visitor returns false to stop early.
  template <class Visit>
  bool enumerate(Visit&& visit) const {
    std::vector<std::uint8_t> vals(formulas_.size(), 0);
    return dfs(0, vals, visit);
  }

  std::optional<std::vector<std::uint8_t>> first() const {
    std::optional<std::vector<std::uint8_t>> out;
    enumerate([&](const std::vector<std::uint8_t>& v) {
      out = v;
      return false;
    });
    return out;
  }

  std::size_t count() const {
    std::size_t n = 0;
    enumerate([&](const std::vector<std::uint8_t>&) {
      ++n;
      return true;
    });
    return n;
  }

  // Whether some valuation meets the restrictions. Branches only on
  // variables, subformulas occurring more than once, restricted subformulas
  // and roots; the possible values of every other subformula depend on its
  // own subtree alone and are computed as sets.
  bool satisfiable() const {
    const std::size_t n = nodes_.size();
    std::vector<int> refs(n, 0);
    for (const Node& nd : nodes_) {
      if (nd.op == Connective::Var) continue;
      ++refs[static_cast<std::size_t>(nd.l)];
      if (nd.r >= 0) ++refs[static_cast<std::size_t>(nd.r)];
    }
    std::vector<char> branched(n, 0);
    std::vector<int> order;
    for (std::size_t i = 0; i < n; ++i) {
      branched[i] = nodes_[i].op == Connective::Var || refs[i] != 1 || allowed_[i] != all_;
      if (branched[i]) order.push_back(static_cast<int>(i));
    }
    std::vector<std::uint8_t> vals(n, 0);
    return search(0, order, branched, vals);
  }

  // Upper bound on the number of valuations.
  double estimate() const {
    double total = 1;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      int widest = allowed_[i].size();
      if (nd.op != Connective::Var) {
        int w = 1;
        for (ValueSet s : nd.table->table()) w = std::max(w, (s & allowed_[i]).size());
        widest = w;
      }
      total *= widest;
    }
    return total;
  }

  PartialValuation valuation(const std::vector<std::uint8_t>& vals) const {
    return PartialValuation{m_->tag(), m_->domain(), formulas_, vals};
  }

 private:
  struct Node {
    Connective op = Connective::Var;
    const Multioperator* table = nullptr;
    int l = -1;
    int r = -1;
  };

  ValueSet outputs(const Node& nd, const std::vector<std::uint8_t>& vals) const {
    const auto& t = *nd.table;
    return nd.r < 0 ? t(vals[static_cast<std::size_t>(nd.l)])
                    : t(vals[static_cast<std::size_t>(nd.l)], vals[static_cast<std::size_t>(nd.r)]);
  }

  template <class Visit>
  bool dfs(std::size_t k, std::vector<std::uint8_t>& vals, Visit& visit) const {
    if (k == order_.size()) return visit(static_cast<const std::vector<std::uint8_t>&>(vals));
    const auto i = static_cast<std::size_t>(order_[k]);
    const Node& nd = nodes_[i];
    ValueSet choices = nd.op == Connective::Var ? all_ : outputs(nd, vals);
    for (int u : choices & allowed_[i]) {
      vals[i] = static_cast<std::uint8_t>(u);
      if (!dfs(k + 1, vals, visit)) return false;
    }
    return true;
  }

  ValueSet possible(int i, const std::vector<char>& branched, const std::vector<std::uint8_t>& vals) const {
    const auto ui = static_cast<std::size_t>(i);
    if (branched[ui]) return ValueSet::single(vals[ui]);
    const Node& nd = nodes_[ui];
    ValueSet a = possible(nd.l, branched, vals);
    ValueSet out;
    if (nd.r < 0) {
      for (int x : a) out = out | (*nd.table)(x);
      return out;
    }
    ValueSet b = possible(nd.r, branched, vals);
    for (int x : a)
      for (int y : b) out = out | (*nd.table)(x, y);
    return out;
  }

  bool search(std::size_t k, const std::vector<int>& order, const std::vector<char>& branched,
              std::vector<std::uint8_t>& vals) const {
    if (k == order.size()) return true;
    const auto i = static_cast<std::size_t>(order[k]);
    const Node& nd = nodes_[i];
    ValueSet choices;
    if (nd.op == Connective::Var) {
      choices = all_;
    } else {
      ValueSet a = possible(nd.l, branched, vals);
      if (nd.r < 0) {
        for (int x : a) choices = choices | (*nd.table)(x);
      } else {
        ValueSet b = possible(nd.r, branched, vals);
        for (int x : a)
          for (int y : b) choices = choices | (*nd.table)(x, y);
      }
    }
    for (int u : choices & allowed_[i]) {
      vals[i] = static_cast<std::uint8_t>(u);
      if (search(k + 1, order, branched, vals)) return true;
    }
    return false;
  }

  const Nmatrix* m_;
  std::vector<Formula> formulas_;
  std::vector<Node> nodes_;
  std::vector<int> targets_;
  std::vector<ValueSet> allowed_;
  ValueSet all_;
  std::vector<int> order_;
};

// Calls `visit` with each valuation of the subformulas of f, in branch order.
inline void for_each_valuation(const Formula& f, const Nmatrix& m,
                               const std::function<bool(const PartialValuation&)>& visit) {
  Problem p(m, {f});
  p.enumerate([&](const std::vector<std::uint8_t>& vals) { return visit(p.valuation(vals)); });
}

inline std::vector<PartialValuation> enumerate_valuations(const Formula& f, const Nmatrix& m) {
  std::vector<PartialValuation> out;
  for_each_valuation(f, m, [&](const PartialValuation& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

inline std::vector<PartialValuation> enumerate_valuations(const Formula& f, LogicId id) {
  return enumerate_valuations(f, nmatrix(id));
}

namespace detail {
inline bool exists_with_root(const Formula& f, const Nmatrix& m, bool designated) {
  Problem p(m, {f});
  p.require_target(0, designated);
  return p.satisfiable();
}
}  // namespace detail

inline bool is_satisfiable(const Formula& f, const Nmatrix& m) { return detail::exists_with_root(f, m, true); }
inline bool is_refutable(const Formula& f, const Nmatrix& m) { return detail::exists_with_root(f, m, false); }
inline bool is_valid(const Formula& f, const Nmatrix& m) { return !is_refutable(f, m); }
inline bool is_unsatisfiable(const Formula& f, const Nmatrix& m) { return !is_satisfiable(f, m); }

inline bool is_satisfiable(const Formula& f, LogicId id) { return is_satisfiable(f, nmatrix(id)); }
inline bool is_refutable(const Formula& f, LogicId id) { return is_refutable(f, nmatrix(id)); }
inline bool is_valid(const Formula& f, LogicId id) { return is_valid(f, nmatrix(id)); }
inline bool is_unsatisfiable(const Formula& f, LogicId id) { return is_unsatisfiable(f, nmatrix(id)); }

// First valuation in branch order designating (or undesignating) f.
inline std::optional<PartialValuation> find_model(const Formula& f, const Nmatrix& m, bool designated = true) {
  Problem p(m, {f});
  p.require_target(0, designated);
  auto v = p.first();
  if (!v) return std::nullopt;
  return p.valuation(*v);
}

inline std::optional<PartialValuation> find_countermodel(const Formula& f, const Nmatrix& m) {
  return find_model(f, m, false);
}

enum class Status { Valid, Contingent, Unsatisfiable };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Valid: return "valid";
    case Status::Contingent: return "contingent";
    case Status::Unsatisfiable: return "unsatisfiable";
  }
  return "?";
}

// Valid, contingent or unsatisfiable, without witnesses.
inline Status status(const Formula& f, const Nmatrix& m) {
  Problem p(m, {f});
  p.require_target(0, true);
  const bool sat = p.satisfiable();
  p.clear_restrictions();
  p.require_target(0, false);
  const bool refutable = p.satisfiable();
  if (!refutable) return Status::Valid;
  return sat ? Status::Contingent : Status::Unsatisfiable;
}

struct Verdict {
  Status status;
  std::optional<PartialValuation> model;         // present iff satisfiable
  std::optional<PartialValuation> countermodel;  // present iff refutable
};

inline Verdict classify(const Formula& f, const Nmatrix& m) {
  Verdict v{Status::Contingent, find_model(f, m, true), find_model(f, m, false)};
  if (!v.countermodel) v.status = Status::Valid;
  if (!v.model) v.status = Status::Unsatisfiable;
  return v;
}

inline Verdict classify(const Formula& f, LogicId id) { return classify(f, nmatrix(id)); }

struct Entailment {
  bool holds;
  std::optional<PartialValuation> countermodel;
};

// Whether every valuation designating all premises designates the conclusion.
inline Entailment entails(const std::vector<Formula>& premises, const Formula& conclusion, const Nmatrix& m) {
  std::vector<Formula> targets = premises;
  targets.push_back(conclusion);
  Problem p(m, targets);
  for (std::size_t i = 0; i < premises.size(); ++i) p.require_target(i, true);
  p.require_target(premises.size(), false);
  if (!p.satisfiable()) return {true, std::nullopt};
  return {false, p.valuation(*p.first())};
}

inline Entailment entails(const std::vector<Formula>& premises, const Formula& conclusion, LogicId id) {
  return entails(premises, conclusion, nmatrix(id));
}

inline bool holds(const std::vector<Formula>& premises, const Formula& conclusion, const Nmatrix& m) {
  std::vector<Formula> targets = premises;
  targets.push_back(conclusion);
  Problem p(m, targets);
  for (std::size_t i = 0; i < premises.size(); ++i) p.require_target(i, true);
  p.require_target(premises.size(), false);
  return !p.satisfiable();
}

inline bool equivalent(const Formula& f, const Formula& g, const Nmatrix& m) {
  return holds({f}, g, m) && holds({g}, f, m);
}

// Whether `v` is a valuation of `m`: subformula-closed, and every compound
// formula takes a value among the outputs at its operands' values.
inline bool is_valuation(const PartialValuation& v, const Nmatrix& m) {
  if (!(v.domain == m.domain())) return false;
  for (std::size_t i = 0; i < v.formulas.size(); ++i) {
    const Formula& f = v.formulas[i];
    if (f.is_var()) continue;
    if (!m.has(f.op())) return false;
    auto a = v.value(f.left());
    if (!a) return false;
    ValueSet out;
    if (arity(f.op()) == 1) {
      out = m.apply(f.op(), *a);
    } else {
      auto b = v.value(f.right());
      if (!b) return false;
      out = m.apply(f.op(), *a, *b);
    }
    if (!out.contains(v.values[i])) return false;
  }
  return true;
}

inline constexpr std::size_t kDefaultRowCap = 1'000'000;

struct TruthTable {
  std::string logic;
  Domain domain;
  std::vector<Formula> formulas;  // columns, children first; the last is the target
  std::vector<std::vector<std::uint8_t>> rows;

  bool designated(std::size_t row) const { return domain.is_designated(rows[row].back()); }
  PartialValuation row(std::size_t r) const { return {logic, domain, formulas, rows[r]}; }
};

// One row per valuation, in branch order. Refuses when the estimated row
// count exceeds `max_rows` unless `force` is set.
inline TruthTable truth_table(const Formula& f, const Nmatrix& m, std::size_t max_rows = kDefaultRowCap,
                              bool force = false) {
  Problem p(m, {f});
  double est = p.estimate();
  if (!force && est > static_cast<double>(max_rows)) {
    auto capped = est > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(est);
    throw RowCapExceeded(capped, max_rows);
  }
  TruthTable t{m.tag(), m.domain(), p.formulas(), {}};
  p.enumerate([&](const std::vector<std::uint8_t>& v) {
    t.rows.push_back(v);
    return true;
  });
  return t;
}

inline TruthTable truth_table(const Formula& f, LogicId id, std::size_t max_rows = kDefaultRowCap,
                              bool force = false) {
  return truth_table(f, nmatrix(id), max_rows, force);
}

// Fixed-width text rendering: one column per subformula and a final
// designation column.
inline std::string render(const TruthTable& t) {
  std::vector<std::string> heads;
  for (const auto& f : t.formulas) heads.push_back(print(f));
  heads.push_back("designated");
  std::vector<std::size_t> widths;
  for (const auto& h : heads) widths.push_back(h.size());
  for (int i = 0; i < t.domain.size(); ++i)
    for (std::size_t c = 0; c + 1 < widths.size(); ++c) widths[c] = std::max(widths[c], t.domain.name(i).size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += "   ";
      out += cells[c];
      if (c + 1 < cells.size()) out += std::string(widths[c] - cells[c].size(), ' ');
    }
    return out + "\n";
  };
  std::string out = line(heads);
  std::string rule;
  for (std::size_t c = 0; c < widths.size(); ++c) {
    if (c) rule += "   ";
    rule += std::string(widths[c], '-');
  }
  out += rule + "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<std::string> cells;
    for (auto v : t.rows[r]) cells.push_back(t.domain.name(v));
    cells.push_back(t.designated(r) ? "yes" : "no");
    out += line(cells);
  }
  return out;
}

// Pinned values for named subformulas, e.g. {parse("p"), "f1"}.
using Pins = std::vector<std::pair<Formula, std::string>>;

// If f and g are equivalent but context[f] and context[g] are not, returns a
// valuation designating one of the two and not the other (context[f]
// designated first). Pins restrict the search to valuations extending them.
inline std::optional<PartialValuation> check_congruence(const Formula& f, const Formula& g, const Formula& context,
                                                        const Nmatrix& m, const Pins& pins = {}) {
  if (!equivalent(f, g, m)) return std::nullopt;
  const Formula cf = plug(context, f);
  const Formula cg = plug(context, g);
  for (bool f_first : {true, false}) {
    Problem p(m, {cf, cg});
    p.require_target(0, f_first);
    p.require_target(1, !f_first);
    for (const auto& [h, name] : pins) p.pin(h, m.domain().index_of_name(name));
    if (!p.satisfiable()) continue;
    return p.valuation(*p.first());
  }
  return std::nullopt;
}

inline std::optional<PartialValuation> check_congruence(const Formula& f, const Formula& g, const Formula& context,
                                                        LogicId id, const Pins& pins = {}) {
  return check_congruence(f, g, context, nmatrix(id), pins);
}

// For each assignment to the variables, the values every column formula can
// take over the valuations extending it.
struct ColumnTable {
  std::string logic;
  Domain domain;
  std::vector<Formula> columns;
  std::vector<std::vector<ValueSet>> rows;
};

inline ColumnTable column_table(const std::vector<Formula>& columns, const Nmatrix& m) {
  Problem p(m, columns);
  std::vector<int> vars;
  for (std::size_t i = 0; i < p.formulas().size(); ++i)
    if (p.formulas()[i].is_var()) vars.push_back(static_cast<int>(i));
  std::map<std::vector<std::uint8_t>, std::vector<ValueSet>> by_key;
  p.enumerate([&](const std::vector<std::uint8_t>& v) {
    std::vector<std::uint8_t> key;
    for (int i : vars) key.push_back(v[static_cast<std::size_t>(i)]);
    auto& cells = by_key[key];
    cells.resize(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) cells[c].insert(v[static_cast<std::size_t>(p.targets()[c])]);
    return true;
  });
  ColumnTable t{m.tag(), m.domain(), columns, {}};
  for (auto& [key, cells] : by_key) t.rows.push_back(std::move(cells));
  return t;
}

inline std::string column_csv(const ColumnTable& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + detail::csv_field(print(t.columns[c]));
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + detail::csv_field(t.domain.set_to_string(row[c]));
    out += "\n";
  }
  return out;
}

// Columns of the classicality table: p, ~p, !p and the subformulas of o(p).
inline std::vector<Formula> classicality_columns() {
  const Formula p = Formula::var("p");
  const Formula np = Formula::neg(p);
  const Formula both = Formula::conj(p, np);
  return {p, Formula::sneg(p), np, Formula::disj(p, np), both, Formula::sneg(both), classicality(p)};
}

// Connective tables, plus the classicality table for the combined logics.
inline std::vector<TableFile> dump_tables(LogicId id) {
  std::vector<TableFile> out = connective_tables(id);
  if (id.family == Family::Combined)
    out.push_back({"classicality.csv", column_csv(column_table(classicality_columns(), nmatrix(id)))});
  return out;
}

}  // namespace paramodal
