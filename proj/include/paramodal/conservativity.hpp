#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "decide.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "logics.hpp"
#include "nmatrix.hpp"
#include "snapshot.hpp"

namespace paramodal {

enum class Embedding { H, G };

constexpr std::string_view to_string(Embedding e) { return e == Embedding::H ? "h" : "g"; }

// h(z1,z2) = (z1,0,0,z2)
constexpr Snapshot embed_h(Snapshot s) { return Snapshot{s[1], false, false, s[2]}; }

// g(z1,z2,z3) = (z1,z2,z3,~z1)
constexpr Snapshot embed_g(Snapshot s) { return Snapshot{s[1], s[2], s[3], bits::complement(s[1])}; }

inline Snapshot embed(Embedding e, Snapshot s) { return e == Embedding::H ? embed_h(s) : embed_g(s); }

// The embedding that carries `component` into a combined logic.
inline Embedding embedding_for(LogicId component) {
  switch (component.family) {
    case Family::Idm4: return Embedding::H;
    case Family::Modal: return Embedding::G;
    case Family::Combined: break;
  }
  throw SignatureError(component.display_name() + " is not a component logic");
}

// Whether `component` is one of the two logics `combined` is built from.
inline bool is_component_of(LogicId component, LogicId combined) {
  if (combined.family != Family::Combined) return false;
  if (component.family == Family::Idm4) return true;
  return component.family == Family::Modal && component.box == combined.box;
}

inline void require_pair(LogicId component, LogicId combined) {
  if (!is_component_of(component, combined))
    throw SignatureError(component.display_name() + " is not a component of " + combined.display_name());
}

// Indices into the combined domain of the embedded component values.
inline std::vector<int> embedding_map(LogicId component, LogicId combined) {
  require_pair(component, combined);
  const Domain& from = nmatrix(component).domain();
  const Domain& to = nmatrix(combined).domain();
  std::vector<int> map;
  for (Snapshot s : from.elements()) map.push_back(*to.index_of(embed(embedding_for(component), s)));
  return map;
}

// The component Nmatrix carried along h or g, reduced to the component's
// signature.
inline Nmatrix embedded_image(LogicId component) {
  Embedding e = embedding_for(component);
  return image(nmatrix(component), [e](Snapshot s) { return embed(e, s); },
               std::string(to_string(e)) + "(" + component.tag() + ")");
}

// The image of the component is a subNmatrix of the combined logic's
// reduct to the component signature.
inline bool image_is_subnmatrix(LogicId component, LogicId combined) {
  require_pair(component, combined);
  const Nmatrix& m = nmatrix(combined);
  return is_subnmatrix(embedded_image(component), m.reduct(component.signature()), component.signature());
}

// Carries a component valuation into the combined logic value by value.
inline PartialValuation embed_valuation(const PartialValuation& v, LogicId combined) {
  LogicId component = parse_logic(v.logic);
  require_pair(component, combined);
  for (const Formula& f : v.formulas)
    if (!in_signature(f, component.signature()))
      throw SignatureError(print(f) + " is outside " + std::string(to_string(component.signature())));
  std::vector<int> map = embedding_map(component, combined);
  PartialValuation out{combined.tag(), nmatrix(combined).domain(), v.formulas, {}};
  for (auto x : v.values) out.values.push_back(static_cast<std::uint8_t>(map[x]));
  return out;
}

// p, q, r, s, then p4, p5, ...
inline std::string variable_name(int i) {
  static constexpr const char* first[] = {"p", "q", "r", "s"};
  return i < 4 ? first[i] : "p" + std::to_string(i);
}

// Each node is drawn uniformly from the variables' slot and the signature's
// connectives; at depth zero only variables remain.
inline Formula random_formula(Signature sig, int max_depth, int variables, std::mt19937_64& rng) {
  if (max_depth < 0) throw Error("max_depth must be at least 0");
  if (variables < 1) throw Error("need at least one variable");
  const std::vector<Connective> ops = connectives_of(sig);
  auto draw = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  auto go = [&](auto& self, int depth) -> Formula {
    std::size_t pick = depth == 0 ? 0 : draw(ops.size() + 1);
    if (pick == 0) return Formula::var(variable_name(static_cast<int>(draw(static_cast<std::uint64_t>(variables)))));
    Connective c = ops[pick - 1];
    if (arity(c) == 1) return Formula::unary(c, self(self, depth - 1));
    Formula l = self(self, depth - 1);
    return Formula::binary(c, l, self(self, depth - 1));
  };
  return go(go, max_depth);
}

inline Formula random_formula(Signature sig, int max_depth, int variables, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_formula(sig, max_depth, variables, rng);
}

// Every formula of depth at most `depth` over the first `variables`
// variables, shallower formulas first.
inline std::vector<Formula> all_formulas(Signature sig, int depth, int variables) {
  std::vector<Formula> level;
  for (int i = 0; i < variables; ++i) level.push_back(Formula::var(variable_name(i)));
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> next = level;
    for (Connective c : connectives_of(sig)) {
      if (arity(c) == 1) {
        for (const auto& a : level)
          if (a.depth() == d - 1) next.push_back(Formula::unary(c, a));
        continue;
      }
      for (const auto& a : level)
        for (const auto& b : level)
          if (std::max(a.depth(), b.depth()) == d - 1) next.push_back(Formula::binary(c, a, b));
    }
    level = std::move(next);
  }
  return level;
}

inline constexpr std::uint64_t kDefaultSeed = 20240521;

struct SamplerConfig {
  std::size_t samples = 1000;
  int max_depth = 4;
  int variables = 2;
  std::uint64_t seed = kDefaultSeed;
  // Entailments with one or two premises, drawn after the formulas.
  std::size_t entailment_samples = 1000;
  int max_premises = 2;
  // Exhaustive sweep over all formulas up to this depth; negative skips it.
  int exhaustive_depth = 3;
  int exhaustive_variables = 1;
};

struct Mismatch {
  std::vector<Formula> premises;
  Formula formula;
  bool component_verdict;
  bool combined_verdict;
  // A countermodel from whichever side rejects.
  std::optional<PartialValuation> witness;
};

struct ConservativityReport {
  LogicId component;
  LogicId combined;
  std::size_t sampled = 0;
  std::size_t exhaustive = 0;
  std::size_t entailments = 0;
  // Checks that held in both logics.
  std::size_t held = 0;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline void compare(ConservativityReport& r, const Nmatrix& a, const Nmatrix& b, const std::vector<Formula>& premises,
                    const Formula& f) {
  Entailment x = entails(premises, f, a);
  Entailment y = entails(premises, f, b);
  if (x.holds == y.holds) {
    r.held += x.holds;
    return;
  }
  r.mismatches.push_back({premises, f, x.holds, y.holds, x.holds ? y.countermodel : x.countermodel});
}

}  // namespace detail

// Checks that `combined` validates exactly the component's valid formulas
// and entailments on the component signature.
inline ConservativityReport conservativity_test(LogicId component, LogicId combined, const SamplerConfig& cfg = {}) {
  require_pair(component, combined);
  const Nmatrix& a = nmatrix(component);
  const Nmatrix& b = nmatrix(combined);
  const Signature sig = component.signature();
  ConservativityReport r{component, combined, 0, 0, 0, 0, {}};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.samples; ++i, ++r.sampled)
    detail::compare(r, a, b, {}, random_formula(sig, cfg.max_depth, cfg.variables, rng));
  for (std::size_t i = 0; i < cfg.entailment_samples && cfg.max_premises > 0; ++i, ++r.entailments) {
    std::size_t k = 1 + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(cfg.max_premises));
    std::vector<Formula> premises;
    for (std::size_t j = 0; j < k; ++j) premises.push_back(random_formula(sig, cfg.max_depth, cfg.variables, rng));
    detail::compare(r, a, b, premises, random_formula(sig, cfg.max_depth, cfg.variables, rng));
  }
  if (cfg.exhaustive_depth >= 0)
    for (const Formula& f : all_formulas(sig, cfg.exhaustive_depth, cfg.exhaustive_variables)) {
      detail::compare(r, a, b, {}, f);
      ++r.exhaustive;
    }
  return r;
}

}  // namespace paramodal
