#include <random>
#include <set>

#include <gtest/gtest.h>

#include <paramodal/conservativity.hpp>
#include <paramodal/formula.hpp>
#include <paramodal/syntax.hpp>

#include "support/helpers.hpp"

using namespace paramodal;
using testing_support::C;
using testing_support::F;

namespace {

Formula p = Formula::var("p");
Formula q = Formula::var("q");
Formula r = Formula::var("r");

}  // namespace

TEST(Parse, Identity) { EXPECT_EQ(parse("p1 -> p1"), Formula::imp(Formula::var("p1"), Formula::var("p1"))); }

TEST(Parse, UnaryBindsTightest) {
  EXPECT_EQ(parse("[]~p & !q"), Formula::conj(Formula::box(Formula::sneg(p)), Formula::neg(q)));
}

TEST(Parse, BiconditionalExpands) { EXPECT_EQ(parse("p <-> q"), Formula::conj(Formula::imp(p, q), Formula::imp(q, p))); }

TEST(Parse, Associativity) {
  EXPECT_EQ(parse("p -> q -> r"), Formula::imp(p, Formula::imp(q, r)));
  EXPECT_EQ(parse("p & q & r"), Formula::conj(Formula::conj(p, q), r));
  EXPECT_EQ(parse("p | q | r"), Formula::disj(Formula::disj(p, q), r));
  EXPECT_EQ(parse("p <-> q <-> r"), iff(iff(p, q), r));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse("p | q & r -> p"), Formula::imp(Formula::disj(p, Formula::conj(q, r)), p));
  EXPECT_EQ(parse("p -> q <-> r"), iff(Formula::imp(p, q), r));
}

TEST(Parse, Identifiers) {
  EXPECT_EQ(parse("  Foo_2 & x ").left(), Formula::var("Foo_2"));
  EXPECT_THROW(parse("_a"), ParseError);
}

TEST(Parse, ErrorsCarryOffsetAndExpectations) {
  try {
    parse("p & ");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse("(p -> q");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
  }
  try {
    parse("p q");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("p -> -> q"), ParseError);
}

TEST(ParseList, SplitsAndReportsAbsoluteOffsets) {
  auto xs = parse_list("p, p -> q ,!q");
  ASSERT_EQ(xs.size(), 3u);
  EXPECT_EQ(xs[1], Formula::imp(p, q));
  try {
    parse_list("p, q &");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
}

TEST(Print, Examples) {
  EXPECT_EQ(print(Formula::imp(p, p)), "p -> p");
  EXPECT_EQ(print(Formula::box(Formula::sneg(p))), "[]~p");
  EXPECT_EQ(print(Formula::conj(Formula::disj(p, q), r)), "(p | q) & r");
  EXPECT_EQ(print(Formula::imp(Formula::imp(p, q), r)), "(p -> q) -> r");
  EXPECT_EQ(print(Formula::imp(p, Formula::imp(q, r))), "p -> q -> r");
  EXPECT_EQ(print(Formula::conj(p, Formula::conj(q, r))), "p & (q & r)");
  EXPECT_EQ(print(Formula::neg(Formula::conj(p, q))), "!(p & q)");
}

TEST(Print, Unicode) { EXPECT_EQ(print(parse("[]~p -> !q & r"), Notation::Unicode), "□∼p → ¬q ∧ r"); }

TEST(Print, RoundTripRandomDepth8) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_formula(Signature::SigmaFull, 8, 3, rng);
    ASSERT_EQ(parse(print(f)), f) << print(f);
    ASSERT_EQ(parse(print(f, Notation::Ascii)), f);
  }
}

TEST(Subformulas, Examples) {
  EXPECT_EQ(subformulas(p), std::vector<Formula>{p});
  EXPECT_EQ(subformulas(Formula::imp(p, p)), (std::vector<Formula>{p, Formula::imp(p, p)}));
  EXPECT_EQ(subformulas(parse("!(p -> q)")), (std::vector<Formula>{p, q, parse("p -> q"), parse("!(p -> q)")}));
}

TEST(Subformulas, DistinctClosedChildrenFirst) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(Signature::SigmaFull, 6, 2, rng);
    auto subs = subformulas(f);
    EXPECT_LE(subs.size(), f.size());
    EXPECT_EQ(subs.back(), f);
    for (std::size_t j = 0; j < subs.size(); ++j) {
      for (std::size_t k = 0; k < j; ++k) ASSERT_FALSE(subs[j] == subs[k]);
      if (subs[j].is_var()) continue;
      auto before = [&](const Formula& g) { return std::find(subs.begin(), subs.begin() + j, g) != subs.begin() + j; };
      ASSERT_TRUE(before(subs[j].left()));
      if (arity(subs[j].op()) == 2) ASSERT_TRUE(before(subs[j].right()));
    }
  }
}

TEST(Signature, Membership) {
  EXPECT_TRUE(in_signature(parse("!p & q"), Signature::Sigma4));
  EXPECT_FALSE(in_signature(parse("[]p"), Signature::Sigma4));
  EXPECT_TRUE(in_signature(parse("~p -> q"), Signature::SigmaM));
  EXPECT_FALSE(in_signature(parse("p & q"), Signature::SigmaM));
  EXPECT_TRUE(in_signature(parse("[]~p & !(q | r)"), Signature::SigmaFull));
}

TEST(Signature, Lattice) {
  for (Connective c : kConnectives) {
    if (contains(Signature::Sigma4, c) || contains(Signature::SigmaM, c)) EXPECT_TRUE(contains(Signature::SigmaFull, c));
    EXPECT_EQ(contains(Signature::Sigma4, c) && contains(Signature::SigmaM, c), c == Connective::Imp);
  }
}

TEST(Derived, ModalAbbreviations) {
  EXPECT_EQ(derived_and_m(p, q), parse("~(p -> ~q)"));
  EXPECT_EQ(derived_or_m(p, q), parse("~p -> q"));
  EXPECT_EQ(derived_and_m(p, p), parse("~(p -> ~p)"));
  EXPECT_EQ(iff_m(p, q), parse("~((p -> q) -> ~(q -> p))"));
  EXPECT_EQ(expand_to_modal(parse("[](p & q) | r")), parse("~[]~(p -> ~q) -> r"));
}

TEST(Theta, Examples) {
  EXPECT_EQ(theta("T0", p), parse("p & []p & ~[]~p & ~!p"));
  EXPECT_EQ(theta("F1", p), parse("~p & ~[]p & []~p & !p"));
  EXPECT_EQ(theta("f0", p), parse("~p & ~[]p & ~[]~p & ~!p"));
  EXPECT_THROW(theta("T1", p), UnknownName);
  EXPECT_THROW(theta("x", p), UnknownName);
}

TEST(Theta, UsesExactlyAndSnegBoxNeg) {
  for (const char* a : {"T0", "t0", "t1", "f0", "f1", "F1"}) {
    Formula f = theta(a, p);
    EXPECT_TRUE(in_signature(f, Signature::SigmaFull));
    std::set<Connective> used;
    for (const auto& g : subformulas(f))
      if (!g.is_var()) used.insert(g.op());
    EXPECT_EQ(used, (std::set<Connective>{Connective::And, Connective::SNeg, Connective::Box, Connective::Neg})) << a;
  }
}

TEST(Classicality, Shape) {
  EXPECT_EQ(classicality(p), parse("(p | !p) & ~(p & !p)"));
  EXPECT_EQ(classicality(parse("[]p")), parse("([]p | ![]p) & ~([]p & ![]p)"));
  EXPECT_EQ(parse(print(classicality(p))), classicality(p));
}

TEST(Instantiate, Examples) {
  Schema k("Ax1", parse("phi -> psi -> phi"));
  EXPECT_EQ(instantiate(k, {{"phi", p}, {"psi", parse("[]q")}}), parse("p -> []q -> p"));
  Schema t("T", parse("[]phi -> phi"));
  EXPECT_EQ(instantiate(t, {{"phi", parse("!p")}}), parse("[]!p -> !p"));
  EXPECT_THROW(instantiate(k, {{"phi", p}}), Error);
}

TEST(Context, Plug) { EXPECT_EQ(plug(C("[]X -> X"), parse("p & q")), parse("[](p & q) -> p & q")); }
