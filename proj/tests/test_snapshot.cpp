#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <paramodal/snapshot.hpp>

using namespace paramodal;

namespace {

std::vector<std::string> names(DomainKind k) {
  std::vector<std::string> out;
  for (Snapshot s : enumerate_domain(k)) out.push_back(name_of(s));
  return out;
}

int designated(DomainKind k) {
  int n = 0;
  for (Snapshot s : enumerate_domain(k)) n += s.designated();
  return n;
}

// Brute-force filter of the full bit space, written from the constraints.
int filtered(DomainKind k) {
  int w = width_of(k), n = 0;
  for (unsigned x = 0; x < (1u << w); ++x) {
    bool z[5] = {};
    for (int i = 1; i <= w; ++i) z[i] = (x >> (w - i)) & 1u;
    bool ok = true;
    if (w >= 3) ok = (!z[2] || z[1]) && !(z[1] && z[3]);
    if (k == DomainKind::QuadsRestricted) ok = ok && !(z[2] && z[4]) && (!z[3] || z[4]);
    n += ok;
  }
  return n;
}

}  // namespace

TEST(Domain, CanonicalOrder) {
  EXPECT_EQ(names(DomainKind::Pairs), (std::vector<std::string>{"1", "b", "n", "0"}));
  EXPECT_EQ(names(DomainKind::Triples), (std::vector<std::string>{"T", "t", "f", "F"}));
  EXPECT_EQ(names(DomainKind::QuadsRestricted), (std::vector<std::string>{"T0", "t0", "t1", "f0", "f1", "F1"}));
  EXPECT_EQ(names(DomainKind::QuadsUnrestricted),
            (std::vector<std::string>{"T0", "T1", "t0", "t1", "f0", "f1", "F0", "F1"}));
}

TEST(Domain, Cardinalities) {
  for (auto [k, size, des] : std::vector<std::tuple<DomainKind, int, int>>{{DomainKind::Pairs, 4, 2},
                                                                          {DomainKind::Triples, 4, 2},
                                                                          {DomainKind::QuadsRestricted, 6, 3},
                                                                          {DomainKind::QuadsUnrestricted, 8, 4}}) {
    EXPECT_EQ(static_cast<int>(enumerate_domain(k).size()), size);
    EXPECT_EQ(filtered(k), size);
    EXPECT_EQ(designated(k), des);
  }
}

TEST(Domain, DesignationSplit) {
  Domain d(DomainKind::QuadsRestricted);
  std::vector<std::string> yes, no;
  for (int i = 0; i < d.size(); ++i) (d.is_designated(i) ? yes : no).push_back(d.name(i));
  EXPECT_EQ(yes, (std::vector<std::string>{"T0", "t0", "t1"}));
  EXPECT_EQ(no, (std::vector<std::string>{"f0", "f1", "F1"}));
}

TEST(Names, Examples) {
  EXPECT_EQ(snapshot_of("t1", DomainKind::QuadsRestricted), (Snapshot{1, 0, 0, 1}));
  EXPECT_EQ(name_of(Snapshot{0, 0, 1, 1}), "F1");
  EXPECT_EQ(snapshot_of("b", DomainKind::Pairs), (Snapshot{1, 1}));
  EXPECT_EQ(snapshot_of("T", DomainKind::Triples), (Snapshot{1, 1, 0}));
  EXPECT_EQ(snapshot_of("F0", DomainKind::QuadsUnrestricted), (Snapshot{0, 0, 1, 0}));
}

TEST(Names, Bijection) {
  for (DomainKind k : {DomainKind::Pairs, DomainKind::Triples, DomainKind::QuadsRestricted,
                       DomainKind::QuadsUnrestricted})
    for (Snapshot s : enumerate_domain(k)) EXPECT_EQ(snapshot_of(name_of(s), k), s);
}

TEST(Names, Errors) {
  EXPECT_THROW(snapshot_of("T1", DomainKind::QuadsRestricted), UnknownName);
  EXPECT_THROW(snapshot_of("x", DomainKind::Triples), UnknownName);
  EXPECT_THROW(name_of(Snapshot{1, 0, 1}), UnknownName);
  EXPECT_THROW(name_of(Snapshot{1, 1, 1, 1}), UnknownName);
}

TEST(Bits, BooleanLaws) {
  for (bool a : {false, true})
    for (bool b : {false, true}) {
      EXPECT_EQ(bits::implies(a, b), bits::join(bits::complement(a), b));
      EXPECT_EQ(bits::complement(bits::meet(a, b)), bits::join(bits::complement(a), bits::complement(b)));
      EXPECT_EQ(bits::complement(bits::join(a, b)), bits::meet(bits::complement(a), bits::complement(b)));
    }
}

TEST(ValueSet, Algebra) {
  ValueSet a = ValueSet::single(1) | ValueSet::single(3);
  EXPECT_EQ(a.size(), 2);
  EXPECT_TRUE(a.contains(3));
  EXPECT_TRUE(ValueSet::single(1).subset_of(a));
  EXPECT_FALSE(a.subset_of(ValueSet::single(1)));
  EXPECT_EQ((a & ValueSet::single(3)), ValueSet::single(3));
  std::vector<int> xs(a.begin(), a.end());
  EXPECT_EQ(xs, (std::vector<int>{1, 3}));
  EXPECT_EQ(Domain(DomainKind::QuadsRestricted).set_to_string(a), "t0,f0");
}
