// Writes the IvFDE_T proof corpus: one file per derived theorem, each a
// self-contained MP derivation with every cited lemma inlined.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <paramodal/hilbert.hpp>

using namespace paramodal;

namespace {

using B = ProofBuilder;

Formula p = Formula::var("p");
Formula q = Formula::var("q");

std::size_t n5(B& b, const Formula& a) { return b.ax("N5", {{"phi", a}}); }
std::size_t n6(B& b, const Formula& a) { return b.ax("N6", {{"phi", a}}); }
std::size_t t(B& b, const Formula& a) { return b.ax("T", {{"phi", a}}); }

// []!a <-> []~a
std::size_t neg_box_iff(B& b, const Formula& a) {
  std::size_t first = n5(b, Formula::neg(a));
  return b.iff_trans(first, b.iff_sym(n6(b, a)));
}

// []~a -> !a
std::size_t box_sneg_to_neg(B& b, const Formula& a) {
  std::size_t to_neg = b.iff_right(neg_box_iff(b, a));
  return b.hs(to_neg, t(b, Formula::neg(a)));
}

// []a -> ~!a
std::size_t box_to_sneg_neg(B& b, const Formula& a) {
  std::size_t to_sneg = b.iff_left(n5(b, a));
  return b.hs(to_sneg, t(b, Formula::sneg(Formula::neg(a))));
}

struct Item {
  std::string file;
  std::string statement;
  bool reconstructed;
  std::function<void(B&)> build;
};

std::vector<Item> items() {
  using F = Formula;
  return {
      {"01-box-implies-sneg-neg", "~!p from []p", false,
       [](B& b) {
         std::size_t h = b.hyp(F::box(p));
         std::size_t m = b.mp(h, b.iff_left(n5(b, p)));
         b.mp(m, t(b, F::sneg(F::neg(p))));
       }},
      {"02-box-neg-sneg", "[]p <-> []!~p", true,
       [](B& b) {
         std::size_t dn1 = b.ax("DN1", {{"phi", p}});
         std::size_t chain = b.iff_trans(dn1, n6(b, F::sneg(p)));
         b.iff_trans(chain, b.iff_sym(n5(b, F::neg(F::sneg(p)))));
       }},
      {"03-box-double-neg", "[]p <-> []!!p", true,
       [](B& b) {
         std::size_t first = n5(b, p);
         std::size_t chain = b.iff_trans(first, n6(b, F::neg(p)));
         b.iff_trans(chain, b.iff_sym(n5(b, F::neg(F::neg(p)))));
       }},
      {"04-box-neg-is-box-sneg", "[]!p <-> []~p", true, [](B& b) { neg_box_iff(b, p); }},
      {"05-box-sneg-implies-neg", "!p from []~p", false,
       [](B& b) {
         std::size_t h = b.hyp(F::box(F::sneg(p)));
         std::size_t m = b.mp(h, b.iff_right(neg_box_iff(b, p)));
         b.mp(m, t(b, F::neg(p)));
       }},
      {"06-box-neg-or", "[]!(p | q) <-> [](!p & !q)", true,
       [](B& b) {
         F pq = F::disj(p, q);
         std::size_t first = neg_box_iff(b, pq);
         std::size_t chain = b.iff_trans(first, b.ax("N2", {{"phi", p}, {"psi", q}}));
         chain = b.iff_trans(chain, b.ax("N1", {{"phi", F::sneg(p)}, {"psi", F::sneg(q)}}));
         std::size_t left = b.iff_sym(neg_box_iff(b, p));
         std::size_t swap = b.and_cong(left, b.iff_sym(neg_box_iff(b, q)));
         chain = b.iff_trans(chain, swap);
         b.iff_trans(chain, b.iff_sym(b.ax("N1", {{"phi", F::neg(p)}, {"psi", F::neg(q)}})));
       }},
      {"07-box-neg-imp", "[]!(p -> q) <-> [](p & !q)", true,
       [](B& b) {
         std::size_t first = neg_box_iff(b, F::imp(p, q));
         std::size_t chain = b.iff_trans(first, b.ax("K2", {{"phi", p}, {"psi", q}}));
         std::size_t same = b.identity(F::box(p));
         std::size_t left = b.and_intro(same, same);
         std::size_t swap = b.and_cong(left, b.iff_sym(neg_box_iff(b, q)));
         chain = b.iff_trans(chain, swap);
         b.iff_trans(chain, b.iff_sym(b.ax("N1", {{"phi", p}, {"psi", F::neg(q)}})));
       }},
      {"08-box-neg-and", "[]!(p & q) from []!p | []!q", false,
       [](B& b) {
         std::size_t h = b.hyp(F::disj(F::box(F::neg(p)), F::box(F::neg(q))));
         std::size_t left = b.iff_left(neg_box_iff(b, p));
         std::size_t to_sneg = b.or_mono(left, b.iff_left(neg_box_iff(b, q)));
         std::size_t m = b.mp(h, to_sneg);
         m = b.mp(m, b.ax("N3", {{"phi", p}, {"psi", q}}));
         b.mp(m, b.iff_right(neg_box_iff(b, F::conj(p, q))));
       }},
      {"09-box-implies-neg-sneg", "!~p from []p", false,
       [](B& b) {
         std::size_t h = b.hyp(F::box(p));
         std::size_t m = b.mp(h, b.iff_left(b.ax("DN1", {{"phi", p}})));
         b.mp(m, box_sneg_to_neg(b, F::sneg(p)));
       }},
      {"10-neg-sneg-implies-sneg-box-sneg", "!~p -> ~[]~p", false,
       [](B& b) {
         F bs = F::box(F::sneg(p));
         F ns = F::neg(F::sneg(p));
         std::size_t one = box_to_sneg_neg(b, F::sneg(p));
         b.mp(one, b.contraposition(bs, ns));
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_proofs <output-dir>\n";
    return 2;
  }
  std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const Calculus& c = calculus(logics::ivfde_t);
  for (const Item& item : items()) {
    B b(c);
    item.build(b);
    b.conclude(b.lines().size());
    Proof proof = b.proof();
    proof.notes.push_back("theorem: " + item.statement);
    if (item.reconstructed)
      proof.notes.push_back("reconstructed: equivalence chain expanded into MP steps");
    else
      proof.notes.push_back("displayed derivation with biconditionals unpacked by Ax4/Ax5 and cited lemmas inlined");
    ProofCheck check = verify_proof(c, proof);
    if (!check.ok) {
      std::cerr << item.file << ": line " << check.line << ": " << check.reason << "\n";
      return 1;
    }
    std::ofstream(dir / (item.file + ".proof")) << print_proof(proof);
    std::cout << item.file << ": " << proof.lines.size() << " lines\n";
  }
  return 0;
}
