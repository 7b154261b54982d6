// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <paramodal/conservativity.hpp>
#include <paramodal/decide.hpp>
#include <paramodal/hilbert.hpp>
#include <paramodal/logics.hpp>

#include "support/helpers.hpp"
#include "support/naive_enumerator.hpp"

using namespace paramodal;
using testing_support::C;
using testing_support::F;

namespace {

namespace fs = std::filesystem;

// Collects failures for one criterion; the first few are printed.
struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

int designated_count(const Domain& d) {
  int n = 0;
  for (int i = 0; i < d.size(); ++i) n += d.is_designated(i);
  return n;
}

bool same_tables(const Nmatrix& a, const Nmatrix& b) {
  if (!(a.domain() == b.domain()) || a.connectives() != b.connectives()) return false;
  for (Connective c : a.connectives())
    if (!(a.op(c) == b.op(c))) return false;
  return true;
}

void table_fidelity(Outcome& out) {
  std::size_t files = 0;
  for (const LogicId& l : all_logics()) {
    const fs::path dir = fs::path(testing_support::data_dir()) / "tables" / l.tag();
    std::set<std::string> committed;
    for (const auto& e : fs::directory_iterator(dir)) committed.insert(e.path().filename().string());
    std::set<std::string> generated;
    for (const TableFile& t : dump_tables(l)) {
      generated.insert(t.name);
      out.check(t.csv == testing_support::read_file((dir / t.name).string()), l.tag() + "/" + t.name + " differs");
      ++files;
    }
    out.check(generated == committed, l.tag() + ": generated and committed file sets differ");
  }
  out.note(std::to_string(files) + " tables over 13 logics");
}

void cardinalities(Outcome& out) {
  const std::pair<DomainKind, std::pair<int, int>> want[] = {{DomainKind::Pairs, {4, 2}},
                                                             {DomainKind::Triples, {4, 2}},
                                                             {DomainKind::QuadsRestricted, {6, 3}},
                                                             {DomainKind::QuadsUnrestricted, {8, 4}}};
  std::string seen;
  for (const auto& [kind, sizes] : want) {
    Domain d(kind);
    out.check(d.size() == sizes.first && designated_count(d) == sizes.second,
              "domain of width " + std::to_string(d.width()) + " has " + std::to_string(d.size()) + " values, " +
                  std::to_string(designated_count(d)) + " designated");
    seen += (seen.empty() ? "" : " ") + std::to_string(d.size()) + "/" + std::to_string(designated_count(d));
  }
  out.note(seen);
}

void soundness(Outcome& out) {
  std::size_t instances = 0;
  for (const LogicId& l : all_logics()) {
    const Calculus& c = calculus(l);
    for (const Schema& s : c.schemas())
      out.check(s.metavariables().size() <= 3, l.tag() + " " + s.name() + " has more than three metavariables");
    SweepReport r = soundness_sweep(c, default_pool(c.signature()));
    instances += r.instances;
    for (const auto& f : r.failures) out.check(false, l.tag() + " " + f.schema + ": " + print(f.instance));
  }
  out.note(std::to_string(instances) + " instances");
}

void theta_characterization(Outcome& out) {
  const Formula p = F("p");
  for (const LogicId& l : combined_logics())
    for (const char* a : {"T0", "t0", "t1", "f0", "f1", "F1"}) {
      TruthTable t = truth_table(theta(a, p), l);
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.designated(r) != (t.row(r).name(p) == a)) {
          out.check(false, l.tag() + " theta_" + a + " at v(p)=" + t.row(r).name(p));
          break;
        }
    }
}

void hyperintensionality(Outcome& out) {
  struct Item {
    std::string f, g, context;
    LogicId logic;
    Pins pins;
    // Expected names in the witness.
    std::vector<std::pair<std::string, std::string>> values;
  };
  const std::vector<Item> items = {
      {"p -> q", "~p | q", "[]X", logics::ivfde_t, {{F("p"), "f1"}, {F("q"), "t1"}}, {{"p -> q", "T0"}, {"~p | q", "t0"}}},
      {"~p | ~q", "~(p & q)", "[]X", logics::ivfde_t, {{F("p"), "f0"}, {F("q"), "f1"}},
       {{"~p | ~q", "T0"}, {"~(p & q)", "t0"}}},
      {"!p | !p", "!(p & p)", "[]X", logics::ivfde_t, {{F("p"), "f1"}}, {{"!p | !p", "T0"}, {"!(p & p)", "t0"}}},
      {"!(p -> p)", "p & !p", "!X", logics::ivfde_t, {}, {{"p", "f0"}}},
      {"!(p -> p)", "p & !p", "!X", logics::idm4, {}, {{"p", "n"}}},
  };
  int item = 0;
  for (const Item& it : items) {
    ++item;
    const std::string label = "item " + std::to_string(std::min(item, 4)) + " in " + it.logic.tag();
    auto w = check_congruence(F(it.f), F(it.g), C(it.context), it.logic, it.pins);
    if (!w) {
      out.check(false, label + ": no witness");
      continue;
    }
    const Formula cf = plug(C(it.context), F(it.f));
    const Formula cg = plug(C(it.context), F(it.g));
    out.check(w->designates(cf) != w->designates(cg), label + ": contexts agree on designation");
    for (const auto& [sub, name] : it.values) out.check(w->name(F(sub)) == name, label + ": v(" + sub + ") != " + name);
    out.note(label + ": " + w->to_string());
  }
}

void necessitation(Outcome& out) {
  std::size_t n = 0;
  for (const LogicId& l : all_logics()) {
    if (l.family == Family::Idm4) continue;
    out.check(is_valid(F("p -> p"), l), l.tag() + ": p -> p not valid");
    out.check(is_refutable(F("[](p -> p)"), l), l.tag() + ": [](p -> p) not refutable");
    ++n;
  }
  out.note(std::to_string(n) + " logics");
}

void separation(Outcome& out) {
  struct Row {
    std::string axiom;
    std::vector<LogicId> valid_in;
  };
  const std::vector<Row> rows = {{"[]p -> [][]p", {logics::ivfde_t4, logics::ivfde_t45, logics::ivfde_t4b}},
                                 {"~[]~[]p -> []p", {logics::ivfde_t45, logics::ivfde_t5}},
                                 {"~[]~[]p -> p", {logics::ivfde_tb, logics::ivfde_t4b}}};
  for (const Row& r : rows) {
    const Formula f = F(r.axiom);
    for (const LogicId& l : r.valid_in) out.check(is_valid(f, l), r.axiom + " not valid in " + l.tag());
    auto cm = find_countermodel(f, nmatrix(logics::ivfde_t));
    out.check(cm.has_value(), r.axiom + " not refutable in ivfde-t");
    if (cm) out.note(r.axiom + " refuted in ivfde-t by " + cm->to_string());
  }
}

void embeddings(Outcome& out) {
  std::size_t valuations = 0;
  for (const LogicId& c : combined_logics())
    for (const LogicId& comp : {logics::idm4, c.modal_component()}) {
      out.check(image_is_subnmatrix(comp, c), comp.tag() + " image is not a subNmatrix of " + c.tag());
      for (const Formula& f : all_formulas(comp.signature(), 2, 2))
        for (const auto& v : enumerate_valuations(f, comp)) {
          PartialValuation e = embed_valuation(v, c);
          bool ok = is_valuation(e, nmatrix(c));
          for (const auto& g : v.formulas) ok = ok && v.designates(g) == e.designates(g);
          out.check(ok, comp.tag() + " -> " + c.tag() + ": " + v.to_string());
          ++valuations;
        }
    }
  out.note(std::to_string(valuations) + " component valuations embedded");
}

void report_conservativity(Outcome& out, const ConservativityReport& r) {
  for (const auto& m : r.mismatches)
    out.check(false, r.component.tag() + " in " + r.combined.tag() + ": " + print(m.formula));
}

void conservativity(Outcome& out) {
  std::size_t pairs = 0, checks = 0;
  for (const LogicId& c : combined_logics())
    for (const LogicId& comp : {logics::idm4, c.modal_component()}) {
      ConservativityReport r = conservativity_test(comp, c);
      report_conservativity(out, r);
      ++pairs;
      checks += r.sampled + r.entailments + r.exhaustive;
    }
  out.note(std::to_string(pairs) + " pairs, " + std::to_string(checks) + " checks");
}

void oracle(Outcome& out) {
  const Nmatrix& m = nmatrix(logics::ivfde_t);
  std::vector<Formula> all = all_formulas(Signature::SigmaFull, 3, 2);
  for (const Formula& f : all) {
    naive::Verdicts n = naive::decide(f, m);
    if (is_satisfiable(f, m) != n.satisfiable || is_refutable(f, m) != n.refutable) {
      out.check(false, print(f));
      if (out.failures.size() > 20) return;
    }
  }
  out.note(std::to_string(all.size()) + " formulas");
}

void proof_corpus(Outcome& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(fs::path(testing_support::data_dir()) / "proofs"))
    if (e.path().extension() == ".proof") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  out.check(!files.empty(), "no proofs found");
  const Calculus& c = calculus(logics::ivfde_t);
  const std::regex mp(R"(mp\((\d+),(\d+)\))");
  std::size_t mutations = 0;
  for (const fs::path& f : files) {
    const std::string text = testing_support::read_file(f.string());
    ProofCheck r = verify_proof(c, parse_proof(text));
    out.check(r.ok, f.filename().string() + ": " + r.reason);
    std::vector<std::string> lines;
    std::stringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::smatch m;
      if (!std::regex_search(lines[i], m, mp)) continue;
      const std::size_t number = std::stoul(lines[i].substr(0, lines[i].find('.')));
      const std::size_t minor = std::stoul(m[1]);
      const std::size_t other = minor == 1 ? 2 : minor - 1;
      if (other >= number) continue;
      std::string joined;
      for (std::size_t j = 0; j < lines.size(); ++j)
        joined += (j == i ? lines[j].substr(0, static_cast<std::size_t>(m.position(0))) + "mp(" + std::to_string(other) +
                                "," + m[2].str() + ")"
                          : lines[j]) +
                  "\n";
      ProofCheck bad = verify_proof(c, parse_proof(joined));
      out.check(!bad.ok && bad.line == number,
                f.filename().string() + ": mutation at line " + std::to_string(number) + " rejected at line " +
                    std::to_string(bad.line));
      ++mutations;
    }
  }
  out.note(std::to_string(files.size()) + " proofs, " + std::to_string(mutations) + " mutations");
}

void superposition(Outcome& out) {
  for (BoxVariant b : kBoxVariants) {
    const LogicId l{Family::Combined, b, false};
    Nmatrix s = superpose(specs::modal(b, true), specs::idm4(), specs::shared_connectives(), DomainKind::QuadsRestricted,
                          specs::negation_bridge());
    out.check(same_tables(s, build(l)), "superposition differs from " + l.tag());
  }
  Nmatrix u = superpose(specs::modal(BoxVariant::T, true), specs::idm4(), specs::shared_connectives(),
                        DomainKind::QuadsUnrestricted);
  out.check(u.size() == 8 && designated_count(u.domain()) == 4, "unrestricted superposition is not 8/4");
  const LogicId wide = logics::ivfde_t.combined(true);
  out.check(same_tables(u, nmatrix(wide)), "unrestricted superposition differs from " + wide.tag());
  for (const LogicId& comp : {logics::idm4, logics::tm}) report_conservativity(out, conservativity_test(comp, wide));
  out.note("6 restricted identities, " + wide.tag() + " clean against idm4 and tm");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "table fidelity", 1, table_fidelity},
      {2, "domain cardinalities", 1, cardinalities},
      {3, "soundness sweep", 30, soundness},
      {4, "theta characterization", 5, theta_characterization},
      {5, "hyperintensionality witnesses", 5, hyperintensionality},
      {6, "necessitation fails", 5, necessitation},
      {7, "separation of 4, 5 and B", 10, separation},
      {8, "subNmatrix and embedding", 30, embeddings},
      {9, "conservativity sampling", 300, conservativity},
      {10, "oracle equivalence", 120, oracle},
      {11, "proof corpus and mutations", 1, proof_corpus},
      {12, "superposition identity", 5, superposition},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) out.check(false, "took longer than " + std::to_string(c.budget_seconds) + " s");
    const bool ok = out.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << std::setw(2) << c.number << " " << c.title << " (" << std::fixed
              << std::setprecision(2) << seconds << " s)\n";
    for (const auto& n : out.notes) std::cout << "       " << n << "\n";
    for (std::size_t i = 0; i < out.failures.size() && i < 10; ++i) std::cout << "       failure: " << out.failures[i] << "\n";
    if (out.failures.size() > 10) std::cout << "       ... " << out.failures.size() - 10 << " more\n";
    std::cout.flush();
  }
  std::cout << (failed ? std::to_string(failed) + " of 12 criteria failed" : "all 12 criteria pass") << "\n";
  return failed ? 1 : 0;
}
