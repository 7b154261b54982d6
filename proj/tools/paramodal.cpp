// Command-line front end. Exit codes: 0 when the query is answered yes,
// 1 when it is answered no, 2 on usage, parse or logic-name errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <paramodal/conservativity.hpp>
#include <paramodal/decide.hpp>
#include <paramodal/hilbert.hpp>
#include <paramodal/logics.hpp>
#include <paramodal/serialize.hpp>
#include <paramodal/syntax.hpp>

using namespace paramodal;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct Options {
  std::string logic;
  bool unrestricted = false;
  std::string format = "text";
  std::string query = "valid";
  std::string formula;
  std::string premises;
  std::string file;
  std::string out;
  std::string component;
  std::string pool;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 1000;
  std::size_t max_rows = kDefaultRowCap;
};

bool json(const Options& o) { return o.format == "json"; }

LogicId logic_of(const Options& o) {
  if (o.logic.empty()) throw Error("--logic is required; valid options: idm4, tm, t4m, t45m, tbm, t4bm, t5m, ivfde-t, "
                                   "ivfde-t4, ivfde-t45, ivfde-tb, ivfde-t4b, ivfde-t5");
  return parse_logic(o.logic, o.unrestricted);
}

// Prints the parse error with a caret under the offending offset.
int report_parse_error(const ParseError& e, const std::string& text) {
  std::cerr << "error: " << e.what() << "\n";
  if (!text.empty() && e.offset() <= text.size()) std::cerr << "  " << text << "\n  " << std::string(e.offset(), ' ') << "^\n";
  return kUsage;
}

std::string with_witness(const char* label, const std::optional<PartialValuation>& v) {
  return v ? std::string(label) + ": " + v->to_string() + "\n" : "";
}

int run_decide(const Options& o) {
  LogicId id = logic_of(o);
  Formula f = parse(o.formula);
  Verdict v = classify(f, id);
  bool answer = false;
  std::string text;
  if (o.query == "valid") {
    answer = v.status == Status::Valid;
    text = answer ? "valid\n" : "not valid\n" + with_witness("countermodel", v.countermodel);
  } else if (o.query == "sat") {
    answer = v.model.has_value();
    text = answer ? "satisfiable\n" + with_witness("model", v.model) : "unsatisfiable\n";
  } else if (o.query == "refutable") {
    answer = v.countermodel.has_value();
    text = answer ? "refutable\n" + with_witness("countermodel", v.countermodel) : "not refutable\n";
  } else {
    answer = !v.model;
    text = answer ? "unsatisfiable\n" : "satisfiable\n" + with_witness("model", v.model);
  }
  if (json(o)) {
    Json j{{"logic", id.tag()}, {"query", o.query}, {"formula", print(f)}, {"answer", answer}};
    j.update(to_json(v));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text;
  }
  return answer ? kYes : kNo;
}

int run_table(const Options& o) {
  LogicId id = logic_of(o);
  Formula f = parse(o.formula);
  TruthTable t = truth_table(f, id, o.max_rows);
  std::cout << (json(o) ? to_json_lines(t) : render(t));
  return kYes;
}

int run_entail(const Options& o) {
  LogicId id = logic_of(o);
  std::vector<Formula> premises;
  try {
    premises = parse_list(o.premises);
  } catch (const ParseError& e) {
    return report_parse_error(e, o.premises);
  }
  Formula c = parse(o.formula);
  Entailment e = entails(premises, c, id);
  if (json(o)) {
    Json ps = Json::array();
    for (const auto& p : premises) ps.push_back(print(p));
    std::cout << Json{{"logic", id.tag()}, {"premises", ps}, {"conclusion", print(c)}, {"holds", e.holds},
                      {"countermodel", to_json(e.countermodel)}}
                     .dump()
              << "\n";
  } else {
    std::cout << (e.holds ? "entails\n" : "does not entail\n") << with_witness("countermodel", e.countermodel);
  }
  return e.holds ? kYes : kNo;
}

int run_prove(const Options& o) {
  std::stringstream buf;
  if (o.file == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(o.file);
    if (!in) throw Error("cannot read " + o.file);
    buf << in.rdbuf();
  }
  Proof p = parse_proof(buf.str());
  LogicId id = !o.logic.empty() ? logic_of(o) : p.logic ? *p.logic : logics::ivfde_t;
  ProofCheck r = verify_proof(calculus(id), p);
  if (json(o)) {
    Json j{{"logic", id.tag()}, {"lines", p.lines.size()}};
    j.update(to_json(r));
    std::cout << j.dump() << "\n";
  } else if (r.ok) {
    std::string proved = p.goal ? print(*p.goal) : p.lines.empty() ? "(nothing)" : print(p.lines.back().formula);
    std::cout << "verified in " << id.display_name() << ": " << proved << " (" << p.lines.size() << " lines)\n";
  } else if (r.line) {
    std::cout << "rejected at line " << r.line << ": " << r.reason << "\n";
  } else {
    std::cout << "rejected: " << r.reason << "\n";
  }
  return r.ok ? kYes : kNo;
}

int run_dump(const Options& o) {
  LogicId id = logic_of(o);
  std::vector<TableFile> files = dump_tables(id);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    for (const auto& f : files) {
      std::ofstream(std::filesystem::path(o.out) / f.name) << f.csv;
      std::cout << (std::filesystem::path(o.out) / f.name).string() << "\n";
    }
    return kYes;
  }
  for (std::size_t i = 0; i < files.size(); ++i) std::cout << (i ? "\n" : "") << "# " << files[i].name << "\n" << files[i].csv;
  return kYes;
}

int run_conserve(const Options& o) {
  LogicId combined = logic_of(o);
  if (combined.family != Family::Combined) throw Error("conserve needs a combined logic, got " + combined.tag());
  std::vector<LogicId> components;
  if (o.component.empty())
    components = {logics::idm4, combined.modal_component()};
  else
    components = {parse_logic(o.component)};
  SamplerConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.entailment_samples = o.samples;
  bool ok = true;
  Json all = Json::array();
  for (LogicId c : components) {
    ConservativityReport r = conservativity_test(c, combined, cfg);
    ok = ok && r.ok();
    if (json(o)) {
      all.push_back(to_json(r));
      continue;
    }
    std::cout << c.tag() << " in " << combined.tag() << ": " << r.sampled << " sampled formulas, " << r.entailments
              << " sampled entailments, " << r.exhaustive << " exhaustive formulas, " << r.mismatches.size()
              << " mismatches\n";
    for (const auto& m : r.mismatches) std::cout << "  " << to_json(m).dump() << "\n";
  }
  if (json(o)) std::cout << all.dump() << "\n";
  return ok ? kYes : kNo;
}

int run_sweep(const Options& o) {
  LogicId id = logic_of(o);
  const Calculus& c = calculus(id);
  std::vector<Formula> pool = default_pool(c.signature());
  try {
    if (!o.pool.empty()) pool = parse_list(o.pool);
  } catch (const ParseError& e) {
    return report_parse_error(e, o.pool);
  }
  for (const auto& f : pool)
    if (!in_signature(f, c.signature()))
      throw SignatureError("pool formula " + print(f) + " is outside " + std::string(to_string(c.signature())));
  SweepReport r = soundness_sweep(c, pool);
  if (json(o)) {
    Json j{{"logic", id.tag()}, {"schemas", c.schemas().size()}};
    j.update(to_json(r));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << id.tag() << ": " << c.schemas().size() << " schemas, " << r.instances << " instances, "
              << r.failures.size() << " failures\n";
    for (const auto& f : r.failures)
      std::cout << "  " << f.schema << ": " << print(f.instance) << "\n    countermodel: " << f.countermodel.to_string() << "\n";
  }
  return r.ok() ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Decision procedures, truth tables and proof checking for IDM4, the Ivlev-like modal logics and their combinations"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--logic", o.logic, "Logic tag, e.g. idm4, tm, ivfde-t");
    sub->add_flag("--unrestricted", o.unrestricted, "Use the 8-valued domain (combined logics only)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* decide = app.add_subcommand("decide", "Answer a query about one formula");
  common(decide);
  decide->add_option("--query", o.query, "Query")->check(CLI::IsMember({"valid", "sat", "refutable", "unsat"}));
  decide->add_option("formula", o.formula, "Formula")->required();

  CLI::App* table = app.add_subcommand("table", "Print every valuation of a formula's subformulas");
  common(table);
  table->add_option("--max-rows", o.max_rows, "Refuse tables with more rows than this");
  table->add_option("formula", o.formula, "Formula")->required();

  CLI::App* entail = app.add_subcommand("entail", "Check premises |= conclusion");
  common(entail);
  entail->add_option("--premises", o.premises, "Comma-separated premises");
  entail->add_option("formula", o.formula, "Conclusion")->required();

  CLI::App* prove = app.add_subcommand("prove", "Verify a Hilbert proof file");
  common(prove);
  prove->add_option("file", o.file, "Proof file, or - for standard input")->required();

  CLI::App* dump = app.add_subcommand("dump-tables", "Write the connective tables as CSV");
  common(dump);
  dump->add_option("--out", o.out, "Directory to write one CSV file per table into");

  CLI::App* conserve = app.add_subcommand("conserve", "Test conservativity over the component logics");
  common(conserve);
  conserve->add_option("--component", o.component, "Only this component logic");
  conserve->add_option("--seed", o.seed, "Sampler seed");
  conserve->add_option("--samples", o.samples, "Sampled formulas and entailments per pair");

  CLI::App* sweep = app.add_subcommand("sweep", "Check every axiom instance over a formula pool");
  common(sweep);
  sweep->add_option("--pool", o.pool, "Comma-separated instantiation formulas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (decide->parsed()) return run_decide(o);
    if (table->parsed()) return run_table(o);
    if (entail->parsed()) return run_entail(o);
    if (prove->parsed()) return run_prove(o);
    if (dump->parsed()) return run_dump(o);
    if (conserve->parsed()) return run_conserve(o);
    if (sweep->parsed()) return run_sweep(o);
  } catch (const RowCapExceeded& e) {
    std::cerr << "error: " << e.what() << "; raise --max-rows to allow it\n";
    return kUsage;
  } catch (const ParseError& e) {
    return report_parse_error(e, o.formula);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
