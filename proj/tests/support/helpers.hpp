#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <paramodal/decide.hpp>
#include <paramodal/nmatrix.hpp>
#include <paramodal/syntax.hpp>

namespace testing_support {

inline std::string data_dir() { return PARAMODAL_DATA_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::set<std::string> names(const paramodal::Domain& d, paramodal::ValueSet s) {
  std::set<std::string> out;
  for (int i : s) out.insert(d.name(i));
  return out;
}

// Output names of a unary connective at one named input.
inline std::set<std::string> out1(const paramodal::Nmatrix& m, paramodal::Connective c, const std::string& a) {
  const auto& d = m.domain();
  return names(d, m.apply(c, d.index_of_name(a)));
}

inline std::set<std::string> out2(const paramodal::Nmatrix& m, paramodal::Connective c, const std::string& a,
                                  const std::string& b) {
  const auto& d = m.domain();
  return names(d, m.apply(c, d.index_of_name(a), d.index_of_name(b)));
}

inline paramodal::Formula F(const std::string& s) { return paramodal::parse(s); }

// One-hole context written with the variable X for the hole.
inline paramodal::Formula C(const std::string& s) {
  return paramodal::substitute(paramodal::parse(s), {{"X", paramodal::hole()}});
}

}  // namespace testing_support
