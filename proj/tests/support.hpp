#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "sequitur/calculus.hpp"

#ifndef SEQUITUR_CALCULI_DIR
#define SEQUITUR_CALCULI_DIR "calculi"
#endif

namespace sequitur::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const CalculusSpec& builtin(const std::string& name) {
  static const CalculusSpec lk = parse_calculus(read_file(SEQUITUR_CALCULI_DIR "/lk.cal"));
  static const CalculusSpec ll = parse_calculus(read_file(SEQUITUR_CALCULI_DIR "/ll.cal"));
  static const CalculusSpec s4 = parse_calculus(read_file(SEQUITUR_CALCULI_DIR "/s4.cal"));
  if (name == "ll") return ll;
  if (name == "s4") return s4;
  return lk;
}

inline Sequent goal(const CalculusSpec& c, const std::string& text) {
  return parse_sequent(c, text, GoalSyntax::Goal);
}

inline Sequent schema(const CalculusSpec& c, const std::string& text) {
  return parse_sequent(c, text, GoalSyntax::Schema);
}

}  // namespace sequitur::test
