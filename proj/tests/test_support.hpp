#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "biharm/chartlang.hpp"
#include "biharm/immersion.hpp"

inline std::string data_path(const std::string& name) { return std::string(BIHARM_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline biharm::Family chart_family(const std::string& name) {
  return biharm::from_chart(biharm::chartlang::parse_chart(read_data(name)));
}
