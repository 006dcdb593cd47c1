#pragma once

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace syncgame {

// Runtime knobs shared by the CLI commands. Values come from defaults, then
// a JSON file named by SYNCGAME_CONFIG, then explicit flags.
struct Config {
  std::size_t degree_bound = 6;
  std::size_t rule_cap = 50000;
  double tol = 1e-10;
  double support_eps = 1e-6;
  int threads = 1;
  std::string format = "json";  // "json" or "text"

  void validate() const {
    if (degree_bound < 2) throw std::invalid_argument("config: degree_bound must be at least 2");
    if (tol <= 0) throw std::invalid_argument("config: tol must be positive");
    if (support_eps <= tol) throw std::invalid_argument("config: support_eps must exceed tol");
    if (threads < 1) throw std::invalid_argument("config: threads must be at least 1");
    if (format != "json" && format != "text") throw std::invalid_argument("config: format must be json or text");
  }

  void merge_json(const nlohmann::json& j) {
    if (j.contains("degree_bound")) degree_bound = j.at("degree_bound").get<std::size_t>();
    if (j.contains("rule_cap")) rule_cap = j.at("rule_cap").get<std::size_t>();
    if (j.contains("tol")) tol = j.at("tol").get<double>();
    if (j.contains("support_eps")) support_eps = j.at("support_eps").get<double>();
    if (j.contains("threads")) threads = j.at("threads").get<int>();
    if (j.contains("format")) format = j.at("format").get<std::string>();
  }

  static Config from_environment() {
    Config cfg;
    if (const char* path = std::getenv("SYNCGAME_CONFIG")) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error(std::string("SYNCGAME_CONFIG: cannot open ") + path);
      nlohmann::json j;
      in >> j;
      cfg.merge_json(j);
    }
    return cfg;
  }
};

}  // namespace syncgame
