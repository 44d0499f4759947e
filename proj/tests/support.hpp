#pragma once

#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "horpo/problem.hpp"

namespace horpo::testing {

inline std::string corpus(const std::string& name) { return std::string(HORPO_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Problem load(const std::string& name) { return parse_problem(read_file(corpus(name))); }

inline Type ty(const char* sort) { return Type::data(sort); }
inline Type arr(Type a, Type b) { return Type::arrow(std::move(a), std::move(b)); }

inline const char* const kCorpusFiles[] = {
    "beta_eta.horpo", "brouwer.horpo", "brouwer_stripped.horpo", "cyclic_sorts.horpo",
    "empty.horpo",    "map.horpo",     "map_fusion.horpo",       "nat_rec.horpo",
    "not_oriented.horpo", "recursor_growth.horpo"};

}  // namespace horpo::testing
