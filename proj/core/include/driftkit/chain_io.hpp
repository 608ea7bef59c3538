#pragma once

#include <iosfwd>
#include <string>

#include "driftkit/markov_chain.hpp"

namespace driftkit {

// Line-oriented chain text: one state per line in index order,
//
//   <label> <target: 0|1|T|F> [<next_index>:<prob>]...
//
// Blank lines and text after '#' are ignored. A target line without
// transitions is absorbing.
MarkovChain parse_chain(std::istream& in);
MarkovChain parse_chain_text(const std::string& text);
MarkovChain read_chain_file(const std::string& path);

void write_chain(std::ostream& out, const MarkovChain& chain);

}  // namespace driftkit
