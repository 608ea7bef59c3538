#include "driftkit/chain_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "driftkit/error.hpp"

namespace driftkit {

namespace {

struct Token {
  std::string text;
  std::size_t offset;  // byte offset within the whole input
};

std::vector<Token> split(const std::string& line, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t b = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > b) out.push_back({line.substr(b, i - b), base + b});
  }
  return out;
}

std::string where(std::size_t line_no) { return " on chain line " + std::to_string(line_no); }

double parse_double(const std::string& tok, std::size_t offset, std::size_t line_no) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("bad number '" + tok + "'" + where(line_no), offset);
  return v;
}

}  // namespace

MarkovChain parse_chain(std::istream& in) {
  std::vector<double> labels;
  std::vector<std::vector<Transition>> rows;
  std::vector<char> target;
  std::string line;
  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t base = line_start;
    line_start += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = split(line, base);
    if (toks.empty()) continue;
    labels.push_back(parse_double(toks[0].text, toks[0].offset, line_no));
    if (toks.size() < 2) throw ParseError("missing target flag" + where(line_no), base + line.size());
    const std::string& flag = toks[1].text;
    if (flag == "1" || flag == "T" || flag == "t") {
      target.push_back(1);
    } else if (flag == "0" || flag == "F" || flag == "f") {
      target.push_back(0);
    } else {
      throw ParseError("bad target flag '" + flag + "'" + where(line_no), toks[1].offset);
    }
    std::vector<Transition> row;
    for (std::size_t k = 2; k < toks.size(); ++k) {
      const auto& [tok, off] = toks[k];
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError("expected index:prob, got '" + tok + "'" + where(line_no), off);
      const double idx = parse_double(tok.substr(0, colon), off, line_no);
      if (idx < 0 || idx != static_cast<double>(static_cast<std::uint32_t>(idx))) {
        throw ParseError("bad state index" + where(line_no), off);
      }
      row.push_back({static_cast<std::uint32_t>(idx), parse_double(tok.substr(colon + 1), off + colon + 1, line_no)});
    }
    rows.push_back(std::move(row));
  }
  return MarkovChain(std::move(labels), std::move(rows), std::move(target));
}

MarkovChain parse_chain_text(const std::string& text) {
  std::istringstream in(text);
  return parse_chain(in);
}

MarkovChain read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open chain file " + path);
  return parse_chain(in);
}

void write_chain(std::ostream& out, const MarkovChain& chain) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    os << chain.label(i) << ' ' << (chain.is_target(i) ? 1 : 0);
    for (const auto& t : chain.row(i)) os << ' ' << t.to << ':' << t.prob;
    os << '\n';
  }
  out << os.str();
}

}  // namespace driftkit
