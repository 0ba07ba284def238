#include "qcforge/codefile.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcforge/error.hpp"

namespace qcforge {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t parse_field(const std::string& tok, const std::string& key, std::size_t line) {
  if (tok.rfind(key + "=", 0) != 0) throw ParseError("expected " + key + "=<int>, got '" + tok + "'", line);
  std::size_t v = 0;
  const char* b = tok.data() + key.size() + 1;
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError("bad integer in '" + tok + "'", line);
  return v;
}

struct Header {
  std::string name;
  std::size_t q = 0, n = 0, k = 0, line = 0;
  std::optional<std::size_t> d;
};

NamedCode finish(const Header& h, const std::vector<std::string>& rows, const std::vector<std::size_t>& lines) {
  if (rows.size() != h.k)
    throw ParseError("code '" + h.name + "' declares k=" + std::to_string(h.k) + " but lists " +
                         std::to_string(rows.size()) + " rows",
                     h.line);
  NamedCode out;
  out.name = h.name;
  out.line = h.line;
  out.claimed_d = h.d;
  if (h.q == 2) {
    std::vector<BitVec> vs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != h.n) throw ParseError("row length differs from n", lines[i]);
      try {
        vs.push_back(BitVec::from_string(rows[i]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lines[i]);
      }
    }
    BinaryCode c = BinaryCode::from_rows(h.n, vs);
    if (c.dimension() != h.k) throw ParseError("rows of code '" + h.name + "' are linearly dependent", h.line);
    out.code = std::move(c);
  } else {
    std::vector<Gf4Vec> vs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != h.n) throw ParseError("row length differs from n", lines[i]);
      try {
        vs.push_back(Gf4Vec::from_string(rows[i]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lines[i]);
      }
    }
    QuaternaryCode c = QuaternaryCode::from_rows(h.n, vs);
    if (c.dimension() != h.k) throw ParseError("rows of code '" + h.name + "' are linearly dependent", h.line);
    out.code = std::move(c);
  }
  return out;
}

}  // namespace

std::vector<NamedCode> parse_codes(std::istream& in) {
  std::vector<NamedCode> codes;
  std::optional<Header> cur;
  std::vector<std::string> rows;
  std::vector<std::size_t> row_lines;
  std::string raw;
  std::size_t lineno = 0;
  auto close = [&] {
    if (cur) codes.push_back(finish(*cur, rows, row_lines));
    cur.reset();
    rows.clear();
    row_lines.clear();
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) {
      // A blank line ends a code; a comment-only line does not.
      if (trim(raw).empty()) close();
      continue;
    }
    if (line.rfind("code ", 0) == 0) {
      close();
      std::istringstream ss(line);
      std::string kw, name, q, n, k, d, extra;
      ss >> kw >> name >> q >> n >> k >> d;
      if (name.empty() || k.empty() || (ss >> extra))
        throw ParseError("header must be 'code <name> q=<2|4> n=<int> k=<int> [d=<int>]'", lineno);
      Header h;
      h.name = name;
      h.q = parse_field(q, "q", lineno);
      h.n = parse_field(n, "n", lineno);
      h.k = parse_field(k, "k", lineno);
      h.line = lineno;
      if (!d.empty()) h.d = parse_field(d, "d", lineno);
      if (h.q != 2 && h.q != 4) throw ParseError("q must be 2 or 4", lineno);
      if (h.k > h.n) throw ParseError("k exceeds n", lineno);
      cur = h;
      continue;
    }
    if (!cur) throw ParseError("generator row outside a code block", lineno);
    rows.push_back(line);
    row_lines.push_back(lineno);
  }
  close();
  return codes;
}

std::vector<NamedCode> read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_codes(in);
}

void write_code(std::ostream& out, const std::string& name, const BinaryCode& c) {
  out << "code " << name << " q=2 n=" << c.length() << " k=" << c.dimension() << '\n';
  for (const BitVec& r : c.rows()) out << r.to_string() << '\n';
  out << '\n';
}

void write_code(std::ostream& out, const std::string& name, const QuaternaryCode& c) {
  out << "code " << name << " q=4 n=" << c.length() << " k=" << c.dimension() << '\n';
  for (const Gf4Vec& r : c.rows()) out << r.to_string() << '\n';
  out << '\n';
}

void write_code(std::ostream& out, const NamedCode& c) {
  std::ostringstream body;
  if (c.is_binary()) write_code(body, c.name, c.binary());
  else write_code(body, c.name, c.quaternary());
  std::string text = body.str();
  if (c.claimed_d) text.insert(text.find('\n'), " d=" + std::to_string(*c.claimed_d));
  out << text;
}

}  // namespace qcforge
