#include "qcforge/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qcforge/error.hpp"

namespace qcforge {

using json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

json to_json(const CatalogMeta& m, const SearchStats& s) {
  json stats = {{"pairs", s.pairs},
                {"pairs_skipped", s.pairs_skipped},
                {"items", s.items},
                {"rejected_distance", s.rejected_distance},
                {"survivors", s.survivors},
                {"duplicates", s.duplicates},
                {"group_overflow", s.group_overflow},
                {"canon_incomplete", s.canon_incomplete},
                {"divisibility_failures", s.divisibility_failures}};
  return {{"kind", "meta"},      {"version", kFormatVersion}, {"ell", m.ell},
          {"length", m.length},  {"d_target", m.d_target},    {"samples", m.samples},
          {"seed", m.seed},      {"scalings", m.scalings},    {"conjugation", m.conjugation},
          {"db", m.db},          {"command", m.command},      {"stats", stats}};
}

json to_json(const CodeRecord& r) {
  json coeffs = json::object();
  for (const auto& [w, a] : r.template_coeffs) coeffs[std::to_string(w)] = a;
  json j = {{"kind", "code"},
            {"n", r.n},
            {"k", r.k},
            {"d", r.d},
            {"wenum", r.wenum},
            {"template_coeffs", coeffs},
            {"template", r.template_label},
            {"param_name", r.param_name},
            {"param", r.param ? json(*r.param) : json(nullptr)},
            {"param_in_range", r.param_in_range},
            {"type", r.type},
            {"hash", r.hash},
            {"code_digest", r.code_digest},
            {"canon_complete", r.canon_complete},
            {"aut_order", r.aut_order},
            {"aut_complete", r.aut_complete},
            {"group", r.group},
            {"c1", r.c1},
            {"c2", r.c2},
            {"c1_index", r.c1_index},
            {"c2_index", r.c2_index},
            {"sample", r.sample},
            {"perm", r.perm},
            {"scaling", r.scaling},
            {"conjugate", r.conjugate},
            {"seed", r.seed}};
  return j;
}

CodeRecord record_from_json(const json& j) {
  CodeRecord r;
  j.at("n").get_to(r.n);
  j.at("k").get_to(r.k);
  j.at("d").get_to(r.d);
  j.at("wenum").get_to(r.wenum);
  for (const auto& [w, a] : j.at("template_coeffs").items()) r.template_coeffs[std::stoul(w)] = a.get<std::uint64_t>();
  j.at("template").get_to(r.template_label);
  j.at("param_name").get_to(r.param_name);
  if (!j.at("param").is_null()) r.param = j.at("param").get<std::int64_t>();
  j.at("param_in_range").get_to(r.param_in_range);
  j.at("type").get_to(r.type);
  j.at("hash").get_to(r.hash);
  j.at("code_digest").get_to(r.code_digest);
  j.at("canon_complete").get_to(r.canon_complete);
  j.at("aut_order").get_to(r.aut_order);
  j.at("aut_complete").get_to(r.aut_complete);
  j.at("group").get_to(r.group);
  j.at("c1").get_to(r.c1);
  j.at("c2").get_to(r.c2);
  j.at("c1_index").get_to(r.c1_index);
  j.at("c2_index").get_to(r.c2_index);
  j.at("sample").get_to(r.sample);
  j.at("perm").get_to(r.perm);
  j.at("scaling").get_to(r.scaling);
  j.at("conjugate").get_to(r.conjugate);
  j.at("seed").get_to(r.seed);
  return r;
}

}  // namespace

void write_catalog(std::ostream& out, const Catalog& cat) {
  out << to_json(cat.meta, cat.stats).dump() << '\n';
  for (const CodeRecord& r : cat.records) out << to_json(r).dump() << '\n';
}

void write_catalog(const std::filesystem::path& path, const Catalog& cat) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write catalog '" + path.string() + "'");
  write_catalog(out, cat);
}

Catalog read_catalog(std::istream& in) {
  Catalog cat;
  std::string line;
  std::size_t lineno = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "meta") {
        if (j.at("version").get<int>() != kFormatVersion) throw ParseError("unsupported catalog version", lineno);
        CatalogMeta& m = cat.meta;
        j.at("ell").get_to(m.ell);
        j.at("length").get_to(m.length);
        j.at("d_target").get_to(m.d_target);
        j.at("samples").get_to(m.samples);
        j.at("seed").get_to(m.seed);
        j.at("scalings").get_to(m.scalings);
        j.at("conjugation").get_to(m.conjugation);
        j.at("db").get_to(m.db);
        j.at("command").get_to(m.command);
        const json& s = j.at("stats");
        SearchStats& st = cat.stats;
        s.at("pairs").get_to(st.pairs);
        s.at("pairs_skipped").get_to(st.pairs_skipped);
        s.at("items").get_to(st.items);
        s.at("rejected_distance").get_to(st.rejected_distance);
        s.at("survivors").get_to(st.survivors);
        s.at("duplicates").get_to(st.duplicates);
        s.at("group_overflow").get_to(st.group_overflow);
        s.at("canon_incomplete").get_to(st.canon_incomplete);
        s.at("divisibility_failures").get_to(st.divisibility_failures);
        have_meta = true;
      } else if (kind == "code") {
        cat.records.push_back(record_from_json(j));
      } else {
        throw ParseError("unknown record kind '" + kind + "'", lineno);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("malformed catalog line: ") + e.what(), lineno);
    }
  }
  if (!have_meta && !cat.records.empty()) throw ParseError("catalog has no metadata line", 1);
  return cat;
}

Catalog read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog '" + path.string() + "'");
  return read_catalog(in);
}

// ----------------------------------------------------------------- report

namespace {

struct Reference {
  std::size_t length;
  std::string label;
  std::string quantity;  // "beta", "alpha", or "aut"
  std::int64_t lo, hi;
  std::int64_t step;  // spacing of admissible values for the gap listing
  std::vector<std::int64_t> known;
  std::vector<std::int64_t> reported;
};

std::vector<std::int64_t> range(std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = a; x <= b; ++x) v.push_back(x);
  return v;
}

const std::vector<Reference>& references() {
  static const std::vector<Reference> refs = [] {
    std::vector<std::int64_t> found66 = {6};
    for (std::int64_t a : range(8, 54)) found66.push_back(a);
    for (std::int64_t a : {56, 57, 59, 60, 62, 65, 68, 69, 71}) found66.push_back(a);
    return std::vector<Reference>{
        {54, "W1", "beta", 0, 43, 3, {0, 3, 6, 9, 12, 15, 18}, {0, 3, 6, 9, 12, 15, 18, 21}},
        {54, "W2", "beta", 12, 43, 3, {12, 15, 18, 21, 24, 27}, {12, 15, 18, 21, 24, 27}},
        {60, "W3", "aut", 0, 0, 0, {3, 6, 12}, {3, 6, 9, 12, 18, 24, 30, 48, 60}},
        {66, "W1", "alpha", 0, 778, 1, {17, 21, 23, 26, 30, 43, 46}, found66},
    };
  }();
  return refs;
}

std::string join(const std::set<std::int64_t>& v) {
  if (v.empty()) return "-";
  std::ostringstream out;
  bool first = true;
  for (std::int64_t x : v) {
    out << (first ? "" : ",") << x;
    first = false;
  }
  return out.str();
}

std::string join(const std::vector<std::int64_t>& v) { return join(std::set<std::int64_t>(v.begin(), v.end())); }

}  // namespace

std::string catalog_report(const Catalog& cat, std::size_t length) {
  std::ostringstream out;
  std::vector<const CodeRecord*> recs;
  for (const CodeRecord& r : cat.records)
    if (r.n == length) recs.push_back(&r);
  std::set<std::string> groups;
  std::size_t certified = 0;
  for (const CodeRecord* r : recs) {
    if (r->canon_complete) ++certified;
    else groups.insert(r->group);
  }
  out << "length " << length << ": " << recs.size() << " records (" << certified
      << " with complete canonical form, " << groups.size() << " possibly-equivalent groups)\n";
  if (cat.stats.items > 0)
    out << "samples: " << cat.stats.items << " work items, " << cat.stats.survivors << " reached d >= "
        << cat.meta.d_target << "\n";

  bool any = false;
  for (const Reference& ref : references()) {
    if (ref.length != length) continue;
    any = true;
    std::set<std::int64_t> found, out_of_range;
    for (const CodeRecord* r : recs) {
      if (r->template_label != ref.label) continue;
      if (ref.quantity == "aut") {
        if (r->aut_complete) found.insert(std::stoll(r->aut_order));
      } else if (r->param) {
        (r->param_in_range ? found : out_of_range).insert(*r->param);
      }
    }
    std::set<std::int64_t> fresh;
    for (std::int64_t v : found)
      if (std::find(ref.known.begin(), ref.known.end(), v) == ref.known.end()) fresh.insert(v);
    std::set<std::int64_t> missing;
    for (std::int64_t v : ref.reported)
      if (!found.count(v)) missing.insert(v);

    out << "\n" << ref.label << " ";
    if (ref.quantity == "aut") out << "(automorphism group sizes)\n";
    else out << "(" << ref.quantity << " in " << ref.lo << ".." << ref.hi << ")\n";
    out << "  previously known : " << join(ref.known) << "\n";
    out << "  reported found   : " << join(ref.reported) << "\n";
    out << "  catalog found    : " << join(found) << "\n";
    out << "  new vs known     : " << join(fresh) << "\n";
    out << "  reported, absent : " << join(missing) << "\n";
    if (!out_of_range.empty()) out << "  OUT OF RANGE     : " << join(out_of_range) << "\n";
    if (ref.quantity != "aut" && ref.step > 1) {
      std::set<std::int64_t> gaps;
      for (std::int64_t v = ref.lo; v <= ref.hi; ++v)
        if (v % ref.step == 0 && !found.count(v)) gaps.insert(v);
      out << "  admissible gaps  : " << join(gaps) << "\n";
    }
    if (fresh.empty() && cat.stats.items > 0)
      out << "  note: no new values found in " << cat.stats.items << " samples\n";
  }
  if (!any) out << "\nno published reference values for this length\n";

  std::set<std::string> other;
  for (const CodeRecord* r : recs)
    if (!r->template_label.empty() &&
        std::none_of(references().begin(), references().end(),
                     [&](const Reference& ref) { return ref.length == length && ref.label == r->template_label; }))
      other.insert(r->template_label);
  for (const std::string& label : other) out << "records matching " << label << " (no reference list)\n";
  return out.str();
}

}  // namespace qcforge
