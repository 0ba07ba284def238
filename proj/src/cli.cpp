#include "qcforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "qcforge/catalog.hpp"
#include "qcforge/codefile.hpp"
#include "qcforge/equiv.hpp"
#include "qcforge/error.hpp"
#include "qcforge/gf.hpp"
#include "qcforge/qc.hpp"
#include "qcforge/search.hpp"
#include "qcforge/templates.hpp"

namespace qcforge::cli {
namespace {

struct Common {
  unsigned threads = 0;
};

std::vector<NamedCode> load(const std::string& path, const std::string& name) {
  std::vector<NamedCode> codes = read_code_file(path);
  if (!name.empty()) {
    std::erase_if(codes, [&](const NamedCode& c) { return c.name != name; });
    if (codes.empty()) throw ValidationError("no code named '" + name + "' in '" + path + "'");
  }
  if (codes.empty()) throw ValidationError("'" + path + "' contains no codes");
  return codes;
}

template <class Code>
const Code& pick(const std::vector<NamedCode>& codes, const std::string& path, const char* what) {
  for (const NamedCode& c : codes)
    if (std::holds_alternative<Code>(c.code)) return std::get<Code>(c.code);
  throw ValidationError(std::string("'") + path + "' contains no " + what + " code");
}

const BinaryCode& only_binary(const NamedCode& c) {
  if (!c.is_binary()) throw ValidationError("code '" + c.name + "' is quaternary; this command needs a binary code");
  return c.binary();
}

// Output sink: a file when a path is given, otherwise `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ValidationError("cannot write '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string factor_product(const Factorization& f) {
  std::string s;
  for (const PolyF2& p : f.all_factors()) s += "(" + p.to_human() + ")";
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

EnumOptions enum_options(const Common& common) {
  EnumOptions eo;
  eo.threads = common.threads;
  return eo;
}

// ------------------------------------------------------------- commands

int cmd_factor(int m, std::ostream& out) {
  const Factorization f = factor_cyclotomic(m);
  out << "Y^" << m << "-1 = " << factor_product(f) << "\n";
  out << "s=" << f.s() << ", t=" << f.t() << "\n";
  for (const PolyF2& g : f.self_reciprocal)
    out << "  self-reciprocal  " << std::setw(12) << std::left << g.to_string() << "  " << g.to_human() << "\n";
  for (const auto& [h, hs] : f.pairs)
    out << "  reciprocal pair  " << std::setw(12) << std::left << h.to_string() << "  " << h.to_human() << "  |  "
        << hs.to_string() << "  " << hs.to_human() << "\n";
  return kExitOk;
}

int cmd_construct(const std::string& c1_path, const std::string& c1_name, const std::string& c2_path,
                  const std::string& c2_name, const std::string& name, const std::string& out_path,
                  std::ostream& out) {
  const auto a = load(c1_path, c1_name);
  const auto b = load(c2_path, c2_name);
  const CubicComponents parts{pick<BinaryCode>(a, c1_path, "binary"), pick<QuaternaryCode>(b, c2_path, "quaternary")};
  const BinaryCode code = construct_cubic(parts);
  Sink sink(out_path, out);
  write_code(sink.get(), name, code);
  return kExitOk;
}

int cmd_decompose(const std::string& path, const std::string& name, int crt_m, const std::string& out_path,
                  std::ostream& out) {
  const auto codes = load(path, name);
  Sink sink(out_path, out);
  for (const NamedCode& nc : codes) {
    const BinaryCode& c = only_binary(nc);
    if (crt_m > 0) {
      if (c.length() % std::size_t(crt_m) != 0)
        throw PreconditionError("length " + std::to_string(c.length()) + " is not a multiple of m");
      const QcShape shape{c.length() / std::size_t(crt_m), crt_m};
      const CrtComponents parts = crt_decompose(c, shape);
      std::ostream& o = sink.get();
      o << "# " << nc.name << ": ell=" << shape.ell << " m=" << crt_m << "\n";
      auto show = [&](const ComponentCode& comp, const std::string& tag) {
        o << "# component " << tag << " over F2[Y]/(" << comp.modulus.to_human() << "): dimension "
          << comp.field_dimension() << "\n";
        write_code(o, nc.name + "_" + tag, comp.image);
      };
      std::size_t idx = 0;
      for (const ComponentCode& comp : parts.self_reciprocal) show(comp, "g" + std::to_string(++idx));
      idx = 0;
      for (const auto& [p, q] : parts.pairs) {
        ++idx;
        show(p, "h" + std::to_string(idx));
        show(q, "h" + std::to_string(idx) + "star");
      }
      o << "# components self-dual: " << yes_no(verify_decomposition_selfdual(parts)) << "\n";
    } else {
      const CubicComponents parts = decompose_cubic(c);
      write_code(sink.get(), nc.name + "_c1", parts.c1);
      write_code(sink.get(), nc.name + "_c2", parts.c2);
    }
  }
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& name, std::size_t ell, const Common& common,
              std::ostream& out) {
  bool all_ok = true;
  const EnumOptions eo = enum_options(common);
  for (const NamedCode& nc : load(path, name)) {
    out << nc.name << ": ";
    if (!nc.is_binary()) {
      const QuaternaryCode& c = nc.quaternary();
      const bool sd = is_self_dual(c, InnerProduct::Hermitian);
      all_ok &= sd;
      out << "q=4 n=" << c.length() << " k=" << c.dimension() << " hermitian-self-dual=" << yes_no(sd);
      if (c.dimension() > 0) out << " d=" << min_distance(c, std::nullopt, eo).weight;
      out << "\n";
      continue;
    }
    const BinaryCode& c = nc.binary();
    const bool sd = is_self_dual(c);
    all_ok &= sd;
    out << "q=2 n=" << c.length() << " k=" << c.dimension() << " self-dual=" << yes_no(sd);
    if (c.dimension() == 0) {
      out << "\n";
      continue;
    }
    const WeightEnumerator w = weight_enumerator(c, std::nullopt, eo);
    out << " d=" << w.min_distance().value_or(0) << " type=" << to_string(classify_type(w, sd)) << "\n";
    if (ell == 0) continue;
    if (c.length() % ell != 0 || (c.length() / ell) % 2 == 0) {
      out << "  quasi-cyclic index " << ell << ": length is not ell times an odd m\n";
      all_ok = false;
      continue;
    }
    const QcShape shape{ell, int(c.length() / ell)};
    const bool qc = check_quasi_cyclic(c, shape);
    all_ok &= qc;
    out << "  quasi-cyclic index " << ell << " (m=" << shape.m << "): " << yes_no(qc) << "\n";
    if (!qc) continue;
    if (sd && is_prime(unsigned(shape.m))) {
      const auto bad = check_divisibility(w, unsigned(shape.m));
      out << "  divisibility by " << shape.m << ": " << (bad.empty() ? "pass" : "FAIL") << "\n";
      all_ok &= bad.empty();
    }
    if (shape.m == 3) {
      const CubicComponents parts = decompose_cubic(c);
      const bool csd = cubic_selfdual_check(parts);
      out << "  cubic components: C1 [" << parts.c1.length() << "," << parts.c1.dimension() << "] C2 ["
          << parts.c2.length() << "," << parts.c2.dimension() << "] both self-dual=" << yes_no(csd) << "\n";
      if (parts.c1.dimension() > 0 && parts.c2.dimension() > 0) {
        const std::size_t bound = distance_bound(parts, eo);
        out << "  distance bound min(3 d1, 2 d2) = " << bound << "\n";
        all_ok &= w.min_distance().value_or(0) <= bound;
      }
    }
  }
  return all_ok ? kExitOk : kExitValidation;
}

int cmd_wenum(const std::string& path, const std::string& name, std::optional<std::size_t> cap, bool templates,
              unsigned divisibility, const Common& common, std::ostream& out) {
  const auto codes = load(path, name);
  const EnumOptions eo = enum_options(common);
  for (const NamedCode& nc : codes) {
    const WeightEnumerator w = nc.is_binary() ? weight_enumerator(nc.binary(), cap, eo)
                                              : weight_enumerator(nc.quaternary(), cap, eo);
    if (codes.size() > 1) out << nc.name << ": ";
    out << w.to_string() << "\n";
    if (templates) {
      const auto tpls = templates_for_length(w.length());
      if (tpls.empty()) {
        out << "  no templates for length " << w.length() << "\n";
      } else {
        const TemplateMatch m = extract_parameter(w, tpls);
        if (m.status == TemplateMatch::Status::NoMatch) out << "  template: none\n";
        else if (m.status == TemplateMatch::Status::Ambiguous) out << "  template: ambiguous\n";
        else {
          out << "  template: " << m.label;
          if (m.param) out << " " << m.param_name << "=" << *m.param << (m.in_range ? "" : " (out of range)");
          out << "\n";
        }
      }
    }
    if (divisibility) {
      const auto bad = check_divisibility(w, divisibility);
      out << "  divisibility by " << divisibility << ": " << (bad.empty() ? "pass" : "FAIL");
      for (const auto& [i, a] : bad) out << " A_" << i << "=" << a;
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_mindist(const std::string& path, const std::string& name, std::optional<std::size_t> early_stop,
                const Common& common, std::ostream& out) {
  const auto codes = load(path, name);
  const EnumOptions eo = enum_options(common);
  for (const NamedCode& nc : codes) {
    const DistanceResult r = nc.is_binary() ? min_distance(nc.binary(), early_stop, eo)
                                            : min_distance(nc.quaternary(), early_stop, eo);
    if (codes.size() > 1) out << nc.name << ": ";
    if (r.bound_only) out << "d <= " << r.weight << " (early stop)\n";
    else out << "d = " << r.weight << "\n";
  }
  return kExitOk;
}

int cmd_canon(const std::string& path, const std::string& name, std::uint64_t budget, const std::string& out_path,
              std::ostream& out) {
  CanonOptions opts;
  opts.node_budget = budget;
  bool complete = true;
  std::vector<std::pair<std::string, BinaryCode>> forms;
  for (const NamedCode& nc : load(path, name)) {
    const CanonResult r = canonical_search(only_binary(nc), opts);
    out << nc.name << ": hash=" << r.form.hash.hex() << " complete=" << yes_no(r.form.complete)
        << " aut=" << r.aut.order.str() << (r.aut.complete ? "" : " (incomplete)") << " nodes=" << r.nodes
        << "\n";
    complete &= r.form.complete;
    forms.emplace_back(nc.name + "_canon", r.form.code);
  }
  if (!out_path.empty()) {
    Sink sink(out_path, out);
    for (const auto& [n, c] : forms) write_code(sink.get(), n, c);
  }
  return complete ? kExitOk : kExitBudget;
}

int cmd_classify(std::size_t ell, std::uint64_t budget, const Common& common, std::ostream& out) {
  ClassifyOptions opts;
  opts.canon.node_budget = budget;
  opts.threads = common.threads;
  const Census census = classify_cubic(ell, opts);
  out << "ell=" << ell << " length=" << 3 * ell << "\n";
  out << "binary self-dual codes: " << census.binary_codes << " (" << census.binary_reps
      << " up to permutation)\n";
  out << "quaternary self-dual codes: " << census.quaternary_codes << "\n";
  out << "pairs constructed: " << census.pairs << "\n";
  out << "classes: " << census.classes.size() << (census.complete ? "" : " (incomplete: upper bound)") << "\n";
  std::size_t idx = 0;
  for (const CensusClass& cls : census.classes)
    out << "  #" << ++idx << " d=" << cls.d << " aut=" << cls.aut_order.str() << " pairs=" << cls.members
        << " hash=" << cls.hash.hex() << " wenum=" << cls.wenum.to_string() << "\n";
  return census.complete ? kExitOk : kExitBudget;
}

int cmd_search(const std::string& db_path, SearchConfig cfg, const std::string& out_path, std::ostream& out) {
  const ComponentDb db = load_component_db(db_path);
  const Catalog cat = run_search(db, cfg);
  if (!out_path.empty()) write_catalog(std::filesystem::path(out_path), cat);
  const SearchStats& s = cat.stats;
  out << "pairs: " << s.pairs << " (skipped by distance bound: " << s.pairs_skipped << ")\n";
  out << "work items: " << s.items << ", rejected by distance: " << s.rejected_distance
      << ", survivors: " << s.survivors << "\n";
  out << "records: " << cat.records.size() << " (duplicates: " << s.duplicates
      << ", incomplete canonical forms: " << s.canon_incomplete << ", group overflow: " << s.group_overflow
      << ")\n";
  if (s.divisibility_failures) out << "WARNING: " << s.divisibility_failures << " divisibility failures\n";
  for (const CodeRecord& r : cat.records) {
    out << "  " << r.c1 << " x " << r.c2 << " sample " << r.sample << ": d=" << r.d;
    if (!r.template_label.empty()) {
      out << " " << r.template_label;
      if (r.param) out << " " << r.param_name << "=" << *r.param;
    }
    out << " aut=" << r.aut_order << (r.aut_complete ? "" : "?") << " hash=" << r.hash << "\n";
  }
  return kExitOk;
}

int cmd_report(const std::string& path, std::size_t length, std::ostream& out) {
  const Catalog cat = read_catalog(std::filesystem::path(path));
  out << catalog_report(cat, length ? length : cat.meta.length);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcforge: binary quasi-cyclic self-dual codes and the cubic construction", "qcforge"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (overrides QCFORGE_THREADS)");

  int m = 0;
  auto* factor = app.add_subcommand("factor", "Factor Y^m - 1 over GF(2)");
  factor->add_option("--m", m, "Odd modulus m")->required();

  std::string c1_path, c1_name, c2_path, c2_name, name = "cubic", out_path;
  auto* construct = app.add_subcommand("construct", "Build the cubic code from a binary and a quaternary component");
  construct->add_option("--c1", c1_path, "File holding the binary component")->required();
  construct->add_option("--c1-name", c1_name, "Name of the binary component (default: first binary code)");
  construct->add_option("--c2", c2_path, "File holding the quaternary component")->required();
  construct->add_option("--c2-name", c2_name, "Name of the quaternary component (default: first quaternary code)");
  construct->add_option("--name", name, "Name of the output code");
  construct->add_option("--out", out_path, "Output file (default: standard output)");

  std::string in_path, code_name;
  int crt_m = 0;
  auto* decompose = app.add_subcommand("decompose", "Split a cubic code into C1 and C2, or any QC code by CRT");
  decompose->add_option("--in", in_path, "Code file")->required();
  decompose->add_option("--name", code_name, "Only this code");
  decompose->add_option("--crt", crt_m, "Decompose over the factors of Y^m - 1 instead (odd m)");
  decompose->add_option("--out", out_path, "Output file (default: standard output)");

  std::size_t ell = 0;
  auto* check = app.add_subcommand("check", "Self-duality, distance, type, quasi-cyclicity and cubic structure");
  check->add_option("--in", in_path, "Code file")->required();
  check->add_option("--name", code_name, "Only this code");
  check->add_option("--ell", ell, "Also check quasi-cyclicity of this index");

  std::optional<std::size_t> cap;
  bool templates = false;
  unsigned divisibility = 0;
  auto* wenum = app.add_subcommand("wenum", "Weight enumerator");
  wenum->add_option("--in", in_path, "Code file")->required();
  wenum->add_option("--name", code_name, "Only this code");
  wenum->add_option("--cap", cap, "Only count weights up to this value");
  wenum->add_flag("--templates", templates, "Match the published enumerator templates");
  wenum->add_option("--divisibility", divisibility, "Check A_i divisibility by this prime");

  std::optional<std::size_t> early_stop;
  auto* mindist = app.add_subcommand("mindist", "Minimum distance");
  mindist->add_option("--in", in_path, "Code file")->required();
  mindist->add_option("--name", code_name, "Only this code");
  mindist->add_option("--early-stop", early_stop, "Stop at the first word of at most this weight");

  std::uint64_t budget = CanonOptions{}.node_budget;
  auto* canon = app.add_subcommand("canon", "Canonical form and automorphism group order");
  canon->add_option("--in", in_path, "Code file")->required();
  canon->add_option("--name", code_name, "Only this code");
  canon->add_option("--budget", budget, "Backtrack node limit");
  canon->add_option("--out", out_path, "Write canonical generator matrices here");

  auto* classify = app.add_subcommand("classify-small", "Classify cubic self-dual codes of length 3 ell");
  classify->add_option("--ell", ell, "Component length (even)")->required();
  classify->add_option("--budget", budget, "Backtrack node limit per code");

  std::string db_path;
  SearchConfig cfg;
  auto* search = app.add_subcommand("search", "Sample cubic codes from a component database");
  search->add_option("--db", db_path, "Component database (code file)")->required();
  search->add_option("--ell", cfg.ell, "Component length")->required();
  search->add_option("--d", cfg.d_target, "Target minimum distance")->required();
  search->add_option("--samples", cfg.samples, "Transforms per component pair");
  search->add_option("--seed", cfg.seed, "RNG seed");
  search->add_flag("--scalings", cfg.scalings, "Sample per-coordinate unit scalings of C2");
  search->add_flag("--conjugation", cfg.conjugation, "Sample global conjugation of C2");
  search->add_option("--budget", cfg.canon.node_budget, "Backtrack node limit per canonicalization");
  search->add_option("--max-group", cfg.max_group_records, "Records kept per possibly-equivalent group");
  search->add_option("--out", out_path, "Catalog file (JSON lines)");

  std::string catalog_path;
  std::size_t length = 0;
  auto* report = app.add_subcommand("report", "Parameter coverage of a catalog");
  report->add_option("--catalog", catalog_path, "Catalog file")->required();
  report->add_option("--length", length, "Code length (default: from the catalog)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*factor) return cmd_factor(m, out);
    if (*construct) return cmd_construct(c1_path, c1_name, c2_path, c2_name, name, out_path, out);
    if (*decompose) return cmd_decompose(in_path, code_name, crt_m, out_path, out);
    if (*check) return cmd_check(in_path, code_name, ell, common, out);
    if (*wenum) return cmd_wenum(in_path, code_name, cap, templates, divisibility, common, out);
    if (*mindist) return cmd_mindist(in_path, code_name, early_stop, common, out);
    if (*canon) return cmd_canon(in_path, code_name, budget, out_path, out);
    if (*classify) return cmd_classify(ell, budget, common, out);
    if (*search) {
      cfg.threads = common.threads;
      std::ostringstream cmdline;
      cmdline << "qcforge";
      for (const std::string& a : args) cmdline << ' ' << a;
      cfg.command = cmdline.str();
      return cmd_search(db_path, cfg, out_path, out);
    }
    if (*report) return cmd_report(catalog_path, length, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace qcforge::cli
