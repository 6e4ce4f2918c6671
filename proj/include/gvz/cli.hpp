#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "corpus.hpp"

namespace gvz {
namespace detail {

inline std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::map<std::string, std::string> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open config '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = trimmed(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw MalformedFile(path + ":" + std::to_string(no) +
                          ": expected key=value");
    kv[trimmed(t.substr(0, eq))] = trimmed(t.substr(eq + 1));
  }
  return kv;
}

inline int config_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw MalformedFile("config key '" + key + "' needs an integer, got '" +
                        value + "'");
  }
}

inline bool config_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw MalformedFile("config key '" + key + "' needs a boolean, got '" +
                      value + "'");
}

inline Group load_source(const std::string& src, const std::string& family,
                         const std::string& format, const Limits& lim) {
  if (!family.empty() && !src.empty())
    throw MalformedFile("give either a source file or --family, not both");
  if (family.empty() && src.empty())
    throw MalformedFile("no input: give a source file or --family");
  if (!family.empty()) return family_from_spec(family, lim);
  SourceFormat f = format == "table"   ? SourceFormat::table
                   : format == "perms" ? SourceFormat::permutations
                                       : SourceFormat::auto_detect;
  return group_from_file(src, f, lim);
}

inline const char* tf(bool b) { return b ? "true" : "false"; }

inline void print_result_text(std::ostream& out, const GroupResult& r) {
  const Group& g = *r.group;
  out << "group " << g.name() << ": order " << g.order();
  if (r.failed) {
    out << "\n  analysis failed: " << r.error << "\n";
    return;
  }
  const OracleReport& o = r.report;
  out << ", " << o.class_count << " classes";
  if (o.abelian) out << ", abelian";
  out << "\n";
  out << "  GVZ: " << tf(o.is_gvz()) << "\n";
  out << "  verdicts: definition=" << tf(o.verdict_definition)
      << " flat=" << tf(o.verdict_flat) << " thm2=" << tf(o.verdict_thm2)
      << " thm3=" << tf(o.verdict_thm3) << " (agreement: " << tf(o.agreement)
      << ")\n";
  int central = 0;
  out << "  characters: degrees ";
  for (std::size_t i = 0; i < o.characters.size(); ++i) {
    if (i) out << ",";
    out << o.characters[i].degree;
    central += o.characters[i].central_type ? 1 : 0;
  }
  out << "; central type " << central << "/" << o.characters.size() << "\n";
  for (const LemmaCheck& lc : o.lemma_checks) {
    out << "  lemma " << lc.name << ": " << LemmaCheck::status_name(lc.status);
    if (!lc.witness.empty()) out << " (" << lc.witness << ")";
    out << "\n";
  }
}

inline void print_corpus_table(std::ostream& out, const RunReport& rep,
                               bool with_timings) {
  out << std::left << std::setw(26) << "name" << std::right << std::setw(6)
      << "order" << std::setw(8) << "classes" << std::setw(6) << "gvz"
      << std::setw(7) << "agree" << std::setw(8) << "lemmas";
  if (with_timings) out << std::setw(7) << "ms";
  out << "\n";
  for (const GroupResult& r : rep.results) {
    out << std::left << std::setw(26) << r.group->name() << std::right;
    if (r.failed) {
      out << std::setw(6) << r.group->order() << "  analysis failed: " << r.error
          << "\n";
      continue;
    }
    const OracleReport& o = r.report;
    out << std::setw(6) << o.order << std::setw(8) << o.class_count
        << std::setw(6) << tf(o.is_gvz()) << std::setw(7) << tf(o.agreement)
        << std::setw(8) << (o.lemmas_ok() ? "ok" : "FAIL");
    if (with_timings) out << std::setw(7) << r.millis;
    out << "\n";
  }
  out << "summary: " << rep.results.size() << " groups, " << rep.gvz_count
      << " GVZ, " << rep.non_gvz_count << " non-GVZ, "
      << rep.skipped_lemma_count << " skipped lemma checks, "
      << rep.failures.size() << " failures\n";
  for (const std::string& f : rep.failures) out << "failure: " << f << "\n";
}

}  // namespace detail

/// Entry point shared by the binary and the tests.  args excludes the program
/// name.  Exit code: 0 full agreement, 2 any disagreement or lemma failure,
/// 1 input error.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Exact GVZ analysis of finite groups"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value file: max_order, order_cap, parallel, "
                 "exhaustive_assoc; flags override");

  auto* an = app.add_subcommand(
      "analyze", "Analyze one group and report the four GVZ oracle verdicts");
  an->fallthrough();
  std::string an_src, an_family, an_format = "auto";
  bool an_json = false;
  an->add_option("src", an_src,
                 "multiplication-table or permutation-generator file");
  an->add_option("--family", an_family, "family spec, e.g. dihedral:16");
  an->add_option("--format", an_format, "source file format")
      ->check(CLI::IsMember({"auto", "table", "perms"}));
  an->add_flag("--json", an_json, "emit the JSON report on stdout");

  auto* co = app.add_subcommand(
      "corpus", "Analyze a corpus of groups and cross-check every oracle");
  co->fallthrough();
  std::vector<std::string> co_families;
  co->add_option("--families", co_families,
                 "family ids to enumerate instead of the default corpus")
      ->delimiter(',');
  int co_max_order = 216;
  co->add_option("--max-order", co_max_order, "largest group order to keep");
  std::string co_json_path, co_csv_path;
  co->add_option("--json", co_json_path, "write the JSON report to this file");
  co->add_option("--csv", co_csv_path, "write a CSV summary to this file");
  int co_parallel = 1;
  co->add_option("--parallel", co_parallel, "number of analysis threads");
  bool co_no_timings = false;
  co->add_flag("--no-timings", co_no_timings,
               "omit per-group timings for byte-identical reruns");
  std::vector<std::string> co_ingest;
  co->add_option("--ingest", co_ingest, "group files to add to the corpus");
  std::vector<std::pair<std::string, std::string>> co_products;
  co->add_option("--product", co_products,
                 "pair of family specs to combine, e.g. quaternion:8 cyclic:3");

  auto* ta = app.add_subcommand("table",
                                "Print the exact character table of one group");
  ta->fallthrough();
  std::string ta_src, ta_family, ta_format = "auto";
  ta->add_option("src", ta_src,
                 "multiplication-table or permutation-generator file");
  ta->add_option("--family", ta_family, "family spec, e.g. cyclic:3");
  ta->add_option("--format", ta_format, "source file format")
      ->check(CLI::IsMember({"auto", "table", "perms"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Limits lim;
    int max_order = 216;
    int parallel = 1;
    if (!config_path.empty()) {
      for (const auto& [key, value] : detail::parse_config_file(config_path)) {
        if (key == "max_order")
          max_order = detail::config_int(key, value);
        else if (key == "order_cap")
          lim.order_cap = detail::config_int(key, value);
        else if (key == "parallel")
          parallel = detail::config_int(key, value);
        else if (key == "exhaustive_assoc")
          lim.exhaustive_assoc = detail::config_bool(key, value);
        else
          throw MalformedFile("unknown config key '" + key + "'");
      }
    }

    if (app.got_subcommand(an)) {
      Group g = detail::load_source(an_src, an_family, an_format, lim);
      auto sp = std::make_shared<const Group>(std::move(g));
      RunReport rep = run_corpus({sp}, 1);
      if (an_json)
        out << report_to_json_text(rep, false);
      else
        detail::print_result_text(out, rep.results.front());
      return rep.ok() ? 0 : 2;
    }

    if (app.got_subcommand(co)) {
      CorpusSpec spec;
      spec.families = co_families;
      spec.max_order = co->count("--max-order") ? co_max_order : max_order;
      spec.ingest_paths = co_ingest;
      spec.products = co_products;
      if (co->count("--parallel")) parallel = co_parallel;
      if (parallel < 1) parallel = 1;
      auto groups = resolve_corpus(spec, lim);
      if (groups.empty()) {
        err << "error: corpus is empty (max-order " << spec.max_order
            << " excludes every group)\n";
        return 1;
      }
      RunReport rep = run_corpus(groups, parallel);
      detail::print_corpus_table(out, rep, !co_no_timings);
      if (!co_json_path.empty()) {
        std::ofstream f(co_json_path);
        if (!f) throw MalformedFile("cannot write '" + co_json_path + "'");
        f << report_to_json_text(rep, !co_no_timings);
      }
      if (!co_csv_path.empty()) {
        std::ofstream f(co_csv_path);
        if (!f) throw MalformedFile("cannot write '" + co_csv_path + "'");
        f << report_to_csv(rep);
      }
      return rep.ok() ? 0 : 2;
    }

    Group g = detail::load_source(ta_src, ta_family, ta_format, lim);
    out << dump_table(character_table(g));
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gvz
