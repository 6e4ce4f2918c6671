#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "families.hpp"
#include "io.hpp"

namespace gvz {

/// Selection of groups to analyze.  When families, ingest_paths and products
/// are all empty, the pinned default corpus is used; otherwise each requested
/// family is enumerated up to max_order, files are ingested and products are
/// formed, in that order.
struct CorpusSpec {
  std::vector<std::string> families;
  int max_order = 216;
  std::vector<std::string> ingest_paths;
  std::vector<std::pair<std::string, std::string>> products;
};

struct GroupResult {
  std::shared_ptr<const Group> group;
  OracleReport report;
  bool failed = false;
  std::string error;
  long long millis = 0;
};

struct RunReport {
  std::vector<GroupResult> results;
  int gvz_count = 0;
  int non_gvz_count = 0;
  int skipped_lemma_count = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

/// Invariant-factor chains d1 | d2 | ... | dk with k >= 2, d1 >= 2 and
/// product <= cap; one chain per isomorphism class of non-cyclic abelian
/// groups of order <= cap.
inline void extend_chains(std::vector<int>& chain, long long product,
                          long long cap, std::vector<std::vector<int>>& out) {
  if (chain.size() >= 2) out.push_back(chain);
  const int last = chain.back();
  for (long long d = last; product * d <= cap; d += last) {
    chain.push_back(static_cast<int>(d));
    extend_chains(chain, product * d, cap, out);
    chain.pop_back();
  }
}

inline std::vector<std::vector<int>> abelian_invariant_tuples(int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> chain;
  for (int d1 = 2; static_cast<long long>(d1) * d1 <= cap; ++d1) {
    chain.assign(1, d1);
    extend_chains(chain, d1, cap, out);
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              long long pa = 1, pb = 1;
              for (int d : a) pa *= d;
              for (int d : b) pb *= d;
              if (pa != pb) return pa < pb;
              return a < b;
            });
  return out;
}

}  // namespace detail

/// All members of one built-in family with order <= max_order.
inline std::vector<std::shared_ptr<const Group>> enumerate_family(
    const std::string& id, int max_order, const Limits& lim = {}) {
  std::vector<std::shared_ptr<const Group>> out;
  auto add = [&](Group g) {
    out.push_back(std::make_shared<const Group>(std::move(g)));
  };
  if (id == "cyclic") {
    for (int n = 2; n <= max_order; ++n) add(cyclic_group(n, lim));
  } else if (id == "abelian") {
    for (const auto& t : detail::abelian_invariant_tuples(max_order))
      add(abelian_group(t, lim));
  } else if (id == "dihedral") {
    for (int n = 6; n <= max_order; n += 2) add(dihedral_group(n, lim));
  } else if (id == "generalized_quaternion" || id == "quaternion") {
    for (int n = 8; n <= max_order; n += 4)
      add(generalized_quaternion_group(n, lim));
  } else if (id == "semidihedral") {
    for (int n = 16; n <= max_order; n *= 2) add(semidihedral_group(n, lim));
  } else if (id == "extraspecial") {
    for (int p = 2; static_cast<long long>(p) * p * p <= max_order; ++p) {
      if (!detail::is_prime_int(p)) continue;
      for (int w = 1;; ++w) {
        long long n = 1;
        for (int i = 0; i < 2 * w + 1; ++i) n *= p;
        if (n > max_order) break;
        add(extraspecial_group(p, true, w, lim));
        add(extraspecial_group(p, false, w, lim));
      }
    }
  } else if (id == "symmetric") {
    int fact = 2;
    for (int n = 3; n <= 5; ++n) {
      fact *= n;
      if (fact <= max_order) add(symmetric_group(n, lim));
    }
  } else if (id == "alternating") {
    for (int n : {4, 5}) {
      int half = n == 4 ? 12 : 60;
      if (half <= max_order) add(alternating_group(n, lim));
    }
  } else if (id == "heisenberg" || id == "heisenberg_mod") {
    for (int p = 3; static_cast<long long>(p) * p * p <= max_order; ++p)
      if (detail::is_prime_int(p)) add(heisenberg_group(p, 1, lim));
  } else {
    throw UnknownFamily("unknown corpus family '" + id + "'");
  }
  return out;
}

/// The pinned default corpus: cyclic 2-32, non-cyclic abelian up to order 64,
/// dihedral 6-64, generalized quaternion 8-64, semidihedral 16-64,
/// extraspecial of orders 8, 27, 32, 125, symmetric and alternating up to
/// degree 5, Heisenberg p in {3, 5}, and four direct products.  Groups above
/// max_order are dropped.
inline std::vector<std::shared_ptr<const Group>> default_corpus(
    int max_order = 216, const Limits& lim = {}) {
  std::vector<std::shared_ptr<const Group>> all;
  auto add = [&](Group g) {
    if (g.order() <= max_order)
      all.push_back(std::make_shared<const Group>(std::move(g)));
  };
  for (int n = 2; n <= 32; ++n) add(cyclic_group(n, lim));
  for (const auto& t : detail::abelian_invariant_tuples(64))
    add(abelian_group(t, lim));
  for (int n = 6; n <= 64; n += 2) add(dihedral_group(n, lim));
  for (int n = 8; n <= 64; n += 4) add(generalized_quaternion_group(n, lim));
  for (int n = 16; n <= 64; n *= 2) add(semidihedral_group(n, lim));
  add(extraspecial_group(2, true, 1, lim));
  add(extraspecial_group(2, false, 1, lim));
  add(extraspecial_group(3, true, 1, lim));
  add(extraspecial_group(3, false, 1, lim));
  add(extraspecial_group(2, true, 2, lim));
  add(extraspecial_group(2, false, 2, lim));
  add(extraspecial_group(5, true, 1, lim));
  add(extraspecial_group(5, false, 1, lim));
  for (int n = 3; n <= 5; ++n) add(symmetric_group(n, lim));
  for (int n = 4; n <= 5; ++n) add(alternating_group(n, lim));
  add(heisenberg_group(3, 1, lim));
  add(heisenberg_group(5, 1, lim));
  add(direct_product(generalized_quaternion_group(8, lim), cyclic_group(3, lim),
                     lim));
  add(direct_product(dihedral_group(8, lim), dihedral_group(8, lim), lim));
  add(direct_product(generalized_quaternion_group(8, lim),
                     heisenberg_group(3, 1, lim), lim));
  add(direct_product(dihedral_group(16, lim), cyclic_group(3, lim), lim));
  return all;
}

inline std::vector<std::shared_ptr<const Group>> resolve_corpus(
    const CorpusSpec& spec, const Limits& lim = {}) {
  std::vector<std::shared_ptr<const Group>> all;
  if (spec.families.empty() && spec.ingest_paths.empty() &&
      spec.products.empty())
    all = default_corpus(spec.max_order, lim);
  for (const auto& id : spec.families) {
    auto part = enumerate_family(id, spec.max_order, lim);
    all.insert(all.end(), part.begin(), part.end());
  }
  for (const auto& path : spec.ingest_paths) {
    Group g = group_from_file(path, SourceFormat::auto_detect, lim);
    if (g.order() <= spec.max_order)
      all.push_back(std::make_shared<const Group>(std::move(g)));
  }
  for (const auto& pr : spec.products) {
    Group g = direct_product(family_from_spec(pr.first, lim),
                             family_from_spec(pr.second, lim), lim);
    if (g.order() <= spec.max_order)
      all.push_back(std::make_shared<const Group>(std::move(g)));
  }
  return all;
}

/// Analyzes every group, optionally across threads.  Result order follows the
/// input order regardless of completion order; per-group failures are
/// recorded and the run continues.
inline RunReport run_corpus(
    const std::vector<std::shared_ptr<const Group>>& groups, int parallel = 1) {
  RunReport rep;
  rep.results.resize(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= groups.size()) return;
      GroupResult& r = rep.results[i];
      r.group = groups[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.report = analyze(*groups[i]);
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
      }
      r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    }
  };
  if (parallel <= 1 || groups.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int k = std::min<int>(parallel, static_cast<int>(groups.size()));
    pool.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const GroupResult& r : rep.results) {
    const std::string name = r.group ? r.group->name() : "?";
    if (r.failed) {
      rep.failures.push_back(name + ": " + r.error);
      continue;
    }
    if (r.report.is_gvz())
      ++rep.gvz_count;
    else
      ++rep.non_gvz_count;
    if (!r.report.agreement)
      rep.failures.push_back(name + ": oracle verdicts disagree");
    for (const LemmaCheck& lc : r.report.lemma_checks) {
      if (lc.status == LemmaCheck::Status::fail)
        rep.failures.push_back(name + ": " + lc.name + " failed: " +
                               lc.witness);
      else if (lc.status == LemmaCheck::Status::skipped)
        ++rep.skipped_lemma_count;
    }
  }
  return rep;
}

/// JSON report in the documented schema.  Timings are an opt-in field so that
/// two runs over the same spec compare byte-identical without them.
inline nlohmann::ordered_json report_to_json(const RunReport& rep,
                                             bool with_timings = true) {
  nlohmann::ordered_json root;
  root["schema_version"] = 1;
  auto groups = nlohmann::ordered_json::array();
  for (const GroupResult& r : rep.results) {
    nlohmann::ordered_json j;
    j["name"] = r.group->name();
    j["order"] = r.group->order();
    if (r.failed) {
      j["error"] = r.error;
      groups.push_back(std::move(j));
      continue;
    }
    j["verdicts"] = {{"definition", r.report.verdict_definition},
                     {"flat", r.report.verdict_flat},
                     {"thm2", r.report.verdict_thm2},
                     {"thm3", r.report.verdict_thm3}};
    j["agreement"] = r.report.agreement;
    auto chars = nlohmann::ordered_json::array();
    for (const CharacterAnalysis& a : r.report.characters) {
      chars.push_back({{"degree", a.degree},
                       {"kernel_order", a.kernel.order()},
                       {"center_order", a.center.order()},
                       {"monolithic", a.monolithic},
                       {"central_type", a.central_type}});
    }
    j["characters"] = std::move(chars);
    auto lemmas = nlohmann::ordered_json::array();
    for (const LemmaCheck& lc : r.report.lemma_checks) {
      nlohmann::ordered_json lj;
      lj["name"] = lc.name;
      lj["status"] = LemmaCheck::status_name(lc.status);
      if (!lc.witness.empty()) lj["witness"] = lc.witness;
      lemmas.push_back(std::move(lj));
    }
    j["lemma_checks"] = std::move(lemmas);
    if (with_timings) j["millis"] = r.millis;
    groups.push_back(std::move(j));
  }
  root["groups"] = std::move(groups);
  root["summary"] = {{"groups", rep.results.size()},
                     {"gvz", rep.gvz_count},
                     {"non_gvz", rep.non_gvz_count},
                     {"skipped_lemma_checks", rep.skipped_lemma_count},
                     {"failures", rep.failures}};
  return root;
}

inline std::string report_to_json_text(const RunReport& rep,
                                       bool with_timings = true) {
  return report_to_json(rep, with_timings).dump(2) + "\n";
}

/// Group-level CSV summary; character data stops at the degree list.
inline std::string report_to_csv(const RunReport& rep) {
  std::string out =
      "name,order,classes,gvz,agreement,definition,flat,thm2,thm3,degrees,"
      "status\n";
  for (const GroupResult& r : rep.results) {
    out += r.group->name() + "," + std::to_string(r.group->order()) + ",";
    if (r.failed) {
      out += ",,,,,,,,failed\n";
      continue;
    }
    const OracleReport& o = r.report;
    out += std::to_string(o.class_count) + ",";
    out += std::string(o.is_gvz() ? "true" : "false") + ",";
    out += std::string(o.agreement ? "true" : "false") + ",";
    out += std::string(o.verdict_definition ? "true" : "false") + ",";
    out += std::string(o.verdict_flat ? "true" : "false") + ",";
    out += std::string(o.verdict_thm2 ? "true" : "false") + ",";
    out += std::string(o.verdict_thm3 ? "true" : "false") + ",";
    for (std::size_t i = 0; i < o.characters.size(); ++i) {
      if (i) out += ";";
      out += std::to_string(o.characters[i].degree);
    }
    out += ",ok\n";
  }
  return out;
}

}  // namespace gvz
