#include "rotkit/casebook.hpp"

#include "rotkit/current_graph.hpp"
#include "rotkit/error.hpp"
#include "rotkit/logs.hpp"
#include "rotkit/text_io.hpp"

#include <filesystem>

namespace rotkit {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string pair_list(const std::set<LabelPair>& pairs) {
  std::string s;
  for (const auto& p : pairs) s += (s.empty() ? "" : " ") + p.first + "-" + p.second;
  return s;
}

}  // namespace

CaseSpec builtin_case(const std::string& name, const std::string& data_dir) {
  CaseSpec c;
  c.name = name;
  c.bundle_path = join_path(data_dir, name + ".logs");
  c.script_path = join_path(data_dir, name + ".ops");
  c.spec_path = join_path(data_dir, name + ".spec");
  if (name == "k18") {
    c.target_n = 18;
    c.derived_v = 18;
    c.derived_e = 144;
    c.derived_f = 96;
    c.derived_genus = 16;
    for (int i = 0; i < 9; ++i) c.derived_missing.insert(make_label_pair(std::to_string(i), std::to_string(i + 9)));
  } else if (name == "k20") {
    c.target_n = 20;
    c.derived_v = 21;
    c.derived_e = 189;
    c.derived_f = 126;
    c.derived_genus = 22;
    // y0 sees only even vertices and y1 only odd ones; contracting y0y1 fixes those.
    c.derived_missing = {make_label_pair("x", "y0"), make_label_pair("x", "y1"), make_label_pair("y0", "y1")};
    for (int i = 0; i < 18; ++i) c.derived_missing.insert(make_label_pair(std::to_string(i), i % 2 ? "y0" : "y1"));
  } else if (name == "k23") {
    c.target_n = 23;
    c.derived_v = 23;
    c.derived_e = 243;
    c.derived_f = 162;
    c.derived_genus = 30;
    const std::string letters = "abcde";
    for (std::size_t i = 0; i < letters.size(); ++i)
      for (std::size_t j = i + 1; j < letters.size(); ++j)
        c.derived_missing.insert(make_label_pair(std::string(1, letters[i]), std::string(1, letters[j])));
  } else {
    fail(ErrorCode::domain, "unknown case '" + name + "' (expected k18, k20 or k23)");
  }
  return c;
}

CaseRun run_case(const CaseSpec& spec, const std::string& out_dir) {
  CaseRun run;
  run.report = VerificationReport("case " + spec.name);
  VerificationReport& rep = run.report;
  auto out = [&](const std::string& suffix) { return join_path(out_dir, spec.name + suffix); };
  auto save_report = [&] {
    if (out_dir.empty()) return;
    write_file(out(".report.txt"), rep.to_text());
    write_file(out(".report.json"), rep.to_json());
  };
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  try {
    run.derived = derive_embedding(parse_log_bundle(read_file(spec.bundle_path)));
  } catch (const Error& e) {
    rep.fail("derive", e.what());
    save_report();
    return run;
  }
  const DerivedEmbedding& d = *run.derived;
  rep.pass("derive");
  rep.set_count("derived_vertices", d.stats.v_count);
  rep.set_count("derived_edges", d.stats.e_count);
  rep.set_count("derived_faces", d.stats.f_count);
  rep.set_count("derived_genus", d.stats.genus);
  const SurfaceStats want = surface_stats(spec.derived_v, spec.derived_e, spec.derived_f);
  rep.add("derived V/E/F/genus", d.stats == want && want.genus == spec.derived_genus,
          "got V=" + std::to_string(d.stats.v_count) + " E=" + std::to_string(d.stats.e_count) +
              " F=" + std::to_string(d.stats.f_count) + " genus " + std::to_string(d.stats.genus));
  const std::set<LabelPair> missing(d.missing_edges.begin(), d.missing_edges.end());
  rep.add("derived missing edges", missing == spec.derived_missing, "got " + pair_list(missing));
  if (!out_dir.empty())
    write_file(out(".derived.rot"), write_rotation_text(d.rotation_system, spec.name + " derived embedding"));
  if (!rep.passed()) {
    save_report();
    return run;
  }

  try {
    if (std::filesystem::exists(spec.script_path)) {
      run.script = parse_script(read_file(spec.script_path));
    } else {
      run.searched = true;
      const SearchOutcome found = search_completion(d, parse_search_spec(read_file(spec.spec_path)));
      if (found.results.empty()) {
        rep.fail("completion search", (found.timed_out ? "time limit reached before a result: " : "not found within bounds: ") + found.bounds);
        save_report();
        return run;
      }
      run.script = found.results.front().script;
      rep.pass("completion search");
    }
    run.completion = apply_script(d.rotation_system, run.script);
  } catch (const Error& e) {
    rep.fail(run.searched ? "completion search" : "replay " + spec.script_path, e.what());
    save_report();
    return run;
  }
  rep.merge(run.completion->report, "apply: ");
  for (const HandleLedger& h : run.completion->handles) {
    std::set<LabelPair> added(h.added.begin(), h.added.end()), costs(h.costs.begin(), h.costs.end());
    rep.add("handle " + h.name, h.genus_after == h.genus_before + 1,
            "genus " + std::to_string(h.genus_before) + " -> " + std::to_string(h.genus_after) + ", added " +
                pair_list(added) + (costs.empty() ? "" : ", costs " + pair_list(costs)));
  }
  std::string outstanding;
  for (const auto& p : run.completion->outstanding_costs) outstanding += " " + p.first + "-" + p.second;
  rep.add("all costs restored", run.completion->outstanding_costs.empty(), "outstanding:" + outstanding);
  const RotationSystem& fin = run.completion->rotation_system;
  rep.merge(verify_completion(fin, spec.target_n), "final: ");
  if (!out_dir.empty()) {
    write_file(out(".final.rot"), write_rotation_text(fin, spec.name + " after completion"));
    write_file(out(".ops"), write_script(run.script));
  }
  save_report();
  return run;
}

VerificationReport verify_file(const std::string& path, std::optional<int> complete) {
  VerificationReport rep("verify " + path);
  RotationSystem rot;
  try {
    rot = parse_rotation_system(read_file(path));
  } catch (const Error& e) {
    rep.fail("parse", e.what());
    return rep;
  }
  rep.pass("parse");
  rep.merge(describe_embedding(rot, path));
  if (complete) rep.merge(verify_completion(rot, *complete), "complete: ");
  return rep;
}

VerificationReport check_logs_file(const std::string& path) {
  VerificationReport rep("check-logs " + path);
  LogBundle b;
  try {
    b = parse_log_bundle(read_file(path));
  } catch (const Error& e) {
    rep.fail("parse", e.what());
    return rep;
  }
  rep.pass("parse");
  for (const CircuitLog& log : b.logs) {
    std::int64_t letters = 0;
    for (const LogEntry& e : log.entries) letters += e.is_letter() ? 1 : 0;
    const std::string key = "log" + std::to_string(log.circuit_id);
    rep.set_count(key + "_length", static_cast<std::int64_t>(log.entries.size()));
    rep.set_count(key + "_letters", letters);
  }
  rep.merge(check_log_bundle(b));
  return rep;
}

}  // namespace rotkit
