#include "rotkit/rotkit.h"

#include "rotkit/casebook.hpp"
#include "rotkit/derivation.hpp"
#include "rotkit/error.hpp"
#include "rotkit/logs.hpp"
#include "rotkit/search.hpp"
#include "rotkit/surgery.hpp"
#include "rotkit/text_io.hpp"

#include <cstring>
#include <new>
#include <string>

struct rk_rotation {
  rotkit::RotationSystem rot;
};

struct rk_report {
  rotkit::VerificationReport report;
};

namespace {

thread_local std::string last_error;

rk_status code_of(rotkit::ErrorCode c) {
  switch (c) {
    case rotkit::ErrorCode::parse: return RK_ERR_PARSE;
    case rotkit::ErrorCode::structure: return RK_ERR_STRUCTURE;
    case rotkit::ErrorCode::domain: return RK_ERR_DOMAIN;
    case rotkit::ErrorCode::derivation: return RK_ERR_DERIVATION;
    case rotkit::ErrorCode::surgery: return RK_ERR_SURGERY;
    case rotkit::ErrorCode::not_found: return RK_ERR_NOT_FOUND;
    case rotkit::ErrorCode::io: return RK_ERR_IO;
  }
  return RK_ERR_INTERNAL;
}

rk_status set_error(rk_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
rk_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const rotkit::Error& e) {
    return set_error(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RK_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

rk_report* wrap(rotkit::VerificationReport r) { return new rk_report{std::move(r)}; }

// Report out-params are optional.
void give(rk_report** slot, rotkit::VerificationReport r) {
  if (slot) *slot = wrap(std::move(r));
}

#define RK_REQUIRE(cond) \
  if (!(cond)) return set_error(RK_ERR_ARGUMENT, "null argument: " #cond)

}  // namespace

extern "C" {

const char* rk_last_error(void) { return last_error.c_str(); }

const char* rk_status_name(rk_status status) {
  switch (status) {
    case RK_OK: return "ok";
    case RK_ERR_PARSE: return "parse";
    case RK_ERR_STRUCTURE: return "structure";
    case RK_ERR_DOMAIN: return "domain";
    case RK_ERR_DERIVATION: return "derivation";
    case RK_ERR_SURGERY: return "surgery";
    case RK_ERR_NOT_FOUND: return "not_found";
    case RK_ERR_IO: return "io";
    case RK_ERR_ARGUMENT: return "argument";
    case RK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void rk_string_free(char* s) { delete[] s; }

rk_status rk_rotation_parse(const char* text, rk_rotation** out) {
  return guarded([&] {
    RK_REQUIRE(text && out);
    *out = new rk_rotation{rotkit::parse_rotation_system(text)};
    return RK_OK;
  });
}

rk_status rk_rotation_read(const char* path, rk_rotation** out) {
  return guarded([&] {
    RK_REQUIRE(path && out);
    *out = new rk_rotation{rotkit::parse_rotation_system(rotkit::read_file(path))};
    return RK_OK;
  });
}

rk_status rk_rotation_write(const rk_rotation* rot, const char* path) {
  return guarded([&] {
    RK_REQUIRE(rot && path);
    rotkit::write_file(path, rotkit::write_rotation_text(rot->rot));
    return RK_OK;
  });
}

rk_status rk_rotation_text(const rk_rotation* rot, char** out) {
  return guarded([&] {
    RK_REQUIRE(rot && out);
    *out = dup_string(rotkit::write_rotation_text(rot->rot));
    return RK_OK;
  });
}

rk_status rk_rotation_stats(const rk_rotation* rot, rk_stats* out) {
  return guarded([&] {
    RK_REQUIRE(rot && out);
    const auto s = rotkit::surface_stats(rot->rot);
    *out = {s.v_count, s.e_count, s.f_count, s.genus};
    return RK_OK;
  });
}

void rk_rotation_free(rk_rotation* rot) { delete rot; }

rk_status rk_derive(const char* bundle_path, rk_rotation** out, rk_report** report) {
  return guarded([&] {
    RK_REQUIRE(bundle_path && out);
    const auto d = rotkit::derive_embedding(rotkit::parse_log_bundle(rotkit::read_file(bundle_path)));
    auto rep = rotkit::describe_embedding(d.rotation_system, "derived " + (d.case_name.empty() ? std::string(bundle_path) : d.case_name));
    rep.add("vortex orientation", true, rotkit::to_string(d.orientation));
    for (const auto& split : d.letter_map) {
      std::string w;
      for (const auto& copy : split.copies) w += (w.empty() ? "" : ", ") + copy.label + " (" + std::to_string(copy.cycle.size()) + ")";
      rep.add("letter " + split.letter, true, w);
    }
    std::string missing;
    for (const auto& p : d.missing_edges) missing += (missing.empty() ? "" : " ") + p.first + "-" + p.second;
    rep.set_count("missing_edges", static_cast<std::int64_t>(d.missing_edges.size()));
    rep.add("missing edges", true, missing);
    *out = new rk_rotation{d.rotation_system};
    give(report, std::move(rep));
    return RK_OK;
  });
}

rk_status rk_apply(const rk_rotation* rot, const char* script_path, rk_rotation** out, rk_report** report) {
  return guarded([&] {
    RK_REQUIRE(rot && script_path && out);
    *out = nullptr;
    if (report) *report = nullptr;
    const auto script = rotkit::parse_script(rotkit::read_file(script_path));
    try {
      auto res = rotkit::apply_script(rot->rot, script);
      auto rep = res.report;
      for (const auto& h : res.handles) {
        std::string w = "genus " + std::to_string(h.genus_before) + " -> " + std::to_string(h.genus_after) + ", added";
        for (const auto& p : h.added) w += " " + p.first + "-" + p.second;
        if (!h.costs.empty()) w += ", costs";
        for (const auto& p : h.costs) w += " " + p.first + "-" + p.second;
        if (!h.restored.empty()) w += ", restored";
        for (const auto& p : h.restored) w += " " + p.first + "-" + p.second;
        rep.add("handle " + h.name, true, w);
      }
      *out = new rk_rotation{std::move(res.rotation_system)};
      give(report, std::move(rep));
    } catch (const rotkit::Error& e) {
      rotkit::VerificationReport rep(std::string("apply ") + script_path);
      rep.fail("script", e.what());
      give(report, std::move(rep));
      throw;
    }
    return RK_OK;
  });
}

rk_status rk_search(const rk_rotation* rot, const char* spec_path, char** script, rk_report** report) {
  return guarded([&] {
    RK_REQUIRE(rot && spec_path && script);
    *script = nullptr;
    const auto spec = rotkit::parse_search_spec(rotkit::read_file(spec_path));
    const auto outcome = rotkit::search_completion(rot->rot, spec);
    if (outcome.results.empty()) {
      rotkit::VerificationReport rep("search");
      rep.set_count("nodes", outcome.nodes);
      const std::string why = (outcome.timed_out ? "time limit reached before a result: " : "not found within bounds: ") + outcome.bounds;
      rep.fail("completion found", why);
      give(report, std::move(rep));
      return set_error(RK_ERR_NOT_FOUND, why);
    }
    auto rep = outcome.results.front().certificate;
    rep.set_count("nodes", outcome.nodes);
    rep.set_count("results", static_cast<std::int64_t>(outcome.results.size()));
    *script = dup_string(rotkit::write_script(outcome.results.front().script));
    give(report, std::move(rep));
    return RK_OK;
  });
}

rk_status rk_verify_file(const char* path, int complete_n, rk_report** out) {
  return guarded([&] {
    RK_REQUIRE(path && out);
    std::optional<int> n;
    if (complete_n > 0) n = complete_n;
    *out = wrap(rotkit::verify_file(path, n));
    return RK_OK;
  });
}

rk_status rk_check_logs(const char* bundle_path, rk_report** out) {
  return guarded([&] {
    RK_REQUIRE(bundle_path && out);
    *out = wrap(rotkit::check_logs_file(bundle_path));
    return RK_OK;
  });
}

rk_status rk_run_case(const char* name, const char* data_dir, const char* out_dir, rk_report** out) {
  return guarded([&] {
    RK_REQUIRE(name && data_dir && out);
    const auto spec = rotkit::builtin_case(name, data_dir);
    *out = wrap(rotkit::run_case(spec, out_dir ? out_dir : "").report);
    return RK_OK;
  });
}

int rk_report_passed(const rk_report* report) { return report && report->report.passed() ? 1 : 0; }

rk_status rk_report_text(const rk_report* report, char** out) {
  return guarded([&] {
    RK_REQUIRE(report && out);
    *out = dup_string(report->report.to_text());
    return RK_OK;
  });
}

rk_status rk_report_json(const rk_report* report, char** out) {
  return guarded([&] {
    RK_REQUIRE(report && out);
    *out = dup_string(report->report.to_json());
    return RK_OK;
  });
}

void rk_report_free(rk_report* report) { delete report; }

}  // extern "C"
