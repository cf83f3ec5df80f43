#include "rotkit/rotkit.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

// Exit codes: 0 success, 1 verification failure, 2 input error.
constexpr int kOk = 0, kFailed = 1, kInput = 2;

struct ReportDel {
  void operator()(rk_report* r) const { rk_report_free(r); }
};
struct RotDel {
  void operator()(rk_rotation* r) const { rk_rotation_free(r); }
};
using Report = std::unique_ptr<rk_report, ReportDel>;
using Rotation = std::unique_ptr<rk_rotation, RotDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  rk_string_free(s);
  return out;
}

bool g_json = false;
std::string g_out;

int input_error(rk_status s) {
  std::cerr << "error (" << rk_status_name(s) << "): " << rk_last_error() << "\n";
  return kInput;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) std::cerr << "warning: could not write " << path << "\n";
}

std::string out_path(const std::string& name) {
  std::filesystem::create_directories(g_out);
  return (std::filesystem::path(g_out) / name).string();
}

// Prints the report and, with --out, stores both renderings under `stem`.
int emit(const rk_report* rep, const std::string& stem) {
  char* text = nullptr;
  char* json = nullptr;
  rk_report_text(rep, &text);
  rk_report_json(rep, &json);
  const std::string t = take(text), j = take(json);
  std::cout << (g_json ? j : t);
  if (!g_out.empty()) {
    write_text(out_path(stem + ".report.txt"), t);
    write_text(out_path(stem + ".report.json"), j);
  }
  return rk_report_passed(rep) ? kOk : kFailed;
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// A .logs file is derived first; anything else is read as a rotation system.
rk_status load_rotation(const std::string& path, Rotation& out) {
  rk_rotation* r = nullptr;
  rk_status s;
  if (std::filesystem::path(path).extension() == ".logs") {
    rk_report* rep = nullptr;
    s = rk_derive(path.c_str(), &r, &rep);
    rk_report_free(rep);
  } else {
    s = rk_rotation_read(path.c_str(), &r);
  }
  out.reset(r);
  return s;
}

int cmd_derive(const std::string& bundle) {
  rk_rotation* r = nullptr;
  rk_report* rep = nullptr;
  if (rk_status s = rk_derive(bundle.c_str(), &r, &rep); s != RK_OK) return input_error(s);
  Rotation rot(r);
  Report report(rep);
  if (!g_out.empty()) rk_rotation_write(rot.get(), out_path(stem_of(bundle) + ".derived.rot").c_str());
  return emit(report.get(), stem_of(bundle) + ".derive");
}

int cmd_verify(const std::string& path, int complete) {
  rk_report* rep = nullptr;
  if (rk_status s = rk_verify_file(path.c_str(), complete, &rep); s != RK_OK) return input_error(s);
  Report report(rep);
  const int code = emit(report.get(), stem_of(path) + ".verify");
  // a file that does not parse is an input error, not a failed verification
  char* text = nullptr;
  rk_report_text(report.get(), &text);
  if (take(text).find("[FAIL] parse") != std::string::npos) return kInput;
  return code;
}

int cmd_check_logs(const std::string& path) {
  rk_report* rep = nullptr;
  if (rk_status s = rk_check_logs(path.c_str(), &rep); s != RK_OK) return input_error(s);
  Report report(rep);
  char* text = nullptr;
  rk_report_text(report.get(), &text);
  const bool parse_failed = take(text).find("[FAIL] parse") != std::string::npos;
  const int code = emit(report.get(), stem_of(path) + ".check-logs");
  return parse_failed ? kInput : code;
}

int cmd_apply(const std::string& rotfile, const std::string& script) {
  Rotation rot;
  if (rk_status s = load_rotation(rotfile, rot); s != RK_OK) return input_error(s);
  rk_rotation* r = nullptr;
  rk_report* rep = nullptr;
  const rk_status s = rk_apply(rot.get(), script.c_str(), &r, &rep);
  Rotation result(r);
  Report report(rep);
  if (s != RK_OK && !report) return input_error(s);
  if (s != RK_OK) {
    emit(report.get(), stem_of(script) + ".apply");
    std::cerr << "error (" << rk_status_name(s) << "): " << rk_last_error() << "\n";
    return s == RK_ERR_SURGERY || s == RK_ERR_DOMAIN ? kFailed : kInput;
  }
  if (!g_out.empty()) rk_rotation_write(result.get(), out_path(stem_of(script) + ".rot").c_str());
  rk_stats st{};
  rk_rotation_stats(result.get(), &st);
  const int code = emit(report.get(), stem_of(script) + ".apply");
  if (!g_json)
    std::cout << "result: V=" << st.vertices << " E=" << st.edges << " F=" << st.faces << " genus " << st.genus << "\n";
  return code;
}

int cmd_search(const std::string& rotfile, const std::string& spec) {
  Rotation rot;
  if (rk_status s = load_rotation(rotfile, rot); s != RK_OK) return input_error(s);
  char* script = nullptr;
  rk_report* rep = nullptr;
  const rk_status s = rk_search(rot.get(), spec.c_str(), &script, &rep);
  Report report(rep);
  const std::string text = take(script);
  if (s != RK_OK && s != RK_ERR_NOT_FOUND) return input_error(s);
  if (s == RK_OK) {
    if (!g_out.empty()) write_text(out_path(stem_of(spec) + ".ops"), text);
    if (!g_json) std::cout << text;
  }
  const int code = emit(report.get(), stem_of(spec) + ".search");
  return s == RK_OK && code == kOk ? kOk : kFailed;
}

int cmd_case(const std::string& name, const std::string& data_dir) {
  rk_report* rep = nullptr;
  if (rk_status s = rk_run_case(name.c_str(), data_dir.c_str(), g_out.empty() ? nullptr : g_out.c_str(), &rep);
      s != RK_OK)
    return input_error(s);
  Report report(rep);
  // run_case already stores its report next to the other artifacts
  const std::string keep = g_out;
  g_out.clear();
  const int code = emit(report.get(), name);
  g_out = keep;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotkit: rotation systems, derived embeddings and their completion"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "print the JSON report instead of text");
  app.add_option("--out", g_out, "directory for output files");

  std::string a, b;
  int complete = 0;
  std::string data_dir = ROTKIT_DATA_DIR;

  auto* derive = app.add_subcommand("derive", "derive the embedding of a log bundle");
  derive->add_option("bundle", a)->required();
  auto* verify = app.add_subcommand("verify", "check a rotation-system file");
  verify->add_option("rotfile", a)->required();
  verify->add_option("--complete", complete, "also require K_n at genus_target(n)");
  auto* logs = app.add_subcommand("check-logs", "check a log bundle");
  logs->add_option("bundle", a)->required();
  auto* apply = app.add_subcommand("apply", "apply a surgery script");
  apply->add_option("rotfile", a, "rotation system, or a .logs bundle to derive")->required();
  apply->add_option("script", b)->required();
  auto* search = app.add_subcommand("search", "search for a completion");
  search->add_option("rotfile", a, "rotation system, or a .logs bundle to derive")->required();
  search->add_option("spec", b)->required();
  auto* cs = app.add_subcommand("case", "run a shipped case end to end");
  cs->add_option("name", a)->required()->check(CLI::IsMember({"k18", "k20", "k23"}));
  cs->add_option("--data", data_dir, "directory with the case files");
  for (auto* sub : {derive, verify, logs, apply, search, cs}) {
    sub->add_flag("--json", g_json, "print the JSON report instead of text");
    sub->add_option("--out", g_out, "directory for output files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (*derive) return cmd_derive(a);
  if (*verify) return cmd_verify(a, complete);
  if (*logs) return cmd_check_logs(a);
  if (*apply) return cmd_apply(a, b);
  if (*search) return cmd_search(a, b);
  return cmd_case(a, data_dir);
}
