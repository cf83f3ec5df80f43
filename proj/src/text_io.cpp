#include "rotkit/text_io.hpp"

#include "rotkit/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace rotkit {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace {

bool valid_token(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'))
      return false;
  return true;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

RotationDocument read_rotation_text(std::string_view text) {
  RotationDocument doc;
  std::vector<std::string> labels;
  std::map<std::string, Vertex, std::less<>> ids;
  std::vector<std::vector<std::string>> raw;
  std::vector<std::size_t> line_of;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') {
      doc.lines.push_back({kNoVertex, std::string(line)});
      continue;
    }
    std::string_view body = line;
    if (auto h = body.find('#'); h != std::string_view::npos)
      parse_error(line_no, "comments must occupy a whole line");
    auto toks = split_tokens(body);
    std::string head = toks[0];
    if (head.size() < 2 || head.back() != '.') parse_error(line_no, "expected '<vertex>.' at line start");
    head.pop_back();
    if (!valid_token(head)) parse_error(line_no, "bad vertex token '" + head + "'");
    if (ids.count(head)) parse_error(line_no, "vertex " + head + " listed twice");
    const auto v = static_cast<Vertex>(labels.size());
    ids.emplace(head, v);
    labels.push_back(head);
    toks.erase(toks.begin());
    for (const auto& tk : toks)
      if (!valid_token(tk)) parse_error(line_no, "bad neighbor token '" + tk + "'");
    raw.push_back(std::move(toks));
    line_of.push_back(line_no);
    doc.lines.push_back({v, {}});
  }

  std::vector<std::vector<Vertex>> rot(labels.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    for (const auto& tk : raw[v]) {
      auto it = ids.find(tk);
      if (it == ids.end()) parse_error(line_of[v], "neighbor " + tk + " has no rotation line");
      rot[v].push_back(it->second);
    }
  }
  try {
    doc.rot = RotationSystem(std::move(labels), std::move(rot));
  } catch (const Error& e) {
    fail(ErrorCode::parse, std::string("invalid rotation system: ") + e.what());
  }
  return doc;
}

std::string write_rotation_text(const RotationDocument& doc) {
  std::string out;
  std::vector<char> written(static_cast<std::size_t>(doc.rot.vertex_count()), 0);
  auto vertex_line = [&](Vertex v) {
    std::string s = doc.rot.label(v) + ".";
    for (Vertex u : doc.rot.rotation(v)) s += " " + doc.rot.label(u);
    return s + "\n";
  };
  for (const auto& l : doc.lines) {
    if (l.vertex == kNoVertex) {
      out += l.text + "\n";
    } else if (l.vertex < doc.rot.vertex_count()) {
      out += vertex_line(l.vertex);
      written[static_cast<std::size_t>(l.vertex)] = 1;
    }
  }
  for (Vertex v = 0; v < doc.rot.vertex_count(); ++v)
    if (!written[static_cast<std::size_t>(v)]) out += vertex_line(v);
  return out;
}

std::string write_rotation_text(const RotationSystem& rot, const std::string& comment) {
  RotationDocument doc;
  doc.rot = rot;
  if (!comment.empty()) {
    std::istringstream in(comment);
    std::string l;
    while (std::getline(in, l)) doc.lines.push_back({kNoVertex, "# " + l});
  }
  return write_rotation_text(doc);
}

RotationSystem parse_rotation_system(std::string_view text) { return read_rotation_text(text).rot; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace rotkit
