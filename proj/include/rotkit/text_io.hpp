#pragma once

#include "rotkit/rotation_system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rotkit {

// A parsed rotation-system file. Comment and blank lines are kept in place so
// that write_rotation_text(read_rotation_text(s)) == s for any normalized file
// (single spaces, no trailing whitespace, trailing newline).
struct RotationDocument {
  RotationSystem rot;
  // lines[i] is either a verbatim comment/blank line or empty-with-vertex >= 0.
  struct Line {
    Vertex vertex = kNoVertex;
    std::string text;
  };
  std::vector<Line> lines;
};

// Format: one line per vertex, `<vertex>. <neighbor> <neighbor> ...`; `#` starts
// a comment. Vertex ids follow the order of first appearance as line heads.
RotationDocument read_rotation_text(std::string_view text);
std::string write_rotation_text(const RotationDocument& doc);
std::string write_rotation_text(const RotationSystem& rot, const std::string& comment = {});

RotationSystem parse_rotation_system(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Whitespace-separated tokens of a line.
std::vector<std::string> split_tokens(std::string_view line);
std::string trim(std::string_view s);

}  // namespace rotkit
