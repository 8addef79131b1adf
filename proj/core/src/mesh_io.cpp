#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "rmplate/errors.hpp"
#include "rmplate/mesh.hpp"

namespace rmplate {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

template <typename T>
T parse_number(const std::string& tok, std::size_t line) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "cannot parse '" + tok + "' as a number");
  }
  return value;
}

std::size_t expect_section(const std::vector<Line>& lines, std::size_t& cursor,
                           const std::string& keyword, std::size_t last_line) {
  if (cursor >= lines.size()) {
    throw ParseError(last_line + 1, "expected '" + keyword + " <count>'");
  }
  const Line& l = lines[cursor++];
  if (l.tokens.size() != 2 || l.tokens[0] != keyword) {
    throw ParseError(l.number, "expected '" + keyword + " <count>'");
  }
  const long long count = parse_number<long long>(l.tokens[1], l.number);
  if (count < 0) throw ParseError(l.number, "negative count");
  return static_cast<std::size_t>(count);
}

}  // namespace

Mesh load_mesh(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty mesh file");

  std::size_t cursor = 0;
  const Line& header = lines[cursor++];
  if (header.tokens.size() != 2 || header.tokens[0] != "plate-mesh" || header.tokens[1] != "1") {
    throw ParseError(header.number, "expected header 'plate-mesh 1'");
  }

  const std::size_t nv = expect_section(lines, cursor, "vertices", header.number);
  std::vector<Point> vertices;
  vertices.reserve(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    if (cursor >= lines.size()) {
      throw ParseError(lines.back().number + 1, "missing vertex line");
    }
    const Line& l = lines[cursor++];
    if (l.tokens.size() != 2) throw ParseError(l.number, "vertex line needs 'x y'");
    vertices.emplace_back(parse_number<double>(l.tokens[0], l.number),
                          parse_number<double>(l.tokens[1], l.number));
  }

  const std::size_t nt =
      expect_section(lines, cursor, "triangles", cursor > 0 ? lines[cursor - 1].number : 1);
  std::vector<Triangle> triangles;
  triangles.reserve(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    if (cursor >= lines.size()) {
      throw ParseError(lines.back().number + 1, "missing triangle line");
    }
    const Line& l = lines[cursor++];
    if (l.tokens.size() != 3) throw ParseError(l.number, "triangle line needs 'i j k'");
    triangles.push_back({parse_number<int>(l.tokens[0], l.number),
                         parse_number<int>(l.tokens[1], l.number),
                         parse_number<int>(l.tokens[2], l.number)});
  }
  if (cursor < lines.size()) {
    throw ParseError(lines[cursor].number, "unexpected content after triangle section");
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_mesh(buffer.str());
}

std::string save_mesh(const Mesh& mesh) {
  std::string out = "plate-mesh 1\nvertices " + std::to_string(mesh.num_vertices()) + "\n";
  char buf[64];
  for (const auto& p : mesh.vertices()) {
    for (int c = 0; c < 2; ++c) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p[c]);
      out.append(buf, ptr);
      out.push_back(c == 0 ? ' ' : '\n');
    }
  }
  out += "triangles " + std::to_string(mesh.num_triangles()) + "\n";
  for (const auto& t : mesh.triangles()) {
    out += std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]) + '\n';
  }
  return out;
}

}  // namespace rmplate
