#include "roe/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace roe::io {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t p = 0;
  while (p < line.size()) {
    while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
    std::size_t q = p;
    while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
    if (q > p) tokens.emplace_back(line.substr(p, q - p));
    p = q;
  }
  return tokens;
}

// Feeds non-empty, non-comment lines with their 1-based numbers.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t p = 0;
  while (p <= text.size()) {
    std::size_t q = text.find('\n', p);
    if (q == std::string_view::npos) q = text.size();
    ++line_number;
    std::string_view line = text.substr(p, q - p);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      fn(line_number, line);
    }
    if (q == text.size()) break;
    p = q + 1;
  }
}

PointSet parse_points_header(std::size_t line_number, std::string_view line) {
  auto tokens = tokenize(line);
  if (tokens.empty() || tokens[0] != "points:")
    throw ParseError(line_number, "expected a 'points:' header");
  try {
    return PointSet(std::vector<std::string>(tokens.begin() + 1, tokens.end()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_number, e.what());
  }
}

std::string points_header(const PointSet& points) {
  std::string out = "points:";
  for (const auto& id : points.ids()) {
    out += ' ';
    out += id;
  }
  out += '\n';
  return out;
}

double parse_value(std::size_t line_number, const std::string& token) {
  double v;
  if (!parse_scalar(token, v)) throw ParseError(line_number, "bad value '" + token + "'");
  return v;
}

}  // namespace

EmxFile parse_emx(std::string_view text) {
  EmxFile file;
  bool have_header = false;
  for_each_data_line(text, [&](std::size_t ln, std::string_view line) {
    if (!have_header) {
      file.points = parse_points_header(ln, line);
      have_header = true;
      return;
    }
    auto tokens = tokenize(line);
    if (tokens.size() != 3) throw ParseError(ln, "expected 'x y value'");
    if (!file.points.contains(tokens[0]))
      throw ParseError(ln, "unknown point id '" + tokens[0] + "'");
    if (!file.points.contains(tokens[1]))
      throw ParseError(ln, "unknown point id '" + tokens[1] + "'");
    file.table.push_back({tokens[0], tokens[1], parse_value(ln, tokens[2])});
  });
  if (!have_header) throw ParseError(1, "missing 'points:' header");
  return file;
}

std::string write_emx(const ExtMetric& metric) {
  std::string out = points_header(metric.points());
  const std::size_t n = metric.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = metric.at(i, j);
      if (v == kInf) continue;  // unlisted pairs default to inf
      out += metric.points().id(i);
      out += ' ';
      out += metric.points().id(j);
      out += ' ';
      out += format_scalar(v);
      out += '\n';
    }
  return out;
}

SparseOp parse_smx(std::string_view text) {
  bool have_header = false;
  PointSet points;
  std::vector<OpEntry> entries;
  for_each_data_line(text, [&](std::size_t ln, std::string_view line) {
    if (!have_header) {
      points = parse_points_header(ln, line);
      have_header = true;
      return;
    }
    auto tokens = tokenize(line);
    if (tokens.size() != 3 && tokens.size() != 4)
      throw ParseError(ln, "expected 'x y re [im]'");
    if (!points.contains(tokens[0])) throw ParseError(ln, "unknown point id '" + tokens[0] + "'");
    if (!points.contains(tokens[1])) throw ParseError(ln, "unknown point id '" + tokens[1] + "'");
    double re = parse_value(ln, tokens[2]);
    double im = tokens.size() == 4 ? parse_value(ln, tokens[3]) : 0.0;
    if (re == kInf || re == -kInf || im == kInf || im == -kInf)
      throw ParseError(ln, "operator entries must be finite");
    entries.push_back({points.index_of(tokens[0]), points.index_of(tokens[1]), {re, im}});
  });
  if (!have_header) throw ParseError(1, "missing 'points:' header");
  return SparseOp(std::move(points), std::move(entries));
}

std::string write_smx(const SparseOp& op) {
  std::string out = points_header(op.points());
  for (const auto& e : op.entries()) {
    out += op.points().id(e.row);
    out += ' ';
    out += op.points().id(e.col);
    out += ' ';
    out += format_scalar(e.value.real());
    out += ' ';
    out += format_scalar(e.value.imag());
    out += '\n';
  }
  return out;
}

HRFamily parse_hrf(std::string_view text) {
  bool have_header = false;
  PointSet points;
  std::vector<HRFamily::Vec> xi;
  for_each_data_line(text, [&](std::size_t ln, std::string_view line) {
    if (!have_header) {
      points = parse_points_header(ln, line);
      xi.assign(points.size(), {});
      have_header = true;
      return;
    }
    auto tokens = tokenize(line);
    if (tokens.size() != 3) throw ParseError(ln, "expected 'x z value'");
    if (!points.contains(tokens[0])) throw ParseError(ln, "unknown point id '" + tokens[0] + "'");
    if (!points.contains(tokens[1])) throw ParseError(ln, "unknown point id '" + tokens[1] + "'");
    double v = parse_value(ln, tokens[2]);
    if (v == kInf || v == -kInf) throw ParseError(ln, "family values must be finite");
    xi[points.index_of(tokens[0])].push_back({points.index_of(tokens[1]), v});
  });
  if (!have_header) throw ParseError(1, "missing 'points:' header");
  try {
    return HRFamily(std::move(points), std::move(xi), HRParams{});
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_hrf(const HRFamily& family) {
  std::string out = points_header(family.points());
  for (std::size_t x = 0; x < family.size(); ++x) {
    for (const auto& [z, v] : family.vec(x)) {
      out += family.points().id(x);
      out += ' ';
      out += family.points().id(z);
      out += ' ';
      out += format_scalar(v);
      out += '\n';
    }
  }
  return out;
}

MapFile parse_map(std::string_view text) {
  MapFile file;
  enum class Section { f, g } section = Section::f;
  for_each_data_line(text, [&](std::size_t ln, std::string_view line) {
    auto tokens = tokenize(line);
    if (tokens.size() == 1 && tokens[0] == "g:") {
      if (file.g) throw ParseError(ln, "duplicate 'g:' section");
      file.g.emplace();
      section = Section::g;
      return;
    }
    if (tokens.size() == 2 && tokens[0] == "C:") {
      if (file.C) throw ParseError(ln, "duplicate 'C:' line");
      double v = parse_value(ln, tokens[1]);
      if (v < 0.0) throw ParseError(ln, "closeness bound must be nonnegative");
      file.C = v;
      return;
    }
    if (tokens.size() != 3 || tokens[1] != "->") throw ParseError(ln, "expected 'x -> y'");
    if (section == Section::f)
      file.f.push_back({tokens[0], tokens[2]});
    else
      file.g->push_back({tokens[0], tokens[2]});
  });
  return file;
}

CoarseMapData bind_map(const MapFile& file, const PointSet& X, const PointSet& Y) {
  CoarseMapData data;
  data.X = X;
  data.Y = Y;
  data.f.assign(X.size(), X.size());
  std::vector<char> seen(X.size(), 0);
  for (const auto& [x, y] : file.f) {
    std::size_t xi = X.index_of(x);
    if (seen[xi]) throw std::invalid_argument("map lists '" + x + "' twice");
    seen[xi] = 1;
    data.f[xi] = Y.index_of(y);
  }
  for (std::size_t x = 0; x < X.size(); ++x) {
    if (!seen[x]) throw std::invalid_argument("map misses '" + X.id(x) + "'");
  }
  if (file.g) {
    data.g.emplace(Y.size(), Y.size());
    std::vector<char> gseen(Y.size(), 0);
    for (const auto& [y, x] : *file.g) {
      std::size_t yi = Y.index_of(y);
      if (gseen[yi]) throw std::invalid_argument("inverse map lists '" + y + "' twice");
      gseen[yi] = 1;
      (*data.g)[yi] = X.index_of(x);
    }
    for (std::size_t y = 0; y < Y.size(); ++y) {
      if (!gseen[y]) throw std::invalid_argument("inverse map misses '" + Y.id(y) + "'");
    }
  }
  data.C = file.C;
  return data;
}

std::string write_map(const CoarseMapData& data) {
  std::string out;
  for (std::size_t x = 0; x < data.X.size(); ++x) {
    out += data.X.id(x);
    out += " -> ";
    out += data.Y.id(data.f[x]);
    out += '\n';
  }
  if (data.g) {
    out += "g:\n";
    for (std::size_t y = 0; y < data.Y.size(); ++y) {
      out += data.Y.id(y);
      out += " -> ";
      out += data.X.id((*data.g)[y]);
      out += '\n';
    }
  }
  if (data.C) {
    out += "C: ";
    out += format_scalar(*data.C);
    out += '\n';
  }
  return out;
}

BlockRep parse_grp(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  try {
    PointSet points(doc.at("points").get<std::vector<std::string>>());
    auto elements = doc.at("elements").get<std::vector<std::string>>();
    auto table = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
    std::vector<BlockRep::Block> blocks;
    for (const auto& blk : doc.at("blocks")) {
      BlockRep::Block block;
      for (const auto& id : blk.at("points").get<std::vector<std::string>>())
        block.block.push_back(points.index_of(id));
      block.perms = blk.at("actions").get<std::vector<std::vector<std::size_t>>>();
      blocks.push_back(std::move(block));
    }
    return BlockRep(std::move(points), std::move(elements), std::move(table), std::move(blocks));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_grp(const BlockRep& rep) {
  nlohmann::json doc;
  doc["points"] = rep.points().ids();
  doc["elements"] = rep.elements();
  doc["table"] = rep.table();
  doc["blocks"] = nlohmann::json::array();
  for (const auto& blk : rep.blocks()) {
    nlohmann::json b;
    std::vector<std::string> ids;
    for (std::size_t p : blk.block) ids.push_back(rep.points().id(p));
    b["points"] = ids;
    b["actions"] = blk.perms;
    doc["blocks"].push_back(b);
  }
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace roe::io
