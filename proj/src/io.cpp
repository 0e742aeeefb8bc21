#include "dtop/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dtop::io {

FormatError::FormatError(std::string source, std::size_t line, const std::string& msg)
    : Error(source + ":" + std::to_string(line) + ": " + msg),
      source_(std::move(source)),
      line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Splits into non-empty lines of tokens; '{', '}', ';' and '->' stand alone.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(start, end - start));
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string spaced;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      char c = raw[i];
      if (c == '{' || c == '}' || c == ';') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        spaced += " -> ";
        ++i;
      } else {
        spaced += c;
      }
    }
    std::istringstream ss(spaced);
    Line l{number, {}};
    for (std::string tok; ss >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
    start = end + 1;
  }
  return out;
}

std::optional<Coord> to_int(const std::string& s) {
  Coord v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<Coord> ints(const std::string& src, const Line& l, std::size_t from, std::size_t to) {
  std::vector<Coord> out;
  for (std::size_t i = from; i < to; ++i) {
    auto v = to_int(l.tokens[i]);
    if (!v) throw FormatError(src, l.number, "expected an integer, got '" + l.tokens[i] + "'");
    out.push_back(*v);
  }
  return out;
}

// Remainder of the line after the keyword, joined back for the adjacency parser.
std::string rest(const Line& l) {
  std::string s;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) s += l.tokens[i];
  return s;
}

AdjacencySpec spec_at(const std::string& src, const Line& l) {
  if (l.tokens.size() < 2) throw FormatError(src, l.number, "missing adjacency spec");
  try {
    return parse_adjacency(rest(l));
  } catch (const Error& e) {
    throw FormatError(src, l.number, e.what());
  }
}

Point point_at(const std::string& src, const Line& l, std::size_t from, std::size_t to,
               std::size_t dim) {
  auto c = ints(src, l, from, to);
  if (c.size() != dim)
    throw FormatError(src, l.number, "expected " + std::to_string(dim) + " coordinates, got " +
                                         std::to_string(c.size()));
  return Point(std::move(c));
}

Index index_at(const std::string& src, const Line& l, const ImageGraph& g, const Point& p) {
  auto i = g.image().index_of(p);
  if (!i) throw FormatError(src, l.number, "point " + p.str() + " is not in the image");
  return static_cast<Index>(*i);
}

std::size_t arrow(const std::string& src, const Line& l) {
  for (std::size_t i = 0; i < l.tokens.size(); ++i)
    if (l.tokens[i] == "->") return i;
  throw FormatError(src, l.number, "expected '->'");
}

struct MapHeader {
  ImageGraph dom, cod;
  std::size_t body;  // first body line
};

MapHeader read_map_header(const std::string& src, const std::vector<Line>& lines,
                          const std::string& kind, const std::filesystem::path& base) {
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{kind})
    throw FormatError(src, lines.empty() ? 1 : lines[0].number, "expected header '" + kind + "'");
  std::optional<ImageFile> dom, cod;
  std::optional<AdjacencySpec> dom_adj, cod_adj;
  std::size_t i = 1, dom_line = 1, cod_line = 1;
  auto load = [&](const Line& l) {
    if (l.tokens.size() != 2) throw FormatError(src, l.number, "expected one file name");
    try {
      return read_image(base / l.tokens[1]);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(src, l.number, e.what());
    }
  };
  for (; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto& k = l.tokens[0];
    if (k == "dom") {
      dom = load(l);
      dom_line = l.number;
    } else if (k == "cod") {
      cod = load(l);
      cod_line = l.number;
    } else if (k == "dom_adj") {
      dom_adj = spec_at(src, l);
    } else if (k == "cod_adj") {
      cod_adj = spec_at(src, l);
    } else {
      break;
    }
  }
  if (!dom) throw FormatError(src, lines[0].number, "missing 'dom <image-file>'");
  if (!cod) throw FormatError(src, lines[0].number, "missing 'cod <image-file>'");
  auto bind = [&](const ImageFile& f, const std::optional<AdjacencySpec>& o, std::size_t line) {
    try {
      return f.graph(o);
    } catch (const Error& e) {
      throw FormatError(src, line, e.what());
    }
  };
  return {bind(*dom, dom_adj, dom_line), bind(*cod, cod_adj, cod_line), i};
}

std::string point_tokens(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- images

ImageGraph ImageFile::graph(const std::optional<AdjacencySpec>& override_adj,
                            std::span<const std::size_t> override_split) const {
  const auto& spec = override_adj ? override_adj : adj;
  if (!spec) throw Error(source + ": image has no adjacency (add 'adj <spec>' or pass --adj)");
  std::span<const std::size_t> sp = override_adj ? override_split : std::span<const std::size_t>(split);
  return ImageGraph(image, AdjacencyOracle::bind(*spec, image.dim(), sp));
}

ImageFile parse_image(std::string_view text, const std::string& source) {
  auto lines = tokenize(text);
  if (lines.empty()) throw FormatError(source, 1, "empty image file");
  const auto& h = lines[0];
  if (h.tokens.size() != 2 || h.tokens[0] != "dim")
    throw FormatError(source, h.number, "expected 'dim <n>'");
  auto n = to_int(h.tokens[1]);
  if (!n || *n < 1) throw FormatError(source, h.number, "dimension must be a positive integer");
  const std::size_t dim = static_cast<std::size_t>(*n);
  std::optional<AdjacencySpec> adj;
  std::vector<std::size_t> split;
  std::vector<Point> pts;
  std::vector<std::size_t> where;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] == "adj") {
      if (!pts.empty()) throw FormatError(source, l.number, "'adj' must precede the points");
      adj = spec_at(source, l);
    } else if (l.tokens[0] == "split") {
      if (!pts.empty()) throw FormatError(source, l.number, "'split' must precede the points");
      for (auto v : ints(source, l, 1, l.tokens.size())) {
        if (v < 1) throw FormatError(source, l.number, "split sizes must be positive");
        split.push_back(static_cast<std::size_t>(v));
      }
    } else {
      pts.push_back(point_at(source, l, 0, l.tokens.size(), dim));
      where.push_back(l.number);
    }
  }
  if (pts.empty()) throw FormatError(source, h.number, "image has no points");
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a] < pts[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (pts[order[i]] == pts[order[i - 1]])
      throw FormatError(source, where[order[i]], "duplicate point " + pts[order[i]].str());
  ImageFile f{DigitalImage(std::move(pts)), adj, split, source};
  if (adj) {
    try {
      AdjacencyOracle::bind(*adj, dim, split);
    } catch (const Error& e) {
      throw FormatError(source, h.number, e.what());
    }
  }
  return f;
}

ImageFile read_image(const std::filesystem::path& path) {
  return parse_image(read_file(path), path.string());
}

std::string format_image(const DigitalImage& image, const AdjacencyOracle* adj) {
  std::string s = "dim " + std::to_string(image.dim()) + "\n";
  if (adj) {
    s += "adj " + adj->str() + "\n";
    auto leaves = adj->leaf_dims();
    if (leaves.size() > 1) {
      s += "split";
      for (auto d : leaves) s += " " + std::to_string(d);
      s += "\n";
    }
  }
  for (const auto& p : image.points()) s += point_tokens(p) + "\n";
  return s;
}

std::string format_image(const ImageGraph& g) { return format_image(g.image(), &g.adjacency()); }

// ---------------------------------------------------------------- maps

DigitalMap parse_map(std::string_view text, const std::string& source,
                     const std::filesystem::path& base_dir) {
  auto lines = tokenize(text);
  auto h = read_map_header(source, lines, "map", base_dir);
  std::vector<Index> t(h.dom.size());
  std::vector<char> set(h.dom.size(), 0);
  for (std::size_t i = h.body; i < lines.size(); ++i) {
    const auto& l = lines[i];
    auto a = arrow(source, l);
    auto x = index_at(source, l, h.dom, point_at(source, l, 0, a, h.dom.dim()));
    auto y = index_at(source, l, h.cod, point_at(source, l, a + 1, l.tokens.size(), h.cod.dim()));
    if (set[x]) throw FormatError(source, l.number, "point " + h.dom.point(x).str() + " mapped twice");
    set[x] = 1;
    t[x] = y;
  }
  for (std::size_t x = 0; x < set.size(); ++x)
    if (!set[x])
      throw FormatError(source, lines.back().number, "map undefined at " + h.dom.point(x).str());
  return DigitalMap(h.dom, h.cod, std::move(t));
}

DigitalMap read_map(const std::filesystem::path& path) {
  return parse_map(read_file(path), path.string(), path.parent_path());
}

std::string format_map(const DigitalMap& f, const std::string& dom_file, const std::string& cod_file) {
  std::string s = "map\ndom " + dom_file + "\ncod " + cod_file + "\n";
  s += "dom_adj " + f.domain().adjacency().str() + "\n";
  s += "cod_adj " + f.codomain().adjacency().str() + "\n";
  for (std::size_t x = 0; x < f.table().size(); ++x)
    s += point_tokens(f.domain().point(x)) + " -> " + point_tokens(f.codomain().point(f[x])) + "\n";
  return s;
}

// ---------------------------------------------------------------- multimaps

MultiMap parse_multimap(std::string_view text, const std::string& source,
                        const std::filesystem::path& base_dir) {
  auto lines = tokenize(text);
  auto h = read_map_header(source, lines, "multimap", base_dir);
  std::vector<IndexSet> t(h.dom.size());
  std::vector<char> set(h.dom.size(), 0);
  for (std::size_t i = h.body; i < lines.size(); ++i) {
    const auto& l = lines[i];
    auto a = arrow(source, l);
    auto x = index_at(source, l, h.dom, point_at(source, l, 0, a, h.dom.dim()));
    if (set[x]) throw FormatError(source, l.number, "point " + h.dom.point(x).str() + " mapped twice");
    set[x] = 1;
    const auto& tk = l.tokens;
    if (a + 1 >= tk.size() || tk[a + 1] != "{" || tk.back() != "}")
      throw FormatError(source, l.number, "expected '{ y ; y ; ... }' after '->'");
    std::size_t from = a + 2;
    for (std::size_t k = from; k < tk.size(); ++k) {
      if (tk[k] != ";" && tk[k] != "}") continue;
      if (k == from) throw FormatError(source, l.number, "empty value in set");
      t[x].push_back(index_at(source, l, h.cod, point_at(source, l, from, k, h.cod.dim())));
      from = k + 1;
    }
  }
  for (std::size_t x = 0; x < set.size(); ++x)
    if (!set[x])
      throw FormatError(source, lines.back().number, "multimap undefined at " + h.dom.point(x).str());
  return MultiMap(h.dom, h.cod, std::move(t));
}

MultiMap read_multimap(const std::filesystem::path& path) {
  return parse_multimap(read_file(path), path.string(), path.parent_path());
}

std::string format_multimap(const MultiMap& f, const std::string& dom_file,
                            const std::string& cod_file) {
  std::string s = "multimap\ndom " + dom_file + "\ncod " + cod_file + "\n";
  s += "dom_adj " + f.domain().adjacency().str() + "\n";
  s += "cod_adj " + f.codomain().adjacency().str() + "\n";
  for (std::size_t x = 0; x < f.table().size(); ++x) {
    s += point_tokens(f.domain().point(x)) + " -> {";
    for (std::size_t k = 0; k < f[x].size(); ++k)
      s += (k ? " ; " : " ") + point_tokens(f.codomain().point(f[x][k]));
    s += " }\n";
  }
  return s;
}

// ---------------------------------------------------------------- homotopies

HomotopyWitness parse_homotopy(std::string_view text, const std::string& source,
                               const ImageGraph& dom, const ImageGraph& cod) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "homotopy" ||
      lines[0].tokens[1].rfind("m=", 0) != 0)
    throw FormatError(source, lines.empty() ? 1 : lines[0].number, "expected 'homotopy m=<m>'");
  auto m = to_int(lines[0].tokens[1].substr(2));
  if (!m || *m < 0) throw FormatError(source, lines[0].number, "m must be a nonnegative integer");
  const std::size_t slices = static_cast<std::size_t>(*m) + 1;
  std::vector<std::vector<Index>> t(slices, std::vector<Index>(dom.size()));
  std::vector<std::vector<char>> set(slices, std::vector<char>(dom.size(), 0));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    auto a = arrow(source, l);
    if (a < 1) throw FormatError(source, l.number, "expected 't x1 ... xn -> y1 ... ym'");
    auto tv = to_int(l.tokens[0]);
    if (!tv || *tv < 0 || static_cast<std::size_t>(*tv) >= slices)
      throw FormatError(source, l.number, "time index out of range [0," + std::to_string(*m) + "]");
    auto x = index_at(source, l, dom, point_at(source, l, 1, a, dom.dim()));
    auto y = index_at(source, l, cod, point_at(source, l, a + 1, l.tokens.size(), cod.dim()));
    if (set[*tv][x]) throw FormatError(source, l.number, "entry given twice");
    set[*tv][x] = 1;
    t[*tv][x] = y;
  }
  for (std::size_t s = 0; s < slices; ++s)
    for (std::size_t x = 0; x < dom.size(); ++x)
      if (!set[s][x])
        throw FormatError(source, lines.back().number,
                          "missing entry t=" + std::to_string(s) + " at " + dom.point(x).str());
  DigitalMap f(dom, cod, t.front()), g(dom, cod, t.back());
  return HomotopyWitness(f, g, std::move(t));
}

std::string format_homotopy(const HomotopyWitness& w) {
  std::string s = "homotopy m=" + std::to_string(w.length()) + "\n";
  const auto& dom = w.f().domain();
  for (int t = 0; t <= w.length(); ++t)
    for (std::size_t x = 0; x < dom.size(); ++x)
      s += std::to_string(t) + " " + point_tokens(dom.point(x)) + " -> " +
           point_tokens(w.at(x, t)) + "\n";
  return s;
}

}  // namespace dtop::io
