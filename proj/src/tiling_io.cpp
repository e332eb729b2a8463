#include "hyperperc/tiling_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace hyperperc {

namespace {

constexpr int kFormatVersion = 1;

void put_real(std::string& buf, double x) {
  char tmp[32];
  auto res = std::to_chars(tmp, tmp + sizeof tmp, x);
  buf.append(tmp, res.ptr);
}

template <class Int>
void put_int(std::string& buf, Int x) {
  char tmp[24];
  auto res = std::to_chars(tmp, tmp + sizeof tmp, x);
  buf.append(tmp, res.ptr);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-comment line split into tokens.
  std::istringstream next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line[0] != '#') return std::istringstream(line);
    }
    fail("unexpected end of file");
  }

  void expect_keyword(const std::string& keyword) {
    auto ss = next();
    std::string word;
    ss >> word;
    if (word != keyword) fail("expected '" + keyword + "', found '" + word + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::InvalidInput, "tiling file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

template <class T>
T take(std::istringstream& ss, const LineReader& reader) {
  T value{};
  if (!(ss >> value)) reader.fail("malformed number");
  return value;
}

double take_real(std::istringstream& ss, const LineReader& reader) {
  std::string token;
  if (!(ss >> token)) reader.fail("missing real");
  double x = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) reader.fail("malformed real '" + token + "'");
  return x;
}

}  // namespace

void write_tiling(std::ostream& out, const TilingGraph& g) {
  std::string buf;
  buf += "hyperperc-tiling " + std::to_string(kFormatVersion) + "\n";
  buf += "symbol " + std::to_string(g.symbol().p) + " " + std::to_string(g.symbol().q) + "\n";
  buf += "radius " + std::to_string(g.radius()) + "\n";
  buf += "counts " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + " " +
         std::to_string(g.face_count()) + "\n";
  buf += "vertices\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    put_int(buf, g.layer(v));
    buf += ' ';
    put_real(buf, g.position(v).real());
    buf += ' ';
    put_real(buf, g.position(v).imag());
    buf += '\n';
  }
  buf += "rotation\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    put_int(buf, g.degree(v));
    for (VertexId w : g.neighbours(v)) {
      buf += ' ';
      put_int(buf, w);
    }
    buf += '\n';
  }
  buf += "edges\n";
  for (const Edge& e : g.edges()) {
    put_int(buf, e.u);
    buf += ' ';
    put_int(buf, e.v);
    buf += '\n';
  }
  buf += "faces\n";
  for (FaceId f = 0; f < g.face_count(); ++f) {
    auto vs = g.face(f);
    put_int(buf, vs.size());
    for (VertexId v : vs) {
      buf += ' ';
      put_int(buf, v);
    }
    buf += ' ';
    put_real(buf, g.face_center(f).real());
    buf += ' ';
    put_real(buf, g.face_center(f).imag());
    buf += '\n';
  }
  out << buf;
  if (!out) throw Error(ErrorKind::Io, "failed to write tiling");
}

TilingGraph read_tiling(std::istream& in) {
  LineReader reader(in);
  {
    auto ss = reader.next();
    std::string magic;
    int version = 0;
    ss >> magic >> version;
    if (magic != "hyperperc-tiling") reader.fail("not a hyperperc tiling file");
    if (version != kFormatVersion) reader.fail("unsupported format version " + std::to_string(version));
  }
  TilingGraph::Parts parts;
  std::size_t nv = 0, ne = 0, nf = 0;
  {
    auto ss = reader.next();
    std::string kw;
    ss >> kw;
    if (kw != "symbol") reader.fail("expected symbol");
    parts.symbol.p = take<int>(ss, reader);
    parts.symbol.q = take<int>(ss, reader);
  }
  {
    auto ss = reader.next();
    std::string kw;
    ss >> kw;
    if (kw != "radius") reader.fail("expected radius");
    parts.radius = take<int>(ss, reader);
  }
  {
    auto ss = reader.next();
    std::string kw;
    ss >> kw;
    if (kw != "counts") reader.fail("expected counts");
    nv = take<std::size_t>(ss, reader);
    ne = take<std::size_t>(ss, reader);
    nf = take<std::size_t>(ss, reader);
  }
  reader.expect_keyword("vertices");
  parts.layer.resize(nv);
  parts.position.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto ss = reader.next();
    parts.layer[i] = take<int>(ss, reader);
    double x = take_real(ss, reader);
    double y = take_real(ss, reader);
    parts.position[i] = {x, y};
  }
  reader.expect_keyword("rotation");
  parts.rotation.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto ss = reader.next();
    auto deg = take<std::size_t>(ss, reader);
    parts.rotation[i].resize(deg);
    for (auto& w : parts.rotation[i]) w = take<VertexId>(ss, reader);
  }
  reader.expect_keyword("edges");
  std::vector<Edge> edges(ne);
  for (auto& e : edges) {
    auto ss = reader.next();
    e.u = take<VertexId>(ss, reader);
    e.v = take<VertexId>(ss, reader);
  }
  reader.expect_keyword("faces");
  for (std::size_t f = 0; f < nf; ++f) {
    auto ss = reader.next();
    auto size = take<std::size_t>(ss, reader);
    std::vector<VertexId> face(size);
    for (auto& v : face) v = take<VertexId>(ss, reader);
    double x = take_real(ss, reader);
    double y = take_real(ss, reader);
    parts.faces.push_back(std::move(face));
    parts.face_centers.push_back({x, y});
  }
  TilingGraph g = TilingGraph::from_parts(std::move(parts));
  if (g.edge_count() != ne) reader.fail("edge table does not match rotation table");
  for (EdgeId e = 0; e < ne; ++e) {
    if (g.edge(e).u != edges[e].u || g.edge(e).v != edges[e].v) reader.fail("edge table does not match rotation table");
  }
  return g;
}

void save_tiling(const std::filesystem::path& path, const TilingGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_tiling(out, g);
}

TilingGraph load_tiling(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_tiling(in);
}

}  // namespace hyperperc
