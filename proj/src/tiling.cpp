#include "hyperperc/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

namespace hyperperc {

void SchlafliSymbol::validate() const {
  if (!is_hyperbolic()) {
    throw Error(ErrorKind::InvalidSymbol,
                to_string() + " is not hyperbolic: need (p-2)(q-2) > 4 with p, q >= 3");
  }
}

double edge_length(SchlafliSymbol s) {
  const double pi = std::numbers::pi;
  double sq = std::sin(pi / s.q);
  double cq = std::cos(pi / s.q);
  return std::acosh((cq * cq + std::cos(2 * pi / s.p)) / (sq * sq));
}

double circumradius(SchlafliSymbol s) {
  const double pi = std::numbers::pi;
  return std::acosh(1.0 / (std::tan(pi / s.p) * std::tan(pi / s.q)));
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  auto bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

template <class T>
std::uint64_t fnv1a(std::uint64_t h, const std::vector<T>& v) {
  std::uint64_t n = v.size();
  h = fnv1a(h, &n, sizeof n);
  return v.empty() ? h : fnv1a(h, v.data(), v.size() * sizeof(T));
}

}  // namespace

TilingGraph TilingGraph::from_parts(Parts parts) {
  const std::size_t n = parts.layer.size();
  if (parts.position.empty()) parts.position.assign(n, Complex{});
  if (parts.position.size() != n || parts.rotation.size() != n) {
    throw Error(ErrorKind::InvalidInput, "vertex tables have inconsistent lengths");
  }

  TilingGraph g;
  g.symbol_ = parts.symbol;
  g.radius_ = parts.radius;
  g.layer_ = std::move(parts.layer);
  g.position_ = std::move(parts.position);

  g.rot_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.rot_offset_[v + 1] = g.rot_offset_[v] + parts.rotation[v].size();
  g.rot_.resize(g.rot_offset_[n]);
  g.rot_edge_.assign(g.rot_offset_[n], kNoIndex);
  for (std::size_t v = 0; v < n; ++v) {
    std::copy(parts.rotation[v].begin(), parts.rotation[v].end(), g.rot_.begin() + g.rot_offset_[v]);
  }
  parts.rotation = {};

  for (VertexId v = 0; v < n; ++v) {
    auto nb = g.neighbours(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      VertexId w = nb[i];
      if (w >= n || w == v) throw Error(ErrorKind::InvalidInput, "rotation contains a loop or bad index");
      for (std::size_t j = 0; j < i; ++j) {
        if (nb[j] == w) throw Error(ErrorKind::InvalidInput, "rotation contains a multi-edge");
      }
      std::size_t slot = g.rot_offset_[v] + i;
      if (v < w) {
        g.rot_edge_[slot] = static_cast<EdgeId>(g.edges_.size());
        g.edges_.push_back({v, w});
      } else {
        auto back = g.neighbours(w);
        auto it = std::find(back.begin(), back.end(), v);
        if (it == back.end()) throw Error(ErrorKind::InvalidInput, "rotation is not symmetric");
        g.rot_edge_[slot] = g.rot_edge_[g.rot_offset_[w] + (it - back.begin())];
      }
    }
  }
  // Edges from a larger to a smaller id not mirrored on the smaller side.
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbours(v)) {
      auto back = g.neighbours(w);
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw Error(ErrorKind::InvalidInput, "rotation is not symmetric");
      }
    }
  }

  g.face_offset_.assign(1, 0);
  for (const auto& f : parts.faces) {
    if (f.size() < 3) throw Error(ErrorKind::InvalidInput, "face with fewer than 3 vertices");
    for (std::size_t i = 0; i < f.size(); ++i) {
      VertexId a = f[i];
      VertexId b = f[(i + 1) % f.size()];
      if (a >= n || b >= n) throw Error(ErrorKind::InvalidInput, "face references missing vertex");
      EdgeId e = g.find_edge(a, b);
      if (e == kNoIndex) throw Error(ErrorKind::InvalidInput, "face uses a missing edge");
      g.face_vertices_.push_back(a);
      g.face_edges_.push_back(e);
    }
    g.face_offset_.push_back(g.face_vertices_.size());
  }
  if (parts.face_centers.size() == parts.faces.size()) {
    g.face_center_ = std::move(parts.face_centers);
  } else {
    g.face_center_.clear();
    for (const auto& f : parts.faces) {
      Complex c{};
      for (VertexId v : f) c += g.position_[v];
      g.face_center_.push_back(c / static_cast<double>(f.size()));
    }
  }
  g.finish();
  return g;
}

TilingGraph TilingGraph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                                    std::vector<int> layers, std::vector<Complex> positions) {
  Parts parts;
  parts.rotation.assign(vertex_count, {});
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw Error(ErrorKind::InvalidInput, "edge index out of range");
    parts.rotation[e.u].push_back(e.v);
    parts.rotation[e.v].push_back(e.u);
  }
  if (layers.empty()) {
    layers.assign(vertex_count, -1);
    if (vertex_count > 0) {
      std::vector<VertexId> queue{0};
      layers[0] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (VertexId w : parts.rotation[v]) {
          if (layers[w] < 0) {
            layers[w] = layers[v] + 1;
            queue.push_back(w);
          }
        }
      }
    }
  }
  if (layers.size() != vertex_count) throw Error(ErrorKind::InvalidInput, "layer table length mismatch");
  parts.radius = layers.empty() ? 0 : std::max(0, *std::max_element(layers.begin(), layers.end()));
  parts.layer = std::move(layers);
  parts.position = std::move(positions);
  return from_parts(std::move(parts));
}

void TilingGraph::finish() {
  outer_layer_ = layer_.empty() ? 0 : *std::max_element(layer_.begin(), layer_.end());
  outer_.clear();
  for (VertexId v = 0; v < layer_.size(); ++v) {
    if (layer_[v] == outer_layer_) outer_.push_back(v);
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  int header[3] = {symbol_.p, symbol_.q, radius_};
  h = fnv1a(h, header, sizeof header);
  h = fnv1a(h, layer_);
  h = fnv1a(h, position_);
  h = fnv1a(h, rot_offset_);
  h = fnv1a(h, rot_);
  h = fnv1a(h, face_offset_);
  h = fnv1a(h, face_vertices_);
  fingerprint_ = h;
}

EdgeId TilingGraph::find_edge(VertexId u, VertexId v) const {
  auto nb = neighbours(u);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (nb[i] == v) return rot_edge_[rot_offset_[u] + i];
  }
  return kNoIndex;
}

std::vector<std::size_t> TilingGraph::layer_sizes() const {
  std::vector<std::size_t> sizes(layer_.empty() ? 0 : outer_layer_ + 1, 0);
  for (int l : layer_) {
    if (l >= 0) ++sizes[l];
  }
  return sizes;
}

bool operator==(const TilingGraph& a, const TilingGraph& b) {
  auto same_positions = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    return x.size() == y.size() && (x.empty() || std::memcmp(x.data(), y.data(), x.size() * sizeof(Complex)) == 0);
  };
  return a.symbol_ == b.symbol_ && a.radius_ == b.radius_ && a.layer_ == b.layer_ &&
         same_positions(a.position_, b.position_) && a.rot_offset_ == b.rot_offset_ && a.rot_ == b.rot_ &&
         a.edges_.size() == b.edges_.size() && a.face_offset_ == b.face_offset_ &&
         a.face_vertices_ == b.face_vertices_ && same_positions(a.face_center_, b.face_center_);
}

// ---------------------------------------------------------------------------
// Generation

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

/// Partial tiling kept as a topological disc. Each vertex stores its known
/// neighbours in a ring of q slots; the occupied slots form one contiguous
/// counterclockwise arc whose first entry is the next boundary vertex and
/// whose last entry is the previous one. Slots never move, so slot
/// differences are angle differences in units of 2*pi/q.
class DiscGrowth {
 public:
  DiscGrowth(int p, int q) : p_(p), q_(q) {}

  VertexId add_vertex() {
    VertexId v = static_cast<VertexId>(start_.size());
    ring_.resize(ring_.size() + q_, kNoIndex);
    start_.push_back(0);
    len_.push_back(0);
    faces_.push_back(0);
    dist_.push_back(kUnreached);
    return v;
  }

  /// Seeds the disc with one p-gon around a fresh root; returns the root.
  VertexId seed() {
    std::vector<VertexId> cycle(p_);
    for (auto& v : cycle) v = add_vertex();
    for (int i = 0; i < p_; ++i) {
      VertexId v = cycle[i];
      set_slot(v, 0, cycle[(i + 1) % p_]);
      set_slot(v, 1, cycle[(i + p_ - 1) % p_]);
      len_[v] = 2;
      faces_[v] = 1;
    }
    record_face(cycle);
    return cycle[0];
  }

  void complete(VertexId v) {
    while (faces_[v] < q_) glue_face(v);
  }

  std::size_t vertex_count() const { return start_.size(); }
  int& dist(VertexId v) { return dist_[v]; }
  int dist(VertexId v) const { return dist_[v]; }
  int occupied(VertexId v) const { return len_[v]; }
  /// Slot of the i-th entry of v's arc.
  int arc_slot(VertexId v, int i) const { return (start_[v] + i) % q_; }
  VertexId at_slot(VertexId v, int slot) const { return ring_[std::size_t(v) * q_ + slot]; }
  bool slot_occupied(VertexId v, int slot) const {
    return ((slot - start_[v] + q_) % q_) < len_[v];
  }
  int slot_of(VertexId v, VertexId w) const {
    for (int i = 0; i < len_[v]; ++i) {
      int s = arc_slot(v, i);
      if (at_slot(v, s) == w) return s;
    }
    return -1;
  }

  std::size_t face_count() const { return face_list_.size() / p_; }
  std::span<const VertexId> face(std::size_t f) const { return {face_list_.data() + f * p_, std::size_t(p_)}; }

 private:
  void set_slot(VertexId v, int slot, VertexId w) { ring_[std::size_t(v) * q_ + slot] = w; }
  VertexId front(VertexId v) const { return at_slot(v, start_[v]); }
  VertexId back(VertexId v) const { return at_slot(v, (start_[v] + len_[v] - 1) % q_); }

  void push_front(VertexId v, VertexId w) {
    if (len_[v] >= q_) throw std::logic_error("tiling growth: vertex degree overflow");
    start_[v] = static_cast<std::uint8_t>((start_[v] + q_ - 1) % q_);
    set_slot(v, start_[v], w);
    ++len_[v];
  }
  void push_back(VertexId v, VertexId w) {
    if (len_[v] >= q_) throw std::logic_error("tiling growth: vertex degree overflow");
    set_slot(v, (start_[v] + len_[v]) % q_, w);
    ++len_[v];
  }

  void record_face(std::span<const VertexId> cycle) { face_list_.insert(face_list_.end(), cycle.begin(), cycle.end()); }

  /// Glues a p-gon to the exterior side of boundary edge (v, next(v)). The
  /// new face runs along the maximal boundary path through vertices that
  /// already carry q-1 faces, since those close up with this face.
  void glue_face(VertexId v) {
    path_.clear();
    path_.push_back(v);
    path_.push_back(front(v));
    while (faces_[path_.back()] == q_ - 1) {
      path_.push_back(front(path_.back()));
      if (static_cast<int>(path_.size()) > p_) throw std::logic_error("tiling growth: glued path too long");
    }
    while (faces_[path_.front()] == q_ - 1) {
      path_.insert(path_.begin(), back(path_.front()));
      if (static_cast<int>(path_.size()) > p_) throw std::logic_error("tiling growth: glued path too long");
    }
    const int glued = static_cast<int>(path_.size()) - 1;
    const int fresh = p_ - glued - 1;
    if (fresh < 0 || path_.front() == path_.back()) throw std::logic_error("tiling growth: face does not close");

    VertexId first = path_.front();
    VertexId last = path_.back();
    new_.clear();
    for (int j = 0; j < fresh; ++j) new_.push_back(add_vertex());

    if (fresh == 0) {
      if (slot_of(first, last) >= 0) throw std::logic_error("tiling growth: closing edge already present");
      push_front(first, last);
      push_back(last, first);
    } else {
      push_front(first, new_.front());
      push_back(last, new_.back());
      for (int j = 0; j < fresh; ++j) {
        VertexId z = new_[j];
        set_slot(z, 0, j + 1 < fresh ? new_[j + 1] : last);
        set_slot(z, 1, j > 0 ? new_[j - 1] : first);
        len_[z] = 2;
        faces_[z] = 1;
      }
    }
    for (VertexId x : path_) ++faces_[x];

    // Counterclockwise: last, ..., first, then the fresh vertices.
    cycle_.assign(path_.rbegin(), path_.rend());
    cycle_.insert(cycle_.end(), new_.begin(), new_.end());
    record_face(cycle_);
  }

  int p_;
  int q_;
  std::vector<VertexId> ring_;
  std::vector<std::uint8_t> start_;
  std::vector<std::uint8_t> len_;
  std::vector<std::uint8_t> faces_;
  std::vector<int> dist_;
  std::vector<VertexId> face_list_;
  std::vector<VertexId> path_;
  std::vector<VertexId> new_;
  std::vector<VertexId> cycle_;
};

}  // namespace

TilingGraph generate_tiling(SchlafliSymbol symbol, int radius, const GenerateOptions& options) {
  symbol.validate();
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "radius must be non-negative");
  if (symbol.q > 255 || symbol.p > 255) throw Error(ErrorKind::InvalidInput, "p and q must be below 256");
  const int p = symbol.p;
  const int q = symbol.q;

  DiscGrowth disc(p, q);
  const VertexId root = disc.seed();
  disc.dist(root) = 0;

  std::vector<VertexId> order{root};
  std::size_t layer_begin = 0;
  const auto too_large = [&](std::size_t count) {
    return Error(ErrorKind::PatchTooLarge, symbol.to_string() + " radius " + std::to_string(radius) +
                                               " exceeds the cap of " + std::to_string(options.max_vertices) +
                                               " vertices (reached " + std::to_string(count) + ")");
  };
  for (int k = 0; k < radius; ++k) {
    std::size_t layer_end = order.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      VertexId v = order[i];
      disc.complete(v);
      for (int s = 0; s < q; ++s) {
        VertexId w = disc.at_slot(v, s);
        if (disc.dist(w) == kUnreached) {
          disc.dist(w) = k + 1;
          order.push_back(w);
        }
      }
      if (order.size() > options.max_vertices) throw too_large(order.size());
    }
    layer_begin = layer_end;
  }
  if (options.complete_outer_layer) {
    for (std::size_t i = layer_begin, end = order.size(); i < end; ++i) disc.complete(order[i]);
  }

  // Renumber in BFS order.
  const std::size_t n = order.size();
  std::vector<VertexId> index(disc.vertex_count(), kNoIndex);
  for (std::size_t i = 0; i < n; ++i) index[order[i]] = static_cast<VertexId>(i);

  // Frames: T_v maps the origin to v and angle 0 to the neighbour in
  // ref_slot[v]; slot s of v sits at angle 2*pi*(s - ref_slot[v])/q.
  const double step = kTwoPi / q;
  const double d = disc_radius(edge_length(symbol));
  const auto hop = MobiusIsometry::translation_to(Complex{d, 0.0}) * MobiusIsometry::rotation(std::numbers::pi);
  std::vector<MobiusIsometry> frame(n);
  std::vector<int> ref_slot(n, 0);
  TilingGraph::Parts parts;
  parts.symbol = symbol;
  parts.radius = radius;
  parts.layer.resize(n);
  parts.position.resize(n);
  parts.rotation.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    parts.layer[i] = disc.dist(v);
    if (i == 0) {
      // The seed face lies between slots 0 and 1 of the root.
      frame[0] = MobiusIsometry::identity();
      ref_slot[0] = 0;
    } else {
      VertexId parent = kNoIndex;
      for (int j = 0; j < disc.occupied(v); ++j) {
        VertexId w = disc.at_slot(v, disc.arc_slot(v, j));
        if (index[w] != kNoIndex && disc.dist(w) == disc.dist(v) - 1 && (parent == kNoIndex || index[w] < index[parent])) {
          parent = w;
        }
      }
      VertexId pi_ = index[parent];
      int s = disc.slot_of(parent, v);
      frame[i] = frame[pi_] * MobiusIsometry::rotation(step * (s - ref_slot[pi_])) * hop;
      if ((i & 63) == 0) frame[i].normalize();
      ref_slot[i] = disc.slot_of(v, parent);
    }
    parts.position[i] = frame[i].apply(Complex{});
    auto& rot = parts.rotation[i];
    for (int k = 0; k < q; ++k) {
      int s = (ref_slot[i] + k) % q;
      if (!disc.slot_occupied(v, s)) continue;
      VertexId w = disc.at_slot(v, s);
      if (index[w] != kNoIndex) rot.push_back(index[w]);
    }
  }

  const double rho = disc_radius(circumradius(symbol));
  for (std::size_t f = 0; f < disc.face_count(); ++f) {
    auto cyc = disc.face(f);
    bool inside = std::all_of(cyc.begin(), cyc.end(), [&](VertexId v) { return index[v] != kNoIndex; });
    if (!inside) continue;
    std::vector<VertexId> face(cyc.size());
    for (std::size_t j = 0; j < cyc.size(); ++j) face[j] = index[cyc[j]];
    // The face sits counterclockwise after the edge to its next vertex.
    VertexId v0 = face[0];
    int s = disc.slot_of(cyc[0], cyc[1]);
    double phi = step * (s - ref_slot[v0]) + step / 2;
    parts.face_centers.push_back(frame[v0].apply(std::polar(rho, phi)));
    parts.faces.push_back(std::move(face));
  }
  return TilingGraph::from_parts(std::move(parts));
}

}  // namespace hyperperc
