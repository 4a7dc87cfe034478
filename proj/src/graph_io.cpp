#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>

#include "dks/errors.hpp"
#include "dks/graph.hpp"

namespace dks {

namespace {

struct RawArc {
  std::int64_t a;
  std::int64_t b;
  double w;
};

std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
  return s.substr(i);
}

// Whitespace-separated tokens, at most three.
std::size_t tokenize(std::string_view line, std::array<std::string_view, 3>& tok) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < line.size() && count < tok.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    tok[count++] = line.substr(i, j - i);
    i = j;
  }
  return count;
}

std::int64_t parse_id(std::string_view t, std::size_t line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) {
    throw ParseError(line, "invalid vertex id '" + std::string(t) + "'");
  }
  return v;
}

double parse_weight(std::string_view t, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v)) {
    throw ParseError(line, "invalid edge weight '" + std::string(t) + "'");
  }
  if (v < 0.0) throw ParseError(line, "negative edge weight '" + std::string(t) + "'");
  if (v == 0.0) throw ParseError(line, "zero edge weight");
  return v;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> size;

  explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

Graph preprocess(std::vector<RawArc> arcs, std::vector<std::int64_t> ids, bool weighted) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DomainError("edge list contains no vertices");

  std::sort(arcs.begin(), arcs.end(), [](const RawArc& x, const RawArc& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<RawArc> merged;
  merged.reserve(arcs.size());
  for (const auto& arc : arcs) {
    if (!merged.empty() && merged.back().a == arc.a && merged.back().b == arc.b) {
      if (weighted) merged.back().w += arc.w;
      continue;
    }
    merged.push_back({arc.a, arc.b, weighted ? arc.w : 1.0});
  }

  auto index_of = [&ids](std::int64_t id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) -
                                    ids.begin());
  };
  DisjointSets dsu(ids.size());
  for (const auto& arc : merged) dsu.unite(index_of(arc.a), index_of(arc.b));

  // Largest component; ties go to the one holding the smallest input id.
  std::size_t best_root = dsu.find(0);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const std::size_t r = dsu.find(i);
    if (dsu.size[r] > dsu.size[best_root]) best_root = r;
  }

  std::vector<std::int64_t> kept;
  std::vector<std::size_t> relabel(ids.size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (dsu.find(i) == best_root) {
      relabel[i] = kept.size();
      kept.push_back(ids[i]);
    }
  }
  std::vector<WeightedEdge> edges;
  for (const auto& arc : merged) {
    const std::size_t ia = index_of(arc.a);
    if (dsu.find(ia) != best_root) continue;
    edges.push_back({static_cast<VertexId>(relabel[ia]),
                     static_cast<VertexId>(relabel[index_of(arc.b)]), arc.w});
  }
  if (edges.empty()) throw DomainError("graph has no edges after preprocessing");
  return Graph::from_edges(kept.size(), std::move(edges)).with_original_ids(std::move(kept));
}

bool is_gzip(std::string_view bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string gunzip(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw ParseError(0, "zlib init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  std::array<char, 1 << 16> buf{};
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseError(0, "corrupt gzip stream");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
    // Concatenated gzip members.
    if (rc == Z_STREAM_END && zs.avail_in > 0) {
      inflateReset(&zs);
      rc = Z_OK;
    }
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

void append_double(std::string& s, double v) {
  std::array<char, 32> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  s.append(buf.data(), p);
}

constexpr std::array<char, 4> kMagic{'D', 'K', 'S', 'G'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

Graph load_edge_list(std::string_view text, const LoadOptions& options) {
  std::vector<RawArc> arcs;
  std::vector<std::int64_t> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::array<std::string_view, 3> tok;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    line = trim_left(line);
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    const std::size_t count = tokenize(line, tok);
    if (count == 0) continue;
    if (count < 2) throw ParseError(line_no, "expected at least two vertex ids");
    const std::int64_t a = parse_id(tok[0], line_no);
    const std::int64_t b = parse_id(tok[1], line_no);
    double w = 1.0;
    if (options.weighted) {
      if (count < 3) throw ParseError(line_no, "missing edge weight");
      w = parse_weight(tok[2], line_no);
    }
    ids.push_back(a);
    ids.push_back(b);
    if (a != b) arcs.push_back({std::min(a, b), std::max(a, b), w});
  }
  return preprocess(std::move(arcs), std::move(ids), options.weighted);
}

Graph load_edge_list(std::istream& in, const LoadOptions& options) {
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (is_gzip(bytes)) bytes = gunzip(bytes);
  return load_edge_list(std::string_view(bytes), options);
}

Graph load_edge_list_file(const std::filesystem::path& path, const LoadOptions& options) {
  if (path == "-") return load_edge_list(std::cin, options);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g, bool weighted) {
  const auto ids = g.original_ids();
  const auto edges = g.edges();
  const auto w = g.weights();
  std::string buf = "# n=" + std::to_string(g.num_vertices()) +
                    " m=" + std::to_string(g.num_edges()) + "\n";
  for (std::size_t e = 0; e < edges.size(); ++e) {
    buf += std::to_string(ids[edges[e].u]);
    buf += ' ';
    buf += std::to_string(ids[edges[e].v]);
    if (weighted) {
      buf += ' ';
      append_double(buf, w[e]);
    }
    buf += '\n';
  }
  out << buf;
}

void save_binary(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write '" + path.string() + "'");
  const std::uint64_t n = g.num_vertices();
  const std::uint64_t m = g.num_edges();
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&m), sizeof m);
  for (const auto& e : g.edges()) {
    const std::uint32_t pair[2] = {e.u, e.v};
    out.write(reinterpret_cast<const char*>(pair), sizeof pair);
  }
  out.write(reinterpret_cast<const char*>(g.weights().data()),
            static_cast<std::streamsize>(m * sizeof(double)));
  out.write(reinterpret_cast<const char*>(g.original_ids().data()),
            static_cast<std::streamsize>(n * sizeof(std::int64_t)));
  if (!out) throw DomainError("write to '" + path.string() + "' failed");
}

Graph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::array<char, 4> magic{};
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&m), sizeof m);
  if (!in || magic != kMagic) throw ParseError(0, "not a graph cache file");
  if (version != kCacheVersion) {
    throw ParseError(0, "unsupported cache version " + std::to_string(version));
  }
  std::vector<WeightedEdge> edges(m);
  for (auto& e : edges) {
    std::uint32_t pair[2] = {0, 0};
    in.read(reinterpret_cast<char*>(pair), sizeof pair);
    e.u = pair[0];
    e.v = pair[1];
  }
  std::vector<double> w(m);
  in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(m * sizeof(double)));
  std::vector<std::int64_t> ids(n);
  in.read(reinterpret_cast<char*>(ids.data()),
          static_cast<std::streamsize>(n * sizeof(std::int64_t)));
  if (!in) throw ParseError(0, "truncated graph cache");
  for (std::size_t e = 0; e < m; ++e) edges[e].w = w[e];
  return Graph::from_edges(n, std::move(edges)).with_original_ids(std::move(ids));
}

}  // namespace dks
