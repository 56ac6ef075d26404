#include "gda/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gda {

int Diagram::num_univalent() const {
  return static_cast<int>(std::count(valence.begin(), valence.end(), 1));
}

int Diagram::num_trivalent() const {
  return static_cast<int>(std::count(valence.begin(), valence.end(), 3));
}

int Diagram::num_edges() const {
  int stubs = 0;
  for (int v : valence) stubs += v;
  return stubs / 2;
}

int Diagram::add_vertex(int val) {
  valence.push_back(val);
  adj.push_back({HalfRef{}, HalfRef{}, HalfRef{}});
  return num_vertices() - 1;
}

void Diagram::connect(HalfRef a, HalfRef b) {
  adj[a.v][a.s] = b;
  adj[b.v][b.s] = a;
}

void validate(const Diagram& d) {
  const int n = d.num_vertices();
  if (d.adj.size() != d.valence.size())
    throw std::invalid_argument("diagram: adj/valence size mismatch");
  for (int v = 0; v < n; v++) {
    if (d.valence[v] != 1 && d.valence[v] != 3)
      throw std::invalid_argument("diagram: vertex valence must be 1 or 3");
    for (int s = 0; s < d.valence[v]; s++) {
      HalfRef p = d.adj[v][s];
      if (p.v < 0 || p.v >= n || p.s < 0 || p.s >= d.valence[p.v])
        throw std::invalid_argument("diagram: dangling half-edge");
      if (p.v == v && p.s == s)
        throw std::invalid_argument("diagram: half-edge paired with itself");
      HalfRef q = d.adj[p.v][p.s];
      if (q.v != v || q.s != s)
        throw std::invalid_argument("diagram: pairing is not an involution");
    }
  }
  if (!d.closed) {
    if (!d.circle.empty())
      throw std::invalid_argument("diagram: open diagram with a circle");
    return;
  }
  std::vector<int> seen(n, 0);
  for (int v : d.circle) {
    if (v < 0 || v >= n || d.valence[v] != 1)
      throw std::invalid_argument("diagram: circle entry is not a leg");
    if (seen[v]++)
      throw std::invalid_argument("diagram: leg repeated on circle");
  }
  for (int v = 0; v < n; v++)
    if (d.valence[v] == 1 && !seen[v])
      throw std::invalid_argument("diagram: leg missing from circle");
  auto comp = components(d);
  int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> legs(nc, 0);
  for (int v : d.circle) legs[comp[v]]++;
  for (int c = 0; c < nc; c++)
    if (legs[c] == 0)
      throw std::invalid_argument("diagram: dashed component without a leg");
}

std::vector<int> components(const Diagram& d) {
  const int n = d.num_vertices();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; start++) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < d.valence[v]; s++) {
        int w = d.adj[v][s].v;
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    next++;
  }
  return comp;
}

int num_components(const Diagram& d) {
  auto comp = components(d);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

bool is_connected(const Diagram& d) { return num_components(d) <= 1; }

int first_betti(const Diagram& d) {
  return d.num_edges() - d.num_vertices() + num_components(d);
}

Degrees degrees(const Diagram& d) {
  Degrees out{};
  out.vassiliev = d.num_vertices() / 2;
  out.loops = first_betti(d);
  out.grope = out.vassiliev + out.loops;
  out.euler = 0;
  for (int v = 0; v < d.num_vertices(); v++) {
    if (d.valence[v] != 3) continue;
    bool univalent_neighbor = false;
    for (int s = 0; s < 3; s++)
      if (d.valence[d.adj[v][s].v] == 1) univalent_neighbor = true;
    if (!univalent_neighbor) out.euler++;
  }
  return out;
}

Diagram reverse_circle(const Diagram& d) {
  if (!d.closed)
    throw std::invalid_argument("reverse_circle: diagram is not closed");
  Diagram out = d;
  std::reverse(out.circle.begin(), out.circle.end());
  return out;
}

std::string format_diagram(const Diagram& d) {
  std::vector<int> offset(d.num_vertices(), 0);
  int next = 0;
  for (int v = 0; v < d.num_vertices(); v++) {
    offset[v] = next;
    next += d.valence[v];
  }
  std::ostringstream os;
  for (int v = 0; v < d.num_vertices(); v++) {
    os << 'v' << v << ':';
    for (int s = 0; s < d.valence[v]; s++) os << " h" << offset[v] + s;
    os << '\n';
  }
  for (int v = 0; v < d.num_vertices(); v++)
    for (int s = 0; s < d.valence[v]; s++) {
      HalfRef p = d.adj[v][s];
      int a = offset[v] + s, b = offset[p.v] + p.s;
      if (a < b) os << "e: h" << a << " h" << b << '\n';
    }
  if (d.closed) {
    os << "circle:";
    for (int v : d.circle) os << " h" << offset[v];
    os << '\n';
  }
  return os.str();
}

namespace {

// "v12:" -> ('v', 12), "h3" -> ('h', 3), "e:" -> ('e', -1), "circle:" -> ('c', -1)
struct Token {
  char kind;
  long id;
};

Token lex(const std::string& word, int line_no) {
  auto fail = [&] {
    throw std::invalid_argument("diagram parse: malformed token '" + word +
                                "' on line " + std::to_string(line_no));
  };
  if (word == "e:") return {'e', -1};
  if (word == "circle:") return {'c', -1};
  if (word.size() < 2) fail();
  char kind = word[0];
  std::string digits = word.substr(1);
  bool colon = kind == 'v';
  if (colon) {
    if (digits.empty() || digits.back() != ':') fail();
    digits.pop_back();
  } else if (kind != 'h') {
    fail();
  }
  if (digits.empty() ||
      digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 8)
    fail();
  return {kind, std::stol(digits)};
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  struct VertexLine {
    long id;
    std::vector<long> stubs;
  };
  std::vector<VertexLine> vlines;
  std::vector<std::pair<long, long>> edges;
  std::vector<long> circle_stubs;
  bool has_circle = false;

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    std::istringstream ls(line);
    std::vector<std::string> words;
    std::string w;
    while (ls >> w) words.push_back(w);
    if (words.empty() || words[0][0] == '#') continue;
    Token head = lex(words[0], line_no);
    auto stub_ids = [&] {
      std::vector<long> ids;
      for (size_t i = 1; i < words.size(); i++) {
        Token t = lex(words[i], line_no);
        if (t.kind != 'h')
          throw std::invalid_argument("diagram parse: expected half-edge on line " +
                                      std::to_string(line_no));
        ids.push_back(t.id);
      }
      return ids;
    };
    if (head.kind == 'v') {
      auto ids = stub_ids();
      if (ids.size() != 1 && ids.size() != 3)
        throw std::invalid_argument("diagram parse: vertex needs 1 or 3 half-edges, line " +
                                    std::to_string(line_no));
      vlines.push_back({head.id, std::move(ids)});
    } else if (head.kind == 'e') {
      auto ids = stub_ids();
      if (ids.size() != 2)
        throw std::invalid_argument("diagram parse: edge needs 2 half-edges, line " +
                                    std::to_string(line_no));
      edges.push_back({ids[0], ids[1]});
    } else {
      if (has_circle)
        throw std::invalid_argument("diagram parse: repeated circle line " +
                                    std::to_string(line_no));
      has_circle = true;
      circle_stubs = stub_ids();
    }
  }

  std::sort(vlines.begin(), vlines.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  Diagram d;
  d.closed = has_circle;
  std::map<long, int> vertex_of_id;
  std::map<long, HalfRef> stub_home;
  for (const auto& vl : vlines) {
    if (!vertex_of_id.emplace(vl.id, d.num_vertices()).second)
      throw std::invalid_argument("diagram parse: duplicate vertex v" +
                                  std::to_string(vl.id));
    int v = d.add_vertex(static_cast<int>(vl.stubs.size()));
    for (size_t s = 0; s < vl.stubs.size(); s++)
      if (!stub_home.emplace(vl.stubs[s], HalfRef{v, (int)s}).second)
        throw std::invalid_argument("diagram parse: half-edge h" +
                                    std::to_string(vl.stubs[s]) + " declared twice");
  }
  auto resolve = [&](long id) {
    auto it = stub_home.find(id);
    if (it == stub_home.end())
      throw std::invalid_argument("diagram parse: unknown half-edge h" +
                                  std::to_string(id));
    return it->second;
  };
  std::map<long, int> used;
  for (const auto& [a, b] : edges) {
    if (used[a]++ || used[b]++ || a == b)
      throw std::invalid_argument("diagram parse: half-edge used twice in edges");
    d.connect(resolve(a), resolve(b));
  }
  for (const auto& [id, home] : stub_home)
    if (!used.count(id))
      throw std::invalid_argument("diagram parse: half-edge h" + std::to_string(id) +
                                  " is unpaired");
  for (long id : circle_stubs) {
    HalfRef h = resolve(id);
    if (d.valence[h.v] != 1)
      throw std::invalid_argument("diagram parse: circle entry h" + std::to_string(id) +
                                  " is not a leg");
    d.circle.push_back(h.v);
  }
  validate(d);
  return d;
}

}  // namespace gda
