#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nc/diagram.hpp"

namespace nc {

enum class RenderFormat { Dot, Svg, Text };
enum class RankDirection { LeftToRight, TopToBottom };

struct RenderOptions {
  RenderFormat format = RenderFormat::Dot;
  bool show_roles = false;  // label wires entity_Role instead of entity
  bool ascii = false;       // cap/cup instead of the UTF-8 junction symbols
  RankDirection rank_direction = RankDirection::LeftToRight;
};

/// Deterministic relabeling: wires and boxes are renumbered by breadth-first
/// discovery from the input boundary (then the output boundary), boxes on a
/// wire visited in structure-key order. Evaluations of different terms for
/// the same diagram get the same labels unless identical twin boxes share a
/// wire.
inline OpenHypergraph canonicalize(const OpenHypergraph& g) {
  std::vector<int> wire_new(g.wire_types.size(), -1);
  std::vector<int> box_new(g.boxes.size(), -1);
  int next_wire = 0, next_box = 0;
  std::deque<int> queue;

  auto see_wire = [&](int w) {
    if (wire_new[w] == -1) {
      wire_new[w] = next_wire++;
      queue.push_back(w);
    }
  };
  for (int w : g.inputs) see_wire(w);
  for (int w : g.outputs) see_wire(w);

  auto visit_boxes_on = [&](int wire) {
    std::vector<std::pair<std::string, int>> adjacent;
    for (size_t b = 0; b < g.boxes.size(); ++b) {
      if (box_new[b] != -1) continue;
      bool touches = false;
      for (int w : g.boxes[b].in_wires) touches = touches || w == wire;
      for (int w : g.boxes[b].out_wires) touches = touches || w == wire;
      if (touches) adjacent.emplace_back(g.boxes[b].sig.structure_key(), static_cast<int>(b));
    }
    std::sort(adjacent.begin(), adjacent.end());
    for (const auto& [key, b] : adjacent) {
      box_new[b] = next_box++;
      for (int w : g.boxes[b].in_wires) see_wire(w);
      for (int w : g.boxes[b].out_wires) see_wire(w);
    }
  };
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    visit_boxes_on(w);
  }

  // Disconnected leftovers, in a stable order.
  std::vector<std::pair<std::string, int>> rest;
  for (size_t b = 0; b < g.boxes.size(); ++b)
    if (box_new[b] == -1) rest.emplace_back(g.boxes[b].sig.structure_key(), static_cast<int>(b));
  std::sort(rest.begin(), rest.end());
  for (const auto& [key, b] : rest) {
    box_new[b] = next_box++;
    for (int w : g.boxes[b].in_wires) see_wire(w);
    for (int w : g.boxes[b].out_wires) see_wire(w);
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      visit_boxes_on(w);
    }
  }
  std::vector<std::pair<RoleIndexedActant, int>> loose;
  for (size_t w = 0; w < g.wire_types.size(); ++w)
    if (wire_new[w] == -1) loose.emplace_back(g.wire_types[w], static_cast<int>(w));
  std::sort(loose.begin(), loose.end());
  for (const auto& [t, w] : loose) wire_new[w] = next_wire++;

  OpenHypergraph out;
  out.wire_types.resize(g.wire_types.size(), {"", Role::Object});
  for (size_t w = 0; w < g.wire_types.size(); ++w) out.wire_types[wire_new[w]] = g.wire_types[w];
  out.boxes.resize(g.boxes.size());
  for (size_t b = 0; b < g.boxes.size(); ++b) {
    Box box = g.boxes[b];
    for (int& w : box.in_wires) w = wire_new[w];
    for (int& w : box.out_wires) w = wire_new[w];
    out.boxes[box_new[b]] = std::move(box);
  }
  for (int w : g.inputs) out.inputs.push_back(wire_new[w]);
  for (int w : g.outputs) out.outputs.push_back(wire_new[w]);
  return out;
}

namespace detail {

inline std::string wire_label(const RoleIndexedActant& t, bool show_roles) {
  return show_roles ? t.id() : t.entity;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Wire endpoints split by direction: producers feed the wire, consumers
// drain it. Boundary inputs produce; boundary outputs consume.
struct WireEnds {
  std::vector<std::string> producers;
  std::vector<std::string> consumers;
};

inline std::vector<WireEnds> wire_ends(const OpenHypergraph& g) {
  std::vector<WireEnds> ends(g.wire_types.size());
  for (size_t i = 0; i < g.inputs.size(); ++i)
    ends[g.inputs[i]].producers.push_back("in" + std::to_string(i));
  for (size_t b = 0; b < g.boxes.size(); ++b) {
    for (int w : g.boxes[b].in_wires) ends[w].consumers.push_back("b" + std::to_string(b));
    for (int w : g.boxes[b].out_wires) ends[w].producers.push_back("b" + std::to_string(b));
  }
  for (size_t i = 0; i < g.outputs.size(); ++i)
    ends[g.outputs[i]].consumers.push_back("out" + std::to_string(i));
  return ends;
}

}  // namespace detail

/// DOT output: one node per box, one filled dot per wire that is not a plain
/// point-to-point connection, plaintext anchors for the boundary. Output is
/// a pure function of the (canonicalized) hypergraph.
inline std::string render_dot(const OpenHypergraph& graph, const RenderOptions& opts = {}) {
  OpenHypergraph g = canonicalize(graph);
  std::ostringstream out;
  out << "digraph nc {\n";
  out << "  rankdir=" << (opts.rank_direction == RankDirection::LeftToRight ? "LR" : "TB")
      << ";\n";
  out << "  node [fontname=\"Helvetica\" fontsize=11];\n";
  out << "  edge [fontname=\"Helvetica\" fontsize=10];\n";
  for (size_t i = 0; i < g.inputs.size(); ++i)
    out << "  in" << i << " [shape=plaintext label=\""
        << detail::dot_escape(detail::wire_label(g.wire_types[g.inputs[i]], opts.show_roles))
        << "\"];\n";
  for (size_t b = 0; b < g.boxes.size(); ++b)
    out << "  b" << b << " [shape=box style=rounded label=\""
        << detail::dot_escape(g.boxes[b].sig.display_label(opts.ascii)) << "\"];\n";
  for (size_t i = 0; i < g.outputs.size(); ++i)
    out << "  out" << i << " [shape=plaintext label=\""
        << detail::dot_escape(detail::wire_label(g.wire_types[g.outputs[i]], opts.show_roles))
        << "\"];\n";

  auto ends = detail::wire_ends(g);
  for (size_t w = 0; w < g.wire_types.size(); ++w) {
    std::string label =
        detail::dot_escape(detail::wire_label(g.wire_types[w], opts.show_roles));
    const auto& e = ends[w];
    if (e.producers.size() == 1 && e.consumers.size() == 1) {
      out << "  " << e.producers[0] << " -> " << e.consumers[0] << " [label=\"" << label
          << "\"];\n";
    } else {
      out << "  w" << w << " [shape=point width=0.08];\n";
      for (const auto& p : e.producers)
        out << "  " << p << " -> w" << w << " [label=\"" << label << "\"];\n";
      for (const auto& c : e.consumers)
        out << "  w" << w << " -> " << c << " [label=\"" << label << "\"];\n";
    }
  }
  if (!g.inputs.empty()) {
    out << "  { rank=source;";
    for (size_t i = 0; i < g.inputs.size(); ++i) out << " in" << i << ";";
    out << " }\n";
  }
  if (!g.outputs.empty()) {
    out << "  { rank=sink;";
    for (size_t i = 0; i < g.outputs.size(); ++i) out << " out" << i << ";";
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string render_text(const OpenHypergraph& graph, const RenderOptions& opts = {}) {
  OpenHypergraph g = canonicalize(graph);
  std::ostringstream out;
  out << "inputs:";
  for (int w : g.inputs) out << " " << g.wire_types[w].id();
  out << "\noutputs:";
  for (int w : g.outputs) out << " " << g.wire_types[w].id();
  out << "\nboxes:\n";
  for (size_t b = 0; b < g.boxes.size(); ++b) {
    out << "  b" << b << " " << g.boxes[b].sig.display_label(opts.ascii) << "  in:";
    for (int w : g.boxes[b].in_wires) out << " w" << w;
    out << "  out:";
    for (int w : g.boxes[b].out_wires) out << " w" << w;
    out << "\n";
  }
  out << "wires:\n";
  for (size_t w = 0; w < g.wire_types.size(); ++w)
    out << "  w" << w << " " << g.wire_types[w].id() << "  degree "
        << g.degree(static_cast<int>(w)) << "\n";
  return out.str();
}

namespace detail {

struct SvgLayout {
  // box index -> (layer, slot); boundary anchors get layers 0 and max+1
  std::vector<int> box_layer;
  std::vector<int> box_slot;
  int layers = 0;
};

inline SvgLayout layer_boxes(const OpenHypergraph& g) {
  SvgLayout lay;
  lay.box_layer.assign(g.boxes.size(), 1);
  // Longest-path layering over the box dependency relation.
  bool changed = true;
  int guard = static_cast<int>(g.boxes.size()) + 1;
  while (changed && guard-- > 0) {
    changed = false;
    for (size_t b = 0; b < g.boxes.size(); ++b)
      for (int w : g.boxes[b].in_wires)
        for (size_t b2 = 0; b2 < g.boxes.size(); ++b2)
          if (b2 != b)
            for (int w2 : g.boxes[b2].out_wires)
              if (w2 == w && lay.box_layer[b] < lay.box_layer[b2] + 1) {
                lay.box_layer[b] = lay.box_layer[b2] + 1;
                changed = true;
              }
  }
  lay.layers = 1;
  for (int l : lay.box_layer) lay.layers = std::max(lay.layers, l);
  std::map<int, int> next_slot;
  lay.box_slot.assign(g.boxes.size(), 0);
  for (size_t b = 0; b < g.boxes.size(); ++b) lay.box_slot[b] = next_slot[lay.box_layer[b]]++;
  return lay;
}

}  // namespace detail

/// Minimal layered SVG: boxes by dependency rank, orthogonal wire routing,
/// filled dots on joins. Self-contained SVG 1.1, no external layout tool.
inline std::string render_svg(const OpenHypergraph& graph, const RenderOptions& opts = {}) {
  OpenHypergraph g = canonicalize(graph);
  auto lay = detail::layer_boxes(g);
  const int col = 230, row = 80, bw = 130, bh = 42;
  auto box_x = [&](int b) { return 120 + lay.box_layer[b] * col; };
  auto box_y = [&](int b) { return 50 + lay.box_slot[b] * row; };

  // Endpoint coordinates per wire: producers on the right edge of their box,
  // consumers on the left edge; anchors beyond the outer layers.
  struct Pt {
    double x, y;
  };
  std::vector<std::vector<Pt>> from(g.wire_types.size()), to(g.wire_types.size());
  for (size_t i = 0; i < g.inputs.size(); ++i)
    from[g.inputs[i]].push_back({40.0, 50.0 + static_cast<double>(i) * row / 2});
  for (size_t b = 0; b < g.boxes.size(); ++b) {
    const Box& box = g.boxes[b];
    for (size_t p = 0; p < box.in_wires.size(); ++p)
      to[box.in_wires[p]].push_back(
          {static_cast<double>(box_x(static_cast<int>(b))),
           box_y(static_cast<int>(b)) + bh * (p + 1.0) / (box.in_wires.size() + 1)});
    for (size_t p = 0; p < box.out_wires.size(); ++p)
      from[box.out_wires[p]].push_back(
          {static_cast<double>(box_x(static_cast<int>(b)) + bw),
           box_y(static_cast<int>(b)) + bh * (p + 1.0) / (box.out_wires.size() + 1)});
  }
  double out_x = 120.0 + (lay.layers + 1) * col;
  for (size_t i = 0; i < g.outputs.size(); ++i)
    to[g.outputs[i]].push_back({out_x, 50.0 + static_cast<double>(i) * row / 2});

  std::ostringstream out;
  double height = 50.0 + row * std::max({g.inputs.size(), g.outputs.size(), size_t(2)}) +
                  row * g.boxes.size() / 2.0;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << out_x + 220
      << "\" height=\"" << height << "\" font-family=\"Helvetica\" font-size=\"11\">\n";

  auto orth = [&](Pt a, Pt b) {
    double mid = (a.x + b.x) / 2;
    out << "  <path d=\"M " << a.x << " " << a.y << " H " << mid << " V " << b.y << " H " << b.x
        << "\" fill=\"none\" stroke=\"black\"/>\n";
  };
  for (size_t w = 0; w < g.wire_types.size(); ++w) {
    std::string label = detail::wire_label(g.wire_types[w], opts.show_roles);
    const auto& ps = from[w];
    const auto& cs = to[w];
    int degree = static_cast<int>(ps.size() + cs.size());
    if (ps.size() == 1 && cs.size() == 1) {
      orth(ps[0], cs[0]);
      out << "  <text x=\"" << (ps[0].x + cs[0].x) / 2 - 30 << "\" y=\"" << ps[0].y - 4 << "\">"
          << label << "</text>\n";
    } else if (degree > 0) {
      Pt dot{0, 0};
      for (const auto& p : ps) dot = {dot.x + p.x, dot.y + p.y};
      for (const auto& c : cs) dot = {dot.x + c.x, dot.y + c.y};
      dot = {dot.x / degree, dot.y / degree};
      for (const auto& p : ps) orth(p, dot);
      for (const auto& c : cs) orth(dot, c);
      out << "  <circle cx=\"" << dot.x << "\" cy=\"" << dot.y << "\" r=\"3.5\"/>\n";
      out << "  <text x=\"" << dot.x + 6 << "\" y=\"" << dot.y - 5 << "\">" << label
          << "</text>\n";
    }
  }
  for (size_t b = 0; b < g.boxes.size(); ++b) {
    out << "  <rect x=\"" << box_x(static_cast<int>(b)) << "\" y=\"" << box_y(static_cast<int>(b))
        << "\" width=\"" << bw << "\" height=\"" << bh
        << "\" rx=\"5\" fill=\"white\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << box_x(static_cast<int>(b)) + bw / 2 << "\" y=\""
        << box_y(static_cast<int>(b)) + bh / 2 + 4 << "\" text-anchor=\"middle\">"
        << g.boxes[b].sig.display_label(opts.ascii) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline std::string render(const OpenHypergraph& g, const RenderOptions& opts) {
  switch (opts.format) {
    case RenderFormat::Dot:
      return render_dot(g, opts);
    case RenderFormat::Svg:
      return render_svg(g, opts);
    case RenderFormat::Text:
      return render_text(g, opts);
  }
  throw error("render: unreachable");
}

}  // namespace nc
