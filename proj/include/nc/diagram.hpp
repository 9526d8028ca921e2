#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nc/narrative.hpp"
#include "nc/report.hpp"

namespace nc {

/// An object of the free symmetric monoidal category: a finite tensor word
/// over role-indexed actants. The empty word is the monoidal unit I.
using TensorWord = std::vector<RoleIndexedActant>;

inline std::string word_str(const TensorWord& w) {
  if (w.empty()) return "I";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) out += (i ? " ⊗ " : "") + w[i].id();
  return out;
}

enum class GenKind { Np, Factitive };

/// A generating morphism: an NP box (one SubjectDoing wire in, [S2, X1..Xk]
/// out) or a factitive box instantiated with explicit arity at its use site.
struct GeneratorSig {
  std::string id;  // NP id, or the factitive instance name
  GenKind kind = GenKind::Np;
  std::optional<Junction> junction;  // NP boxes only
  std::string modality;              // factitive boxes: causing-to-be / causing-to-do
  TensorWord dom;
  TensorWord cod;

  bool operator==(const GeneratorSig&) const = default;

  std::string display_label(bool ascii = false) const {
    if (kind == GenKind::Factitive) return modality;
    return junction ? junction_symbol(*junction, ascii) + id : id;
  }

  /// Box identity used by isomorphism checking: NP boxes by id, junction and
  /// interface; factitive boxes by modality and interface (the instance name
  /// is bookkeeping, not structure).
  std::string structure_key() const {
    std::string key = kind == GenKind::Np ? "np:" + id : "fact:" + modality;
    if (junction) key += *junction == Junction::Conjunction ? ":cap" : ":cup";
    key += "|" + word_str(dom) + "|" + word_str(cod);
    return key;
  }
};

inline GeneratorSig np_generator(const NarrativeProgram& p) {
  GeneratorSig sig;
  sig.id = p.id;
  sig.kind = GenKind::Np;
  sig.junction = p.junction;
  sig.dom = {p.subject_doing()};
  sig.cod.assign(p.actorializes.begin() + 1, p.actorializes.end());
  return sig;
}

// --- morphism terms ----------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// AST of morphisms: generators, identities and symmetries, the Frobenius
/// operations, closed under sequential composition and tensor. dom/cod are
/// cached at construction; every constructor checks its typing rule.
struct Term {
  enum class Kind { Identity, Symmetry, Generator, Copy, Discard, Merge, Create, Compose, Tensor };

  Kind kind;
  TensorWord dom;
  TensorWord cod;
  TensorWord left_word, right_word;          // Symmetry
  GeneratorSig gen;                          // Generator
  std::optional<RoleIndexedActant> wire;     // Frobenius nodes
  TermPtr lhs, rhs;                          // Compose / Tensor
};

namespace detail {
inline TermPtr make_term(Term t) { return std::make_shared<const Term>(std::move(t)); }
}

inline TermPtr identity(TensorWord w) {
  Term t{Term::Kind::Identity, w, w, {}, {}, {}, {}, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr symmetry(TensorWord a, TensorWord b) {
  TensorWord dom = a, cod = b;
  dom.insert(dom.end(), b.begin(), b.end());
  cod.insert(cod.end(), a.begin(), a.end());
  Term t{Term::Kind::Symmetry, std::move(dom), std::move(cod), std::move(a), std::move(b),
         {},   {},             nullptr,        nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr generator(GeneratorSig sig) {
  Term t{Term::Kind::Generator, sig.dom, sig.cod, {}, {}, std::move(sig), {}, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr frobenius_copy(RoleIndexedActant x) {
  Term t{Term::Kind::Copy, {x}, {x, x}, {}, {}, {}, x, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr frobenius_discard(RoleIndexedActant x) {
  Term t{Term::Kind::Discard, {x}, {}, {}, {}, {}, x, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr frobenius_merge(RoleIndexedActant x) {
  Term t{Term::Kind::Merge, {x, x}, {x}, {}, {}, {}, x, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

inline TermPtr frobenius_create(RoleIndexedActant x) {
  Term t{Term::Kind::Create, {}, {x}, {}, {}, {}, x, nullptr, nullptr};
  return detail::make_term(std::move(t));
}

/// Sequential composition, diagrammatic order: f first, then g.
inline TermPtr compose(TermPtr f, TermPtr g) {
  for (size_t i = 0; i < std::min(f->cod.size(), g->dom.size()); ++i)
    if (f->cod[i] != g->dom[i])
      throw error("compose: type mismatch at factor " + std::to_string(i) + ": " +
                  f->cod[i].id() + " vs " + g->dom[i].id());
  if (f->cod.size() != g->dom.size())
    throw error("compose: type mismatch at factor " +
                std::to_string(std::min(f->cod.size(), g->dom.size())) +
                ": interface lengths differ, cod " + word_str(f->cod) + " vs dom " +
                word_str(g->dom));
  Term t{Term::Kind::Compose, f->dom, g->cod, {}, {}, {}, {}, std::move(f), std::move(g)};
  return detail::make_term(std::move(t));
}

inline TermPtr tensor(TermPtr f, TermPtr g) {
  TensorWord dom = f->dom, cod = f->cod;
  dom.insert(dom.end(), g->dom.begin(), g->dom.end());
  cod.insert(cod.end(), g->cod.begin(), g->cod.end());
  Term t{Term::Kind::Tensor, std::move(dom), std::move(cod), {}, {}, {}, {}, std::move(f),
         std::move(g)};
  return detail::make_term(std::move(t));
}

/// Replaces every generator box with the given id by `definition` (one pass;
/// occurrences inside the definition itself are not re-expanded).
inline TermPtr substitute(const TermPtr& host, const std::string& generator_id,
                          const TermPtr& definition) {
  switch (host->kind) {
    case Term::Kind::Generator:
      if (host->gen.id == generator_id) {
        if (definition->dom != host->gen.dom || definition->cod != host->gen.cod)
          throw error("substitute: definition interface " + word_str(definition->dom) + " -> " +
                      word_str(definition->cod) + " does not match box " + generator_id + ": " +
                      word_str(host->gen.dom) + " -> " + word_str(host->gen.cod));
        return definition;
      }
      return host;
    case Term::Kind::Compose:
    case Term::Kind::Tensor: {
      TermPtr l = substitute(host->lhs, generator_id, definition);
      TermPtr r = substitute(host->rhs, generator_id, definition);
      if (l == host->lhs && r == host->rhs) return host;
      return host->kind == Term::Kind::Compose ? compose(l, r) : tensor(l, r);
    }
    default:
      return host;
  }
}

// --- open hypergraphs ----------------------------------------------------

struct Box {
  GeneratorSig sig;
  std::vector<int> in_wires;
  std::vector<int> out_wires;
};

/// The evaluated, semantic form of a term. Wires are equivalence classes of
/// ports; Frobenius generators never appear as boxes, they only shape wire
/// classes, so specialness and the Frobenius laws hold by construction.
/// Morphism equality is boundary-preserving isomorphism (iso_check).
struct OpenHypergraph {
  std::vector<RoleIndexedActant> wire_types;
  std::vector<Box> boxes;
  std::vector<int> inputs;   // boundary wire ids, ordered
  std::vector<int> outputs;

  int add_wire(const RoleIndexedActant& type) {
    wire_types.push_back(type);
    return static_cast<int>(wire_types.size()) - 1;
  }

  void add_box(GeneratorSig sig, std::vector<int> in, std::vector<int> out) {
    if (in.size() != sig.dom.size() || out.size() != sig.cod.size())
      throw error("add_box: port count mismatch for " + sig.id);
    boxes.push_back({std::move(sig), std::move(in), std::move(out)});
  }

  TensorWord input_word() const {
    TensorWord w;
    for (int i : inputs) w.push_back(wire_types[i]);
    return w;
  }

  TensorWord output_word() const {
    TensorWord w;
    for (int i : outputs) w.push_back(wire_types[i]);
    return w;
  }

  /// Box ports plus boundary occurrences on the wire.
  int degree(int wire) const {
    int d = 0;
    for (int w : inputs) d += w == wire;
    for (int w : outputs) d += w == wire;
    for (const auto& b : boxes) {
      for (int w : b.in_wires) d += w == wire;
      for (int w : b.out_wires) d += w == wire;
    }
    return d;
  }

  int wires_of_degree_at_least(int k) const {
    int n = 0;
    for (size_t w = 0; w < wire_types.size(); ++w) n += degree(static_cast<int>(w)) >= k;
    return n;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Structural evaluation into an open hypergraph. Compose fuses boundary
/// wires by union-find; Tensor is disjoint union with boundary concatenation;
/// Sym permutes boundary order; Copy/Merge/Create/Discard are single wire
/// classes of boundary degree 3/3/1/1.
inline OpenHypergraph evaluate(const TermPtr& t) {
  OpenHypergraph g;
  switch (t->kind) {
    case Term::Kind::Identity:
      for (const auto& x : t->dom) {
        int w = g.add_wire(x);
        g.inputs.push_back(w);
        g.outputs.push_back(w);
      }
      return g;
    case Term::Kind::Symmetry: {
      std::vector<int> left, right;
      for (const auto& x : t->left_word) left.push_back(g.add_wire(x));
      for (const auto& x : t->right_word) right.push_back(g.add_wire(x));
      g.inputs = left;
      g.inputs.insert(g.inputs.end(), right.begin(), right.end());
      g.outputs = right;
      g.outputs.insert(g.outputs.end(), left.begin(), left.end());
      return g;
    }
    case Term::Kind::Generator: {
      std::vector<int> in, out;
      for (const auto& x : t->gen.dom) in.push_back(g.add_wire(x));
      for (const auto& x : t->gen.cod) out.push_back(g.add_wire(x));
      g.inputs = in;
      g.outputs = out;
      g.add_box(t->gen, std::move(in), std::move(out));
      return g;
    }
    case Term::Kind::Copy: {
      int w = g.add_wire(*t->wire);
      g.inputs = {w};
      g.outputs = {w, w};
      return g;
    }
    case Term::Kind::Merge: {
      int w = g.add_wire(*t->wire);
      g.inputs = {w, w};
      g.outputs = {w};
      return g;
    }
    case Term::Kind::Create: {
      int w = g.add_wire(*t->wire);
      g.outputs = {w};
      return g;
    }
    case Term::Kind::Discard: {
      int w = g.add_wire(*t->wire);
      g.inputs = {w};
      return g;
    }
    case Term::Kind::Tensor: {
      OpenHypergraph a = evaluate(t->lhs);
      OpenHypergraph b = evaluate(t->rhs);
      int offset = static_cast<int>(a.wire_types.size());
      for (const auto& ty : b.wire_types) a.wire_types.push_back(ty);
      for (auto box : b.boxes) {
        for (int& w : box.in_wires) w += offset;
        for (int& w : box.out_wires) w += offset;
        a.boxes.push_back(std::move(box));
      }
      for (int w : b.inputs) a.inputs.push_back(w + offset);
      for (int w : b.outputs) a.outputs.push_back(w + offset);
      return a;
    }
    case Term::Kind::Compose: {
      OpenHypergraph a = evaluate(t->lhs);
      OpenHypergraph b = evaluate(t->rhs);
      int offset = static_cast<int>(a.wire_types.size());
      size_t total = a.wire_types.size() + b.wire_types.size();
      detail::UnionFind uf(total);
      for (size_t i = 0; i < a.outputs.size(); ++i)
        uf.unite(a.outputs[i], b.inputs[i] + offset);

      std::vector<int> compact(total, -1);
      OpenHypergraph out;
      auto wire_of = [&](int old) {
        int root = uf.find(old);
        if (compact[root] == -1)
          compact[root] = out.add_wire(root < offset ? a.wire_types[root]
                                                     : b.wire_types[root - offset]);
        return compact[root];
      };
      for (size_t w = 0; w < total; ++w) wire_of(static_cast<int>(w));
      for (auto box : a.boxes) {
        for (int& w : box.in_wires) w = wire_of(w);
        for (int& w : box.out_wires) w = wire_of(w);
        out.boxes.push_back(std::move(box));
      }
      for (auto box : b.boxes) {
        for (int& w : box.in_wires) w = wire_of(w + offset);
        for (int& w : box.out_wires) w = wire_of(w + offset);
        out.boxes.push_back(std::move(box));
      }
      for (int w : a.inputs) out.inputs.push_back(wire_of(w));
      for (int w : b.outputs) out.outputs.push_back(wire_of(w + offset));
      return out;
    }
  }
  throw error("evaluate: unreachable");
}

// --- isomorphism ---------------------------------------------------------

struct IsoWitness {
  std::vector<int> box_map;   // a-box index -> b-box index
  std::vector<int> wire_map;  // a-wire id -> b-wire id
};

namespace detail {

/// Per-wire invariant used for pruning: type plus boundary/port profile.
inline std::string wire_profile(const OpenHypergraph& g, int wire) {
  int in = 0, out = 0;
  for (int w : g.inputs) in += w == wire;
  for (int w : g.outputs) out += w == wire;
  std::map<std::string, int> ports;
  for (const auto& b : g.boxes) {
    for (size_t i = 0; i < b.in_wires.size(); ++i)
      if (b.in_wires[i] == wire) ports[b.sig.structure_key() + "/in" + std::to_string(i)]++;
    for (size_t i = 0; i < b.out_wires.size(); ++i)
      if (b.out_wires[i] == wire) ports[b.sig.structure_key() + "/out" + std::to_string(i)]++;
  }
  std::string key = g.wire_types[wire].id() + "#" + std::to_string(in) + "," + std::to_string(out);
  for (const auto& [p, n] : ports) key += "|" + p + "*" + std::to_string(n);
  return key;
}

}  // namespace detail

/// Boundary-preserving isomorphism of labelled open hypergraphs: a bijection
/// on boxes and wires preserving structure keys, port order, wire types and
/// boundary order. Backtracking over boxes with type/degree pruning; returns
/// the lexicographically first witness found.
inline std::optional<IsoWitness> iso_check(const OpenHypergraph& a, const OpenHypergraph& b) {
  if (a.boxes.size() != b.boxes.size() || a.wire_types.size() != b.wire_types.size())
    return std::nullopt;
  if (a.input_word() != b.input_word() || a.output_word() != b.output_word())
    return std::nullopt;

  auto keys = [](const OpenHypergraph& g) {
    std::vector<std::string> ks;
    for (const auto& box : g.boxes) ks.push_back(box.sig.structure_key());
    std::sort(ks.begin(), ks.end());
    return ks;
  };
  if (keys(a) != keys(b)) return std::nullopt;
  auto profiles = [](const OpenHypergraph& g) {
    std::vector<std::string> ps;
    for (size_t w = 0; w < g.wire_types.size(); ++w)
      ps.push_back(detail::wire_profile(g, static_cast<int>(w)));
    std::sort(ps.begin(), ps.end());
    return ps;
  };
  if (profiles(a) != profiles(b)) return std::nullopt;

  std::vector<int> wire_map(a.wire_types.size(), -1), wire_rev(b.wire_types.size(), -1);
  std::vector<int> trail;
  auto bind = [&](int wa, int wb) {
    if (wire_map[wa] != -1 || wire_rev[wb] != -1)
      return wire_map[wa] == wb && wire_rev[wb] == wa;
    if (!(a.wire_types[wa] == b.wire_types[wb])) return false;
    wire_map[wa] = wb;
    wire_rev[wb] = wa;
    trail.push_back(wa);
    return true;
  };
  auto rollback = [&](size_t mark) {
    while (trail.size() > mark) {
      int wa = trail.back();
      trail.pop_back();
      wire_rev[wire_map[wa]] = -1;
      wire_map[wa] = -1;
    }
  };

  for (size_t i = 0; i < a.inputs.size(); ++i)
    if (!bind(a.inputs[i], b.inputs[i])) return std::nullopt;
  for (size_t i = 0; i < a.outputs.size(); ++i)
    if (!bind(a.outputs[i], b.outputs[i])) return std::nullopt;

  size_t n = a.boxes.size();
  std::vector<int> box_map(n, -1);
  std::vector<bool> used(b.boxes.size(), false);
  std::vector<std::string> a_keys, b_keys;
  for (const auto& box : a.boxes) a_keys.push_back(box.sig.structure_key());
  for (const auto& box : b.boxes) b_keys.push_back(box.sig.structure_key());

  // Most-constrained-first ordering: fewer same-key candidates first.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> candidate_count(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (a_keys[i] == b_keys[j]) candidate_count[i]++;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return candidate_count[x] < candidate_count[y]; });

  std::function<bool(size_t)> assign = [&](size_t step) -> bool {
    if (step == n) return true;
    int ai = order[step];
    const Box& box_a = a.boxes[ai];
    for (size_t bj = 0; bj < b.boxes.size(); ++bj) {
      if (used[bj]) continue;
      const Box& box_b = b.boxes[bj];
      if (a_keys[ai] != b_keys[bj]) continue;
      size_t mark = trail.size();
      bool ok = true;
      for (size_t p = 0; ok && p < box_a.in_wires.size(); ++p)
        ok = bind(box_a.in_wires[p], box_b.in_wires[p]);
      for (size_t p = 0; ok && p < box_a.out_wires.size(); ++p)
        ok = bind(box_a.out_wires[p], box_b.out_wires[p]);
      if (ok) {
        used[bj] = true;
        box_map[ai] = static_cast<int>(bj);
        if (assign(step + 1)) return true;
        used[bj] = false;
        box_map[ai] = -1;
      }
      rollback(mark);
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  // Whatever is still unmapped has no ports at all (closed loops); match by
  // type in canonical order.
  std::vector<int> loose_a, loose_b;
  for (size_t w = 0; w < a.wire_types.size(); ++w)
    if (wire_map[w] == -1) loose_a.push_back(static_cast<int>(w));
  for (size_t w = 0; w < b.wire_types.size(); ++w)
    if (wire_rev[w] == -1) loose_b.push_back(static_cast<int>(w));
  auto by_type = [](const OpenHypergraph& g) {
    return [&g](int x, int y) { return g.wire_types[x] < g.wire_types[y]; };
  };
  std::sort(loose_a.begin(), loose_a.end(), by_type(a));
  std::sort(loose_b.begin(), loose_b.end(), by_type(b));
  for (size_t i = 0; i < loose_a.size(); ++i) {
    if (!(a.wire_types[loose_a[i]] == b.wire_types[loose_b[i]])) return std::nullopt;
    wire_map[loose_a[i]] = loose_b[i];
  }

  return IsoWitness{box_map, wire_map};
}

inline bool iso(const TermPtr& s, const TermPtr& t) {
  return iso_check(evaluate(s), evaluate(t)).has_value();
}

}  // namespace nc
