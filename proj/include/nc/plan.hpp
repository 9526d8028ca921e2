#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nc/diagram.hpp"
#include "nc/narrative.hpp"

namespace nc {

struct GeneratorRef {
  std::string id;
  std::optional<TensorWord> dom_override;
  std::optional<TensorWord> cod_override;
};

/// An explicit wiring recipe for a narrative trajectory: which generators
/// appear as top-level boxes, which actants are copied into several
/// consumers or merged from several producers, and the boundary order.
/// Degree-2 wiring is inferred by type matching; anything ambiguous needs a
/// directive. Definitions register the terms that substitute dependent-NP
/// boxes; factitives declare the use-site arity of causing-to-be/do boxes.
struct TrajectoryPlan {
  std::string name;
  std::vector<RoleIndexedActant> inputs;
  std::vector<RoleIndexedActant> outputs;
  std::vector<GeneratorRef> generators;
  std::vector<std::pair<RoleIndexedActant, std::vector<std::string>>> copies;
  std::vector<std::pair<RoleIndexedActant, std::vector<std::string>>> merges;
  std::map<std::string, GeneratorSig> factitives;
  std::vector<std::pair<std::string, std::vector<std::string>>> definitions;

  const std::vector<std::string>* definition(const std::string& id) const {
    for (const auto& [k, seq] : definitions)
      if (k == id) return &seq;
    return nullptr;
  }
};

namespace detail {

inline TensorWord parse_word(const nlohmann::ordered_json& j) {
  TensorWord w;
  for (const auto& token : j) w.push_back(RoleIndexedActant::parse(token.get<std::string>()));
  return w;
}

}  // namespace detail

inline TrajectoryPlan parse_plan(const std::string& text, const std::string& origin = "<plan>") {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(origin + ": " + e.what());
  }
  try {
    TrajectoryPlan plan;
    plan.name = j.value("name", "");
    plan.inputs = detail::parse_word(j.at("inputs"));
    plan.outputs = detail::parse_word(j.at("outputs"));
    for (const auto& jg : j.at("generators")) {
      GeneratorRef ref;
      if (jg.is_string()) {
        ref.id = jg.get<std::string>();
      } else {
        ref.id = jg.at("id").get<std::string>();
        if (jg.contains("dom")) ref.dom_override = detail::parse_word(jg.at("dom"));
        if (jg.contains("cod")) ref.cod_override = detail::parse_word(jg.at("cod"));
      }
      plan.generators.push_back(std::move(ref));
    }
    if (j.contains("copies"))
      for (const auto& [token, consumers] : j.at("copies").items())
        plan.copies.emplace_back(RoleIndexedActant::parse(token),
                                 consumers.get<std::vector<std::string>>());
    if (j.contains("merges"))
      for (const auto& [token, producers] : j.at("merges").items())
        plan.merges.emplace_back(RoleIndexedActant::parse(token),
                                 producers.get<std::vector<std::string>>());
    if (j.contains("factitives"))
      for (const auto& [id, jf] : j.at("factitives").items()) {
        GeneratorSig sig;
        sig.id = id;
        sig.kind = GenKind::Factitive;
        sig.modality = jf.at("modality").get<std::string>();
        if (sig.modality != "causing-to-be" && sig.modality != "causing-to-do")
          throw error(origin + ": factitive " + id + ": modality must be causing-to-be or causing-to-do");
        sig.dom = detail::parse_word(jf.at("dom"));
        sig.cod = detail::parse_word(jf.at("cod"));
        plan.factitives[id] = std::move(sig);
      }
    if (j.contains("definitions"))
      for (const auto& [id, seq] : j.at("definitions").items())
        plan.definitions.emplace_back(id, seq.get<std::vector<std::string>>());
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw error(origin + ": " + e.what());
  }
}

namespace detail {

inline GeneratorSig resolve_generator_impl(const NPCorpus& corpus, const TrajectoryPlan& plan,
                                           const GeneratorRef& ref,
                                           std::set<std::string>& visiting);

inline TermPtr definition_term_impl(const NPCorpus& corpus, const TrajectoryPlan& plan,
                                    const std::string& id, std::set<std::string>& visiting) {
  const auto* seq = plan.definition(id);
  if (!seq) throw error("no definition registered for generator '" + id + "'");
  if (seq->empty()) throw error("definition for '" + id + "' is empty");
  if (!visiting.insert(id).second) throw error("recursive definition for '" + id + "'");
  TermPtr term;
  for (const auto& step : *seq) {
    GeneratorSig sig = resolve_generator_impl(corpus, plan, {step, {}, {}}, visiting);
    term = term ? compose(term, generator(sig)) : generator(sig);
  }
  visiting.erase(id);
  return term;
}

inline GeneratorSig resolve_generator_impl(const NPCorpus& corpus, const TrajectoryPlan& plan,
                                           const GeneratorRef& ref,
                                           std::set<std::string>& visiting) {
  GeneratorSig sig;
  auto fact = plan.factitives.find(ref.id);
  if (fact != plan.factitives.end()) {
    sig = fact->second;
  } else {
    const NarrativeProgram& p = corpus.require(ref.id);
    if (plan.definition(ref.id)) {
      // A dependent NP appears as an opaque box whose interface is that of
      // its registered definition (which may differ from the canonical
      // generator: the definition's own S1 feeds it).
      TermPtr def = definition_term_impl(corpus, plan, ref.id, visiting);
      sig.id = p.id;
      sig.kind = GenKind::Np;
      sig.junction = p.junction;
      sig.dom = def->dom;
      sig.cod = def->cod;
    } else {
      sig = np_generator(p);
    }
  }
  if (ref.dom_override) sig.dom = *ref.dom_override;
  if (ref.cod_override) sig.cod = *ref.cod_override;
  return sig;
}

}  // namespace detail

inline GeneratorSig resolve_generator(const NPCorpus& corpus, const TrajectoryPlan& plan,
                                      const GeneratorRef& ref) {
  std::set<std::string> visiting;
  return detail::resolve_generator_impl(corpus, plan, ref, visiting);
}

/// The registered definition of a dependent-NP box, as a composition chain.
inline TermPtr definition_term(const NPCorpus& corpus, const TrajectoryPlan& plan,
                               const std::string& id) {
  std::set<std::string> visiting;
  return detail::definition_term_impl(corpus, plan, id, visiting);
}

namespace detail {

// Channel bookkeeping for term construction: every open wire end between
// layers is tagged with where it came from.
struct ChanKey {
  std::array<int, 3> v;  // {kind, a, b}: 0 input; 1 box out-port; 2 copy leg; 3 merged wire
  bool operator==(const ChanKey&) const = default;
};
inline ChanKey input_key(int k) { return {{0, k, 0}}; }
inline ChanKey boxout_key(int box, int port) { return {{1, box, port}}; }
inline ChanKey copyleg_key(int group, int leg) { return {{2, group, leg}}; }
inline ChanKey merged_key(int group) { return {{3, group, 0}}; }

struct Channel {
  RoleIndexedActant type;
  ChanKey key;
};

struct TermBuilder {
  TermPtr term;
  std::vector<Channel> channels;

  TensorWord word(size_t from, size_t to) const {
    TensorWord w;
    for (size_t i = from; i < to; ++i) w.push_back(channels[i].type);
    return w;
  }

  size_t find(const ChanKey& key) const {
    for (size_t i = 0; i < channels.size(); ++i)
      if (channels[i].key == key) return i;
    throw error("build_trajectory: internal wiring error (missing channel)");
  }

  void apply(size_t pos, size_t consumed, TermPtr piece, std::vector<Channel> produced) {
    TensorWord pre = word(0, pos), post = word(pos + consumed, channels.size());
    TermPtr layer = std::move(piece);
    if (!post.empty()) layer = tensor(layer, identity(post));
    if (!pre.empty()) layer = tensor(identity(pre), layer);
    term = compose(term, layer);
    channels.erase(channels.begin() + pos, channels.begin() + pos + consumed);
    channels.insert(channels.begin() + pos, produced.begin(), produced.end());
  }

  void swap_adjacent(size_t i) {
    Channel a = channels[i], b = channels[i + 1];
    apply(i, 2, symmetry({a.type}, {b.type}), {b, a});
  }

  void move_to(size_t from, size_t to) {
    for (size_t i = from; i > to; --i) swap_adjacent(i - 1);
  }
};

}  // namespace detail

/// Assembles the trajectory term: inputs enter in plan order, copies fan
/// SubjectDoing (or any directed) wires out, boxes fire in dependency order,
/// merges join directed producers, and the boundary is permuted into the
/// plan's output order. Every box in the result is an NP or factitive
/// generator; Copy/Merge/Sym are structural.
inline TermPtr build_trajectory(const NPCorpus& corpus, const TrajectoryPlan& plan) {
  using detail::ChanKey;

  // Resolve top-level boxes.
  std::vector<GeneratorSig> boxes;
  std::map<std::string, int> box_index;
  for (const auto& ref : plan.generators) {
    if (box_index.count(ref.id)) throw error("plan: duplicate generator '" + ref.id + "'");
    box_index[ref.id] = static_cast<int>(boxes.size());
    boxes.push_back(resolve_generator(corpus, plan, ref));
  }
  auto box_of = [&](const std::string& name) {
    auto it = box_index.find(name);
    if (it == box_index.end()) throw error("plan: unknown generator '" + name + "' in directive");
    return it->second;
  };

  std::vector<bool> input_claimed(plan.inputs.size(), false);
  std::vector<std::vector<bool>> out_claimed;
  for (const auto& b : boxes) out_claimed.emplace_back(b.cod.size(), false);

  // Merge directives claim one out-port per listed producer.
  struct MergeGroup {
    RoleIndexedActant type;
    std::vector<std::pair<int, int>> members;  // (box, out-port)
    bool sunk = false;    // consumed by an in-port rather than the boundary
    bool formed = false;  // already realized in the term
  };
  std::vector<MergeGroup> merge_groups;
  for (const auto& [type, producers] : plan.merges) {
    if (producers.size() < 2)
      throw error("plan: merge of '" + type.id() + "' needs at least two producers");
    MergeGroup group{type, {}, false, false};
    for (const auto& name : producers) {
      int b = box_of(name);
      int port = -1;
      for (size_t p = 0; p < boxes[b].cod.size(); ++p)
        if (!out_claimed[b][p] && boxes[b].cod[p] == type) {
          port = static_cast<int>(p);
          break;
        }
      if (port < 0)
        throw error("plan: merge: generator '" + name + "' has no free out-port of type " +
                    type.id());
      out_claimed[b][port] = true;
      group.members.emplace_back(b, port);
    }
    merge_groups.push_back(std::move(group));
  }

  // Copy directives: resolve the single source, pre-assign consumer in-ports.
  struct Assignment {
    ChanKey key;
    int dep_box = -1;  // producing box, for the dependency order
  };
  std::vector<std::vector<std::optional<Assignment>>> in_src;
  for (const auto& b : boxes) in_src.emplace_back(b.dom.size());

  struct CopyGroup {
    RoleIndexedActant type;
    ChanKey source;
    int source_box = -1;
    int legs = 0;
    bool expanded = false;
  };
  std::vector<CopyGroup> copy_groups;
  for (const auto& [type, consumers] : plan.copies) {
    if (consumers.size() < 2)
      throw error("plan: copy of '" + type.id() + "' needs at least two consumers");
    CopyGroup group;
    group.type = type;
    group.legs = static_cast<int>(consumers.size());
    int found = 0;
    for (size_t k = 0; k < plan.inputs.size(); ++k)
      if (!input_claimed[k] && plan.inputs[k] == type) {
        if (!found) group.source = detail::input_key(static_cast<int>(k));
        ++found;
      }
    for (size_t b = 0; b < boxes.size(); ++b)
      for (size_t p = 0; p < boxes[b].cod.size(); ++p)
        if (!out_claimed[b][p] && boxes[b].cod[p] == type) {
          if (!found) {
            group.source = detail::boxout_key(static_cast<int>(b), static_cast<int>(p));
            group.source_box = static_cast<int>(b);
          }
          ++found;
        }
    if (found != 1)
      throw error("plan: copy of '" + type.id() + "': expected exactly one source, found " +
                  std::to_string(found));
    if (group.source.v[0] == 0)
      input_claimed[group.source.v[1]] = true;
    else
      out_claimed[group.source.v[1]][group.source.v[2]] = true;

    int group_id = static_cast<int>(copy_groups.size());
    for (size_t leg = 0; leg < consumers.size(); ++leg) {
      int b = box_of(consumers[leg]);
      int port = -1;
      for (size_t p = 0; p < boxes[b].dom.size(); ++p)
        if (!in_src[b][p] && boxes[b].dom[p] == type) {
          port = static_cast<int>(p);
          break;
        }
      if (port < 0)
        throw error("plan: copy: generator '" + consumers[leg] + "' has no free in-port of type " +
                    type.id());
      in_src[b][port] = Assignment{detail::copyleg_key(group_id, static_cast<int>(leg)),
                                   group.source_box};
    }
    copy_groups.push_back(std::move(group));
  }

  // Remaining in-ports: a unique source of matching type, or the plan is
  // underdetermined and needs a directive.
  for (size_t b = 0; b < boxes.size(); ++b)
    for (size_t p = 0; p < boxes[b].dom.size(); ++p) {
      if (in_src[b][p]) continue;
      const RoleIndexedActant& type = boxes[b].dom[p];
      std::vector<Assignment> candidates;
      for (size_t k = 0; k < plan.inputs.size(); ++k)
        if (!input_claimed[k] && plan.inputs[k] == type)
          candidates.push_back({detail::input_key(static_cast<int>(k)), -1});
      for (size_t b2 = 0; b2 < boxes.size(); ++b2) {
        if (b2 == b) continue;
        for (size_t p2 = 0; p2 < boxes[b2].cod.size(); ++p2)
          if (!out_claimed[b2][p2] && boxes[b2].cod[p2] == type)
            candidates.push_back({detail::boxout_key(static_cast<int>(b2), static_cast<int>(p2)),
                                  static_cast<int>(b2)});
      }
      for (size_t m = 0; m < merge_groups.size(); ++m)
        if (!merge_groups[m].sunk && merge_groups[m].type == type)
          candidates.push_back({detail::merged_key(static_cast<int>(m)), -1});
      if (candidates.empty())
        throw error("plan: no source for " + boxes[b].id + " input " + std::to_string(p) +
                    " of type " + type.id());
      if (candidates.size() > 1)
        throw error("plan: ambiguous wiring for " + boxes[b].id + " input " + std::to_string(p) +
                    " of type " + type.id() + " (add a copy/merge directive)");
      Assignment chosen = candidates.front();
      if (chosen.key.v[0] == 0)
        input_claimed[chosen.key.v[1]] = true;
      else if (chosen.key.v[0] == 1)
        out_claimed[chosen.key.v[1]][chosen.key.v[2]] = true;
      else
        merge_groups[chosen.key.v[1]].sunk = true;
      in_src[b][p] = chosen;
    }

  // Everything unclaimed flows to the boundary; match against the declared
  // output order by type.
  std::vector<std::pair<RoleIndexedActant, ChanKey>> pool;
  for (size_t k = 0; k < plan.inputs.size(); ++k)
    if (!input_claimed[k]) pool.emplace_back(plan.inputs[k], detail::input_key(static_cast<int>(k)));
  for (size_t b = 0; b < boxes.size(); ++b)
    for (size_t p = 0; p < boxes[b].cod.size(); ++p)
      if (!out_claimed[b][p])
        pool.emplace_back(boxes[b].cod[p],
                          detail::boxout_key(static_cast<int>(b), static_cast<int>(p)));
  for (size_t m = 0; m < merge_groups.size(); ++m)
    if (!merge_groups[m].sunk)
      pool.emplace_back(merge_groups[m].type, detail::merged_key(static_cast<int>(m)));

  if (pool.size() != plan.outputs.size())
    throw error("plan: " + std::to_string(pool.size()) + " wires reach the boundary but " +
                std::to_string(plan.outputs.size()) + " outputs are declared");
  std::vector<ChanKey> out_keys;
  std::vector<bool> pool_used(pool.size(), false);
  for (const auto& type : plan.outputs) {
    int found = -1;
    for (size_t i = 0; i < pool.size(); ++i)
      if (!pool_used[i] && pool[i].first == type) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) throw error("plan: no boundary wire left for declared output " + type.id());
    pool_used[found] = true;
    out_keys.push_back(pool[found].second);
  }

  // Dependency order over boxes induced by the wiring.
  std::vector<std::set<int>> deps(boxes.size());
  for (size_t b = 0; b < boxes.size(); ++b)
    for (size_t p = 0; p < boxes[b].dom.size(); ++p) {
      const Assignment& src = *in_src[b][p];
      if (src.dep_box >= 0 && src.dep_box != static_cast<int>(b)) deps[b].insert(src.dep_box);
      if (src.key.v[0] == 3)
        for (const auto& [mb, mp] : merge_groups[src.key.v[1]].members)
          if (mb != static_cast<int>(b)) deps[b].insert(mb);
    }
  std::vector<int> topo;
  std::vector<bool> placed(boxes.size(), false);
  while (topo.size() < boxes.size()) {
    size_t before = topo.size();
    for (size_t b = 0; b < boxes.size(); ++b) {
      if (placed[b]) continue;
      bool ready = true;
      for (int d : deps[b]) ready = ready && placed[d];
      if (ready) {
        placed[b] = true;
        topo.push_back(static_cast<int>(b));
      }
    }
    if (topo.size() == before) throw error("plan: wiring is cyclic");
  }

  // Term construction.
  detail::TermBuilder builder;
  TensorWord input_word = plan.inputs;
  builder.term = identity(input_word);
  for (size_t k = 0; k < plan.inputs.size(); ++k)
    builder.channels.push_back({plan.inputs[k], detail::input_key(static_cast<int>(k))});

  auto expand_copy = [&](int g) {
    CopyGroup& group = copy_groups[g];
    if (group.expanded) return;
    size_t pos = builder.find(group.source);
    builder.channels[pos].key = detail::copyleg_key(g, 0);
    for (int leg = 1; leg < group.legs; ++leg)
      builder.apply(pos + leg - 1, 1, frobenius_copy(group.type),
                    {{group.type, detail::copyleg_key(g, leg - 1)},
                     {group.type, detail::copyleg_key(g, leg)}});
    group.expanded = true;
  };

  auto form_merge = [&](int m) {
    MergeGroup& group = merge_groups[m];
    if (group.formed) return;
    // Bring the member channels to the front, then fold them pairwise.
    for (size_t i = 0; i < group.members.size(); ++i) {
      ChanKey key = detail::boxout_key(group.members[i].first, group.members[i].second);
      builder.move_to(builder.find(key), i);
    }
    for (size_t i = group.members.size() - 1; i >= 1; --i)
      builder.apply(i - 1, 2, frobenius_merge(group.type),
                    {{group.type, i == 1 ? detail::merged_key(m)
                                         : detail::boxout_key(group.members[i - 1].first,
                                                              group.members[i - 1].second)}});
    group.formed = true;
  };

  for (int b : topo) {
    const GeneratorSig& sig = boxes[b];
    // Materialize whatever this box consumes.
    for (size_t p = 0; p < sig.dom.size(); ++p) {
      const ChanKey& key = in_src[b][p]->key;
      if (key.v[0] == 2) expand_copy(key.v[1]);
      if (key.v[0] == 3) form_merge(key.v[1]);
    }
    for (size_t p = 0; p < sig.dom.size(); ++p)
      builder.move_to(builder.find(in_src[b][p]->key), p);
    std::vector<detail::Channel> produced;
    for (size_t p = 0; p < sig.cod.size(); ++p)
      produced.push_back({sig.cod[p], detail::boxout_key(b, static_cast<int>(p))});
    builder.apply(0, sig.dom.size(), generator(sig), std::move(produced));
  }

  for (size_t m = 0; m < merge_groups.size(); ++m)
    if (!merge_groups[m].sunk) form_merge(static_cast<int>(m));

  for (size_t o = 0; o < out_keys.size(); ++o) builder.move_to(builder.find(out_keys[o]), o);

  if (builder.word(0, builder.channels.size()) != plan.outputs)
    throw error("build_trajectory: internal error: boundary does not match plan outputs");
  return builder.term;
}

/// Builds the trajectory, then substitutes every registered definition for
/// its opaque box (the expanded form of the same morphism).
inline TermPtr expand_trajectory(const NPCorpus& corpus, const TrajectoryPlan& plan) {
  TermPtr term = build_trajectory(corpus, plan);
  for (const auto& [id, seq] : plan.definitions)
    term = substitute(term, id, definition_term(corpus, plan, id));
  return term;
}

}  // namespace nc
