#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nc/report.hpp"

namespace nc {

using Atom = std::string;

/// Finite carrier at desk scale. Elements are kept sorted so enumeration
/// order is reproducible.
struct FinSet {
  std::vector<Atom> elements;

  static FinSet of(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end());
    if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
      throw error("FinSet: duplicate atoms");
    return FinSet{std::move(atoms)};
  }

  bool operator==(const FinSet&) const = default;
};

inline std::vector<FinSet> default_carriers(int max_size) {
  std::vector<FinSet> out;
  std::vector<Atom> atoms;
  for (int i = 1; i <= max_size; ++i) {
    atoms.push_back("x" + std::to_string(i));
    out.push_back(FinSet::of(atoms));
  }
  return out;
}

// --- value rendering for counterexamples ------------------------------

inline std::string show(const Atom& a) { return a; }
template <class V>
std::string show(const std::vector<V>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + show(xs[i]);
  return out + "]";
}
template <class V>
std::string show(const std::optional<V>& x) {
  return x ? show(*x) : "*";
}

// --- the two monads ----------------------------------------------------

/// Finite ordered sequences with duplicates; join is concatenation in order.
struct ListMonad {
  static constexpr const char* name = "list";
  template <class V>
  using Lift = std::vector<V>;

  template <class V>
  static Lift<V> unit(V x) {
    return {std::move(x)};
  }

  struct Join {
    template <class V>
    Lift<V> operator()(const Lift<Lift<V>>& xss) const {
      Lift<V> out;
      for (const auto& xs : xss) out.insert(out.end(), xs.begin(), xs.end());
      return out;
    }
  };

  template <class V, class F>
  static auto map(F f, const Lift<V>& xs) {
    Lift<decltype(f(xs.front()))> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(f(x));
    return out;
  }

  /// All lists over `universe` with length <= max_len, shortest first.
  template <class V>
  static std::vector<Lift<V>> enumerate(const std::vector<V>& universe, int max_len) {
    std::vector<Lift<V>> out{{}};
    std::vector<Lift<V>> last{{}};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<Lift<V>> next;
      for (const auto& prefix : last)
        for (const auto& v : universe) {
          auto xs = prefix;
          xs.push_back(v);
          next.push_back(std::move(xs));
        }
      out.insert(out.end(), next.begin(), next.end());
      last = std::move(next);
    }
    return out;
  }
};

/// Maybe(X) = X plus the absence marker; join collapses nested presence.
struct MaybeMonad {
  static constexpr const char* name = "maybe";
  template <class V>
  using Lift = std::optional<V>;

  template <class V>
  static Lift<V> unit(V x) {
    return std::optional<V>(std::move(x));
  }

  struct Join {
    template <class V>
    Lift<V> operator()(const Lift<Lift<V>>& x) const {
      return x ? *x : std::nullopt;
    }
  };

  template <class V, class F>
  static auto map(F f, const Lift<V>& x) {
    using R = decltype(f(*x));
    return x ? std::optional<R>(f(*x)) : std::optional<R>();
  }

  template <class V>
  static std::vector<Lift<V>> enumerate(const std::vector<V>& universe, int /*max_len*/) {
    std::vector<Lift<V>> out{std::nullopt};
    for (const auto& v : universe) out.emplace_back(v);
    return out;
  }
};

// --- Kleisli arrows ----------------------------------------------------

/// A function X -> T(Y), total on its domain carrier.
template <class M>
struct KleisliFun {
  FinSet dom;
  FinSet cod;  // the carrier Y; table values live in T(Y)
  std::map<Atom, typename M::template Lift<Atom>> table;

  const typename M::template Lift<Atom>& at(const Atom& x) const {
    auto it = table.find(x);
    if (it == table.end()) throw error("Kleisli arrow not total: missing '" + x + "'");
    return it->second;
  }

  bool operator==(const KleisliFun&) const = default;
};

template <class M>
typename M::template Lift<Atom> monad_unit(Atom x) {
  return M::unit(std::move(x));
}

/// Kleisli composite join . T(g) . f, i.e. run f, map g over the result and
/// flatten with the monad's join.
template <class M, class Joiner = typename M::Join>
KleisliFun<M> kleisli_compose(const KleisliFun<M>& f, const KleisliFun<M>& g, Joiner join = {}) {
  if (!(f.cod == g.dom)) throw error("kleisli_compose: carrier mismatch");
  KleisliFun<M> out;
  out.dom = f.dom;
  out.cod = g.cod;
  for (const auto& x : f.dom.elements)
    out.table[x] = join(M::map([&](const Atom& y) { return g.at(y); }, f.at(x)));
  return out;
}

template <class M>
KleisliFun<M> kleisli_unit_arrow(const FinSet& carrier) {
  KleisliFun<M> out;
  out.dom = carrier;
  out.cod = carrier;
  for (const auto& x : carrier.elements) out.table[x] = M::unit(x);
  return out;
}

/// All Kleisli arrows dom -> T(cod), lifted values bounded by max_len.
template <class M>
std::vector<KleisliFun<M>> enumerate_kleisli(const FinSet& dom, const FinSet& cod, int max_len) {
  auto values = M::enumerate(cod.elements, max_len);
  std::vector<KleisliFun<M>> out;
  std::vector<size_t> choice(dom.elements.size(), 0);
  while (true) {
    KleisliFun<M> f;
    f.dom = dom;
    f.cod = cod;
    for (size_t i = 0; i < dom.elements.size(); ++i) f.table[dom.elements[i]] = values[choice[i]];
    out.push_back(std::move(f));
    size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < values.size()) break;
      choice[i] = 0;
    }
    if (i == choice.size()) break;
  }
  return out;
}

// --- law harness -------------------------------------------------------

struct LawViolation {
  std::string law;
  std::string detail;
};

struct LawReport {
  std::vector<LawViolation> violations;
  long checks = 0;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << "violation: " << v.law << ": " << v.detail << "\n";
    out << (violations.empty() ? "ok" : "FAILED") << ": " << checks << " checks, "
        << violations.size() << " violations\n";
    return out.str();
  }
};

/// Exhaustive monad-law check over bounded carriers. Unit laws run on every
/// lifted value of every carrier. Associativity enumerates triple nestings;
/// to keep the List enumeration finite it uses length <= max_list_len on the
/// innermost level, length <= 2 on the two outer levels, and carriers of at
/// most 2 atoms. A Joiner override stands in for the monad's join so broken
/// implementations can be fed to the same harness.
template <class M, class Joiner = typename M::Join>
LawReport check_monad_laws(const std::vector<FinSet>& carriers, int max_list_len,
                           Joiner join = {}) {
  LawReport report;
  constexpr int kMaxViolations = 20;
  auto violated = [&](const std::string& law, const std::string& detail) {
    if ((int)report.violations.size() < kMaxViolations) report.violations.push_back({law, detail});
  };

  for (const auto& carrier : carriers) {
    auto lifted = M::enumerate(carrier.elements, max_list_len);
    for (const auto& t : lifted) {
      // mu . T(eta) = id
      auto mapped = M::map([](const Atom& x) { return M::unit(x); }, t);
      ++report.checks;
      if (join(mapped) != t) violated("left unit", "t = " + show(t));
      // mu . eta_T = id
      ++report.checks;
      if (join(M::unit(t)) != t) violated("right unit", "t = " + show(t));
    }

    if (carrier.elements.size() <= 2) {
      int outer_len = std::min(max_list_len, 2);
      auto level1 = M::enumerate(carrier.elements, max_list_len);
      auto level2 = M::enumerate(level1, outer_len);
      auto level3 = M::enumerate(level2, outer_len);
      for (const auto& t3 : level3) {
        // mu . T(mu) = mu . mu_T
        auto via_map = join(M::map([&](const auto& t2) { return join(t2); }, t3));
        auto via_join = join(join(t3));
        ++report.checks;
        if (via_map != via_join)
          violated("associativity", "t = " + show(t3) + ": mu.T(mu) = " + show(via_map) +
                                        " but mu.mu_T = " + show(via_join));
      }
    }
  }

  // Kleisli laws over fixed 2-element carriers; arrow values use length <= 2
  // so the triple enumeration stays exhaustive and finite.
  FinSet X = FinSet::of({"x1", "x2"}), Y = FinSet::of({"y1", "y2"});
  FinSet Z = FinSet::of({"z1", "z2"}), W = FinSet::of({"w1", "w2"});
  int arrow_len = std::min(max_list_len, 2);
  auto fs = enumerate_kleisli<M>(X, Y, arrow_len);
  auto gs = enumerate_kleisli<M>(Y, Z, arrow_len);
  auto hs = enumerate_kleisli<M>(Z, W, arrow_len);

  auto id_x = kleisli_unit_arrow<M>(X);
  auto id_y = kleisli_unit_arrow<M>(Y);
  for (const auto& f : fs) {
    ++report.checks;
    if (!(kleisli_compose<M>(id_x, f, join) == f))
      violated("kleisli left unit", "f(x1) = " + show(f.at("x1")));
    ++report.checks;
    if (!(kleisli_compose<M>(f, id_y, join) == f))
      violated("kleisli right unit", "f(x1) = " + show(f.at("x1")));
  }
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto gf = kleisli_compose<M>(f, g, join);
      for (const auto& h : hs) {
        ++report.checks;
        if (!(kleisli_compose<M>(gf, h, join) ==
              kleisli_compose<M>(f, kleisli_compose<M>(g, h, join), join)))
          violated("kleisli associativity",
                   "f(x1) = " + show(f.at("x1")) + ", g(y1) = " + show(g.at("y1")) +
                       ", h(z1) = " + show(h.at("z1")));
      }
    }

  return report;
}

}  // namespace nc
