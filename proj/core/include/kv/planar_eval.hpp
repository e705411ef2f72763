#pragma once

#include "kv/diagram.hpp"
#include "kv/ring.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kv {

struct NoVertexNoCircle : std::runtime_error {
    explicit NoVertexNoCircle(const std::string& what) : std::runtime_error(what) {}
};

/// One child of a rewrite identity, wired over the configuration legs.
struct ChildTemplate {
    RingElem weight;
    bool is_flip = false;                       // the flipped-triangle child
    std::vector<std::pair<int, int>> arcs;      // 1-based leg indices
    std::vector<std::array<int, 4>> nodes;      // new vertices; slot entries are 1-based legs
};

/// The transcription of the graphical-calculus identities. Ships as a
/// checked-in data file (core/data/rule_table.txt) so the wiring is
/// reviewable; the default table is the embedded copy of that file.
struct RuleTable {
    RingElem circle_weight;
    RingElem monogon_weight;
    std::vector<ChildTemplate> bigon;
    std::vector<ChildTemplate> triangle;
};

RuleTable parse_rule_table(const std::string& text);
const RuleTable& default_rule_table();
const std::string& default_rule_table_text();

/// A located rewrite opportunity, in priority order: a free circle, a monogon
/// face, a bigon face between distinct vertices, or a scheduled sequence of
/// triangle flips ending in a diagram that contains a bigon. With circles
/// held as a plain count, a bare circle component is always a free circle.
struct Reduction {
    enum class Kind { FreeCircle, Monogon, Bigon, LensPlan };
    Kind kind = Kind::FreeCircle;
    Dart monogon_dart = -1;                     // Monogon: the size-1 face dart
    std::array<Dart, 2> bigon{-1, -1};          // Bigon: the size-2 face darts
    std::vector<std::array<Dart, 3>> flips;     // LensPlan: flips, each relative to
                                                // the previous flip child
    std::array<Dart, 2> target_bigon{-1, -1};   // LensPlan: bigon after the last flip
};

struct EvalOptions {
    std::uint64_t choice_seed = 0;
    /// Breadth-first search over triangle flips instead of the constructive
    /// lens procedure; for differential testing only.
    bool bfs_fallback = false;
};

/// Locates the next reduction of a crossing-free diagram. Throws
/// NoVertexNoCircle when nothing is reducible (the empty diagram or a lone
/// circle; the evaluator handles both as base cases).
Reduction find_reducible(const Diagram& d, const EvalOptions& opts = {});

/// Applies one identity, returning weighted children. For a LensPlan only the
/// first scheduled flip is consumed: the flipped child is first in the list
/// and the remaining plan stays valid for it. Throws RuleMismatch when the
/// diagram no longer matches the located reduction.
std::vector<std::pair<RingElem, Diagram>> apply_identity(
    const Diagram& d, const Reduction& r, const RuleTable& table = default_rule_table());

/// Shared-cache evaluator for the calculus and the crossing expansion.
/// Values are memoized on canonical codes, so a single instance can serve a
/// whole test corpus.
class Evaluator {
  public:
    explicit Evaluator(EvalOptions opts = {}, const RuleTable* table = nullptr);

    /// Value of the unique calculus polynomial on a crossing-free diagram.
    RingElem eval_planar(const Diagram& d);

    /// Value on any diagram via 3-way crossing expansion.
    RingElem eval(const Diagram& d);

    std::size_t cache_size() const { return memo_.size(); }

  private:
    RingElem eval_planar_rec(const Diagram& d, std::vector<std::array<Dart, 3>> plan);

    EvalOptions opts_;
    const RuleTable* table_;
    std::unordered_map<std::string, RingElem> memo_;
};

RingElem eval_planar(const Diagram& d, std::uint64_t choice_seed = 0);

/// Closed form of the planar-test specialization: 2^{c-1} (-A-A^{-1})^v.
UniLaurent eval_planar_closed_form(const Diagram& d);

}  // namespace kv
