#pragma once

#include "kv/diagram.hpp"

#include <array>
#include <utility>
#include <vector>

namespace kv {

struct RuleMismatch : std::runtime_error {
    explicit RuleMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// One endpoint of a new connection in a rewiring: either a leg (a dart on a
/// node being deleted, standing for whatever that leg attaches to outside) or
/// a slot of a node being created.
struct Terminal {
    enum class Kind { Leg, NewSlot };
    Kind kind = Kind::Leg;
    Dart leg = -1;     // valid when kind == Leg
    int new_node = -1; // valid when kind == NewSlot (index into RewireSpec::new_nodes)
    int new_slot = -1;

    static Terminal make_leg(Dart d) { return {Kind::Leg, d, -1, -1}; }
    static Terminal make_slot(int node, int slot) { return {Kind::NewSlot, -1, node, slot}; }
    bool operator==(const Terminal&) const = default;
};

struct NewNodeSpec {
    NodeKind kind = NodeKind::RigidVertex;
    std::array<Terminal, 4> targets;
};

/// A local rewrite: delete some nodes, add some nodes, and re-match the
/// boundary legs through the given arcs. Every dart of a deleted node must be
/// referenced exactly once as a leg, or belong to an edge internal to the
/// deleted set that no terminal references (such edges vanish).
struct RewireSpec {
    std::vector<int> deleted;
    std::vector<NewNodeSpec> new_nodes;
    std::vector<std::pair<Terminal, Terminal>> arcs;
};

struct RewireResult {
    Diagram diagram;
    std::vector<int> node_map;       // old node index -> new index, -1 if deleted
    std::vector<int> new_node_index; // spec new-node i -> index in the result
    int closed_circles = 0;          // splice cycles turned into free circles
};

/// Applies the rewrite. Chains of leg-to-leg attachments are followed through;
/// closed chains become free circles.
RewireResult rewire(const Diagram& d, const RewireSpec& spec);

}  // namespace kv
