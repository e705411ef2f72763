#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kv {

/// A dart is one of the four half-edge slots of a node, encoded node*4+slot.
/// Slots 0..3 run counterclockwise. At a Crossing, slots {0,2} carry the
/// under-strand and {1,3} the over-strand.
using Dart = std::int32_t;

inline Dart make_dart(int node, int slot) { return static_cast<Dart>(node * 4 + slot); }
inline int dart_node(Dart d) { return d / 4; }
inline int dart_slot(Dart d) { return d % 4; }
inline Dart dart_rot(Dart d, int delta) {
    return make_dart(dart_node(d), (dart_slot(d) + delta) & 3);
}

enum class NodeKind : std::uint8_t { RigidVertex, Crossing };

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, Label, Genus };
    Kind kind;
    int line;
    ParseError(Kind k, int line_no, const std::string& msg)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          kind(k),
          line(line_no) {}
};

/// A 4-valent rigid-vertex graph diagram: a genus-0 rotation system whose
/// nodes are rigid vertices or crossings, plus a count of node-less circles.
/// Diagrams are immutable by convention; mutating helpers are for builders.
class Diagram {
  public:
    Diagram() = default;

    int node_count() const { return static_cast<int>(kinds_.size()); }
    int dart_count() const { return node_count() * 4; }
    int edge_count() const { return node_count() * 2; }
    NodeKind kind(int node) const { return kinds_[node]; }
    bool is_crossing(int node) const { return kinds_[node] == NodeKind::Crossing; }
    Dart mate(Dart d) const { return mate_[d]; }
    int free_circles() const { return free_circles_; }

    int crossing_count() const;
    int vertex_count() const;

    // Builder interface. pair_darts overwrites both endpoints.
    int add_node(NodeKind k);
    void pair_darts(Dart d1, Dart d2);
    void set_free_circles(int n) { free_circles_ = n; }
    void add_free_circles(int n) { free_circles_ += n; }
    void set_kind(int node, NodeKind k) { kinds_[node] = k; }

    /// Checks the pairing is a perfect matching and every connected component
    /// has genus 0 (V - E + F = 2). Throws ParseError(Genus) otherwise.
    void validate() const;

    bool operator==(const Diagram& rhs) const = default;

  private:
    std::vector<NodeKind> kinds_;
    std::vector<Dart> mate_;
    int free_circles_ = 0;
};

/// Face-trace successor: cross the edge, then take the next slot clockwise.
inline Dart face_next(const Diagram& d, Dart x) { return dart_rot(d.mate(x), 3); }

/// Straight-ahead successor: cross the edge, then exit the opposite slot.
inline Dart walk_next(const Diagram& d, Dart x) { return dart_rot(d.mate(x), 2); }

using Face = std::vector<Dart>;

/// All faces traced from the rotation system; every dart lies in exactly one.
std::vector<Face> faces(const Diagram& d);

/// A knot-theoretic circuit: a closed straight-ahead walk, stored as the
/// departure darts of one traversal direction. Free circles contribute
/// circuits with no steps.
struct Circuit {
    std::vector<Dart> departures;
    bool trivial_circle = false;
};

std::vector<Circuit> circuits(const Diagram& d);

/// Sum over circuits of the signed self-crossing counts (the twisting number).
/// Orientation-independent by construction of the sign rule.
int twist_number(const Diagram& d);

/// Node -> connected-component id (components among nodes only).
std::vector<int> node_components(const Diagram& d);

/// Number of connected components, counting each free circle as one.
int component_count(const Diagram& d);

/// Relabeling-invariant code: the lexicographically minimal BFS encoding over
/// all root darts (per component, components sorted), with the free-circle
/// count appended. Equal diagrams-up-to-relabeling yield equal codes.
std::string canonical_code(const Diagram& d);

Diagram parse(const std::string& text);
std::string serialize(const Diagram& d);

Diagram disjoint_union(const Diagram& d1, const Diagram& d2);

}  // namespace kv
