#pragma once

#include "kv/rewire.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace kv {

struct SiteMismatch : std::runtime_error {
    explicit SiteMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class MoveKind {
    CurlInsert,   // dart_a = edge side (-1 curls a free circle), sign = curl sign
    CurlRemove,   // node = crossing carrying a corner loop
    R2Insert,     // dart_a, dart_b on one traced face (distinct edges); sign>0: a-strand over
    R2Remove,     // face = the bigon face darts (2 used)
    R3Slide,      // face = triangle face darts (3 crossings)
    VertexSlide,  // face = triangle face darts (1 vertex + 2 crossings)
    VertexTwist,  // node = vertex, slot = corner, sign = twist sense
};

struct MoveSpec {
    MoveKind move;
    Dart dart_a = -1;
    Dart dart_b = -1;
    int node = -1;
    int slot = -1;
    int sign = +1;
    std::array<Dart, 3> face{-1, -1, -1};
};

/// Applies an isotopy move; throws SiteMismatch when the local pattern is
/// absent. Returns a new diagram (inputs are never modified).
Diagram apply_move(const Diagram& d, const MoveSpec& m);

std::vector<MoveSpec> enumerate_moves(const Diagram& d, MoveKind kind);

/// Result of flipping a triangle face (the two sides of the 3-strand local
/// picture). Slot maps record, for each old corner, where a walk departing the
/// old corner continues from the replacement corner.
struct FlipResult {
    RewireResult rw;
    std::array<int, 3> new_corner{};                  // result indices for face corners 0..2
    std::array<std::array<int, 4>, 3> slot_map{};      // [corner][k]: new slot of (corner, s_corner + k)
};

/// Flips the triangle face given by its trace-ordered darts. Corner kinds (and
/// crossing over/under relations) are preserved. Throws RuleMismatch when the
/// darts do not form a triangle face with three distinct corners.
FlipResult flip_triangle(const Diagram& d, const std::array<Dart, 3>& face_darts);

/// Smoothings of a node (crossing or vertex): the A-type child joins slots
/// 0-3 and 1-2, the B-type child joins slots 0-1 and 2-3. For crossings the
/// assignment is pinned by the curl relations and the oracle tests.
enum class Smoothing { AType, BType };
RewireResult smooth_node(const Diagram& d, int node, Smoothing s);

/// Replaces a crossing by a rigid vertex (same rotation).
Diagram crossing_to_vertex(const Diagram& d, int node);

/// Swaps over- and under-strand at a crossing (cyclic slot relabel).
Diagram switch_crossing(const Diagram& d, int node);

/// Corner loop on adjacent slots {s, s+1} at a crossing makes it a curl;
/// returns the loop's base slot, or nullopt.
std::optional<int> curl_loop_slot(const Diagram& d, int node);

/// Sign of a curl crossing: +1 when the loop sits on an odd base slot.
int curl_sign(const Diagram& d, int node);

}  // namespace kv
