#pragma once

#include "kv/diagram.hpp"
#include "kv/ring.hpp"

#include <cstdint>

namespace kv {

struct DepthExceeded : std::runtime_error {
    explicit DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Reference implementations are exponential by design; these bounds keep
/// them at desk scale.
struct OracleLimits {
    int max_crossings = 8;           // dubrovnik / bracket state sum
    int max_statesum_vertices = 3;   // kv_statesum
    int max_statesum_crossings = 3;  // kv_statesum
};

/// Dubrovnik polynomial of a link diagram (all nodes crossings) at z = A - B,
/// by skein-tree recursion: the crossings first reached on the under-strand
/// are switched one at a time toward a descending diagram (value a^t mu^{m-1}),
/// each switch contributing z times the two smoothings.
RingElem dubrovnik(const Diagram& link, const OracleLimits& limits = {});

/// The marker state sum: every rigid vertex is replaced by a crossing and the
/// two smoothings weighted 1, -A, -B (which smoothing takes -A depends on the
/// marker), each resulting link evaluated by the Dubrovnik polynomial.
/// marker_seed 0 assigns the first marker everywhere; any other seed picks a
/// pseudo-random marker per vertex. The total is marker-independent.
RingElem kv_statesum(const Diagram& d, const OracleLimits& limits = {},
                     std::uint64_t marker_seed = 0);

/// Direct 2^n Kauffman bracket state sum, unknot normalized to 1, loop factor
/// -A^2 - A^{-2}.
UniLaurent bracket_statesum(const Diagram& link, const OracleLimits& limits = {});

}  // namespace kv
