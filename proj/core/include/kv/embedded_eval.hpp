#pragma once

#include "kv/planar_eval.hpp"

namespace kv {

/// Value of the invariant on an arbitrary diagram: every crossing expands into
/// the A-smoothing, the B-smoothing and the rigid-vertex replacement, and the
/// resulting planar diagrams are evaluated by the calculus.
RingElem eval(const Diagram& d, std::uint64_t choice_seed = 0);

/// a^{-t(G)} * eval(G): invariant under all five moves.
RingElem normalized(const Diagram& d, std::uint64_t choice_seed = 0);

/// specialize(eval(d), spec); for vertex-free diagrams the bracket
/// specialization is the Kauffman bracket normalized to 1 on the unknot.
UniLaurent specialized_eval(const Diagram& d, Spec spec, std::uint64_t choice_seed = 0);

/// Planarity obstruction: a diagram isotopic to a planar graph must satisfy
/// computed == expected at the planar-test specialization. The test is
/// necessary, never sufficient.
struct Verdict {
    enum class Status { NotPlanar, PossiblyPlanar };
    Status status = Status::PossiblyPlanar;
    UniLaurent computed;
    UniLaurent expected;
};

/// The reference value 2^{c-1} (-A-A^{-1})^v A^{t(G)}.
UniLaurent obstruction_expected(const Diagram& d);

Verdict planarity_obstruction(const Diagram& d);

}  // namespace kv
