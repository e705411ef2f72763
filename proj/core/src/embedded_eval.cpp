#include "kv/embedded_eval.hpp"

namespace kv {

RingElem eval(const Diagram& d, std::uint64_t choice_seed) {
    Evaluator ev(EvalOptions{choice_seed, false});
    return ev.eval(d);
}

RingElem normalized(const Diagram& d, std::uint64_t choice_seed) {
    int t = twist_number(d);
    return RingElem::monomial(1, 0, 0, -t) * eval(d, choice_seed);
}

UniLaurent specialized_eval(const Diagram& d, Spec spec, std::uint64_t choice_seed) {
    return specialize(eval(d, choice_seed), spec);
}

UniLaurent obstruction_expected(const Diagram& d) {
    int c = component_count(d);
    int v = d.vertex_count();
    int t = twist_number(d);
    UniLaurent loop = -(UniLaurent::monomial(1, 1) + UniLaurent::monomial(1, -1));
    UniLaurent expected = UniLaurent(2).pow(c > 0 ? c - 1 : 0) * loop.pow(v);
    return expected * UniLaurent::monomial(1, t);
}

Verdict planarity_obstruction(const Diagram& d) {
    Verdict v;
    v.computed = specialized_eval(d, Spec::PlanarTest);
    v.expected = obstruction_expected(d);
    v.status = (v.computed == v.expected) ? Verdict::Status::PossiblyPlanar : Verdict::Status::NotPlanar;
    return v;
}

}  // namespace kv
