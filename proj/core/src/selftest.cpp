#include "kv/selftest.hpp"

#include "kv/embedded_eval.hpp"
#include "kv/moves.hpp"
#include "kv/oracle.hpp"
#include "kv/planar_eval.hpp"
#include "kv/random_diagram.hpp"

#include <random>
#include <sstream>

namespace kv {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return n ? rng() % n : 0; }

SelfTestCheck check_ring_identities() {
    SelfTestCheck c{"ring structure constants", false, ""};
    RingElem A = ring_constant(ConstantName::VarA);
    RingElem B = ring_constant(ConstantName::VarB);
    RingElem a = ring_constant(ConstantName::SmallA);
    RingElem ainv = ring_constant(ConstantName::SmallAInv);
    bool ok = (const_big_o() + A * const_mu() + B == a) &&
              (const_big_o() + A + B * const_mu() == ainv) &&
              ((const_mu() - RingElem(1)) * RingElem(A_minus_B(), 0) == a - ainv) &&
              (specialize(const_mu(), Spec::PlanarTest) == UniLaurent(2)) &&
              (specialize(const_gamma(), Spec::PlanarTest) == UniLaurent());
    c.pass = ok;
    if (!ok) c.detail = "a structure-constant identity failed";
    return c;
}

SelfTestCheck check_diagram_roundtrip(std::uint64_t seed, int size) {
    SelfTestCheck c{"diagram validity and serialization round-trip", true, ""};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < size && c.pass; ++i) {
        RandomDiagramParams p{static_cast<int>(pick(rng, 4)), static_cast<int>(pick(rng, 4)),
                              rng()};
        Diagram d = random_diagram(p);
        try {
            d.validate();
            Diagram back = parse(serialize(d));
            if (canonical_code(back) != canonical_code(d)) {
                c.pass = false;
                c.detail = "canonical code changed across serialize/parse";
            }
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = e.what();
        }
    }
    return c;
}

SelfTestCheck check_move_invariance(std::uint64_t seed, int size) {
    SelfTestCheck c{"eval invariance under moves", true, ""};
    std::mt19937_64 rng(seed ^ 0xabcdef);
    Evaluator ev;
    int tried = 0;
    for (int i = 0; i < size && c.pass; ++i) {
        RandomDiagramParams p{static_cast<int>(pick(rng, 3)), static_cast<int>(pick(rng, 3)),
                              rng()};
        Diagram d = random_diagram(p);
        RingElem before = ev.eval(d);
        for (MoveKind kind : {MoveKind::R2Insert, MoveKind::R3Slide, MoveKind::VertexSlide,
                              MoveKind::VertexTwist, MoveKind::CurlInsert}) {
            auto sites = enumerate_moves(d, kind);
            if (sites.empty()) continue;
            MoveSpec m = sites[pick(rng, sites.size())];
            Diagram moved = apply_move(d, m);
            RingElem after = ev.eval(moved);
            ++tried;
            if (kind == MoveKind::CurlInsert) {
                RingElem scale = RingElem::monomial(1, 0, 0, m.sign);
                if (after == scale * before) continue;
            } else if (after == before) {
                continue;
            }
            c.pass = false;
            c.detail = "move changed the polynomial";
        }
    }
    if (c.pass && tried == 0) {
        c.pass = false;
        c.detail = "no applicable moves sampled";
    }
    return c;
}

SelfTestCheck check_strategy_independence(std::uint64_t seed, int size) {
    SelfTestCheck c{"strategy independence of the planar value", true, ""};
    std::mt19937_64 rng(seed ^ 0x5151);
    for (int i = 0; i < size && c.pass; ++i) {
        RandomDiagramParams p{2 + static_cast<int>(pick(rng, 4)), 0, rng()};
        Diagram d = random_diagram(p);
        RingElem ref = eval_planar(d, 1);
        for (std::uint64_t s = 2; s <= 4; ++s) {
            if (eval_planar(d, s) != ref) {
                c.pass = false;
                c.detail = "value depends on the reduction order";
            }
        }
    }
    return c;
}

SelfTestCheck check_closed_form(std::uint64_t seed, int size) {
    SelfTestCheck c{"planar-test closed form", true, ""};
    std::mt19937_64 rng(seed ^ 0xc105ed);
    Evaluator ev;
    for (int i = 0; i < size && c.pass; ++i) {
        RandomDiagramParams p{1 + static_cast<int>(pick(rng, 5)), 0, rng()};
        Diagram d = random_diagram(p);
        if (specialize(ev.eval_planar(d), Spec::PlanarTest) != eval_planar_closed_form(d)) {
            c.pass = false;
            c.detail = "specialized value disagrees with the closed form";
        }
    }
    return c;
}

SelfTestCheck check_oracle_agreement(std::uint64_t seed, int size) {
    SelfTestCheck c{"state-sum oracle agreement", true, ""};
    std::mt19937_64 rng(seed ^ 0x0aac1e);
    Evaluator ev;
    for (int i = 0; i < std::max(1, size / 2) && c.pass; ++i) {
        RandomDiagramParams p{static_cast<int>(pick(rng, 3)), static_cast<int>(pick(rng, 3)),
                              rng()};
        Diagram d = random_diagram(p);
        if (ev.eval(d) != kv_statesum(d, OracleLimits{}, rng())) {
            c.pass = false;
            c.detail = "eval disagrees with the marker state sum";
        }
    }
    return c;
}

}  // namespace

SelfTestReport run_selftest(std::uint64_t seed, int size) {
    SelfTestReport report;
    report.checks.push_back(check_ring_identities());
    report.checks.push_back(check_diagram_roundtrip(seed, size));
    report.checks.push_back(check_move_invariance(seed, std::max(1, size / 2)));
    report.checks.push_back(check_strategy_independence(seed, std::max(1, size / 2)));
    report.checks.push_back(check_closed_form(seed, size));
    report.checks.push_back(check_oracle_agreement(seed, size));
    return report;
}

}  // namespace kv
