#include "kv/embedded_eval.hpp"

#include "kv/moves.hpp"
#include "kv/oracle.hpp"
#include "kv/random_diagram.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace kv;
using namespace kvtest;

namespace {

RingElem A() { return ring_constant(ConstantName::VarA); }
RingElem B() { return ring_constant(ConstantName::VarB); }
RingElem a_pow(int n) { return RingElem::monomial(1, 0, 0, n); }

}  // namespace

TEST_SUITE("embedded_eval") {
    TEST_CASE("curl values pin the smoothing assignment") {
        CHECK(eval(parse(kCurlNeg)) == a_pow(-1));
        CHECK(eval(parse(kCurlPos)) == a_pow(1));
    }

    TEST_CASE("crossing-free diagrams fall through to the calculus") {
        std::mt19937_64 rng(303);
        for (int i = 0; i < 6; ++i) {
            Diagram d = random_diagram({1 + static_cast<int>(rng() % 4), 0, rng()});
            CHECK(eval(d) == eval_planar(d));
        }
    }

    TEST_CASE("the skein relation holds at every crossing") {
        std::mt19937_64 rng(307);
        int checked = 0;
        for (int i = 0; i < 30 && checked < 12; ++i) {
            Diagram d = random_diagram({static_cast<int>(rng() % 3),
                                        1 + static_cast<int>(rng() % 3), rng()});
            for (int x = 0; x < d.node_count(); ++x) {
                if (!d.is_crossing(x)) continue;
                RingElem lhs = eval(d);
                RingElem rhs = A() * eval(smooth_node(d, x, Smoothing::AType).diagram) +
                               B() * eval(smooth_node(d, x, Smoothing::BType).diagram) +
                               eval(crossing_to_vertex(d, x));
                CHECK(lhs == rhs);
                ++checked;
            }
        }
        CHECK(checked >= 10);
    }

    TEST_CASE("eval is invariant under moves II-V and scales under curls") {
        std::mt19937_64 rng(311);
        Evaluator ev;
        int checked = 0;
        for (int i = 0; i < 25; ++i) {
            Diagram d = random_diagram({static_cast<int>(rng() % 3),
                                        static_cast<int>(rng() % 3), rng()});
            RingElem before = ev.eval(d);
            for (MoveKind kind : {MoveKind::R2Insert, MoveKind::R2Remove, MoveKind::R3Slide,
                                  MoveKind::VertexSlide, MoveKind::VertexTwist}) {
                auto sites = enumerate_moves(d, kind);
                if (sites.empty()) continue;
                CHECK(ev.eval(apply_move(d, sites[rng() % sites.size()])) == before);
                ++checked;
            }
            auto curls = enumerate_moves(d, MoveKind::CurlInsert);
            MoveSpec curl = curls.empty() ? MoveSpec{} : curls[rng() % curls.size()];
            if (!curls.empty()) {
                CHECK(ev.eval(apply_move(d, curl)) == a_pow(curl.sign) * before);
                ++checked;
            }
        }
        CHECK(checked >= 40);
    }

    TEST_CASE("normalized is invariant under all five moves") {
        std::mt19937_64 rng(313);
        int checked = 0;
        for (int i = 0; i < 15; ++i) {
            Diagram d = random_diagram({static_cast<int>(rng() % 3),
                                        static_cast<int>(rng() % 3), rng()});
            RingElem before = normalized(d);
            for (MoveKind kind : {MoveKind::CurlInsert, MoveKind::R2Insert, MoveKind::R3Slide,
                                  MoveKind::VertexSlide, MoveKind::VertexTwist}) {
                auto sites = enumerate_moves(d, kind);
                if (sites.empty()) continue;
                CHECK(normalized(apply_move(d, sites[rng() % sites.size()])) == before);
                ++checked;
            }
        }
        CHECK(checked >= 30);
        CHECK(normalized(parse(kCurlPos)) == RingElem(1));
        CHECK(normalized(parse(kCurlNeg)) == RingElem(1));
    }

    TEST_CASE("bracket specialization of vertex-free diagrams is the bracket") {
        Diagram unknot = parse("O 1\n");
        CHECK(specialized_eval(unknot, Spec::Bracket) == UniLaurent(1));
        Diagram trefoil = parse(kTrefoil);
        UniLaurent tre = specialized_eval(trefoil, Spec::Bracket);
        CHECK(tre == bracket_statesum(trefoil));
        // One of the two mirror values from the literature.
        UniLaurent m1 = -UniLaurent::monomial(1, 5) - UniLaurent::monomial(1, -3) +
                        UniLaurent::monomial(1, -7);
        UniLaurent m2 = -UniLaurent::monomial(1, -5) - UniLaurent::monomial(1, 3) +
                        UniLaurent::monomial(1, 7);
        CHECK((tre == m1 || tre == m2));
        Diagram hopf = parse(kHopf);
        UniLaurent hv = specialized_eval(hopf, Spec::Bracket);
        CHECK(hv == bracket_statesum(hopf));
        CHECK(hv == -UniLaurent::monomial(1, 4) - UniLaurent::monomial(1, -4));
    }

    TEST_CASE("planar-test value of planar graphs follows the closed form") {
        std::mt19937_64 rng(317);
        for (int i = 0; i < 8; ++i) {
            Diagram d = random_diagram({1 + static_cast<int>(rng() % 4), 0, rng()});
            CHECK(specialized_eval(d, Spec::PlanarTest) == eval_planar_closed_form(d));
        }
    }

    TEST_CASE("obstruction verdicts") {
        // Crossing-free diagrams always pass.
        std::mt19937_64 rng(331);
        for (int i = 0; i < 6; ++i) {
            Diagram d = random_diagram({1 + static_cast<int>(rng() % 4), 0, rng()});
            CHECK(planarity_obstruction(d).status == Verdict::Status::PossiblyPlanar);
        }
        // A curl passes: both sides equal A^{t}.
        Verdict curl = planarity_obstruction(parse(kCurlPos));
        CHECK(curl.status == Verdict::Status::PossiblyPlanar);
        CHECK(curl.computed == UniLaurent::monomial(1, 1));
        // The one-crossing graph whose crossing removal keeps one component.
        Verdict bad = planarity_obstruction(parse(kOneCrossingVanishing));
        CHECK(bad.status == Verdict::Status::NotPlanar);
        CHECK(bad.computed == UniLaurent());
        CHECK(bad.expected != UniLaurent());
    }

    TEST_CASE("the obstruction is not sufficient: a linked false negative") {
        // The shipped reconstruction: obstruction passes, but the graph holds
        // two vertex-disjoint cycles with nonzero linking number, so it is not
        // isotopic to a planar graph.
        Diagram d = parse(kObstructionFalseNegative);
        CHECK(component_count(d) == 1);
        CHECK(d.vertex_count() == 4);
        CHECK(d.crossing_count() == 2);
        CHECK(twist_number(d) == 2);
        CHECK(planarity_obstruction(d).status == Verdict::Status::PossiblyPlanar);
        UniLaurent loop = -(UniLaurent::monomial(1, 1) + UniLaurent::monomial(1, -1));
        CHECK(specialized_eval(d, Spec::PlanarTest) ==
              UniLaurent::monomial(1, 2) * loop.pow(4));

        // Witness: strand segments between vertices, two disjoint cycles, and
        // the signed count of the crossings shared between them.
        struct Segment {
            Dart from, to;
            std::vector<std::pair<int, int>> crossings;  // (node, departure slot)
        };
        std::vector<Segment> segs;
        for (int v = 0; v < d.node_count(); ++v) {
            if (d.is_crossing(v)) continue;
            for (int s = 0; s < 4; ++s) {
                Segment seg{make_dart(v, s), -1, {}};
                Dart cur = seg.from;
                while (true) {
                    Dart arr = d.mate(cur);
                    if (!d.is_crossing(dart_node(arr))) {
                        seg.to = arr;
                        break;
                    }
                    Dart dep = dart_rot(arr, 2);
                    seg.crossings.push_back({dart_node(arr), dart_slot(dep)});
                    cur = dep;
                }
                segs.push_back(seg);
            }
        }
        auto linking = [&](const std::vector<int>& c1, const std::vector<int>& c2) {
            std::map<int, std::vector<std::pair<int, int>>> at;
            for (int i : c1)
                for (auto [x, slot] : segs[i].crossings) at[x].push_back({1, slot});
            for (int i : c2)
                for (auto [x, slot] : segs[i].crossings) at[x].push_back({2, slot});
            int total = 0;
            for (auto& [x, hits] : at) {
                if (hits.size() != 2 || hits[0].first == hits[1].first) continue;
                int du = -1, dov = -1;
                for (auto [cid, slot] : hits) (slot % 2 == 0 ? du : dov) = slot;
                if (du < 0 || dov < 0) return 0;
                total += ((dov - du + 4) % 4 == 1) ? 1 : -1;
            }
            return total / 2;
        };
        // Enumerate one- and two-segment cycles and look for a disjoint pair
        // with nonzero linking number.
        struct Cycle {
            std::vector<int> segs;
            std::set<int> vertices;
        };
        std::vector<Cycle> cycles;
        for (size_t a = 0; a < segs.size(); ++a) {
            int u = dart_node(segs[a].from), w = dart_node(segs[a].to);
            if (u == w) {
                cycles.push_back({{static_cast<int>(a)}, {u}});
                continue;
            }
            for (size_t b = a + 1; b < segs.size(); ++b) {
                if (dart_node(segs[b].from) != w || dart_node(segs[b].to) != u) continue;
                if (segs[b].from == segs[a].to || segs[b].to == segs[a].from) continue;
                cycles.push_back({{static_cast<int>(a), static_cast<int>(b)}, {u, w}});
            }
        }
        bool witness = false;
        for (size_t i = 0; i < cycles.size() && !witness; ++i)
            for (size_t j = i + 1; j < cycles.size() && !witness; ++j) {
                std::vector<int> common;
                std::set_intersection(cycles[i].vertices.begin(), cycles[i].vertices.end(),
                                      cycles[j].vertices.begin(), cycles[j].vertices.end(),
                                      std::back_inserter(common));
                if (!common.empty()) continue;
                if (linking(cycles[i].segs, cycles[j].segs) != 0) witness = true;
            }
        CHECK(witness);
    }

    TEST_CASE("one-crossing diagrams with component-preserving removal vanish") {
        std::mt19937_64 rng(337);
        int found = 0;
        for (int i = 0; i < 200 && found < 6; ++i) {
            Diagram d = random_diagram({1 + static_cast<int>(rng() % 4), 0, rng()});
            for (int n = 0; n < d.node_count() && found < 6; ++n) {
                Diagram g = d;
                g.set_kind(n, NodeKind::Crossing);
                int c = component_count(g);
                if (component_count(smooth_node(g, n, Smoothing::AType).diagram) != c) continue;
                if (component_count(smooth_node(g, n, Smoothing::BType).diagram) != c) continue;
                CHECK(specialized_eval(g, Spec::PlanarTest) == UniLaurent());
                CHECK(planarity_obstruction(g).status == Verdict::Status::NotPlanar);
                ++found;
            }
        }
        CHECK(found >= 3);
    }
}
