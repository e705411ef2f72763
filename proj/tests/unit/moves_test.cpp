#include "kv/moves.hpp"

#include "kv/random_diagram.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace kv;
using namespace kvtest;

namespace {

Diagram corpus_diagram(std::mt19937_64& rng, int max_v = 4, int max_x = 4) {
    return random_diagram({static_cast<int>(rng() % (max_v + 1)),
                           static_cast<int>(rng() % (max_x + 1)), rng()});
}

}  // namespace

TEST_SUITE("moves") {
    TEST_CASE("curl insertion changes the twist by its sign") {
        std::mt19937_64 rng(101);
        for (int i = 0; i < 30; ++i) {
            Diagram d = corpus_diagram(rng);
            if (d.node_count() == 0) continue;
            MoveSpec m{MoveKind::CurlInsert};
            m.dart_a = static_cast<Dart>(rng() % d.dart_count());
            m.sign = (rng() % 2) ? +1 : -1;
            Diagram moved = apply_move(d, m);
            CHECK_NOTHROW(moved.validate());
            CHECK(twist_number(moved) == twist_number(d) + m.sign);
            CHECK(moved.crossing_count() == d.crossing_count() + 1);
        }
    }

    TEST_CASE("curling a free circle") {
        Diagram d = parse("O 1\n");
        MoveSpec m{MoveKind::CurlInsert};
        m.dart_a = -1;
        m.sign = +1;
        Diagram curled = apply_move(d, m);
        CHECK(curled.node_count() == 1);
        CHECK(curled.free_circles() == 0);
        CHECK(twist_number(curled) == 1);
        CHECK(canonical_code(curled) == canonical_code(parse(kCurlPos)));
        MoveSpec rem{MoveKind::CurlRemove};
        rem.node = 0;
        CHECK(canonical_code(apply_move(curled, rem)) == canonical_code(d));
        CHECK_THROWS_AS(apply_move(curled, m), SiteMismatch);  // no circle left
    }

    TEST_CASE("curl insert/remove round-trips") {
        std::mt19937_64 rng(103);
        for (int i = 0; i < 20; ++i) {
            Diagram d = corpus_diagram(rng);
            if (d.node_count() == 0) continue;
            MoveSpec ins{MoveKind::CurlInsert};
            ins.dart_a = static_cast<Dart>(rng() % d.dart_count());
            ins.sign = (rng() % 2) ? +1 : -1;
            Diagram moved = apply_move(d, ins);
            MoveSpec rem{MoveKind::CurlRemove};
            rem.node = moved.node_count() - 1;  // the inserted crossing
            CHECK(curl_sign(moved, rem.node) == ins.sign);
            Diagram back = apply_move(moved, rem);
            CHECK(canonical_code(back) == canonical_code(d));
        }
    }

    TEST_CASE("R2 insert/remove round-trips through the created bigon") {
        std::mt19937_64 rng(107);
        int done = 0;
        for (int i = 0; i < 40 && done < 15; ++i) {
            Diagram d = corpus_diagram(rng);
            auto sites = enumerate_moves(d, MoveKind::R2Insert);
            if (sites.empty()) continue;
            Diagram moved = apply_move(d, sites[rng() % sites.size()]);
            CHECK_NOTHROW(moved.validate());
            CHECK(moved.crossing_count() == d.crossing_count() + 2);
            CHECK(twist_number(moved) == twist_number(d));
            // The move created an removable bigon between the two new crossings.
            auto removals = enumerate_moves(moved, MoveKind::R2Remove);
            bool restored = false;
            for (const MoveSpec& r : removals) {
                Diagram back = apply_move(moved, r);
                if (canonical_code(back) == canonical_code(d)) restored = true;
            }
            CHECK(restored);
            ++done;
        }
        CHECK(done >= 10);
    }

    TEST_CASE("vertex twists cancel in opposite pairs") {
        std::mt19937_64 rng(109);
        int done = 0;
        for (int i = 0; i < 40 && done < 15; ++i) {
            Diagram d = corpus_diagram(rng, 4, 2);
            if (d.vertex_count() == 0) continue;
            int v = -1;
            for (int n = 0; n < d.node_count(); ++n)
                if (!d.is_crossing(n)) v = n;
            MoveSpec tw{MoveKind::VertexTwist};
            tw.node = v;
            tw.slot = static_cast<int>(rng() % 4);
            tw.sign = (rng() % 2) ? +1 : -1;
            Diagram once = apply_move(d, tw);
            CHECK_NOTHROW(once.validate());
            CHECK(once.crossing_count() == d.crossing_count() + 2);
            CHECK(twist_number(once) == twist_number(d));
            MoveSpec untw = tw;
            untw.node = once.node_count() - 3;  // the flipped vertex
            untw.sign = -tw.sign;
            Diagram back = apply_move(once, untw);
            CHECK(canonical_code(back) == canonical_code(d));
            ++done;
        }
        CHECK(done >= 10);
    }

    TEST_CASE("triangle slides are involutive and preserve validity") {
        std::mt19937_64 rng(113);
        int done = 0;
        for (int i = 0; i < 80 && done < 15; ++i) {
            Diagram d = corpus_diagram(rng, 3, 5);
            for (MoveKind kind : {MoveKind::R3Slide, MoveKind::VertexSlide}) {
                auto sites = enumerate_moves(d, kind);
                if (sites.empty()) continue;
                MoveSpec m = sites[rng() % sites.size()];
                Diagram moved = apply_move(d, m);
                CHECK_NOTHROW(moved.validate());
                CHECK(moved.node_count() == d.node_count());
                // Flip back: the replacement corners host a triangle face again.
                auto back_sites = enumerate_moves(moved, kind);
                bool restored = false;
                for (const MoveSpec& r : back_sites)
                    if (canonical_code(apply_move(moved, r)) == canonical_code(d)) restored = true;
                CHECK(restored);
                ++done;
            }
        }
        CHECK(done >= 8);
    }

    TEST_CASE("moves II-V preserve twist and circuit count, curls shift twist") {
        std::mt19937_64 rng(127);
        int checked = 0;
        for (int i = 0; i < 60; ++i) {
            Diagram d = corpus_diagram(rng);
            size_t ncirc = circuits(d).size();
            int t = twist_number(d);
            for (MoveKind kind : {MoveKind::R2Insert, MoveKind::R2Remove, MoveKind::R3Slide,
                                  MoveKind::VertexSlide, MoveKind::VertexTwist}) {
                auto sites = enumerate_moves(d, kind);
                if (sites.empty()) continue;
                Diagram moved = apply_move(d, sites[rng() % sites.size()]);
                CHECK(twist_number(moved) == t);
                CHECK(circuits(moved).size() == ncirc);
                ++checked;
            }
            auto curls = enumerate_moves(d, MoveKind::CurlRemove);
            if (!curls.empty()) {
                int sign = curl_sign(d, curls[0].node);
                Diagram moved = apply_move(d, curls[0]);
                CHECK(twist_number(moved) == t - sign);
                CHECK(circuits(moved).size() == ncirc);
                ++checked;
            }
        }
        CHECK(checked > 80);
    }

    TEST_CASE("site mismatches are rejected") {
        Diagram d = parse(kVertexLoop);
        MoveSpec bad{MoveKind::CurlRemove};
        bad.node = 0;  // a vertex, not a curl crossing
        CHECK_THROWS_AS(apply_move(d, bad), SiteMismatch);
        MoveSpec bad2{MoveKind::R2Insert};
        bad2.dart_a = 0;
        bad2.dart_b = d.mate(0);  // same edge
        CHECK_THROWS_AS(apply_move(d, bad2), SiteMismatch);
        MoveSpec bad3{MoveKind::VertexTwist};
        bad3.node = 0;
        bad3.slot = 7;
        CHECK_THROWS_AS(apply_move(d, bad3), SiteMismatch);
    }

    TEST_CASE("switching a crossing flips its curl sign") {
        Diagram pos = parse(kCurlPos);
        Diagram neg = switch_crossing(pos, 0);
        CHECK(canonical_code(neg) == canonical_code(parse(kCurlNeg)));
        CHECK(twist_number(neg) == -1);
    }
}
