#include "kv/rewire.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace kv;
using namespace kvtest;

TEST_SUITE("rewire") {
    TEST_CASE("splicing the loop vertex away leaves a circle") {
        Diagram d = parse(kVertexLoop);
        RewireSpec spec;
        spec.deleted = {0};
        spec.arcs = {{Terminal::make_leg(make_dart(0, 2)), Terminal::make_leg(make_dart(0, 3))}};
        RewireResult r = rewire(d, spec);
        CHECK(r.diagram.node_count() == 0);
        CHECK(r.diagram.free_circles() == 1);
        CHECK(r.closed_circles == 1);
    }

    TEST_CASE("chains follow through external attachments") {
        Diagram d = parse(kDoubleBigon);
        // Smooth the second vertex away; the surviving vertex keeps both
        // strands as corner loops.
        RewireSpec spec;
        spec.deleted = {1};
        spec.arcs = {{Terminal::make_leg(make_dart(1, 0)), Terminal::make_leg(make_dart(1, 1))},
                     {Terminal::make_leg(make_dart(1, 2)), Terminal::make_leg(make_dart(1, 3))}};
        RewireResult r = rewire(d, spec);
        CHECK(r.diagram.node_count() == 1);
        CHECK(r.diagram.free_circles() == 0);
        CHECK_NOTHROW(r.diagram.validate());
        CHECK(canonical_code(r.diagram) == canonical_code(parse(kVertexLoop)));
    }

    TEST_CASE("new nodes splice into the boundary") {
        Diagram d = parse(kDoubleBigon);
        RewireSpec spec;
        spec.deleted = {0};
        NewNodeSpec nn;
        nn.kind = NodeKind::RigidVertex;
        for (int k = 0; k < 4; ++k) nn.targets[k] = Terminal::make_leg(make_dart(0, k));
        spec.new_nodes.push_back(nn);
        RewireResult r = rewire(d, spec);
        CHECK(r.diagram.node_count() == 2);
        CHECK(canonical_code(r.diagram) == canonical_code(d));
    }

    TEST_CASE("malformed specs are rejected") {
        Diagram d = parse(kVertexLoop);
        RewireSpec missing;
        missing.deleted = {0};
        missing.arcs = {{Terminal::make_leg(make_dart(0, 2)), Terminal::make_leg(make_dart(0, 0))}};
        // Slot 3 is left dangling while slot 0's loop partner is consumed.
        CHECK_THROWS_AS(rewire(d, missing), RuleMismatch);

        RewireSpec twice;
        twice.deleted = {0};
        twice.arcs = {{Terminal::make_leg(make_dart(0, 2)), Terminal::make_leg(make_dart(0, 3))},
                      {Terminal::make_leg(make_dart(0, 2)), Terminal::make_leg(make_dart(0, 3))}};
        CHECK_THROWS_AS(rewire(d, twice), RuleMismatch);
    }
}
