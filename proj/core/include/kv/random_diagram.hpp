#pragma once

#include "kv/diagram.hpp"

#include <cstdint>

namespace kv {

struct RandomDiagramParams {
    int n_vertices = 0;
    int n_crossings = 0;
    std::uint64_t seed = 0;
};

/// Deterministic per seed: grows from free circles by random insertion moves
/// (curls, R2 pushes), shuffles with triangle slides, then converts a random
/// subset of crossings to rigid vertices. Always genus 0 by construction.
Diagram random_diagram(const RandomDiagramParams& params);

}  // namespace kv
