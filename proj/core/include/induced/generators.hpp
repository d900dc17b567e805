#pragma once

#include <cstdint>
#include <string>

#include "induced/io.hpp"
#include "induced/types.hpp"

// Deterministic instance generators for experiments and tests.

namespace induced {

enum class Generator {
  UniformCube,        // iid coordinates in [0, 1)
  Gaussian,           // iid standard normal coordinates
  PlantedFlat,        // query placed on the affine hull of the first `plant` points
  PlantedDegenerate,  // first `plant` points made affinely dependent
};

Generator generator_from_name(const std::string& name);
std::string generator_name(Generator g);

// `plant` defaults (0): PlantedFlat -> 2 points, PlantedDegenerate -> d+1.
Instance generate_instance(Generator g, int n, int dim, std::uint64_t seed, int plant = 0);

}  // namespace induced
