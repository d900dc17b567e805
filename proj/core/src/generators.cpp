#include "induced/generators.hpp"

#include <algorithm>

#include "induced/rng.hpp"

namespace induced {

Generator generator_from_name(const std::string& name) {
  if (name == "uniform-cube") return Generator::UniformCube;
  if (name == "gaussian") return Generator::Gaussian;
  if (name == "planted-flat") return Generator::PlantedFlat;
  if (name == "planted-degenerate") return Generator::PlantedDegenerate;
  throw ParseError("unknown generator '" + name + "'");
}

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::UniformCube: return "uniform-cube";
    case Generator::Gaussian: return "gaussian";
    case Generator::PlantedFlat: return "planted-flat";
    case Generator::PlantedDegenerate: return "planted-degenerate";
  }
  return "?";
}

Instance generate_instance(Generator g, int n, int dim, std::uint64_t seed, int plant) {
  if (n < 1 || dim < 1) throw ParseError("generator: n and dim must be positive");
  SplitRng rng(seed ^ 0x3c6ef372fe94f82bull);
  const bool gaussian = g == Generator::Gaussian;
  auto coordinate = [&]() { return gaussian ? rng.nextGaussian() : rng.nextDouble(); };

  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n * dim; ++i) coords.push_back(coordinate());
  Vec query(dim);
  for (double& q : query) q = coordinate();

  if (g == Generator::PlantedFlat) {
    const int k = std::clamp(plant > 0 ? plant : 2, 1, n);
    // Query on the affine hull of the first k points (coefficients sum to 1).
    Vec w(k);
    double sum = 0.0;
    for (double& x : w) {
      x = rng.nextDouble(0.1, 1.0);
      sum += x;
    }
    for (double& x : w) x /= sum;
    for (int c = 0; c < dim; ++c) {
      double v = 0.0;
      for (int i = 0; i < k; ++i) v += w[i] * coords[static_cast<std::size_t>(i) * dim + c];
      query[c] = v;
    }
  } else if (g == Generator::PlantedDegenerate) {
    const int j = std::clamp(plant > 0 ? plant : dim + 1, 2, n);
    // Last planted point becomes an affine combination of the others.
    Vec w(j - 1);
    double sum = 0.0;
    for (double& x : w) {
      x = rng.nextDouble(0.1, 1.0);
      sum += x;
    }
    for (double& x : w) x /= sum;
    for (int c = 0; c < dim; ++c) {
      double v = 0.0;
      for (int i = 0; i < j - 1; ++i) v += w[i] * coords[static_cast<std::size_t>(i) * dim + c];
      coords[static_cast<std::size_t>(j - 1) * dim + c] = v;
    }
  }

  Instance inst;
  inst.points = PointSet(dim, std::move(coords));
  inst.query = std::move(query);
  inst.seed = seed;
  inst.generator = generator_name(g);
  return inst;
}

}  // namespace induced
