// Command-line surface for the nearest induced flat / simplex / hyperplane
// solvers: instance generation, the approximate and exact searches, the
// brute-force oracle, a degeneracy audit, and benchmark tables.
//
// Results go to stdout as JSON (schema 1); a human-readable summary goes to
// stderr.  Exit codes: 0 success, 2 degenerate input, 3 parse/budget errors.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "induced/flat_search.hpp"
#include "induced/generators.hpp"
#include "induced/geometry.hpp"
#include "induced/hyperplane_exact.hpp"
#include "induced/io.hpp"
#include "induced/oracle.hpp"
#include "induced/simplex_search.hpp"

using json = nlohmann::json;
using namespace induced;

namespace {

struct CommonOpts {
  std::string input;
  std::string queryCsv;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double perturbation = 0.0;
  int threads = 0;  // 0: all cores
  bool timing = false;
  bool withOracle = false;
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

Vec parse_query_csv(const std::string& text) {
  Vec q;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) q.push_back(std::stod(tok));
  return q;
}

Instance load_instance(const CommonOpts& c, bool needQuery) {
  Instance inst = c.input == "-" ? ingest_stream(std::cin, FileFormat::Json) : ingest(c.input);
  if (!c.queryCsv.empty()) {
    Vec q = parse_query_csv(c.queryCsv);
    if (static_cast<int>(q.size()) != inst.points.dim())
      throw DimensionMismatch("--query length does not match the instance dimension");
    inst.query = std::move(q);
  }
  if (needQuery && !inst.query)
    throw ParseError("no query point: use a json instance with \"query\" or pass --query");
  return inst;
}

SearchOptions search_options(const CommonOpts& c) {
  SearchOptions o;
  o.policy.tolerance = c.tolerance;
  o.policy.perturbation = c.perturbation;
  o.policy.seed = c.seed;
  o.threads =
      c.threads > 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  return o;
}

json subset_json(const IndexSubset& s) {
  json a = json::array();
  for (int id : s.indices) a.push_back(id);
  return a;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void emit(json record, const std::string& summary, const CommonOpts& c, double wallMs) {
  if (c.timing) record["wall_ms"] = wallMs;
  std::cout << record.dump() << "\n";
  std::cerr << summary << "  (" << wallMs << " ms)\n";
}

void add_common(CLI::App* cmd, CommonOpts& c, bool needsInput) {
  if (needsInput)
    cmd->add_option("--input,-i", c.input, "instance file (csv or json; '-' for stdin json)")
        ->required();
  cmd->add_option("--query,-q", c.queryCsv, "query point as comma-separated coordinates");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--tolerance", c.tolerance, "relative tolerance of all predicates");
  cmd->add_option("--perturb", c.perturbation,
                  "relative jitter applied to degenerate inputs (0 = off)");
  cmd->add_option("--threads", c.threads, "worker threads (default: all cores)");
  cmd->add_flag("--timing", c.timing, "include wall_ms in the JSON record");
}

double fit_slope(const std::vector<double>& logN, const std::vector<double>& logT) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logN.size(); ++i) {
    mx += logN[i];
    my += logT[i];
  }
  mx /= logN.size();
  my /= logN.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < logN.size(); ++i) {
    num += (logN[i] - mx) * (logT[i] - my);
    den += (logN[i] - mx) * (logN[i] - mx);
  }
  return den > 0 ? num / den : 0.0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"nearest induced flat / simplex / hyperplane search"};
  app.require_subcommand(1);

  // ----- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int genN = 32, genDim = 3, genPlant = 0;
  std::uint64_t genSeed = 0;
  std::string genName = "uniform-cube";
  std::string genOut = "-";
  std::string genFormat = "json";
  gen->add_option("--n", genN, "number of points");
  gen->add_option("--dim", genDim, "dimension");
  gen->add_option("--seed", genSeed, "random seed");
  gen->add_option("--generator", genName,
                  "uniform-cube | gaussian | planted-flat | planted-degenerate");
  gen->add_option("--plant", genPlant, "planted structure size (generator-specific default)");
  gen->add_option("--out,-o", genOut, "output path ('-' for stdout)");
  gen->add_option("--format", genFormat, "csv | json");
  gen->callback([&] {
    const Instance inst =
        generate_instance(generator_from_name(genName), genN, genDim, genSeed, genPlant);
    const FileFormat fmt = genFormat == "csv" ? FileFormat::Csv : FileFormat::Json;
    if (genOut == "-")
      write_instance(std::cout, inst, fmt);
    else
      write_instance_file(genOut, inst, fmt);
    std::cerr << "generated n=" << genN << " dim=" << genDim << " (" << genName << ")\n";
  });

  // ----- nearest-flat ------------------------------------------------------
  auto* nf = app.add_subcommand("nearest-flat", "(1+eps)-approximate nearest induced flat");
  CommonOpts nfc;
  int nfK = 2;
  double nfEps = 0.1;
  std::string nfVariant = "affine";
  add_common(nf, nfc, true);
  nf->add_option("--k", nfK, "points per flat (the origin included for --variant linear)");
  nf->add_option("--epsilon", nfEps, "approximation parameter");
  nf->add_option("--variant", nfVariant, "affine | linear");
  nf->add_flag("--oracle", nfc.withOracle, "cross-check against the brute-force oracle");
  nf->callback([&] {
    if (nfVariant != "linear" && nfVariant != "affine")
      throw ParseError("--variant must be affine or linear");
    const Instance inst = load_instance(nfc, true);
    const FlatVariant variant =
        nfVariant == "linear" ? FlatVariant::Linear : FlatVariant::Affine;
    const double t0 = now_ms();
    const NearestFlatResult r =
        nearest_flat_approx(inst.points, *inst.query, nfK, nfEps, variant, search_options(nfc));
    const double wall = now_ms() - t0;
    json rec{{"schema", 1},
             {"problem", "nearest-flat"},
             {"variant", nfVariant},
             {"n", inst.points.size()},
             {"dim", inst.points.dim()},
             {"k", nfK},
             {"epsilon", nfEps},
             {"seed", nfc.seed},
             {"subset", subset_json(r.subset)},
             {"euclid", r.euclid},
             {"gauge", r.gauge},
             {"foot", vec_json(r.foot)}};
    if (nfc.withOracle) {
      const auto rep = oracle::brute_nearest_flat(
          inst.points, *inst.query, nfK,
          variant == FlatVariant::Linear ? oracle::Variant::Linear : oracle::Variant::Affine);
      rec["oracle"] = {{"optimum", rep.optimum},
                       {"subset", subset_json(rep.optimizers.front())},
                       {"ratio", rep.optimum > 0 ? r.euclid / rep.optimum : 1.0}};
    }
    std::ostringstream sum;
    sum << "nearest-flat k=" << nfK << " eps=" << nfEps << " -> euclid " << r.euclid;
    emit(rec, sum.str(), nfc, wall);
  });

  // ----- nearest-simplex ---------------------------------------------------
  auto* ns =
      app.add_subcommand("nearest-simplex", "(1+eps)-approximate nearest induced simplex");
  CommonOpts nsc;
  int nsK = 2;
  double nsEps = 0.1;
  std::string nsVariant = "affine";
  add_common(ns, nsc, true);
  ns->add_option("--k", nsK, "maximum simplex vertex count");
  ns->add_option("--epsilon", nsEps, "approximation parameter");
  ns->add_option("--variant", nsVariant, "affine only (convex regression has no linear form)");
  ns->add_flag("--oracle", nsc.withOracle, "cross-check against the brute-force oracle");
  ns->callback([&] {
    if (nsVariant == "linear") throw ParseError("nearest-simplex has no linear variant");
    const Instance inst = load_instance(nsc, true);
    const double t0 = now_ms();
    const NearestSimplexResult r =
        nearest_simplex_approx(inst.points, *inst.query, nsK, nsEps, search_options(nsc));
    const double wall = now_ms() - t0;
    json rec{{"schema", 1},
             {"problem", "nearest-simplex"},
             {"n", inst.points.size()},
             {"dim", inst.points.dim()},
             {"k", nsK},
             {"epsilon", nsEps},
             {"seed", nsc.seed},
             {"subset", subset_json(r.subset)},
             {"euclid", r.euclid},
             {"gauge", r.gauge},
             {"foot", vec_json(r.foot)}};
    if (nsc.withOracle) {
      const auto rep = oracle::brute_nearest_simplex(inst.points, *inst.query, nsK);
      rec["oracle"] = {{"optimum", rep.optimum},
                       {"subset", subset_json(rep.optimizers.front())},
                       {"ratio", rep.optimum > 0 ? r.euclid / rep.optimum : 1.0}};
    }
    std::ostringstream sum;
    sum << "nearest-simplex k<=" << nsK << " eps=" << nsEps << " -> euclid " << r.euclid;
    emit(rec, sum.str(), nsc, wall);
  });

  // ----- nearest-hyperplane ------------------------------------------------
  auto* nh =
      app.add_subcommand("nearest-hyperplane", "exact nearest induced hyperplane (d = 2)");
  CommonOpts nhc;
  int nhR = 4;
  add_common(nh, nhc, true);
  nh->add_option("--r", nhR, "cutting parameter (1/r)");
  nh->add_flag("--oracle", nhc.withOracle, "cross-check against the quadratic brute force");
  nh->callback([&] {
    const Instance inst = load_instance(nhc, true);
    HyperplaneExactOptions opts;
    opts.policy.tolerance = nhc.tolerance;
    opts.policy.seed = nhc.seed;
    opts.cuttingR = nhR;
    const double t0 = now_ms();
    const NearestHyperplaneResult r = nearest_hyperplane_exact(inst.points, *inst.query, opts);
    const double wall = now_ms() - t0;
    json ties = json::array();
    for (const auto& t : r.ties) ties.push_back(subset_json(t));
    json rec{{"schema", 1},
             {"problem", "nearest-hyperplane"},
             {"n", inst.points.size()},
             {"dim", inst.points.dim()},
             {"k", inst.points.dim()},
             {"seed", nhc.seed},
             {"subset", subset_json(r.subset)},
             {"euclid", r.distance},
             {"foot", vec_json(r.foot)},
             {"ties", ties},
             {"candidates", r.candidatesExamined}};
    if (nhc.withOracle) {
      const auto rep = oracle::brute_nearest_flat(inst.points, *inst.query, inst.points.dim(),
                                                  oracle::Variant::Affine);
      rec["oracle"] = {{"optimum", rep.optimum},
                       {"subset", subset_json(rep.optimizers.front())}};
    }
    std::ostringstream sum;
    sum << "nearest-hyperplane -> euclid " << r.distance << " (" << r.candidatesExamined
        << " candidates)";
    emit(rec, sum.str(), nhc, wall);
  });

  // ----- degeneracy --------------------------------------------------------
  auto* dg = app.add_subcommand("degeneracy", "affine-degeneracy audit of the point set");
  CommonOpts dgc;
  add_common(dg, dgc, true);
  dg->callback([&] {
    const Instance inst = load_instance(dgc, false);
    const double t0 = now_ms();
    const std::vector<int> flags = degeneracy_test(inst.points, search_options(dgc));
    const double wall = now_ms() - t0;
    const json rec{{"schema", 1},
                   {"problem", "degeneracy"},
                   {"n", inst.points.size()},
                   {"dim", inst.points.dim()},
                   {"seed", dgc.seed},
                   {"degenerate", !flags.empty()},
                   {"flagged", flags}};
    std::ostringstream sum;
    sum << "degeneracy -> " << (flags.empty() ? "negative" : "positive") << " ("
        << flags.size() << " flagged)";
    emit(rec, sum.str(), dgc, wall);
  });

  // ----- oracle ------------------------------------------------------------
  auto* orc = app.add_subcommand("oracle", "brute-force reference for any problem");
  CommonOpts oc;
  std::string orcProblem = "nearest-flat";
  int orcK = 2;
  std::string orcVariant = "affine";
  add_common(orc, oc, true);
  orc->add_option("--problem", orcProblem,
                  "nearest-flat | nearest-simplex | nearest-hyperplane | degeneracy");
  orc->add_option("--k", orcK, "subset size");
  orc->add_option("--variant", orcVariant, "affine | linear");
  orc->callback([&] {
    const bool needQuery = orcProblem != "degeneracy";
    const Instance inst = load_instance(oc, needQuery);
    const double t0 = now_ms();
    json rec{{"schema", 1},
             {"problem", "oracle/" + orcProblem},
             {"n", inst.points.size()},
             {"dim", inst.points.dim()},
             {"seed", oc.seed}};
    std::ostringstream sum;
    if (orcProblem == "degeneracy") {
      const bool deg = oracle::brute_degeneracy(inst.points, oc.tolerance);
      rec["degenerate"] = deg;
      sum << "oracle degeneracy -> " << (deg ? "positive" : "negative");
    } else {
      oracle::OracleReport rep;
      if (orcProblem == "nearest-flat") {
        rep = oracle::brute_nearest_flat(inst.points, *inst.query, orcK,
                                         orcVariant == "linear" ? oracle::Variant::Linear
                                                                : oracle::Variant::Affine);
      } else if (orcProblem == "nearest-simplex") {
        rep = oracle::brute_nearest_simplex(inst.points, *inst.query, orcK);
      } else if (orcProblem == "nearest-hyperplane") {
        rep = oracle::brute_nearest_flat(inst.points, *inst.query, inst.points.dim(),
                                         oracle::Variant::Affine);
      } else {
        throw ParseError("unknown oracle problem '" + orcProblem + "'");
      }
      rec["euclid"] = rep.optimum;
      rec["subset"] = subset_json(rep.optimizers.front());
      rec["k"] = orcK;
      json optimizers = json::array();
      for (const auto& o : rep.optimizers) optimizers.push_back(subset_json(o));
      rec["optimizers"] = optimizers;
      rec["candidates"] = rep.candidates;
      sum << "oracle " << orcProblem << " -> euclid " << rep.optimum;
    }
    emit(rec, sum.str(), oc, now_ms() - t0);
  });

  // ----- polytope ----------------------------------------------------------
  auto* pt = app.add_subcommand("polytope", "dump the gauge polytope as JSON");
  int ptDim = 3;
  double ptEps = 0.1;
  pt->add_option("--dim", ptDim, "dimension");
  pt->add_option("--epsilon", ptEps, "approximation parameter");
  pt->callback([&] {
    const ApproxPolytope Q = build_polytope(ptDim, ptEps);
    json verts = json::array();
    for (const Vec& v : Q.vertices) verts.push_back(vec_json(v));
    json facets = json::array();
    for (const auto& f : Q.facets)
      facets.push_back(
          {{"vertices", f.vertexIds}, {"normal", vec_json(f.normal)}, {"offset", f.offset}});
    const json rec{
        {"schema", 1}, {"dim", ptDim}, {"epsilon", ptEps}, {"vertices", verts},
        {"facets", facets}};
    std::cout << rec.dump() << "\n";
    std::cerr << "polytope dim=" << ptDim << " eps=" << ptEps << ": " << Q.vertices.size()
              << " vertices, " << Q.facets.size() << " facets\n";
  });

  // ----- bench -------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "timing table with a fitted log-log slope");
  std::string benchSizes = "1000,2000,4000";
  int benchTrials = 3, benchK = 2, benchDim = 3, benchThreads = 0;
  double benchEps = 0.25;
  std::uint64_t benchSeed = 0;
  std::string benchProblem = "nearest-flat";
  bench->add_option("--sizes", benchSizes, "comma-separated n values");
  bench->add_option("--trials", benchTrials, "trials per size (the minimum is kept)");
  bench->add_option("--k", benchK, "subset size");
  bench->add_option("--dim", benchDim, "dimension");
  bench->add_option("--epsilon", benchEps, "approximation parameter");
  bench->add_option("--seed", benchSeed, "random seed");
  bench->add_option("--threads", benchThreads, "worker threads");
  bench->add_option("--problem", benchProblem, "nearest-flat | nearest-simplex");
  bench->callback([&] {
    std::vector<int> sizes;
    std::stringstream ss(benchSizes);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
    SearchOptions opts;
    opts.policy.seed = benchSeed;
    opts.threads = benchThreads > 0 ? benchThreads
                                    : std::max(1u, std::thread::hardware_concurrency());
    json table = json::array();
    std::vector<double> logN, logT;
    for (const int n : sizes) {
      double best = -1.0;
      for (int trial = 0; trial < benchTrials; ++trial) {
        const Instance inst = generate_instance(Generator::UniformCube, n, benchDim,
                                                benchSeed + 977 * trial + n, 0);
        const double t0 = now_ms();
        if (benchProblem == "nearest-simplex")
          nearest_simplex_approx(inst.points, *inst.query, benchK, benchEps, opts);
        else
          nearest_flat_approx(inst.points, *inst.query, benchK, benchEps, FlatVariant::Affine,
                              opts);
        const double dt = now_ms() - t0;
        if (best < 0 || dt < best) best = dt;
      }
      table.push_back({{"n", n}, {"ms", best}});
      std::cerr << "n=" << n << "  " << best << " ms\n";
      logN.push_back(std::log(n));
      logT.push_back(std::log(std::max(best, 1e-3)));
    }
    const double slope = fit_slope(logN, logT);
    const json rec{{"schema", 1},
                   {"problem", "bench/" + benchProblem},
                   {"k", benchK},
                   {"dim", benchDim},
                   {"epsilon", benchEps},
                   {"trials", benchTrials},
                   {"table", table},
                   {"slope", slope}};
    std::cout << rec.dump() << "\n";
    std::cerr << "fitted slope " << slope << "\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
