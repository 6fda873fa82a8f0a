#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "semigen/generator.hpp"

namespace semigen {

enum class Regime { Interior, Origin, BoundaryHyperbolic, BoundaryParabolic };

std::string regime_name(Regime r);

/// Random generator law used by the property suites:
///   n uniform in 1..4, angles uniform, lambda_k = -exp(U[-2, 2]),
///   p with 0..3 atoms of mass exp(U[-3, 1]), gamma uniform in [-5, 5],
///   tau uniform in the disk (Interior), 0 (Origin) or on the circle.
///
/// Atoms of p land on a point of F with probability 1/3 so that BRFP
/// spectral values other than lambda_k are exercised. In the hyperbolic
/// regime gamma is usually replaced by the value that makes the boundary
/// value of p + p0 vanish at tau, so that lambda(G) > 0; in the parabolic
/// regime p gets an atom at tau half of the time.
FixedPointConfig random_config(std::mt19937_64& rng, Regime regime);
AtomicHerglotz random_herglotz(std::mt19937_64& rng, const FixedPointConfig& config, int max_atoms = 3);
GeneratorSpec random_spec(std::mt19937_64& rng, Regime regime);

/// Runs body(shard, rng, count) on a fixed number of worker threads. The
/// shard seeds come from std::seed_seq{seed, shard}, so results depend only
/// on (seed, total, shards) and not on scheduling.
void run_sharded(std::uint64_t seed, std::size_t total, std::size_t shards,
                 const std::function<void(std::size_t shard, std::mt19937_64& rng, std::size_t count)>& body);

constexpr std::size_t kDefaultShards = 8;

} // namespace semigen
