#pragma once

/**
 * Instance generators. Each profile emits a config whose hypotheses hold by
 * construction:
 *
 *   fixed-fermat   constant forms X_0..X_M plus rows ((-c)^l)_l, c = 1, 2, ...;
 *                  x = [1 : t^a : ... : t^(M a)], S = {(t), inf}
 *   slow-coeff     X_0..X_M plus rows (c^l u^(l mod 2))_l with u = t^ilog2(a),
 *                  so h(H_j) <= ilog2(a); same points and places
 *   random-gp      seeded random integer forms in [-3, 3] with every
 *                  (M+1)-minor nonzero; same points and places
 *   random-moving  seeded moving forms with a constant first coefficient and
 *                  entries c or c t^ilog2(a^3); points t^(k a) (t+1)^(m a) with
 *                  k + m >= 2; up to three random places
 *
 * Same profile and parameters, same config.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffdio/config.hpp"

namespace ffdio {

struct GenerateParams {
  std::optional<std::size_t> M;
  std::optional<std::size_t> q;
  std::uint64_t seed = 1;
  std::optional<Window> window;
};

std::vector<std::string> profile_names();

// The config as JSON (mode "verify"); ConfigError for an unknown profile or
// impossible parameters.
Json generate(const std::string& profile, const GenerateParams& params);

// Uniform integer in [lo, hi] from the raw engine output, so the stream is
// identical across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi);

}  // namespace ffdio
