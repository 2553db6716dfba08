#include "bwslex/simulate.hpp"

#include <array>
#include <cstdio>

#include "bwslex/error.hpp"
#include "bwslex/rng.hpp"

namespace bwslex {

namespace {
constexpr std::int64_t kEpochMs = 1'500'000'000'000;
}

std::string simulated_annotator_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sim%03zu", index + 1);
  return buf;
}

std::vector<Response> simulate(const std::vector<Tuple4>& tuples, const SimConfig& config) {
  if (config.n_annotators == 0) throw DataError("simulation needs at least one annotator");
  if (!(config.noise_sigma >= 0.0)) throw DataError("noise sigma must be non-negative");

  std::vector<std::array<double, 4>> latents(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (int k = 0; k < 4; ++k) {
      const auto it = config.latent.find(tuples[t].items[k]);
      if (it == config.latent.end()) {
        throw DataError("no latent score for '" + tuples[t].items[k] + "' (tuple " + tuples[t].tuple_id + ")");
      }
      latents[t][k] = it->second;
    }
  }

  std::vector<std::string> annotators;
  for (std::size_t a = 0; a < config.n_annotators; ++a) annotators.push_back(simulated_annotator_id(a));

  std::vector<Response> out;
  out.reserve(tuples.size() * config.n_annotators);
  char id[32];
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (std::size_t a = 0; a < config.n_annotators; ++a) {
      int best = 0, worst = 0;
      std::array<double, 4> perceived{};
      for (int k = 0; k < 4; ++k) {
        const double noise =
            config.noise_sigma == 0.0
                ? 0.0
                : config.noise_sigma * normal_from_key(stream_key(config.seed, {a, t, static_cast<std::uint64_t>(k)}));
        perceived[k] = latents[t][k] + noise;
        if (perceived[k] > perceived[best]) best = k;
        if (perceived[k] < perceived[worst]) worst = k;
      }
      if (best == worst) worst = best == 0 ? 1 : 0;  // all four perceived equal
      Response r;
      std::snprintf(id, sizeof id, "r%08zu", out.size() + 1);
      r.response_id = id;
      r.annotator_id = annotators[a];
      r.tuple_id = tuples[t].tuple_id;
      r.best = tuples[t].items[best];
      r.worst = tuples[t].items[worst];
      r.unix_ms = kEpochMs + static_cast<std::int64_t>(out.size()) * 1000;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace bwslex
