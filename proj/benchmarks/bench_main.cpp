#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "bwslex/design.hpp"
#include "bwslex/lpd.hpp"
#include "bwslex/scoring.hpp"
#include "bwslex/simulate.hpp"

namespace {

std::vector<bwslex::Term> terms(std::size_t n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back("term" + std::to_string(i));
  return bwslex::make_terms(s);
}

struct Fixture {
  std::vector<bwslex::Tuple4> tuples;
  std::vector<bwslex::Response> responses;
};

Fixture simulated(std::size_t n) {
  Fixture f;
  const auto ts = terms(n);
  f.tuples = bwslex::generate_design(ts, 2, 1);
  bwslex::SimConfig cfg;
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& t : ts) cfg.latent[t.surface] = u(gen);
  cfg.noise_sigma = 0.15;
  f.responses = bwslex::simulate(f.tuples, cfg);
  return f;
}

void BM_GenerateDesign(benchmark::State& state) {
  const auto ts = terms(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bwslex::generate_design(ts, 2, 7));
}
BENCHMARK(BM_GenerateDesign)->Arg(500)->Arg(3207)->Unit(benchmark::kMillisecond);

void BM_Score(benchmark::State& state) {
  const auto f = simulated(static_cast<std::size_t>(state.range(0)));
  const bwslex::TupleIndex index(f.tuples);
  for (auto _ : state) benchmark::DoNotOptimize(bwslex::score(f.responses, index));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.responses.size()));
}
BENCHMARK(BM_Score)->Arg(3207)->Unit(benchmark::kMillisecond);

void BM_AgreementCurve(benchmark::State& state) {
  const auto f = simulated(static_cast<std::size_t>(state.range(0)));
  const bwslex::TupleIndex index(f.tuples);
  const auto pairs = bwslex::infer_pairs(f.responses, index);
  const auto lex = bwslex::score(f.responses, index);
  for (auto _ : state) benchmark::DoNotOptimize(bwslex::agreement_curve(pairs, lex));
}
BENCHMARK(BM_AgreementCurve)->Arg(3207)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
