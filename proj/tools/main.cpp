// bwslex: Best-Worst Scaling sentiment lexicon toolkit.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <pthread.h>
#include <thread>

#include <CLI11.hpp>

#include "bwslex/campaign.hpp"
#include "bwslex/composition.hpp"
#include "bwslex/design.hpp"
#include "bwslex/error.hpp"
#include "bwslex/lexicon.hpp"
#include "bwslex/lpd.hpp"
#include "bwslex/responses.hpp"
#include "bwslex/scoring.hpp"
#include "bwslex/simulate.hpp"
#include "bwslex/tuples.hpp"
#include "server.hpp"

namespace fs = std::filesystem;
using namespace bwslex;

namespace {

std::vector<Response> load_filtered(const fs::path& responses_path, const TupleIndex& index,
                                    const std::string& gold_path, double min_accuracy, bool verbose) {
  auto responses = read_responses(responses_path);
  if (gold_path.empty()) return responses;
  const GoldKey gold = load_gold(gold_path);
  check_gold(gold, index);
  auto filtered = filter_annotators(responses, index, gold, min_accuracy);
  if (verbose) {
    const auto& q = filtered.report;
    std::fprintf(stderr, "gold filter: kept %zu of %zu responses; discarded %zu annotator(s) below %.2f\n",
                 q.responses_kept, q.responses_in, q.discarded_annotators.size(), q.threshold);
    for (const auto& a : q.discarded_annotators) {
      std::fprintf(stderr, "  discarded %s (gold accuracy %.3f)\n", a.c_str(), q.per_annotator_gold_accuracy.at(a));
    }
    if (!q.annotators_without_gold.empty()) {
      std::fprintf(stderr, "  %zu annotator(s) answered no gold questions (kept)\n", q.annotators_without_gold.size());
    }
  }
  return std::move(filtered.kept);
}

int serve(const std::string& tuples_path, const std::string& gold_path, const CampaignConfig& config,
          const std::string& data_dir, service::ServerOptions options) {
  std::vector<Tuple4> tuples;
  GoldKey gold;
  if (!tuples_path.empty()) tuples = read_tuples(tuples_path);
  if (!gold_path.empty()) gold = load_gold(gold_path);
  Campaign campaign(data_dir, tuples, gold, config);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::AnnotationServer server(campaign, options);
  const int port = server.bind();
  const auto p = campaign.progress();
  std::printf("listening on http://%s:%d (%zu tuples, %zu responses logged)\n", options.host.c_str(), port,
              p.tuples_total, p.responses_total);
  std::fflush(stdout);

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-Worst Scaling toolkit for fine-grained sentiment lexicons"};
  app.require_subcommand(1);

  // gen-tuples
  std::string terms_path, out_path;
  std::size_t factor = 2;
  std::uint64_t seed = 0;
  std::size_t pair_cap = 2;
  auto* gen = app.add_subcommand("gen-tuples", "Generate a balanced 4-tuple design");
  gen->add_option("--terms", terms_path, "Terms file, one term per line")->required()->check(CLI::ExistingFile);
  gen->add_option("--factor", factor, "Tuples per term")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("--pair-cap", pair_cap, "Maximum tuples shared by any pair of terms")->capture_default_str();
  gen->add_option("--out", out_path, "Output tuples file (JSON lines)")->required();

  // validate-tuples
  std::string tuples_path;
  auto* val = app.add_subcommand("validate-tuples", "Check a tuple design against the sampling criteria");
  val->add_option("--terms", terms_path)->required()->check(CLI::ExistingFile);
  val->add_option("--tuples", tuples_path)->required()->check(CLI::ExistingFile);
  val->add_option("--pair-cap", pair_cap)->capture_default_str();

  // score
  std::string responses_path, gold_path;
  double min_gold_accuracy = 0.70;
  auto* sc = app.add_subcommand("score", "Aggregate best/worst responses into a lexicon");
  sc->add_option("--tuples", tuples_path)->required()->check(CLI::ExistingFile);
  sc->add_option("--responses", responses_path)->required()->check(CLI::ExistingFile);
  sc->add_option("--gold", gold_path, "Gold key TSV (tuple_id, best, worst)")->check(CLI::ExistingFile);
  sc->add_option("--min-gold-accuracy", min_gold_accuracy)->capture_default_str();
  sc->add_option("--out", out_path, "Output lexicon TSV")->required();

  // reliability
  std::size_t splits = 10;
  auto* rel = app.add_subcommand("reliability", "Majority agreement and split-half reliability");
  rel->add_option("--tuples", tuples_path)->required()->check(CLI::ExistingFile);
  rel->add_option("--responses", responses_path)->required()->check(CLI::ExistingFile);
  rel->add_option("--gold", gold_path)->check(CLI::ExistingFile);
  rel->add_option("--min-gold-accuracy", min_gold_accuracy)->capture_default_str();
  rel->add_option("--splits", splits)->capture_default_str()->check(CLI::PositiveNumber);
  rel->add_option("--seed", seed)->capture_default_str();

  // lpd
  std::string lexicon_path, curve_out;
  CurveOptions curve_options;
  auto* lpd = app.add_subcommand("lpd", "Least perceptible difference from inferred pairwise preferences");
  lpd->add_option("--lexicon", lexicon_path)->required()->check(CLI::ExistingFile);
  lpd->add_option("--tuples", tuples_path)->required()->check(CLI::ExistingFile);
  lpd->add_option("--responses", responses_path)->required()->check(CLI::ExistingFile);
  lpd->add_option("--window", curve_options.window)->capture_default_str();
  lpd->add_option("--grid", curve_options.grid_step)->capture_default_str();
  lpd->add_option("--confidence", curve_options.confidence)->capture_default_str();
  lpd->add_flag("--two-sided", curve_options.two_sided, "Use the two-sided normal quantile");
  lpd->add_option("--curve-out", curve_out, "Agreement curve TSV");

  // analyze
  std::string modifiers_path, out_dir;
  ImpactOptions impact;
  auto* an = app.add_subcommand("analyze", "Impact of negators, modals and degree adverbs");
  an->add_option("--lexicon", lexicon_path)->required()->check(CLI::ExistingFile);
  an->add_option("--modifiers", modifiers_path)->required()->check(CLI::ExistingFile);
  an->add_option("--lpd", impact.lpd)->capture_default_str();
  an->add_option("--pos-threshold", impact.pos_threshold)->capture_default_str();
  an->add_option("--min-pairs", impact.min_pairs)->capture_default_str();
  an->add_option("--out-dir", out_dir)->required();

  // simulate
  std::string latent_path;
  SimConfig sim;
  auto* simc = app.add_subcommand("simulate", "Synthetic responses from latent scores");
  simc->add_option("--tuples", tuples_path)->required()->check(CLI::ExistingFile);
  simc->add_option("--latent", latent_path, "TSV term, latent score")->required()->check(CLI::ExistingFile);
  simc->add_option("--annotators", sim.n_annotators)->capture_default_str()->check(CLI::PositiveNumber);
  simc->add_option("--noise", sim.noise_sigma)->capture_default_str()->check(CLI::NonNegativeNumber);
  simc->add_option("--seed", sim.seed)->capture_default_str();
  simc->add_option("--out", out_path)->required();

  // serve
  CampaignConfig campaign;
  service::ServerOptions server_options;
  std::string data_dir, ui_dir;
  auto* srv = app.add_subcommand("serve", "Run the local annotation service");
  srv->add_option("--tuples", tuples_path, "Tuples file (required for a new campaign)")->check(CLI::ExistingFile);
  srv->add_option("--gold", gold_path, "Gold key TSV; its tuples must be in --tuples")->check(CLI::ExistingFile);
  srv->add_option("--gold-rate", campaign.gold_rate)->capture_default_str();
  srv->add_option("--target", campaign.target_responses_per_tuple)->capture_default_str()->check(CLI::PositiveNumber);
  srv->add_option("--seed", campaign.seed)->capture_default_str();
  srv->add_option("--host", server_options.host)->capture_default_str();
  srv->add_option("--port", server_options.port, "0 picks a free port")->capture_default_str();
  srv->add_option("--data-dir", data_dir)->required();
  srv->add_option("--ui-dir", ui_dir, "Static annotation UI build")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto terms = load_terms(terms_path);
      DesignOptions options;
      options.pair_cap = pair_cap;
      const auto tuples = generate_design(terms, factor, seed, options);
      write_tuples(tuples, out_path);
      const auto report = validate_design(tuples, terms, pair_cap);
      std::fprintf(stderr, "%zu tuples over %zu terms; per-term count %zu..%zu; max pair co-occurrence %zu\n",
                   report.n_tuples, report.n_terms, report.min_term_count, report.max_term_count,
                   report.max_pair_cooccurrence);
      return report.ok() ? 0 : 1;
    }
    if (*val) {
      const auto terms = load_terms(terms_path);
      const auto tuples = read_tuples(tuples_path);
      const auto report = validate_design(tuples, terms, pair_cap);
      std::printf("terms\t%zu\ntuples\t%zu\nper_term_count_min\t%zu\nper_term_count_max\t%zu\n"
                  "max_pair_cooccurrence\t%zu\nduplicate_tuple_sets\t%zu\nwithin_tuple_duplicates\t%zu\n",
                  report.n_terms, report.n_tuples, report.min_term_count, report.max_term_count,
                  report.max_pair_cooccurrence, report.duplicate_tuple_sets, report.within_tuple_duplicates);
      for (const auto& v : report.violations) std::printf("violation\t%s\n", v.c_str());
      return report.ok() ? 0 : 1;
    }
    if (*sc) {
      const auto tuples = read_tuples(tuples_path);
      const TupleIndex index(tuples);
      const auto responses = load_filtered(responses_path, index, gold_path, min_gold_accuracy, true);
      const auto lexicon = score(responses, index);
      save_lexicon(lexicon, out_path);
      std::fprintf(stderr, "scored %zu terms from %zu responses\n", lexicon.size(), responses.size());
      return 0;
    }
    if (*rel) {
      const auto tuples = read_tuples(tuples_path);
      const TupleIndex index(tuples);
      const auto responses = load_filtered(responses_path, index, gold_path, min_gold_accuracy, true);
      const auto agreement = majority_agreement(responses, index);
      const auto split = split_half_reliability(responses, index, splits, seed);
      std::printf("responses\t%zu\n", responses.size());
      std::printf("majority_agreement_per_response\t%.4f\n", agreement.per_response);
      std::printf("majority_agreement_per_question\t%.4f\n", agreement.per_question);
      std::printf("split_half_splits\t%zu\n", splits);
      std::printf("split_half_spearman_mean\t%.4f\nsplit_half_spearman_sd\t%.4f\n", split.mean_spearman,
                  split.sd_spearman);
      std::printf("split_half_pearson_mean\t%.4f\nsplit_half_pearson_sd\t%.4f\n", split.mean_pearson,
                  split.sd_pearson);
      std::printf("split_half_terms\t%zu\nexcluded_tuples\t%zu\n", split.terms_compared, split.excluded_tuples.size());
      return 0;
    }
    if (*lpd) {
      const auto lexicon = load_lexicon(lexicon_path);
      const auto tuples = read_tuples(tuples_path);
      const TupleIndex index(tuples);
      const auto pairs = infer_pairs(read_responses(responses_path), index);
      const auto curve = agreement_curve(pairs, lexicon, curve_options);
      if (!curve_out.empty()) write_curve(curve, curve_out);
      const auto result = least_perceptible_difference(curve);
      std::printf("pairs\t%zu\ngrid_points\t%zu\nz\t%.5f\n", pairs.size(), curve.points.size(), curve.z);
      if (!result.value) {
        std::printf("least_perceptible_difference\tnone\n");
        std::fprintf(stderr, "%s\n", result.diagnostic.c_str());
        return 2;
      }
      std::printf("least_perceptible_difference\t%.3f\n", *result.value);
      return 0;
    }
    if (*an) {
      const auto lexicon = load_lexicon(lexicon_path);
      const ModifierInventory inventory(load_modifier_inventory(modifiers_path));
      const auto report = analyze(lexicon, inventory, impact);
      emit_report(report, out_dir);
      std::fprintf(stderr, "analysed %zu pairs; report written to %s\n", report.pairs.size(), out_dir.c_str());
      return 0;
    }
    if (*simc) {
      const auto tuples = read_tuples(tuples_path);
      sim.latent = load_score_table(latent_path);
      write_responses(simulate(tuples, sim), out_path);
      return 0;
    }
    if (*srv) {
      if (!ui_dir.empty()) server_options.ui_dir = ui_dir;
      return serve(tuples_path, gold_path, campaign, data_dir, server_options);
    }
  } catch (const bwslex::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
