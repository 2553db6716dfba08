#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bwslex/responses.hpp"
#include "bwslex/tuples.hpp"

namespace bwslex {

struct CampaignConfig {
  std::size_t target_responses_per_tuple = 10;
  double gold_rate = 0.1;
  std::uint64_t seed = 0;
};

// What a client is shown. `is_gold_hidden` stays on the server.
struct AnnotationTask {
  std::string tuple_id;
  std::array<std::string, 4> items;
  bool is_gold_hidden = false;
};

std::string task_to_client_json(const AnnotationTask& task);

enum class SubmitStatus { ok, duplicate, rejected };

struct SubmitResult {
  SubmitStatus status = SubmitStatus::rejected;
  std::string reason;  // set when rejected
};

struct CampaignProgress {
  std::size_t tuples_total = 0;     // regular (non-gold) tuples
  std::size_t tuples_complete = 0;  // regular tuples at target
  std::size_t responses_total = 0;  // every logged response, gold included
  std::size_t gold_responses = 0;
  double fraction_complete = 0.0;   // sum over regular tuples of min(count, target) / (tuples * target)
  std::map<std::string, std::size_t> per_tuple;      // regular tuple -> completed responses
  std::map<std::string, std::size_t> per_annotator;  // annotator -> completed responses (gold included)

  friend bool operator==(const CampaignProgress&, const CampaignProgress&) = default;
};

std::string progress_to_json(const CampaignProgress& progress);

// Durable annotation campaign rooted at a data directory:
//   manifest.json   configuration
//   tuples.jsonl    the campaign's tuples (regular and gold)
//   gold.tsv        gold key (tuple_id, expected_best, expected_worst)
//   responses.jsonl append-only response log
// State is rebuilt by replaying responses.jsonl. Every accepted response is
// appended and fsync'ed before submit() returns. All members are thread-safe;
// log appends are serialized.
class Campaign {
 public:
  // Creates the directory layout on first use. When the directory already
  // holds a campaign, `tuples`/`gold` may be empty (reuse) or must match what
  // is stored. Gold tuples must appear in `tuples`; they are served only as
  // check questions and never count toward progress.
  Campaign(std::filesystem::path data_dir, const std::vector<Tuple4>& tuples, const GoldKey& gold,
           const CampaignConfig& config);
  // Reopens an existing campaign directory.
  explicit Campaign(std::filesystem::path data_dir);
  ~Campaign();

  Campaign(const Campaign&) = delete;
  Campaign& operator=(const Campaign&) = delete;

  // Next tuple for this annotator, or nullopt once nothing is left for them.
  // Regular tuples are chosen least-completed-first (completed + outstanding),
  // ties broken by a hash of (seed, tuple, annotator). Each served task is a
  // gold task with probability gold_rate, decided by a hash of
  // (seed, annotator, number of tasks served to the annotator).
  std::optional<AnnotationTask> next_task(const std::string& annotator_id);

  SubmitResult submit(const std::string& annotator_id, const std::string& tuple_id, const std::string& best,
                      const std::string& worst);

  CampaignProgress progress() const;
  std::vector<Response> responses() const;
  const CampaignConfig& config() const noexcept { return config_; }
  const std::filesystem::path& log_path() const noexcept { return log_path_; }

  // Progress computed from a log file alone, independent of any live state.
  static CampaignProgress replay_progress(const std::filesystem::path& data_dir);

 private:
  struct TupleState {
    std::size_t completed = 0;
    std::size_t outstanding = 0;
    bool gold = false;
  };
  enum class Status { assigned, completed };

  struct ReadOnly {};
  Campaign(std::filesystem::path data_dir, ReadOnly);

  void load_existing();
  void initialise_state();
  void replay_log();
  void apply(const Response& r);
  void append_to_log(const std::string& line);

  std::filesystem::path data_dir_;
  std::filesystem::path log_path_;
  CampaignConfig config_;
  std::vector<Tuple4> tuples_;
  TupleIndex index_;
  GoldKey gold_;
  std::vector<TupleState> state_;
  std::map<std::pair<std::string, std::size_t>, Status> assignments_;
  std::map<std::string, std::size_t> served_;
  std::map<std::string, std::size_t> completed_by_annotator_;
  std::vector<Response> log_;
  std::size_t gold_responses_ = 0;
  int log_fd_ = -1;
  mutable std::mutex mutex_;
};

}  // namespace bwslex
