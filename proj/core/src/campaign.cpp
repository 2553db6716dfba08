#include "bwslex/campaign.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "bwslex/error.hpp"
#include "bwslex/lexicon.hpp"
#include "bwslex/rng.hpp"
#include "text_io.hpp"

namespace bwslex {

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kTuples = "tuples.jsonl";
constexpr const char* kGold = "gold.tsv";
constexpr const char* kLog = "responses.jsonl";

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void write_manifest(const std::filesystem::path& path, const CampaignConfig& config) {
  nlohmann::ordered_json j;
  j["format"] = "bwslex-campaign/1";
  j["target_responses_per_tuple"] = config.target_responses_per_tuple;
  j["gold_rate"] = config.gold_rate;
  j["seed"] = config.seed;
  j["tuples"] = kTuples;
  j["gold"] = kGold;
  j["log"] = kLog;
  detail::OutputFile file(path);
  file.stream() << j.dump(2) << '\n';
  file.close();
}

CampaignConfig read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    CampaignConfig c;
    c.target_responses_per_tuple = j.at("target_responses_per_tuple").get<std::size_t>();
    c.gold_rate = j.at("gold_rate").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": invalid campaign manifest: " + e.what());
  }
}

std::string log_line(const Response& r, bool gold) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(response_to_json_line(r));
  if (gold) j["gold"] = true;
  return j.dump();
}

// Drops a trailing partial record left by a crash mid-write. Such a record was
// never acknowledged: acknowledgement follows the fsync of the full line.
void truncate_partial_tail(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return;
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.back() == '\n') return;
  const auto last_nl = content.find_last_of('\n');
  const std::uintmax_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
  std::filesystem::resize_file(path, keep, ec);
  if (ec) throw IoError("cannot truncate partial record in " + path.string() + ": " + ec.message());
}

}  // namespace

std::string task_to_client_json(const AnnotationTask& task) {
  nlohmann::ordered_json j;
  j["tuple_id"] = task.tuple_id;
  j["items"] = task.items;
  return j.dump();
}

std::string progress_to_json(const CampaignProgress& p) {
  nlohmann::ordered_json j;
  j["tuples_total"] = p.tuples_total;
  j["tuples_complete"] = p.tuples_complete;
  j["responses_total"] = p.responses_total;
  j["fraction_complete"] = p.fraction_complete;
  return j.dump();
}

Campaign::Campaign(std::filesystem::path data_dir, const std::vector<Tuple4>& tuples, const GoldKey& gold,
                   const CampaignConfig& config)
    : data_dir_(std::move(data_dir)), log_path_(data_dir_ / kLog), config_(config) {
  if (config_.target_responses_per_tuple == 0) throw DataError("target responses per tuple must be at least 1");
  if (!(config_.gold_rate >= 0.0 && config_.gold_rate <= 1.0)) throw DataError("gold rate must lie in [0, 1]");

  std::error_code ec;
  std::filesystem::create_directories(data_dir_, ec);
  if (ec) throw IoError("cannot create " + data_dir_.string() + ": " + ec.message());

  if (std::filesystem::exists(data_dir_ / kManifest)) {
    load_existing();
    if (!tuples.empty() && tuples != tuples_) {
      throw DataError("tuples differ from those stored in campaign " + data_dir_.string());
    }
    if (!gold.empty() && gold.size() != gold_.size()) {
      throw DataError("gold key differs from the one stored in campaign " + data_dir_.string());
    }
  } else {
    if (tuples.empty()) throw DataError("a new campaign needs tuples");
    tuples_ = tuples;
    index_ = TupleIndex(tuples_);
    check_gold(gold, index_);
    gold_ = gold;
    write_tuples(tuples_, data_dir_ / kTuples);
    save_gold(gold_, data_dir_ / kGold);
    write_manifest(data_dir_ / kManifest, config_);
  }
  initialise_state();
  truncate_partial_tail(log_path_);
  replay_log();

  log_fd_ = ::open(log_path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (log_fd_ < 0) throw IoError("cannot open " + log_path_.string() + ": " + std::strerror(errno));
}

Campaign::Campaign(std::filesystem::path data_dir) : Campaign(std::move(data_dir), {}, {}, CampaignConfig{}) {}

Campaign::Campaign(std::filesystem::path data_dir, ReadOnly) : data_dir_(std::move(data_dir)), log_path_(data_dir_ / kLog) {
  load_existing();
  initialise_state();
  replay_log();
}

Campaign::~Campaign() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

void Campaign::load_existing() {
  config_ = read_manifest(data_dir_ / kManifest);
  tuples_ = read_tuples(data_dir_ / kTuples);
  index_ = TupleIndex(tuples_);
  gold_ = load_gold(data_dir_ / kGold);
  check_gold(gold_, index_);
}

void Campaign::initialise_state() {
  state_.assign(tuples_.size(), TupleState{});
  for (const auto& [id, answer] : gold_) state_[index_.position(id)].gold = true;
}

void Campaign::replay_log() {
  if (!std::filesystem::exists(log_path_)) return;
  const auto lines = detail::read_lines(log_path_);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) continue;
    Response r = response_from_json_line(lines[i], i + 1);
    check_response(r, index_);
    apply(r);
  }
}

void Campaign::apply(const Response& r) {
  const std::size_t pos = index_.position(r.tuple_id);
  TupleState& ts = state_[pos];
  const auto [it, inserted] = assignments_.try_emplace({r.annotator_id, pos}, Status::completed);
  if (!inserted) {
    if (it->second == Status::assigned && ts.outstanding > 0) --ts.outstanding;
    it->second = Status::completed;
  }
  ++ts.completed;
  ++completed_by_annotator_[r.annotator_id];
  if (ts.gold) ++gold_responses_;
  log_.push_back(r);
}

std::optional<AnnotationTask> Campaign::next_task(const std::string& annotator_id) {
  std::lock_guard lock(mutex_);
  const std::uint64_t who = fnv1a(annotator_id);
  std::size_t& served = served_[annotator_id];
  if (served < completed_by_annotator_[annotator_id]) served = completed_by_annotator_[annotator_id];

  auto unseen = [&](std::size_t pos) { return !assignments_.contains({annotator_id, pos}); };
  auto tie_key = [&](std::size_t pos) { return stream_key(config_.seed, {pos, who}); };

  std::optional<std::size_t> regular, gold;
  std::size_t best_load = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_tie = 0;
  std::size_t best_gold_load = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_gold_tie = 0;
  for (std::size_t pos = 0; pos < tuples_.size(); ++pos) {
    if (!unseen(pos)) continue;
    const TupleState& ts = state_[pos];
    const std::size_t load = ts.completed + ts.outstanding;
    if (ts.gold) {
      const std::uint64_t tie = tie_key(pos);
      if (load < best_gold_load || (load == best_gold_load && tie < best_gold_tie)) {
        gold = pos;
        best_gold_load = load;
        best_gold_tie = tie;
      }
      continue;
    }
    if (load >= config_.target_responses_per_tuple) continue;
    const std::uint64_t tie = tie_key(pos);
    if (load < best_load || (load == best_load && tie < best_tie)) {
      regular = pos;
      best_load = load;
      best_tie = tie;
    }
  }
  if (!regular) return std::nullopt;

  const bool want_gold = to_unit(stream_key(config_.seed, {who, served, 0x901dULL})) < config_.gold_rate;
  const std::size_t chosen = want_gold && gold ? *gold : *regular;
  ++served;
  assignments_[{annotator_id, chosen}] = Status::assigned;
  ++state_[chosen].outstanding;

  AnnotationTask task;
  task.tuple_id = tuples_[chosen].tuple_id;
  task.items = tuples_[chosen].items;
  task.is_gold_hidden = state_[chosen].gold;
  return task;
}

SubmitResult Campaign::submit(const std::string& annotator_id, const std::string& tuple_id, const std::string& best,
                              const std::string& worst) {
  std::lock_guard lock(mutex_);
  const Tuple4* tuple = index_.find(tuple_id);
  if (tuple == nullptr) return {SubmitStatus::rejected, "unknown tuple_id '" + tuple_id + "'"};
  const std::size_t pos = index_.position(tuple_id);
  const auto it = assignments_.find({annotator_id, pos});
  if (it != assignments_.end() && it->second == Status::completed) return {SubmitStatus::duplicate, {}};
  if (it == assignments_.end()) return {SubmitStatus::rejected, "tuple " + tuple_id + " is not assigned to this annotator"};

  Response r;
  r.annotator_id = annotator_id;
  r.tuple_id = tuple_id;
  r.best = normalize_surface(best);
  r.worst = normalize_surface(worst);
  if (r.best == r.worst) return {SubmitStatus::rejected, "best equals worst"};
  if (!tuple->contains(r.best)) return {SubmitStatus::rejected, "best '" + r.best + "' is not an item of tuple " + tuple_id};
  if (!tuple->contains(r.worst)) {
    return {SubmitStatus::rejected, "worst '" + r.worst + "' is not an item of tuple " + tuple_id};
  }
  char id[32];
  std::snprintf(id, sizeof id, "r%08zu", log_.size() + 1);
  r.response_id = id;
  r.unix_ms = now_ms();

  append_to_log(log_line(r, state_[pos].gold));
  apply(r);
  return {SubmitStatus::ok, {}};
}

void Campaign::append_to_log(const std::string& line) {
  const std::string record = line + '\n';
  std::size_t written = 0;
  while (written < record.size()) {
    const ssize_t n = ::write(log_fd_, record.data() + written, record.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("append to " + log_path_.string() + " failed: " + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fdatasync(log_fd_) != 0) throw IoError("fsync of " + log_path_.string() + " failed: " + std::strerror(errno));
}

CampaignProgress Campaign::progress() const {
  std::lock_guard lock(mutex_);
  CampaignProgress p;
  std::size_t credited = 0;
  for (std::size_t pos = 0; pos < tuples_.size(); ++pos) {
    const TupleState& ts = state_[pos];
    if (ts.gold) continue;
    ++p.tuples_total;
    p.per_tuple[tuples_[pos].tuple_id] = ts.completed;
    credited += std::min(ts.completed, config_.target_responses_per_tuple);
    if (ts.completed >= config_.target_responses_per_tuple) ++p.tuples_complete;
  }
  p.responses_total = log_.size();
  p.gold_responses = gold_responses_;
  p.per_annotator = completed_by_annotator_;
  if (p.tuples_total > 0) {
    p.fraction_complete = static_cast<double>(credited) /
                          static_cast<double>(p.tuples_total * config_.target_responses_per_tuple);
  }
  return p;
}

std::vector<Response> Campaign::responses() const {
  std::lock_guard lock(mutex_);
  return log_;
}

CampaignProgress Campaign::replay_progress(const std::filesystem::path& data_dir) {
  return Campaign(data_dir, ReadOnly{}).progress();
}

}  // namespace bwslex
