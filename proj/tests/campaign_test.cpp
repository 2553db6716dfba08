#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <thread>

#include "bwslex/campaign.hpp"
#include "bwslex/design.hpp"
#include "bwslex/error.hpp"
#include "test_support.hpp"

using namespace bwslex;
using testing_support::TempDir;

namespace {

std::vector<Tuple4> small_tuples(std::size_t n_terms = 40) {
  return generate_design(testing_support::numbered_terms(n_terms), 1, 17, DesignOptions{3, 2000, true});
}

CampaignConfig config(std::size_t target, double gold_rate = 0.0) {
  CampaignConfig c;
  c.target_responses_per_tuple = target;
  c.gold_rate = gold_rate;
  c.seed = 5;
  return c;
}

// Fetches and answers one task; returns its tuple id.
std::optional<std::string> answer_one(Campaign& c, const std::string& who) {
  const auto task = c.next_task(who);
  if (!task) return std::nullopt;
  const auto r = c.submit(who, task->tuple_id, task->items[0], task->items[3]);
  EXPECT_EQ(r.status, SubmitStatus::ok) << r.reason;
  return task->tuple_id;
}

}  // namespace

TEST(Campaign, AnnotatorNeverSeesATupleTwice) {
  TempDir dir;
  const auto tuples = small_tuples();
  Campaign c(dir / "camp", tuples, {}, config(3));
  std::set<std::string> seen;
  while (auto id = answer_one(c, "alice")) EXPECT_TRUE(seen.insert(*id).second) << *id;
  EXPECT_EQ(seen.size(), tuples.size());
  EXPECT_FALSE(c.next_task("alice"));
}

TEST(Campaign, CompleteCampaignHasNoTasks) {
  TempDir dir;
  const auto tuples = small_tuples();
  Campaign c(dir / "camp", tuples, {}, config(2));
  for (const char* who : {"a", "b"})
    while (answer_one(c, who)) {
    }
  EXPECT_FALSE(c.next_task("c"));
  const auto p = c.progress();
  EXPECT_EQ(p.fraction_complete, 1.0);
  EXPECT_EQ(p.tuples_complete, tuples.size());
}

TEST(Campaign, OutstandingAssignmentsCountTowardTarget) {
  TempDir dir;
  const std::vector<Tuple4> one = {{"t1", {"a", "b", "c", "d"}}};
  Campaign c(dir / "camp", one, {}, config(1));
  ASSERT_TRUE(c.next_task("x"));
  EXPECT_FALSE(c.next_task("y"));
}

TEST(Campaign, GoldTasksAreServedAtTheConfiguredRate) {
  TempDir dir;
  auto tuples = generate_design(testing_support::numbered_terms(240), 1, 3);
  GoldKey gold;
  for (std::size_t i = 0; i < 30; ++i) gold[tuples[i].tuple_id] = {tuples[i].items[0], tuples[i].items[1]};
  Campaign c(dir / "camp", tuples, gold, config(5, 0.1));
  std::size_t n_gold = 0;
  for (int i = 0; i < 100; ++i) {
    const auto task = c.next_task("ann");
    ASSERT_TRUE(task);
    n_gold += task->is_gold_hidden;
    ASSERT_EQ(c.submit("ann", task->tuple_id, task->items[0], task->items[1]).status, SubmitStatus::ok);
  }
  EXPECT_GE(n_gold, 3u);
  EXPECT_LE(n_gold, 20u);
  const auto p = c.progress();
  EXPECT_EQ(p.gold_responses, n_gold);
  EXPECT_EQ(p.tuples_total, tuples.size() - 30);
  EXPECT_EQ(p.responses_total, 100u);
  // Gold records carry the marker; the client view never does.
  const auto log = testing_support::read_file(c.log_path());
  std::size_t marked = 0;
  for (std::size_t at = 0; (at = log.find("\"gold\":true", at)) != std::string::npos; ++at) ++marked;
  EXPECT_EQ(marked, n_gold);
  AnnotationTask t{"x", {"a", "b", "c", "d"}, true};
  EXPECT_EQ(task_to_client_json(t).find("gold"), std::string::npos);
}

TEST(Campaign, SubmitOutcomes) {
  TempDir dir;
  const auto tuples = small_tuples();
  Campaign c(dir / "camp", tuples, {}, config(3));
  const auto task = c.next_task("a");
  ASSERT_TRUE(task);
  const auto& it = task->items;
  EXPECT_EQ(c.submit("a", "nope", it[0], it[1]).status, SubmitStatus::rejected);
  EXPECT_EQ(c.submit("b", task->tuple_id, it[0], it[1]).status, SubmitStatus::rejected);  // not assigned
  auto r = c.submit("a", task->tuple_id, it[0], it[0]);
  EXPECT_EQ(r.status, SubmitStatus::rejected);
  EXPECT_EQ(r.reason, "best equals worst");
  EXPECT_EQ(c.submit("a", task->tuple_id, it[0], "zzz").status, SubmitStatus::rejected);
  EXPECT_EQ(c.progress().responses_total, 0u);
  EXPECT_EQ(c.submit("a", task->tuple_id, it[0], it[1]).status, SubmitStatus::ok);
  EXPECT_EQ(c.submit("a", task->tuple_id, it[2], it[3]).status, SubmitStatus::duplicate);
  EXPECT_EQ(c.progress().responses_total, 1u);
}

TEST(Campaign, FractionComplete) {
  TempDir dir;
  const auto tuples = small_tuples();
  Campaign c(dir / "camp", tuples, {}, config(4));
  EXPECT_EQ(c.progress().fraction_complete, 0.0);
  for (int i = 0; i < 7; ++i) answer_one(c, "a");
  EXPECT_DOUBLE_EQ(c.progress().fraction_complete, 7.0 / (4.0 * tuples.size()));
}

TEST(Campaign, ReplayReproducesProgressAndReopenContinues) {
  TempDir dir;
  const auto tuples = small_tuples();
  CampaignProgress live;
  {
    Campaign c(dir / "camp", tuples, {}, config(3));
    for (const char* who : {"a", "b", "c"})
      for (int i = 0; i < 6; ++i) answer_one(c, who);
    live = c.progress();
    EXPECT_EQ(Campaign::replay_progress(dir / "camp"), live);
  }
  Campaign reopened(dir / "camp");
  EXPECT_EQ(reopened.progress(), live);
  EXPECT_EQ(reopened.config().target_responses_per_tuple, 3u);
  // "a" keeps the no-repeat guarantee across restarts.
  std::set<std::string> seen;
  for (const auto& r : reopened.responses())
    if (r.annotator_id == "a") seen.insert(r.tuple_id);
  while (auto id = answer_one(reopened, "a")) EXPECT_TRUE(seen.insert(*id).second);
}

TEST(Campaign, PartialTrailingRecordIsDropped) {
  TempDir dir;
  const auto tuples = small_tuples();
  {
    Campaign c(dir / "camp", tuples, {}, config(3));
    for (int i = 0; i < 3; ++i) answer_one(c, "a");
  }
  {
    std::ofstream out(dir / "camp" / "responses.jsonl", std::ios::app);
    out << "{\"response_id\":\"r9\",\"annot";
  }
  Campaign c(dir / "camp");
  EXPECT_EQ(c.progress().responses_total, 3u);
  answer_one(c, "b");
  EXPECT_EQ(Campaign::replay_progress(dir / "camp").responses_total, 4u);
}

TEST(Campaign, MismatchedTuplesOnReopenThrow) {
  TempDir dir;
  { Campaign c(dir / "camp", small_tuples(), {}, config(3)); }
  EXPECT_THROW(Campaign(dir / "camp", small_tuples(44), {}, config(3)), DataError);
}

TEST(Campaign, ConcurrentSubmissionsAreAllLogged) {
  TempDir dir;
  const auto tuples = small_tuples(80);
  Campaign c(dir / "camp", tuples, {}, config(8));
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w)
    workers.emplace_back([&, w] {
      for (int i = 0; i < 20; ++i) answer_one(c, "w" + std::to_string(w));
    });
  for (auto& t : workers) t.join();
  const auto p = c.progress();
  EXPECT_EQ(p.responses_total, 160u);
  EXPECT_EQ(Campaign::replay_progress(dir / "camp"), p);
  for (const auto& [id, n] : p.per_tuple) EXPECT_LE(n, 8u);
}
