#include <gtest/gtest.h>

#include "arena/manager.h"

namespace arena {
namespace {

PlayerSpec Scripted(const std::string& id, const std::string& role,
                    std::vector<std::string> moves, int max_attempts = 3) {
  return PlayerSpec{id, role, ScriptedBackend{std::move(moves), {}}, {max_attempts, true}};
}

MatchConfig ChessMatch(std::vector<PlayerSpec> players) {
  MatchConfig c;
  c.match_id = "m";
  c.game = "chess";
  c.players = std::move(players);
  return c;
}

std::vector<EventType> Types(const std::vector<TranscriptEvent>& events) {
  std::vector<EventType> out;
  for (const TranscriptEvent& e : events) out.push_back(e.event);
  return out;
}

TEST(ValidateMatchConfigTest, RejectsBadSeating) {
  MatchConfig c = ChessMatch({Scripted("a", "white", {}), Scripted("b", "black", {})});
  EXPECT_NO_THROW(ValidateMatchConfig(c));
  MatchConfig dup = c;
  dup.players[1].id = "a";
  EXPECT_THROW(ValidateMatchConfig(dup), ConfigError);
  MatchConfig missing = c;
  missing.players.pop_back();
  EXPECT_THROW(ValidateMatchConfig(missing), ConfigError);
  MatchConfig unknown_role = c;
  unknown_role.players[1].role = "red";
  EXPECT_THROW(ValidateMatchConfig(unknown_role), ConfigError);
  MatchConfig twice = c;
  twice.players[1].role = "white";
  EXPECT_THROW(ValidateMatchConfig(twice), ConfigError);
  MatchConfig no_attempts = c;
  no_attempts.players[0].attempt_policy.max_attempts = 0;
  EXPECT_THROW(ValidateMatchConfig(no_attempts), ConfigError);
  MatchConfig bad_game = c;
  bad_game.game = "go";
  EXPECT_THROW(ValidateMatchConfig(bad_game), ConfigError);
  MatchConfig random_gandalf = c;
  random_gandalf.game = "gandalf";
  random_gandalf.players = {PlayerSpec{"a", "sentinel", RandomBackend{}, {}},
                            Scripted("b", "infiltrator", {})};
  EXPECT_THROW(ValidateMatchConfig(random_gandalf), ConfigError);
  EXPECT_THROW(RunMatch(dup), ConfigError);
}

TEST(RunMatchTest, ThreeMovesGiveFiveEvents) {
  MatchConfig c = ChessMatch({Scripted("a", "white", {"e4", "Nf3"}), Scripted("b", "black", {"e5"})});
  c.max_turns = 3;
  const MatchRun run = RunMatch(c);
  EXPECT_EQ(Types(run.events),
            (std::vector<EventType>{EventType::kGameStart, EventType::kMoveAccepted,
                                    EventType::kMoveAccepted, EventType::kMoveAccepted,
                                    EventType::kGameEnd}));
  for (size_t i = 0; i < run.events.size(); ++i) {
    EXPECT_EQ(run.events[i].seq, static_cast<int64_t>(i));
    EXPECT_EQ(run.events[i].match_id, "m");
    EXPECT_FALSE(run.events[i].ts.has_value());
  }
  EXPECT_EQ(run.events[1].parsed, "e2e4");
  EXPECT_EQ(run.result.reason, "max-turns");
  EXPECT_TRUE(run.result.draw);
  EXPECT_EQ(run.result.move_count, 3);
}

TEST(RunMatchTest, RejectedMoveIsRetriedWithFeedback) {
  MatchConfig c = ChessMatch(
      {Scripted("a", "white", {"e5", "e4"}), Scripted("b", "black", {"e5"})});
  c.max_turns = 2;
  const MatchRun run = RunMatch(c);
  ASSERT_GE(run.events.size(), 3u);
  const TranscriptEvent& rejected = run.events[1];
  EXPECT_EQ(rejected.event, EventType::kMoveRejected);
  EXPECT_EQ(rejected.attempt_index, 1);
  EXPECT_EQ(rejected.error_code, "rule");
  EXPECT_EQ(rejected.raw_output, "e5");
  EXPECT_NE(rejected.feedback->find("illegal move for white"), std::string::npos);
  EXPECT_EQ(rejected.state_view, std::nullopt);
  const TranscriptEvent& accepted = run.events[2];
  EXPECT_EQ(accepted.event, EventType::kMoveAccepted);
  EXPECT_EQ(accepted.attempt_index, 2);
  EXPECT_EQ(accepted.parsed, "e2e4");
  EXPECT_EQ(run.result.attempts.at("a"), (AttemptStats{2, 1, 1, 2}));
}

TEST(RunMatchTest, ExhaustedAttemptsForfeit) {
  MatchConfig c = ChessMatch(
      {Scripted("a", "white", {"e5", "Ke2", "zz"}), Scripted("b", "black", {"e5"})});
  const MatchRun run = RunMatch(c);
  EXPECT_EQ(run.result.reason, "forfeit");
  EXPECT_EQ(run.result.winner, "b");
  EXPECT_EQ(run.result.scores, (Scores{{"white", 0.0}, {"black", 1.0}}));
  int rejected = 0;
  for (const TranscriptEvent& e : run.events) rejected += e.event == EventType::kMoveRejected;
  EXPECT_EQ(rejected, 3);
  EXPECT_EQ(run.events.back().event, EventType::kGameEnd);
  EXPECT_EQ(run.events.back().parsed["reason"], "forfeit");
}

TEST(RunMatchTest, ExhaustedScriptConsumesAttempts) {
  MatchConfig c = ChessMatch({Scripted("a", "white", {}, 2), Scripted("b", "black", {})});
  const MatchRun run = RunMatch(c);
  EXPECT_EQ(run.result.reason, "forfeit");
  ASSERT_EQ(run.events.size(), 4u);
  EXPECT_EQ(run.events[1].error_code, "script-exhausted");
  EXPECT_EQ(run.events[2].attempt_index, 2);
}

TEST(RunMatchTest, PlyCapEndsInDraw) {
  MatchConfig c = ChessMatch({PlayerSpec{"a", "white", RandomBackend{1}, {}},
                              PlayerSpec{"b", "black", RandomBackend{2}, {}}});
  c.seed = 3;
  const MatchRun run = RunMatch(c);
  EXPECT_LE(run.result.move_count, 200);
  if (run.result.move_count == 200) {
    EXPECT_EQ(run.result.reason, "max-turns");
    EXPECT_TRUE(run.result.draw);
  }
  c.max_turns = 10;
  const MatchRun capped = RunMatch(c);
  EXPECT_EQ(capped.result.move_count, 10);
  EXPECT_EQ(capped.result.reason, "max-turns");
  EXPECT_FALSE(capped.result.winner.has_value());
}

TEST(RunMatchTest, UnreachableBackendAbortsWithZeroScores) {
  TransportOptions transport;
  transport.max_tries = 1;
  transport.initial_backoff = std::chrono::milliseconds(0);
  MatchConfig c = ChessMatch(
      {Scripted("a", "white", {"e4"}),
       PlayerSpec{"b", "black", RemoteBackend{"http://127.0.0.1:1", "m", "", 0, 16}, {}}});
  const MatchRun run = RunMatch(c, RunOptions{nullptr, transport});
  EXPECT_TRUE(run.result.aborted);
  EXPECT_EQ(run.result.reason, "backend-failure");
  EXPECT_EQ(run.result.scores, (Scores{{"white", 0.0}, {"black", 0.0}}));
  EXPECT_FALSE(run.result.winner.has_value());
  EXPECT_FALSE(run.result.draw);
  ASSERT_EQ(run.events.size(), 4u);
  EXPECT_EQ(run.events[2].event, EventType::kMoveAttempt);
  EXPECT_EQ(run.events[2].player_id, "b");
  EXPECT_EQ(run.events[2].error_code, "backend-unavailable");
  EXPECT_EQ(run.events[3].parsed["aborted"], true);
}

TEST(RunMatchTest, ReplayIsDeterministic) {
  for (const std::string game : {"chess", "liars_dice"}) {
    MatchConfig c;
    c.match_id = "r";
    c.game = game;
    c.seed = 17;
    const std::vector<std::string> roles =
        game == "chess" ? std::vector<std::string>{"white", "black"}
                        : std::vector<std::string>{"player_0", "player_1"};
    c.players = {PlayerSpec{"a", roles[0], RandomBackend{1}, {}},
                 PlayerSpec{"b", roles[1], RandomBackend{2}, {}}};
    int64_t tick = 0;
    RunOptions with_clock{[&tick] { return ++tick; }, {}};
    const MatchRun first = RunMatch(c, with_clock);
    const MatchRun second = RunMatch(c);
    EXPECT_TRUE(first.events.front().ts.has_value());
    EXPECT_EQ(WithoutTimestamps(first.events), second.events) << game;
    EXPECT_EQ(first.result.ToJson(), second.result.ToJson());
  }
}

TEST(RunMatchTest, VerificationEventIsRecorded) {
  MatchConfig c;
  c.match_id = "q";
  c.game = "mathquiz";
  c.game_options = {{"target", 12}};
  c.players = {Scripted("t", "teacher", {"What is 3*4?", "It is 12"}),
               Scripted("s", "student", {"12"})};
  const MatchRun run = RunMatch(c);
  EXPECT_EQ(run.result.reason, "student-correct");
  EXPECT_EQ(run.result.winner, "s");
  const auto v = std::find_if(run.events.begin(), run.events.end(), [](const TranscriptEvent& e) {
    return e.event == EventType::kVerification;
  });
  ASSERT_NE(v, run.events.end());
  EXPECT_EQ(v->parsed["passed"], true);
  EXPECT_EQ(v->role, "teacher");
}

TEST(MatchResultTest, JsonShape) {
  MatchConfig c = ChessMatch({Scripted("a", "white", {"f3", "g4"}),
                              Scripted("b", "black", {"e5", "Qh4#"})});
  const nlohmann::json j = RunMatch(c).result.ToJson();
  EXPECT_EQ(j["winner"], "b");
  EXPECT_EQ(j["reason"], "checkmate");
  EXPECT_EQ(j["move_count"], 4);
  EXPECT_EQ(j["aborted"], false);
}

}  // namespace
}  // namespace arena
