#include <gtest/gtest.h>

#include <memory>
#include <string>
#include <vector>

#include "arena/errors.h"
#include "arena/games/registry.h"
#include "arena/random.h"

namespace arena {
namespace {

// Drives a game with a mix of legal and garbage moves and checks the parts of
// the contract every game shares after each step.
class ContractTest : public ::testing::TestWithParam<std::string> {};

void CheckZeroScores(const Game& game) {
  for (const auto& [role, score] : game.GetScores()) EXPECT_EQ(score, 0.0) << role;
}

std::string PickMove(const Game& game, Rng& rng, const std::string& action) {
  if (game.HasMoveEnumeration()) {
    const std::vector<std::string> legal = game.LegalMoves();
    return legal[rng.Uniform(legal.size())];
  }
  if (action == "solve_question" || action == "answer_question") {
    return std::to_string(rng.UniformRange(-5, 5));
  }
  return "message " + std::to_string(rng.Next() % 1000);
}

TEST_P(ContractTest, InvariantsHoldAlongRandomPlayouts) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GameParams params;
    params.seed = seed;
    params.max_turns = 40;
    std::unique_ptr<Game> game = MakeGame(GetParam(), params);
    const std::vector<PlayerRoleDef> defs = game->PlayerDefinitions();
    const std::vector<std::string> roles = game->RoleNames();
    ASSERT_EQ(roles.size(), defs.size());
    Rng rng(seed);
    int steps = 0;
    while (!game->IsOver().over()) {
      ASSERT_LT(++steps, 1000);
      EXPECT_EQ(game->PlayerDefinitions(), defs);
      CheckZeroScores(*game);
      const ActionRequest req = game->GetNextAction();
      const auto def = std::find_if(defs.begin(), defs.end(), [&](const PlayerRoleDef& d) {
        return d.role_name == req.role;
      });
      ASSERT_NE(def, defs.end());
      EXPECT_NE(std::find(def->actions.begin(), def->actions.end(), req.action),
                def->actions.end());

      // A rejected move leaves the state untouched.
      const std::string before = game->StateView();
      Move bad{req.role, req.action, "", ""};
      const std::optional<Rejection> r = game->Update(bad);
      ASSERT_TRUE(r.has_value());
      EXPECT_FALSE(r->feedback.empty());
      EXPECT_EQ(game->StateView(), before);
      Move wrong_role{req.role == roles[0] ? roles[1] : roles[0], req.action, "x", ""};
      ASSERT_TRUE(game->Update(wrong_role).has_value());
      EXPECT_EQ(game->Update(wrong_role)->code, RejectionCode::kContract);
      EXPECT_EQ(game->StateView(), before);

      // Clones evolve independently.
      std::unique_ptr<Game> clone = game->Clone();
      Move good{req.role, req.action, PickMove(*game, rng, req.action), ""};
      const std::optional<Rejection> accepted = game->Update(good);
      ASSERT_FALSE(accepted.has_value()) << good.raw << ": " << accepted->feedback;
      EXPECT_FALSE(good.parsed.empty());
      EXPECT_EQ(clone->StateView(), before);
    }
    const Scores scores = game->GetScores();
    ASSERT_EQ(scores.size(), roles.size());
    double total = 0;
    for (const auto& [role, score] : scores) {
      EXPECT_TRUE(score == 0.0 || score == 0.5 || score == 1.0);
      total += score;
    }
    EXPECT_DOUBLE_EQ(total, 1.0);
    // Terminal states absorb.
    const std::string final_state = game->StateView();
    EXPECT_THROW(game->GetNextAction(), ContractError);
    Move late{roles[0], defs[0].actions[0], "anything", ""};
    ASSERT_TRUE(game->Update(late).has_value());
    EXPECT_EQ(game->Update(late)->code, RejectionCode::kContract);
    EXPECT_EQ(game->StateView(), final_state);
    EXPECT_EQ(game->GetScores(), scores);
  }
}

TEST_P(ContractTest, ForfeitMakesOpponentWin) {
  GameParams params;
  std::unique_ptr<Game> game = MakeGame(GetParam(), params);
  const std::vector<std::string> roles = game->RoleNames();
  game->Forfeit(roles[1]);
  EXPECT_EQ(game->IsOver(), GameStatus::Over("forfeit"));
  EXPECT_EQ(game->GetScores(), (Scores{{roles[0], 1.0}, {roles[1], 0.0}}));
}

TEST_P(ContractTest, UnknownActionIsContractError) {
  std::unique_ptr<Game> game = MakeGame(GetParam(), {});
  const ActionRequest req = game->GetNextAction();
  Move m{req.role, "teleport", "e4", ""};
  const std::optional<Rejection> r = game->Update(m);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->code, RejectionCode::kContract);
}

INSTANTIATE_TEST_SUITE_P(AllGames, ContractTest, ::testing::ValuesIn(KnownGames()));

TEST(RegistryTest, RejectsUnknownGamesAndOptions) {
  EXPECT_THROW(MakeGame("go", {}), ConfigError);
  GameParams params;
  params.options = {{"colour", "white"}};
  EXPECT_THROW(MakeGame("chess", params), ConfigError);
  params.options = {{"dice_per_player", 0}};
  EXPECT_THROW(MakeGame("liars_dice", params), ConfigError);
  params.options = {{"reveal_mode", "fuzzy"}};
  EXPECT_THROW(MakeGame("gandalf", params), ConfigError);
  params.options = {{"target", "1/0"}};
  EXPECT_THROW(MakeGame("mathquiz", params), ConfigError);
  params.options = {{"fen", "bad"}};
  EXPECT_THROW(ValidateGameOptions("chess", params.options), ConfigError);
}

TEST(RegistryTest, SameSeedSameSession) {
  for (const std::string& name : KnownGames()) {
    GameParams params;
    params.seed = 99;
    EXPECT_EQ(MakeGame(name, params)->StateView(), MakeGame(name, params)->StateView()) << name;
  }
}

}  // namespace
}  // namespace arena
