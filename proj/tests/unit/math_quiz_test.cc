#include <gtest/gtest.h>

#include "arena/games/math_quiz.h"

namespace arena {
namespace {

std::optional<Rejection> Answer(MathQuizGame& game, const std::string& text) {
  const ActionRequest req = game.GetNextAction();
  Move m{req.role, req.action, text, ""};
  return game.Update(m);
}

TEST(RationalTest, NormalizesAndParses) {
  EXPECT_EQ(Rational(6, -8), Rational(-3, 4));
  EXPECT_EQ(Rational(6, -8).ToString(), "-3/4");
  EXPECT_EQ(Rational(10, 5).ToString(), "2");
  EXPECT_EQ(Rational::Parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::Parse("-7"), Rational(-7));
  EXPECT_FALSE(Rational::Parse("1/0").has_value());
  EXPECT_FALSE(Rational::Parse("x").has_value());
}

TEST(AnswersMatchTest, UsesLastNumeral) {
  EXPECT_TRUE(AnswersMatch(Rational(42), "First 3 then 7, so the answer is 42"));
  EXPECT_FALSE(AnswersMatch(Rational(42), "42 is wrong, it is 41"));
  EXPECT_TRUE(AnswersMatch(Rational(-5), "Answer: -5"));
  EXPECT_TRUE(AnswersMatch(Rational(1234), "1,234"));
  EXPECT_TRUE(AnswersMatch(Rational(3, 4), "3/4"));
  EXPECT_TRUE(AnswersMatch(Rational(3, 4), "0.75"));
  EXPECT_FALSE(AnswersMatch(Rational(1, 3), "0.333"));
  EXPECT_TRUE(AnswersMatch(Rational(7), "7.0"));
  EXPECT_THROW(AnswersMatch(Rational(7), "seven"), NumberFormatError);
}

TEST(TargetSpecTest, DrawsDeterministicallyInRange) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Rational t = TargetSpec{seed, -10, 10}.Draw();
    EXPECT_EQ(t.denominator(), 1);
    EXPECT_GE(t.numerator(), -10);
    EXPECT_LE(t.numerator(), 10);
    EXPECT_EQ(t, (TargetSpec{seed, -10, 10}.Draw()));
  }
}

TEST(MathQuizTest, RolesAndPhases) {
  MathQuizGame game(Rational(12));
  const auto defs = game.PlayerDefinitions();
  ASSERT_EQ(defs.size(), 2u);
  EXPECT_EQ(defs[0].role_name, "teacher");
  EXPECT_EQ(defs[0].actions,
            (std::vector<std::string>{"generate_question", "solve_question"}));
  EXPECT_EQ(defs[1].role_name, "student");
  EXPECT_EQ(defs[1].actions, std::vector<std::string>{"answer_question"});

  EXPECT_EQ(game.GetNextAction().action, "generate_question");
  ASSERT_FALSE(Answer(game, "What is 3 * 4?").has_value());
  EXPECT_EQ(game.phase(), MathQuizGame::Phase::kVerify);
  const ActionRequest verify = game.GetNextAction();
  EXPECT_EQ(verify.role, "teacher");
  EXPECT_EQ(verify.action, "solve_question");
  ASSERT_FALSE(Answer(game, "12").has_value());
  ASSERT_TRUE(game.verification().has_value());
  EXPECT_TRUE(game.verification()->passed);
  const ActionRequest student = game.GetNextAction();
  EXPECT_EQ(student.role, "student");
  EXPECT_EQ(student.action, "answer_question");
  ASSERT_FALSE(Answer(game, "It is 12").has_value());
  EXPECT_EQ(game.IsOver(), GameStatus::Over("student-correct"));
  EXPECT_EQ(game.GetScores(), (Scores{{"teacher", 0.0}, {"student", 1.0}}));
}

TEST(MathQuizTest, WrongStudentAnswerWinsForTeacher) {
  MathQuizGame game(Rational(12));
  ASSERT_FALSE(Answer(game, "What is 3 * 4?").has_value());
  ASSERT_FALSE(Answer(game, "12").has_value());
  ASSERT_FALSE(Answer(game, "13").has_value());
  EXPECT_EQ(game.IsOver(), GameStatus::Over("student-incorrect"));
  EXPECT_EQ(game.GetScores(), (Scores{{"teacher", 1.0}, {"student", 0.0}}));
}

TEST(MathQuizTest, FailedVerificationEndsGameImmediately) {
  MathQuizGame game(Rational(12));
  ASSERT_FALSE(Answer(game, "What is 3 * 5?").has_value());
  ASSERT_FALSE(Answer(game, "15").has_value());
  EXPECT_EQ(game.IsOver(), GameStatus::Over("verification-failure"));
  EXPECT_EQ(game.GetScores(), (Scores{{"teacher", 0.0}, {"student", 1.0}}));
  EXPECT_FALSE(game.verification()->passed);
}

TEST(MathQuizTest, TargetNeverShownAfterGeneration) {
  for (int64_t target : {12, -387, 999}) {
    MathQuizGame game{Rational(target)};
    const ActionRequest generate = game.GetNextAction();
    EXPECT_NE(generate.observation.ToText().find(std::to_string(target)), std::string::npos);
    ASSERT_FALSE(Answer(game, "Compute the value of x.").has_value());
    const std::string verify = game.GetNextAction().observation.ToText();
    EXPECT_EQ(verify.find(std::to_string(target)), std::string::npos) << verify;
    ASSERT_FALSE(Answer(game, std::to_string(target)).has_value());
    const std::string student = game.GetNextAction().observation.ToText();
    EXPECT_EQ(student.find(std::to_string(target)), std::string::npos) << student;
  }
}

TEST(MathQuizTest, AnswerWithoutNumberIsFormatError) {
  MathQuizGame game(Rational(4));
  ASSERT_FALSE(Answer(game, "What is 2 + 2?").has_value());
  const auto r = Answer(game, "four");
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->code, RejectionCode::kFormat);
  EXPECT_EQ(game.phase(), MathQuizGame::Phase::kVerify);
}

TEST(MathQuizTest, FractionTargets) {
  MathQuizGame game(Rational(3, 4));
  ASSERT_FALSE(Answer(game, "What is 3 divided by 4?").has_value());
  ASSERT_FALSE(Answer(game, "0.75").has_value());
  ASSERT_FALSE(Answer(game, "3/4").has_value());
  EXPECT_EQ(game.IsOver(), GameStatus::Over("student-correct"));
}

}  // namespace
}  // namespace arena
