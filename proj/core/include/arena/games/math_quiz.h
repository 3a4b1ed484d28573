#ifndef ARENA_GAMES_MATH_QUIZ_H_
#define ARENA_GAMES_MATH_QUIZ_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/errors.h"
#include "arena/game.h"

namespace arena {

// Exact rational number with a positive denominator in lowest terms.
class Rational {
 public:
  Rational(int64_t numerator = 0, int64_t denominator = 1);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // "42" or "-3/4".
  std::string ToString() const;

  // Accepts "42", "-7", "3/4".
  static std::optional<Rational> Parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  int64_t num_;
  int64_t den_;
};

class NumberFormatError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// Compares the last numeral in `raw` (integer, fraction a/b, or decimal) with
// `expected`. Integers and fractions compare exactly; decimals within
// 1e-9 * max(1, |expected|). Throws NumberFormatError when no numeral exists.
bool AnswersMatch(const Rational& expected, std::string_view raw);

struct TargetSpec {
  uint64_t seed = 0;
  int64_t min = -1000;
  int64_t max = 1000;

  // Deterministic integer target drawn from [min, max].
  Rational Draw() const;
};

// Teacher writes a question whose answer is a manager-drawn target, then must
// solve it again without seeing the target. A failed self-check ends the game
// with the student winning; otherwise the student answers and wins iff the
// answer matches the target.
class MathQuizGame : public Game {
 public:
  enum class Phase { kGenerateChallenge, kVerify, kStudentTurn, kDone };

  explicit MathQuizGame(Rational target);
  explicit MathQuizGame(const TargetSpec& spec);

  std::vector<PlayerRoleDef> PlayerDefinitions() const override;
  std::unique_ptr<Game> Clone() const override;
  std::string StateView() const override;
  bool IsFreeText(std::string_view) const override { return true; }
  std::optional<VerificationRecord> verification() const override {
    return verification_;
  }

  Phase phase() const { return phase_; }
  const Rational& target() const { return target_; }
  const std::string& question() const { return question_; }

 protected:
  ActionRequest NextAction() const override;
  std::pair<std::string, std::string> PendingTurn() const override;
  std::optional<Rejection> Apply(Move& move) override;
  GameStatus Status() const override;
  Scores FinalScores(const GameStatus& status) const override;

 private:
  Rational target_;
  Phase phase_ = Phase::kGenerateChallenge;
  std::string question_;
  std::optional<std::string> teacher_verification_answer_;
  std::optional<std::string> student_answer_;
  std::optional<VerificationRecord> verification_;
  bool student_correct_ = false;
};

std::string_view PhaseName(MathQuizGame::Phase phase);

}  // namespace arena

#endif  // ARENA_GAMES_MATH_QUIZ_H_
