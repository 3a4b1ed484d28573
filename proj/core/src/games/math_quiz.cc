#include "arena/games/math_quiz.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "arena/random.h"
#include "arena/text.h"

namespace arena {
namespace {

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

enum class NumeralKind { kInteger, kFraction, kDecimal };

struct Numeral {
  NumeralKind kind;
  std::string text;  // sign and digits, separators removed
};

// Digits with optional thousands separators ("1,234,567").
size_t ScanDigits(std::string_view s, size_t i, std::string& out) {
  const size_t start = i;
  while (i < s.size() && IsDigit(s[i])) out += s[i++];
  if (i - start <= 3) {
    while (i + 3 < s.size() && s[i] == ',' && IsDigit(s[i + 1]) &&
           IsDigit(s[i + 2]) && IsDigit(s[i + 3]) &&
           (i + 4 == s.size() || !IsDigit(s[i + 4]))) {
      out.append(s.substr(i + 1, 3));
      i += 4;
    }
  }
  return i;
}

std::optional<Numeral> LastNumeral(std::string_view s) {
  std::optional<Numeral> last;
  size_t i = 0;
  while (i < s.size()) {
    if (!IsDigit(s[i])) {
      ++i;
      continue;
    }
    Numeral n{NumeralKind::kInteger, ""};
    if (i > 0 && s[i - 1] == '-' && (i < 2 || !IsAlnum(s[i - 2]))) n.text = "-";
    size_t j = ScanDigits(s, i, n.text);
    if (j + 1 < s.size() && s[j] == '.' && IsDigit(s[j + 1])) {
      n.kind = NumeralKind::kDecimal;
      n.text += '.';
      ++j;
      while (j < s.size() && IsDigit(s[j])) n.text += s[j++];
    } else if (j + 1 < s.size() && s[j] == '/' && IsDigit(s[j + 1])) {
      n.kind = NumeralKind::kFraction;
      n.text += '/';
      ++j;
      while (j < s.size() && IsDigit(s[j])) n.text += s[j++];
    }
    last = n;
    i = j;
  }
  return last;
}

int64_t Gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

}  // namespace

Rational::Rational(int64_t numerator, int64_t denominator) {
  if (denominator == 0) throw ArenaError("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const int64_t g = Gcd(numerator < 0 ? -numerator : numerator, denominator);
  num_ = g == 0 ? 0 : numerator / g;
  den_ = g == 0 ? 1 : denominator / g;
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::Parse(std::string_view text) {
  text = Trim(text);
  auto parse_int = [](std::string_view s) -> std::optional<int64_t> {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    return Rational(*v);
  }
  auto num = parse_int(Trim(text.substr(0, slash)));
  auto den = parse_int(Trim(text.substr(slash + 1)));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

bool AnswersMatch(const Rational& expected, std::string_view raw) {
  const std::optional<Numeral> numeral = LastNumeral(raw);
  if (!numeral) throw NumberFormatError("no number found in answer");
  if (numeral->kind != NumeralKind::kDecimal) {
    std::optional<Rational> exact = Rational::Parse(numeral->text);
    if (numeral->kind == NumeralKind::kFraction && !exact &&
        numeral->text.ends_with("/0")) {
      throw NumberFormatError("fraction with zero denominator");
    }
    if (exact) return *exact == expected;
    // Too large for 64-bit arithmetic; compare as a decimal below.
  }
  double value = 0;
  const size_t slash = numeral->text.find('/');
  if (slash == std::string::npos) {
    value = std::strtod(numeral->text.c_str(), nullptr);
  } else {
    value = std::strtod(numeral->text.substr(0, slash).c_str(), nullptr) /
            std::strtod(numeral->text.substr(slash + 1).c_str(), nullptr);
  }
  const double target = expected.ToDouble();
  return std::abs(value - target) <= 1e-9 * std::max(1.0, std::abs(target));
}

Rational TargetSpec::Draw() const {
  if (min > max) throw ConfigError("target range is empty");
  Rng rng(DeriveSeed({seed, 0x7A26E7}));
  return Rational(rng.UniformRange(min, max));
}

std::string_view PhaseName(MathQuizGame::Phase phase) {
  switch (phase) {
    case MathQuizGame::Phase::kGenerateChallenge: return "generate";
    case MathQuizGame::Phase::kVerify: return "verify";
    case MathQuizGame::Phase::kStudentTurn: return "student";
    case MathQuizGame::Phase::kDone: return "done";
  }
  return "unknown";
}

namespace {

constexpr std::string_view kTeacherRules =
    "You are the Teacher in a math quiz. Write one difficult math question "
    "whose exact answer is the target value below. You will later have to "
    "solve it yourself without seeing the target, and the Student will then "
    "try to answer it. Do not state the answer in the question.";
// Rules shown while the target is hidden. Keep these free of numerals so the
// observation cannot leak a target by coincidence.
constexpr std::string_view kSolveRules =
    "Solve the math question below. Show your reasoning if you like, and give "
    "the final answer as a single number (integer, fraction a/b, or decimal) "
    "on the last line.";

}  // namespace

MathQuizGame::MathQuizGame(Rational target) : Game("mathquiz"), target_(target) {}

MathQuizGame::MathQuizGame(const TargetSpec& spec) : MathQuizGame(spec.Draw()) {}

std::vector<PlayerRoleDef> MathQuizGame::PlayerDefinitions() const {
  return {{"teacher", {"generate_question", "solve_question"}, std::nullopt},
          {"student", {"answer_question"}, std::nullopt}};
}

std::unique_ptr<Game> MathQuizGame::Clone() const {
  return std::make_unique<MathQuizGame>(*this);
}

std::string MathQuizGame::StateView() const {
  std::string out = "target: " + target_.ToString() +
                    "\nphase: " + std::string(PhaseName(phase_)) +
                    "\nquestion: " + question_;
  if (teacher_verification_answer_) {
    out += "\nteacher_answer: " + *teacher_verification_answer_;
  }
  if (student_answer_) out += "\nstudent_answer: " + *student_answer_;
  return out;
}

ActionRequest MathQuizGame::NextAction() const {
  Observation obs;
  switch (phase_) {
    case Phase::kGenerateChallenge:
      obs.rules = std::string(kTeacherRules);
      obs.state = "Target answer: " + target_.ToString() +
                  "\nWrite the question now.";
      return {"generate_question", "teacher", std::move(obs)};
    case Phase::kVerify:
      obs.rules = std::string(kSolveRules);
      obs.state = "Question:\n" + question_;
      return {"solve_question", "teacher", std::move(obs)};
    case Phase::kStudentTurn:
      obs.rules = std::string(kSolveRules);
      obs.state = "Question:\n" + question_;
      return {"answer_question", "student", std::move(obs)};
    case Phase::kDone:
      break;
  }
  throw ContractError("math quiz has no pending action");
}

std::pair<std::string, std::string> MathQuizGame::PendingTurn() const {
  switch (phase_) {
    case Phase::kGenerateChallenge: return {"teacher", "generate_question"};
    case Phase::kVerify: return {"teacher", "solve_question"};
    case Phase::kStudentTurn: return {"student", "answer_question"};
    case Phase::kDone: break;
  }
  throw ContractError("math quiz has no pending action");
}

std::optional<Rejection> MathQuizGame::Apply(Move& move) {
  const std::string text(Trim(move.raw));
  switch (phase_) {
    case Phase::kGenerateChallenge:
      question_ = text;
      move.parsed = text;
      phase_ = Phase::kVerify;
      return std::nullopt;
    case Phase::kVerify:
    case Phase::kStudentTurn: {
      bool match = false;
      try {
        match = AnswersMatch(target_, text);
      } catch (const NumberFormatError& e) {
        return Rejection::Format(std::string(e.what()) +
                                 "; end your answer with the final number");
      }
      move.parsed = text;
      if (phase_ == Phase::kVerify) {
        teacher_verification_answer_ = text;
        verification_ = VerificationRecord{match, text};
        phase_ = match ? Phase::kStudentTurn : Phase::kDone;
      } else {
        student_answer_ = text;
        student_correct_ = match;
        phase_ = Phase::kDone;
      }
      return std::nullopt;
    }
    case Phase::kDone:
      break;
  }
  return Rejection::Contract("the quiz is finished");
}

GameStatus MathQuizGame::Status() const {
  if (phase_ != Phase::kDone) return GameStatus::InProgress();
  if (verification_ && !verification_->passed) {
    return GameStatus::Over(std::string(reason::kVerificationFailure));
  }
  return GameStatus::Over(student_correct_ ? "student-correct" : "student-incorrect");
}

Scores MathQuizGame::FinalScores(const GameStatus&) const {
  const bool student_wins = (verification_ && !verification_->passed) || student_correct_;
  return {{"teacher", student_wins ? 0.0 : 1.0}, {"student", student_wins ? 1.0 : 0.0}};
}

}  // namespace arena
