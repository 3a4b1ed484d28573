#ifndef ARENA_ERRORS_H_
#define ARENA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace arena {

// Base for every error the library throws. Move validation failures are not
// exceptions; they come back from Game::Update as a Rejection.
class ArenaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (wrong role, update after the
// game ended, applying an illegal move through a trusted path).
class ContractError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class ConfigError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class IoError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

}  // namespace arena

#endif  // ARENA_ERRORS_H_
