#ifndef ARENA_TEXT_H_
#define ARENA_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace arena {

std::string_view Trim(std::string_view text);
std::string ToLower(std::string_view text);
std::vector<std::string_view> SplitLines(std::string_view text);
std::vector<std::string_view> SplitWhitespace(std::string_view text);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace arena

#endif  // ARENA_TEXT_H_
