#ifndef PDDLS_STRINGS_H_
#define PDDLS_STRINGS_H_

#include <string>
#include <string_view>

namespace pddls {

std::string to_lower(std::string_view s);

// PDDL symbol comparison: case-insensitive, ASCII only.
bool iequals(std::string_view a, std::string_view b);

}  // namespace pddls

#endif  // PDDLS_STRINGS_H_
