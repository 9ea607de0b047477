#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Implemented in a source file generated from data/catalog/*.txt at configure time.
namespace balanced::detail {

std::optional<std::string_view> catalog_text(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace balanced::detail
