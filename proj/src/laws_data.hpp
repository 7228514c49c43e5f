#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace meadow::detail {

/// (set name, file text) for every file under data/laws, embedded at build time.
const std::vector<std::pair<std::string_view, std::string_view>>& shipped_law_files();

}  // namespace meadow::detail
