#pragma once

#include "r0colloc/operator_pair.hpp"

#include <initializer_list>
#include <string>
#include <string_view>

namespace r0colloc::detail {

std::string to_lower(std::string_view s);

/// Merge overrides into defaults. Keys are matched case-insensitively and must be in
/// `allowed`; unknown keys and non-finite values raise std::invalid_argument.
Scalars merge_overrides(Scalars defaults, const Scalars& overrides,
                        std::initializer_list<std::string_view> allowed,
                        std::string_view preset);

}  // namespace r0colloc::detail
