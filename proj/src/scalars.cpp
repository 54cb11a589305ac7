#include "scalars.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace r0colloc::detail {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Scalars merge_overrides(Scalars defaults, const Scalars& overrides,
                        std::initializer_list<std::string_view> allowed,
                        std::string_view preset) {
    for (const auto& [key, value] : overrides) {
        const std::string k = to_lower(key);
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            std::string msg = "unknown parameter '" + key + "' for preset " +
                              std::string(preset) + " (allowed:";
            for (auto a : allowed) msg += " " + std::string(a);
            throw std::invalid_argument(msg + ")");
        }
        if (!std::isfinite(value))
            throw std::invalid_argument("parameter '" + key + "' must be finite");
        defaults[k] = value;
    }
    return defaults;
}

}  // namespace r0colloc::detail
