#ifndef SYNMIX_VERSION_HPP
#define SYNMIX_VERSION_HPP

#include <string_view>

namespace synmix {

inline constexpr std::string_view kVersion = "1.0.0";

inline constexpr std::string_view version_string() noexcept {
    return "synmix 1.0.0 (manifest schema 1, plan schema 1, runs-csv schema 1)";
}

}  // namespace synmix

#endif  // SYNMIX_VERSION_HPP
