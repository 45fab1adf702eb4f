#ifndef SYNMIX_TESTS_PATHS_HPP
#define SYNMIX_TESTS_PATHS_HPP

#include <string>

namespace test {

inline std::string fixture(const std::string& name) {
    return std::string(SYNMIX_FIXTURE_DIR) + "/" + name;
}

}  // namespace test

#endif
