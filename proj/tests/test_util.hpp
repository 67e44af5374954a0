#ifndef APFREE_TEST_UTIL_HPP
#define APFREE_TEST_UTIL_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zmod.hpp"

#ifndef APFREE_DATA_DIR
#define APFREE_DATA_DIR "data"
#endif

namespace apfree::test {

inline std::string data_file(const std::string& name) {
    return std::string(APFREE_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline DigitSet interval_set(uint32_t m, uint32_t lo, uint32_t hi) {
    std::vector<uint32_t> v;
    for (uint32_t d = lo; d <= hi; ++d)
        v.push_back(d);
    return DigitSet(Modulus(m), std::move(v));
}

// nonempty uniform-ish random subset of Z_m
inline DigitSet random_set(std::mt19937& rng, uint32_t m) {
    std::vector<uint32_t> v;
    while (v.empty()) {
        v.clear();
        for (uint32_t d = 0; d < m; ++d)
            if (rng() & 1u)
                v.push_back(d);
    }
    return DigitSet(Modulus(m), std::move(v));
}

}  // namespace apfree::test

#endif
