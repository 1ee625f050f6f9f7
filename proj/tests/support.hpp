#pragma once

#include "regorb/regorb.hpp"

#include <ostream>
#include <string>

namespace regorb {
inline void PrintTo(const Poly& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const Mat& m, std::ostream* os) { *os << m.to_string(); }
}  // namespace regorb

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(REGORB_FIXTURES) + "/" + name; }

inline regorb::GroupEnumeration load_group(const std::string& name, std::uint64_t cap = regorb::kDefaultGroupCap) {
    auto in = regorb::parse_input_file(fixture(name));
    return regorb::GroupEnumeration::enumerate(in.all_generators(), cap, in.field, in.dim);
}

}  // namespace testing_support
