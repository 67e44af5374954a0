#ifndef APFREE_RAT_HPP
#define APFREE_RAT_HPP

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace apfree {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // exact rational; kept canonical (lowest terms, den > 0)

inline std::string rat_to_string(const Rat& q) {
    return q.get_str();  // "n" or "n/d"
}

inline Rat rat_from_string(const std::string& s) {
    if (s.empty())
        throw Error(ErrorCode::invalid_argument, "empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw Error(ErrorCode::invalid_argument, "bad rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw Error(ErrorCode::invalid_argument, "zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace apfree

#endif
