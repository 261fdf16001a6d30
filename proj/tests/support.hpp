#pragma once

#include "dioph/arith.hpp"

// mpq_class(num, den) does not reduce; comparisons need canonical form.
inline dioph::Rat frac(const dioph::Int& num, const dioph::Int& den) {
    dioph::Rat r(num, den);
    r.canonicalize();
    return r;
}
