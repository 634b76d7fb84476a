#pragma once

namespace hsi {

// every numerical threshold in the library lives here
struct Tolerances {
    double arithmetic = 1e-12;  // unit-norm drift, exact identities
    double relation = 1e-9;     // moduli relations, handle conditions, -I exclusion
    double solver = 1e-8;       // bisection and fixed-point residuals
};

Tolerances& default_tolerances();

}  // namespace hsi
