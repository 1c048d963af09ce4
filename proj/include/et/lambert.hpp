#pragma once

namespace et {

// Real principal branch W0 of the inverse of w * exp(w), defined for
// z >= -1/e and returning values in [-1, inf). Arguments within 1e-15 below
// the branch point are clamped onto it to absorb rounding in callers;
// anything lower throws LambertDomainError.
double lambert_w0(double z);

}  // namespace et
