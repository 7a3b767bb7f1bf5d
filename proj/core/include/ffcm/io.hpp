#pragma once

#include <string>

#include "ffcm/laurent.hpp"
#include "ffcm/poly.hpp"

namespace ffcm {

// Human form: "t^2+t+2", "2*t^3+1", "-t+2", "0".  Coefficients are integer
// representatives (packed base-p values for extension fields).
std::string to_string(const Poly& p);
// Machine form: comma-separated ascending coefficients, "2,1,1"; "0" for zero.
std::string to_coeff_string(const Poly& p);

// Accepts both forms; q is carried by the field argument.
// Throws DomainError with a position diagnostic on bad input.
Poly parse_poly(Fq f, const std::string& text);

std::string to_string(const Laurent& x);  // e.g. "t^2+2*t^-1+O(t^-64)"

// Deterministic FNV-1a (for content-addressed sweep records).
std::uint64_t fnv1a(const std::string& s);

}  // namespace ffcm
