#pragma once

#include <string>
#include <string_view>

#include "eulerprod/core.hpp"

namespace eulerprod {

ExponentVector make_exponent(std::initializer_list<long long> entries);

/// a and b span the same rational line (all 2x2 minors vanish).
/// The zero vector is collinear with everything.
bool collinear(const ExponentVector& a, const ExponentVector& b);

/// a / gcd(nonzero components). Throws ZeroExponentVector for a = 0.
ExponentVector primitive_vector(const ExponentVector& a);

/// k with a = k * primitive, or -1 when a is not a nonnegative integer multiple.
long long multiple_of(const ExponentVector& a, const ExponentVector& primitive);

bool is_zero(const ExponentVector& a);
long long total_degree(const ExponentVector& a);

/// Canonical term order: smaller total degree first, then descending
/// lexicographic order within a degree.
bool grlex_before(const ExponentVector& a, const ExponentVector& b);

/// Plain lexicographic comparison, used for coset representatives.
bool lex_less(const ExponentVector& a, const ExponentVector& b);

/// "(1,0,1)"
std::string format_exponent(const ExponentVector& a);

/// Parses "1,0,1" or "(1,0,1)". Throws Syntax.
ExponentVector parse_exponent(std::string_view text);

MultiIndex to_multi_index(const ExponentVector& a);
ExponentVector from_multi_index(const MultiIndex& m);

}  // namespace eulerprod
