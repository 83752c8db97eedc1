#pragma once

#include <string>
#include <vector>

#include "eulerprod/igusa.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod::testing {

struct Fixture {
  std::string name;
  SparsePolynomial h;
};

// n <= 3, |a_j| <= 3. The Igusa polynomials are the only members with r > 4.
inline std::vector<Fixture> fixture_set() {
  return {
      {"igusa2", igusa_h(2)},
      {"igusa3", igusa_h(3)},
      {"cyclotomic", parse_polynomial("1 - X1*X2", 2)},
      {"rank_failure", parse_polynomial("1 + X1*X2 + X1^2*X2^2*X3", 2)},
      {"linear", parse_polynomial("1 - 2*X1*X2", 1)},
      {"two_faces", parse_polynomial("1 + 3*X1*X3 - X2*X3", 2)},
      {"univariate_head", parse_polynomial("1 - X1*X2 + 2*X1^2*X2^3", 1)},
      {"three_vars", parse_polynomial("1 + X1*X4 + X2*X4 - 3*X3*X4", 3)},
      {"mixed_shift", parse_polynomial("1 - 2*X1*X2 + X1^2*X2", 1)},
      {"squares", parse_polynomial("1 + 2*X1*X2*X3 - X1^2*X3 + 3*X2^2*X3^2", 2)},
  };
}

}  // namespace eulerprod::testing
