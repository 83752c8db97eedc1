#include "eulerprod/exponent.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <vector>

#include "eulerprod/error.hpp"

namespace eulerprod {

ExponentVector make_exponent(std::initializer_list<long long> entries) {
  ExponentVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long long x : entries) v(i++) = x;
  return v;
}

bool collinear(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index k = i + 1; k < a.size(); ++k) {
      if (a(i) * b(k) != a(k) * b(i)) return false;
    }
  }
  return true;
}

bool is_zero(const ExponentVector& a) { return (a.array() == 0).all(); }

long long total_degree(const ExponentVector& a) { return a.sum(); }

ExponentVector primitive_vector(const ExponentVector& a) {
  long long g = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) g = std::gcd(g, a(i));
  if (g == 0) throw Error(ErrorKind::ZeroExponentVector, "primitive vector of the zero vector");
  return a / g;
}

long long multiple_of(const ExponentVector& a, const ExponentVector& primitive) {
  long long k = -1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (primitive(i) == 0) {
      if (a(i) != 0) return -1;
      continue;
    }
    if (a(i) % primitive(i) != 0) return -1;
    const long long q = a(i) / primitive(i);
    if (q < 0 || (k >= 0 && q != k)) return -1;
    k = q;
  }
  return k < 0 ? 0 : k;
}

bool lex_less(const ExponentVector& a, const ExponentVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

bool grlex_before(const ExponentVector& a, const ExponentVector& b) {
  const long long da = total_degree(a);
  const long long db = total_degree(b);
  if (da != db) return da < db;
  return lex_less(b, a);
}

std::string format_exponent(const ExponentVector& a) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(a(i));
  }
  return out + ")";
}

ExponentVector parse_exponent(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    if (ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) continue;
    cleaned += ch;
  }
  std::vector<long long> values;
  std::stringstream in(cleaned);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(field, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != field.size() || field.empty() || v < 0) {
      throw Error(ErrorKind::Syntax, "bad exponent vector '" + std::string(text) + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorKind::Syntax, "empty exponent vector");
  ExponentVector out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
  return out;
}

MultiIndex to_multi_index(const ExponentVector& a) {
  MultiIndex m(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) m[static_cast<std::size_t>(i)] = static_cast<int>(a(i));
  return m;
}

ExponentVector from_multi_index(const MultiIndex& m) {
  ExponentVector a(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) a(static_cast<Eigen::Index>(i)) = m[i];
  return a;
}

}  // namespace eulerprod
