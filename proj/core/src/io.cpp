#include "ffcm/io.hpp"

#include <cctype>
#include <sstream>

namespace ffcm {

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.deg(); i >= 0; --i) {
    FqElem c = p.coeff(i);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "t";
      if (i != 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string to_coeff_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  for (int i = 0; i <= p.deg(); ++i) {
    if (i) os << ",";
    os << p.coeff(i);
  }
  return os.str();
}

namespace {

[[noreturn]] void bad(const std::string& text, std::size_t pos, const std::string& why) {
  throw DomainError("parse error in \"" + text + "\" at column " + std::to_string(pos + 1) +
                    ": " + why);
}

Poly parse_human(Fq f, const std::string& s) {
  Poly acc(f);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  bool expect_term = true;
  int sign = 1;
  skip_ws();
  while (i < s.size()) {
    if (s[i] == '+' || s[i] == '-') {
      if (expect_term && s[i] == '+') bad(s, i, "unexpected '+'");
      sign = (s[i] == '-') ? -sign : sign;
      ++i;
      expect_term = true;
      skip_ws();
      continue;
    }
    // term: [int][*][t[^exp]]
    bool have_coeff = false;
    std::int64_t coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      have_coeff = true;
      coeff = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coeff = coeff * 10 + (s[i] - '0');
        ++i;
      }
    }
    skip_ws();
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip_ws();
    }
    int exp = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'T' || s[i] == 'u')) {
      ++i;
      exp = 1;
      skip_ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          bad(s, i, "expected exponent");
        exp = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          exp = exp * 10 + (s[i] - '0');
          ++i;
        }
      }
    } else if (!have_coeff) {
      bad(s, i, "expected coefficient or 't'");
    }
    FqElem c;
    if (have_coeff && coeff >= f.p() && f.ext_degree() > 1) {
      // Packed extension-field coefficient.
      if (coeff >= f.q()) bad(s, i, "coefficient out of range for F_q");
      c = static_cast<FqElem>(coeff);
      if (sign < 0) c = f.neg(c);
    } else {
      c = f.from_int(sign * coeff);
    }
    acc = acc + Poly::monomial(f, 1, exp).mul_scalar(c);
    sign = 1;
    expect_term = false;
    skip_ws();
  }
  if (expect_term) bad(s, s.size(), "empty polynomial");
  return acc;
}

Poly parse_coeffs(Fq f, const std::string& s) {
  std::vector<FqElem> coeffs;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) bad(s, i, "empty coefficient");
    std::size_t k = 0;
    int sign = 1;
    if (tok[k] == '-') {
      sign = -1;
      ++k;
    }
    std::int64_t v = 0;
    for (; k < tok.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(tok[k]))) bad(s, i + k, "expected digit");
      v = v * 10 + (tok[k] - '0');
    }
    FqElem c;
    if (sign > 0 && v >= f.p() && f.ext_degree() > 1) {
      if (v >= f.q()) bad(s, i, "coefficient out of range for F_q");
      c = static_cast<FqElem>(v);
    } else {
      c = f.from_int(sign * v);
    }
    coeffs.push_back(c);
    if (j == s.size()) break;
    i = j + 1;
  }
  return Poly(f, std::move(coeffs));
}

}  // namespace

Poly parse_poly(Fq f, const std::string& text) {
  if (text.empty()) throw DomainError("parse error: empty polynomial string");
  if (text.find(',') != std::string::npos) return parse_coeffs(f, text);
  return parse_human(f, text);
}

std::string to_string(const Laurent& x) {
  std::ostringstream os;
  bool first = true;
  for (int i = x.hi(); i >= x.lo(); --i) {
    FqElem c = x.coeff(i);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "t^" << i;
    }
  }
  if (first) os << "0";
  if (!x.exact()) os << "+O(t^" << x.lo() - 1 << ")";
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ffcm
